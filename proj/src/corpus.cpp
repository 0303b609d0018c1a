#include "randres/corpus.hpp"

#include <algorithm>

#include "randres/formulas.hpp"
#include "randres/saturation.hpp"

namespace randres {

VarSpace corpus_space(uint64_t seed) {
    // parameter sets small enough for exact delta computation (<= 22 vars)
    static const VarSpace choices[] = {
        {3, 2, 1}, {3, 3, 1}, {3, 3, 2}, {4, 2, 1}, {4, 3, 1},
    };
    return choices[seed % (sizeof(choices) / sizeof(choices[0]))];
}

RandomRefutationDistribution make_distribution(const VarSpace& vs, uint64_t seed,
                                               int max_samples, int max_clauses) {
    SplitRng rng(seed);
    RandomRefutationDistribution d;
    d.vs = vs;
    d.base = generate_family(vs);
    d.num_vars = vs.num_vars();
    int num_samples = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_samples)));
    std::vector<uint64_t> raw_weights;
    uint64_t weight_sum = 0;
    for (int s = 0; s < num_samples; ++s) {
        raw_weights.push_back(1 + rng.below(9));
        weight_sum += raw_weights.back();
    }
    auto blocks = family_elimination_blocks(vs);
    for (int s = 0; s < num_samples; ++s) {
        RrdSample sample;
        sample.weight = make_rational(static_cast<long long>(raw_weights[static_cast<size_t>(s)]),
                                      static_cast<long long>(weight_sum));
        Cnf delta(false);
        int num_clauses = static_cast<int>(rng.below(static_cast<uint64_t>(max_clauses) + 1));
        for (int c = 0; c < num_clauses; ++c) {
            int width = 1 + static_cast<int>(rng.below(3));
            std::vector<int> vars;
            while (static_cast<int>(vars.size()) < width) {
                int var = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(vs.num_vars())));
                if (std::find(vars.begin(), vars.end(), var) == vars.end()) vars.push_back(var);
            }
            std::vector<int> lits;
            for (int var : vars) lits.push_back(rng.flip() ? var : -var);
            delta.add(Clause(lits));
        }
        sample.delta = std::move(delta);
        SaturationResult res = saturation_refute(Cnf::concat(d.base, sample.delta), blocks);
        if (!res.unsat) throw Error("corpus: family plus delta reported satisfiable; this is a bug");
        sample.proof = std::move(res.proof);
        d.samples.push_back(std::move(sample));
    }
    return d;
}

} // namespace randres
