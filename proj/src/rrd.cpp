#include "randres/rrd.hpp"

#include <algorithm>
#include <filesystem>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "randres/dimacs.hpp"
#include "randres/errors.hpp"
#include "randres/formulas.hpp"
#include "randres/rng.hpp"
#include "randres/tracecheck.hpp"

namespace randres {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void RandomRefutationDistribution::validate() const {
    if (samples.empty()) throw FormatError("distribution: empty sample list");
    Rational sum = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const RrdSample& s = samples[i];
        if (s.weight <= 0 || s.weight > 1)
            throw FormatError("distribution: sample " + std::to_string(i) +
                              " weight outside (0,1]");
        sum += s.weight;
        if (s.delta.max_var() > num_vars)
            throw FormatError("distribution: sample " + std::to_string(i) +
                              " uses variables outside the declared range");
    }
    if (sum != 1) throw FormatError("distribution: weights sum to " + rational_string(sum) +
                                    ", expected 1");
    if (base.max_var() > num_vars)
        throw FormatError("distribution: base clauses use variables outside the declared range");
}

RandomRefutationDistribution load_rrd(const std::string& json_path) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(read_text_file(json_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(json_path + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("cnf") || !doc.contains("samples"))
        throw FormatError(json_path + ": expected an object with 'cnf' and 'samples'");
    fs::path dir = fs::path(json_path).parent_path();
    RandomRefutationDistribution d;
    try {
        d.cnf_path = doc["cnf"].get<std::string>();
        DimacsFile base = load_dimacs((dir / d.cnf_path).string());
        d.base = std::move(base.cnf);
        d.num_vars = base.num_vars;
        d.vs = base.space;
        if (!doc["samples"].is_array())
            throw FormatError(json_path + ": 'samples' must be an array");
        for (const auto& js : doc["samples"]) {
            if (!js.is_object() || !js.contains("weight") || !js.contains("delta") ||
                !js.contains("proof"))
                throw FormatError(json_path + ": each sample needs weight, delta, and proof");
            RrdSample s;
            s.weight = parse_rational(js["weight"].get<std::string>());
            if (!js["delta"].is_array())
                throw FormatError(json_path + ": sample delta must be an array of clauses");
            Cnf delta(false);
            for (const auto& jc : js["delta"]) {
                if (!jc.is_array())
                    throw FormatError(json_path + ": clause must be a literal array");
                std::vector<int> lits;
                for (const auto& jl : jc) {
                    if (!jl.is_number_integer())
                        throw FormatError(json_path + ": literals must be integers");
                    lits.push_back(jl.get<int>());
                }
                delta.add(Clause(lits));
            }
            s.delta = std::move(delta);
            s.proof_path = js["proof"].get<std::string>();
            s.proof = load_proof((dir / s.proof_path).string());
            d.samples.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(json_path + ": " + e.what());
    }
    if (!d.vs)
        for (const RrdSample& s : d.samples)
            d.num_vars = std::max(d.num_vars, s.delta.max_var());
    d.validate();
    return d;
}

void save_rrd(const std::string& json_path, const RandomRefutationDistribution& d) {
    ordered_json doc;
    doc["cnf"] = d.cnf_path;
    doc["samples"] = ordered_json::array();
    for (const RrdSample& s : d.samples) {
        ordered_json js;
        js["weight"] = rational_string(s.weight);
        js["delta"] = ordered_json::array();
        for (const Clause& c : s.delta.clauses()) js["delta"].push_back(c.lits());
        js["proof"] = s.proof_path;
        doc["samples"].push_back(std::move(js));
    }
    write_text_file(json_path, doc.dump(2) + "\n");
}

std::vector<SampleCheckResult> check_samples(const RandomRefutationDistribution& d) {
    d.validate();
    std::vector<SampleCheckResult> out;
    out.reserve(d.samples.size());
    for (size_t i = 0; i < d.samples.size(); ++i) {
        Cnf combined = Cnf::concat(d.base, d.samples[i].delta);
        out.push_back({i, check_refutation(d.samples[i].proof, combined)});
    }
    return out;
}

namespace {

// Remaps each sample's delta onto the variables that occur in any delta
// clause, so the enumeration space collapses to the support.
struct SupportTables {
    std::vector<int> support; // original variable ids
    // per sample, clauses as (pos mask, neg mask) over support bit positions;
    // the empty clause becomes (0, 0) and is falsified by everything
    std::vector<std::vector<std::pair<uint64_t, uint64_t>>> clause_masks;
    std::vector<bool> constant_falsified; // sample holds an empty clause
};

SupportTables build_support(const RandomRefutationDistribution& d) {
    SupportTables t;
    std::unordered_map<int, int> position;
    for (const RrdSample& s : d.samples)
        for (const Clause& c : s.delta.clauses()) {
            if (c.is_tautological()) continue;
            for (int lit : c.lits())
                if (position.emplace(lit_var(lit), 0).second) t.support.push_back(lit_var(lit));
        }
    std::sort(t.support.begin(), t.support.end());
    for (size_t i = 0; i < t.support.size(); ++i) position[t.support[i]] = static_cast<int>(i);
    if (t.support.size() > 62) throw BudgetError("delta enumeration: support exceeds 62 variables");
    for (const RrdSample& s : d.samples) {
        std::vector<std::pair<uint64_t, uint64_t>> masks;
        bool constant = false;
        for (const Clause& c : s.delta.clauses()) {
            if (c.is_tautological()) continue;
            if (c.empty()) {
                constant = true;
                continue;
            }
            uint64_t pos = 0, neg = 0;
            for (int lit : c.lits()) {
                uint64_t bit = uint64_t{1} << position[lit_var(lit)];
                if (lit > 0) pos |= bit;
                else neg |= bit;
            }
            masks.emplace_back(pos, neg);
        }
        t.clause_masks.push_back(std::move(masks));
        t.constant_falsified.push_back(constant);
    }
    return t;
}

Rational falsified_weight(const RandomRefutationDistribution& d, const SupportTables& t,
                          uint64_t a) {
    Rational w = 0;
    for (size_t s = 0; s < d.samples.size(); ++s) {
        bool falsified = t.constant_falsified[s];
        for (const auto& [pos, neg] : t.clause_masks[s]) {
            if (falsified) break;
            falsified = (a & pos) == 0 && (a & neg) == neg;
        }
        if (falsified) w += d.samples[s].weight;
    }
    return w;
}

} // namespace

DeltaExact delta_of_exact(const RandomRefutationDistribution& d, int max_vars) {
    d.validate();
    if (d.num_vars > max_vars)
        throw BudgetError("delta_of: " + std::to_string(d.num_vars) +
                          " variables exceed the exact enumeration threshold of " +
                          std::to_string(max_vars) + "; use sampling mode");
    SupportTables t = build_support(d);
    uint64_t space = uint64_t{1} << t.support.size();
    DeltaExact out;
    out.assignments = space;
    for (uint64_t a = 0; a < space; ++a) {
        Rational w = falsified_weight(d, t, a);
        if (w > out.delta_star) out.delta_star = w;
        if (out.delta_star == 1) break;
    }
    return out;
}

DeltaSampled delta_of_sampled(const RandomRefutationDistribution& d, uint64_t draws,
                              uint64_t seed) {
    d.validate();
    if (draws == 0) throw ParamError("delta_of: sampling needs at least one draw");
    SupportTables t = build_support(d);
    SplitRng rng(seed);
    DeltaSampled out;
    out.draws = draws;
    for (uint64_t i = 0; i < draws; ++i) {
        uint64_t a = t.support.empty() ? 0 : rng.next() & ((uint64_t{1} << t.support.size()) - 1);
        Rational w = falsified_weight(d, t, a);
        if (w > out.estimate) out.estimate = w;
    }
    // every assignment's falsified weight is capped by the total weight of
    // samples owning a falsifiable clause, so the true maximum lies between
    // the empirical maximum and that cap
    Rational cap = 0;
    for (size_t s = 0; s < d.samples.size(); ++s)
        if (t.constant_falsified[s] || !t.clause_masks[s].empty()) cap += d.samples[s].weight;
    out.radius = cap - out.estimate;
    return out;
}

SizeMetrics size_metrics(const RandomRefutationDistribution& d) {
    SizeMetrics m;
    for (const RrdSample& s : d.samples) {
        m.k = std::max(m.k, num_clauses(s.proof));
        m.dmax = std::max(m.dmax, static_cast<int>(s.delta.size()));
    }
    return m;
}

SoundnessReport soundness_audit(const RandomRefutationDistribution& d, const Assignment& alpha) {
    d.validate();
    SoundnessReport report;
    report.applicable = eval_cnf(d.base, alpha);
    for (size_t i = 0; i < d.samples.size(); ++i) {
        const RrdSample& s = d.samples[i];
        SoundnessSample entry;
        entry.index = i;
        entry.proof_ok = check_refutation(s.proof, Cnf::concat(d.base, s.delta)).ok();
        entry.delta_falsified = !eval_cnf(s.delta, alpha);
        report.samples.push_back(entry);
        if (report.applicable && entry.proof_ok && !entry.delta_falsified)
            report.violations.push_back(i);
    }
    return report;
}

} // namespace randres
