#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "randres/corpus.hpp"
#include "randres/dimacs.hpp"
#include "randres/formulas.hpp"
#include "randres/rrd.hpp"
#include "randres/saturation.hpp"
#include "randres/tracecheck.hpp"
#include "test_util.hpp"

using namespace randres;

namespace {

ResolutionProof var2_refutation() {
    std::vector<ProofStep> steps;
    steps.push_back({1, Clause({2}), true, 0, 0, 0});
    steps.push_back({2, Clause({-2}), true, 0, 0, 0});
    steps.push_back({3, Clause(), false, 1, 2, 2});
    return ResolutionProof(std::move(steps));
}

// base {{2},{-2}} with var 1 free for the delta clauses
RandomRefutationDistribution two_var_dist() {
    RandomRefutationDistribution d;
    d.base.add(Clause({2}));
    d.base.add(Clause({-2}));
    d.num_vars = 2;
    return d;
}

RrdSample sample_of(const Rational& w, std::vector<Clause> delta, ResolutionProof proof) {
    RrdSample s;
    s.weight = w;
    for (Clause& c : delta) s.delta.add(std::move(c));
    s.proof = std::move(proof);
    return s;
}

} // namespace

TEST_CASE("distribution validation enforces the weight and range rules") {
    RandomRefutationDistribution d = two_var_dist();
    CHECK_THROWS_AS(d.validate(), FormatError); // no samples

    d.samples.push_back(sample_of(make_rational(1, 2), {}, var2_refutation()));
    CHECK_THROWS_AS(d.validate(), FormatError); // weights sum to 1/2

    d.samples.push_back(sample_of(make_rational(1, 2), {}, var2_refutation()));
    CHECK_NOTHROW(d.validate());

    d.samples[1].weight = make_rational(0, 1);
    d.samples[0].weight = make_rational(1, 1);
    CHECK_THROWS_AS(d.validate(), FormatError); // zero weight

    d.samples[1].weight = make_rational(3, 2);
    CHECK_THROWS_AS(d.validate(), FormatError); // weight above 1

    d = two_var_dist();
    d.samples.push_back(sample_of(make_rational(1, 1), {Clause({5})}, var2_refutation()));
    CHECK_THROWS_AS(d.validate(), FormatError); // literal beyond num_vars
}

TEST_CASE("delta star matches the worked distributions exactly") {
    SUBCASE("opposing unit clauses split the weight") {
        RandomRefutationDistribution d = two_var_dist();
        d.samples.push_back(sample_of(make_rational(1, 2), {Clause({1})}, var2_refutation()));
        d.samples.push_back(sample_of(make_rational(1, 2), {Clause({-1})}, var2_refutation()));
        DeltaExact de = delta_of_exact(d);
        CHECK(de.delta_star == make_rational(1, 2));
        CHECK(de.assignments == 2); // only the one support variable is enumerated
    }
    SUBCASE("empty delta sets are never falsified") {
        RandomRefutationDistribution d = two_var_dist();
        d.samples.push_back(sample_of(make_rational(1, 3), {}, var2_refutation()));
        d.samples.push_back(sample_of(make_rational(2, 3), {}, var2_refutation()));
        DeltaExact de = delta_of_exact(d);
        CHECK(de.delta_star == make_rational(0, 1));
        CHECK(de.assignments == 1);
    }
    SUBCASE("a single positive unit clause is always falsifiable") {
        RandomRefutationDistribution d = two_var_dist();
        d.samples.push_back(sample_of(make_rational(1, 1), {Clause({1})}, var2_refutation()));
        CHECK(delta_of_exact(d).delta_star == make_rational(1, 1));
    }
    SUBCASE("tautological delta clauses contribute nothing") {
        RandomRefutationDistribution d = two_var_dist();
        d.samples.push_back(sample_of(make_rational(1, 1), {Clause({1, -1})}, var2_refutation()));
        CHECK(delta_of_exact(d).delta_star == make_rational(0, 1));
    }
}

TEST_CASE("exact mode refuses oversized variable counts and points to sampling") {
    RandomRefutationDistribution d = two_var_dist();
    d.num_vars = 30;
    d.samples.push_back(sample_of(make_rational(1, 1), {Clause({1})}, var2_refutation()));
    CHECK_THROWS_AS(delta_of_exact(d), BudgetError);
    CHECK_NOTHROW(delta_of_exact(d, 30));
    CHECK_NOTHROW(delta_of_sampled(d, 100, 1));
}

TEST_CASE("sampling encloses the exact value within its radius") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        VarSpace vs = corpus_space(seed);
        RandomRefutationDistribution d = make_distribution(vs, seed);
        Rational exact = delta_of_exact(d).delta_star;
        DeltaSampled est = delta_of_sampled(d, 200, seed * 77);
        CHECK(est.estimate <= exact);
        CHECK(exact <= est.estimate + est.radius);
        CHECK(est.draws == 200);
    }
}

TEST_CASE("adding a delta clause never lowers delta star") {
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        VarSpace vs = corpus_space(seed);
        RandomRefutationDistribution d = make_distribution(vs, seed);
        Rational before = delta_of_exact(d).delta_star;
        size_t at = static_cast<size_t>(seed) % d.samples.size();
        d.samples[at].delta.add(Clause({-1}));
        Rational after = delta_of_exact(d).delta_star;
        CHECK(before <= after);
    }
}

TEST_CASE("size metrics take maxima over samples") {
    RandomRefutationDistribution d = two_var_dist();
    d.samples.push_back(sample_of(make_rational(1, 2), {Clause({1}), Clause({-1})}, var2_refutation()));
    d.samples.push_back(sample_of(make_rational(1, 2), {}, var2_refutation()));
    SizeMetrics m = size_metrics(d);
    CHECK(m.k == 3);
    CHECK(m.dmax == 2);
}

TEST_CASE("per-sample checking pinpoints the corrupt proof") {
    RandomRefutationDistribution d = two_var_dist();
    d.samples.push_back(sample_of(make_rational(1, 2), {}, var2_refutation()));
    // second proof claims an axiom that is in no sample's clause set
    std::vector<ProofStep> bad;
    bad.push_back({1, Clause({1}), true, 0, 0, 0});
    bad.push_back({2, Clause({-1}), true, 0, 0, 0});
    bad.push_back({3, Clause(), false, 1, 2, 1});
    d.samples.push_back(sample_of(make_rational(1, 2), {}, ResolutionProof(std::move(bad))));
    auto checks = check_samples(d);
    REQUIRE(checks.size() == 2);
    CHECK(checks[0].report.ok());
    CHECK_FALSE(checks[1].report.ok());
    CHECK(checks[1].index == 1);

    // a delta clause of one sample is not an axiom for another
    RandomRefutationDistribution e = two_var_dist();
    std::vector<ProofStep> uses_delta;
    uses_delta.push_back({1, Clause({1}), true, 0, 0, 0});
    uses_delta.push_back({2, Clause({-1}), true, 0, 0, 0});
    uses_delta.push_back({3, Clause(), false, 1, 2, 1});
    e.samples.push_back(sample_of(make_rational(1, 2), {Clause({1}), Clause({-1})},
                                  ResolutionProof(std::vector<ProofStep>(uses_delta))));
    e.samples.push_back(
        sample_of(make_rational(1, 2), {}, ResolutionProof(std::vector<ProofStep>(uses_delta))));
    auto echecks = check_samples(e);
    CHECK(echecks[0].report.ok());
    CHECK_FALSE(echecks[1].report.ok());
}

TEST_CASE("the soundness audit realizes the impossibility argument") {
    SUBCASE("satisfiable base forces every checking sample's delta to be falsified") {
        RandomRefutationDistribution d;
        d.base.add(Clause({1, 2}));
        d.num_vars = 2;
        std::vector<ProofStep> steps;
        steps.push_back({1, Clause({1, 2}), true, 0, 0, 0});
        steps.push_back({2, Clause({-1}), true, 0, 0, 0});
        steps.push_back({3, Clause({-2}), true, 0, 0, 0});
        steps.push_back({4, Clause({2}), false, 1, 2, 1});
        steps.push_back({5, Clause(), false, 4, 3, 2});
        ResolutionProof proof(std::move(steps));
        d.samples.push_back(sample_of(make_rational(1, 1), {Clause({-1}), Clause({-2})}, proof));
        d.validate();
        REQUIRE(check_samples(d)[0].report.ok());

        for (uint64_t bits = 0; bits < 4; ++bits) {
            Assignment alpha(2);
            alpha.set(1, static_cast<int>(bits & 1));
            alpha.set(2, static_cast<int>(bits >> 1));
            SoundnessReport rep = soundness_audit(d, alpha);
            CHECK(rep.applicable == eval_cnf(d.base, alpha));
            CHECK(rep.violations.empty());
            if (rep.applicable) CHECK(rep.samples[0].delta_falsified);
        }
    }
    SUBCASE("bogus refutations are skipped, not counted as violations") {
        RandomRefutationDistribution d;
        d.base.add(Clause({1}));
        d.num_vars = 1;
        std::vector<ProofStep> bogus;
        bogus.push_back({1, Clause({1}), true, 0, 0, 0});
        d.samples.push_back(sample_of(make_rational(1, 1), {}, ResolutionProof(std::move(bogus))));
        Assignment alpha(1);
        alpha.set(1, 1);
        SoundnessReport rep = soundness_audit(d, alpha);
        CHECK(rep.applicable);
        CHECK_FALSE(rep.samples[0].proof_ok);
        CHECK(rep.violations.empty());
    }
    SUBCASE("an unsatisfiable base never applies") {
        VarSpace vs(3, 2, 1);
        RandomRefutationDistribution d = make_distribution(vs, 5);
        Assignment alpha(vs.num_vars());
        for (int v = 1; v <= vs.num_vars(); ++v) alpha.set(v, 1);
        CHECK_FALSE(soundness_audit(d, alpha).applicable);
    }
}

TEST_CASE("distribution files round-trip with relative member paths") {
    testutil::TempDir tmp;
    VarSpace vs(3, 2, 1);
    Cnf fam = generate_family(vs);
    SaturationResult r = saturation_refute(fam, family_elimination_blocks(vs));
    REQUIRE(r.unsat);

    RandomRefutationDistribution d;
    d.vs = vs;
    d.base = fam;
    d.num_vars = vs.num_vars();
    d.cnf_path = "family.cnf";
    RrdSample s;
    s.weight = make_rational(1, 1);
    s.delta.add(Clause({1, -4}));
    s.proof = r.proof;
    s.proof_path = "s0.trace";
    d.samples.push_back(std::move(s));

    save_dimacs(tmp.file("family.cnf"), fam, vs.num_vars(), vs);
    save_proof(tmp.file("s0.trace"), r.proof);
    save_rrd(tmp.file("dist.json"), d);

    RandomRefutationDistribution back = load_rrd(tmp.file("dist.json"));
    back.validate();
    REQUIRE(back.samples.size() == 1);
    CHECK(back.vs.has_value());
    CHECK(back.base == fam);
    CHECK(back.num_vars == vs.num_vars());
    CHECK(back.samples[0].weight == make_rational(1, 1));
    CHECK(back.samples[0].delta[0] == Clause({1, -4}));
    CHECK(back.samples[0].proof.size() == r.proof.size());
}

TEST_CASE("distribution loading distinguishes missing files from malformed content") {
    testutil::TempDir tmp;
    CHECK_THROWS_AS(load_rrd(tmp.file("absent.json")), FileError);

    write_text_file(tmp.file("broken.json"), "{ not json");
    CHECK_THROWS_AS(load_rrd(tmp.file("broken.json")), FormatError);

    write_text_file(tmp.file("wrongtype.json"), "{\"cnf\": 5, \"samples\": []}");
    CHECK_THROWS_AS(load_rrd(tmp.file("wrongtype.json")), FormatError);

    write_text_file(tmp.file("noref.json"),
                    "{\"cnf\": \"nowhere.cnf\", \"samples\": [{\"weight\": \"1/1\", \"delta\": [], "
                    "\"proof\": \"x.trace\"}]}");
    CHECK_THROWS_AS(load_rrd(tmp.file("noref.json")), FileError);
}

TEST_CASE("seeded corpus generation is reproducible and self-checking") {
    for (uint64_t seed : {1ull, 9ull, 42ull}) {
        VarSpace vs = corpus_space(seed);
        CHECK(vs.family_params_ok());
        CHECK(vs.num_vars() <= 24);
        RandomRefutationDistribution a = make_distribution(vs, seed);
        RandomRefutationDistribution b = make_distribution(vs, seed);
        REQUIRE(a.samples.size() == b.samples.size());
        Rational total(0);
        for (size_t i = 0; i < a.samples.size(); ++i) {
            CHECK(a.samples[i].weight == b.samples[i].weight);
            CHECK(a.samples[i].delta == b.samples[i].delta);
            CHECK(a.samples[i].proof.size() == b.samples[i].proof.size());
            total += a.samples[i].weight;
        }
        CHECK(total == Rational(1));
        for (const auto& chk : check_samples(a)) CHECK(chk.report.ok());
    }
}
