#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "randres/dimacs.hpp"
#include "randres/formulas.hpp"
#include "randres/resolution.hpp"
#include "randres/saturation.hpp"
#include "randres/tracecheck.hpp"
#include "test_util.hpp"

using namespace randres;

namespace {

ResolutionProof tiny_refutation() {
    std::vector<ProofStep> steps;
    steps.push_back({1, Clause({1}), true, 0, 0, 0});
    steps.push_back({2, Clause({-1}), true, 0, 0, 0});
    steps.push_back({3, Clause(), false, 1, 2, 1});
    return ResolutionProof(std::move(steps));
}

Cnf tiny_cnf() {
    Cnf f;
    f.add(Clause({1}));
    f.add(Clause({-1}));
    return f;
}

} // namespace

TEST_CASE("resolve removes the pivot pair and merges the rest") {
    CHECK(resolve(Clause({1}), Clause({-1}), 1) == Clause());
    CHECK(resolve(Clause({1, 2}), Clause({-1, 3}), 1) == Clause({2, 3}));
    Clause taut = resolve(Clause({1, 2}), Clause({-1, -2}), 1);
    CHECK(taut == Clause({2, -2}));
    CHECK(taut.is_tautological());
    CHECK_THROWS_AS(resolve(Clause({2}), Clause({-1}), 1), ParamError);
    CHECK_THROWS_AS(resolve(Clause({-1}), Clause({1}), 1), ParamError); // wrong orientation
}

TEST_CASE("proof structure is validated on construction") {
    CHECK(tiny_refutation().size() == 3);
    CHECK(tiny_refutation().root_id() == 3);
    CHECK(num_axioms(tiny_refutation()) == 2);
    CHECK(num_clauses(tiny_refutation()) == 3);

    // duplicate id
    std::vector<ProofStep> dup = {{1, Clause({1}), true, 0, 0, 0}, {1, Clause({2}), true, 0, 0, 0}};
    CHECK_THROWS_AS(ResolutionProof(std::move(dup)), FormatError);
    // parent not seen yet
    std::vector<ProofStep> fwd = {{1, Clause({1}), true, 0, 0, 0},
                                  {2, Clause(), false, 1, 3, 1},
                                  {3, Clause({-1}), true, 0, 0, 0}};
    CHECK_THROWS_AS(ResolutionProof(std::move(fwd)), FormatError);
    // nonpositive pivot on a resolve step
    std::vector<ProofStep> piv = {{1, Clause({1}), true, 0, 0, 0},
                                  {2, Clause({-1}), true, 0, 0, 0},
                                  {3, Clause(), false, 1, 2, 0}};
    CHECK_THROWS_AS(ResolutionProof(std::move(piv)), FormatError);
}

TEST_CASE("the checker accepts a correct refutation and localizes defects") {
    CHECK(check_refutation(tiny_refutation(), tiny_cnf()).ok());

    SUBCASE("axiom not in input") {
        Cnf f;
        f.add(Clause({1}));
        CheckReport rep = check_refutation(tiny_refutation(), f);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].step_id == 2);
        CHECK(rep.issues[0].kind == CheckErrorKind::AxiomNotInInput);
        CHECK(rep.str().find("axiom-not-in-input") != std::string::npos);
    }
    SUBCASE("wrong resolvent") {
        std::vector<ProofStep> steps;
        steps.push_back({1, Clause({1, 2}), true, 0, 0, 0});
        steps.push_back({2, Clause({-1}), true, 0, 0, 0});
        steps.push_back({3, Clause({3}), false, 1, 2, 1});
        Cnf f;
        f.add(Clause({1, 2}));
        f.add(Clause({-1}));
        CheckReport rep = check_refutation(ResolutionProof(std::move(steps)), f);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].kind == CheckErrorKind::WrongResolvent);
    }
    SUBCASE("bad pivot") {
        std::vector<ProofStep> steps;
        steps.push_back({1, Clause({1, 2}), true, 0, 0, 0});
        steps.push_back({2, Clause({-1}), true, 0, 0, 0});
        steps.push_back({3, Clause({2}), false, 1, 2, 2});
        Cnf f;
        f.add(Clause({1, 2}));
        f.add(Clause({-1}));
        CheckReport rep = check_refutation(ResolutionProof(std::move(steps)), f);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].kind == CheckErrorKind::BadPivot);
    }
    SUBCASE("nonempty root") {
        std::vector<ProofStep> steps;
        steps.push_back({1, Clause({1, 2}), true, 0, 0, 0});
        steps.push_back({2, Clause({-1}), true, 0, 0, 0});
        steps.push_back({3, Clause({2}), false, 1, 2, 1});
        Cnf f;
        f.add(Clause({1, 2}));
        f.add(Clause({-1}));
        CheckReport rep = check_refutation(ResolutionProof(std::move(steps)), f);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.issues[0].kind == CheckErrorKind::NonemptyRoot);
    }
}

TEST_CASE("proof text round-trips and records axioms with empty parent lists") {
    ResolutionProof p = tiny_refutation();
    std::string text = write_proof(p);
    CHECK(text == "1 1 0 0\n2 -1 0 0\n3 0 1 2 0\n");
    ResolutionProof q = parse_proof(text);
    REQUIRE(q.size() == 3);
    CHECK(q.steps()[0].axiom);
    CHECK(q.steps()[2].pivot == 1);
    CHECK(q.steps()[2].parent1 == 1);
    CHECK(q.steps()[2].parent2 == 2);
    CHECK(write_proof(q) == text);
}

TEST_CASE("proof parser recovers pivots and flags malformed input") {
    // parent order in the file does not matter; orientation is recovered
    ResolutionProof p = parse_proof("1 -1 0 0\n2 1 0 0\n3 0 1 2 0\n");
    CHECK(p.steps()[2].parent1 == 2);
    CHECK(p.steps()[2].parent2 == 1);
    CHECK(p.steps()[2].pivot == 1);

    CHECK_THROWS_AS(parse_proof("1 2 0\n"), FormatError);          // missing parent list
    CHECK_THROWS_AS(parse_proof("1 1 0 0\n2 0 1 0\n"), FormatError);   // one parent
    CHECK_THROWS_AS(parse_proof("1 1 0 0\n2 0 1 1 1 0\n"), FormatError); // three parents
    CHECK_THROWS_AS(parse_proof("1 1 0 0\n2 0 1 7 0\n"), FormatError);  // unknown parent
    CHECK_THROWS_AS(parse_proof("1 1 2 0 0\n2 -1 -2 0 0\n3 0 1 2 0\n"),
                    FormatError); // ambiguous pivot
    CHECK_THROWS_AS(parse_proof("1 1 0 0\n2 2 0 0\n3 0 1 2 0\n"),
                    FormatError); // no clashing variable
    CHECK_THROWS_AS(parse_proof("1 1 0 0 junk\n"), FormatError);
    ResolutionProof c = parse_proof("c comment\n\n1 1 0 0\n");
    CHECK(c.size() == 1);
}

TEST_CASE("proof files round-trip through disk") {
    testutil::TempDir tmp;
    ResolutionProof p = tiny_refutation();
    save_proof(tmp.file("t.trace"), p);
    ResolutionProof q = load_proof(tmp.file("t.trace"));
    CHECK(q.size() == p.size());
    CHECK_THROWS_AS(load_proof(tmp.file("missing.trace")), FileError);
}

TEST_CASE("saturation refutes tiny unsatisfiable inputs") {
    SaturationResult r = saturation_refute(tiny_cnf());
    REQUIRE(r.unsat);
    CHECK(r.proof.size() == 3);
    CHECK(check_refutation(r.proof, tiny_cnf()).ok());

    // an input empty clause is its own refutation
    Cnf withEmpty;
    withEmpty.add(Clause({1}));
    withEmpty.add(Clause());
    SaturationResult e = saturation_refute(withEmpty);
    REQUIRE(e.unsat);
    CHECK(e.proof.size() == 1);
}

TEST_CASE("saturation reports models for satisfiable inputs") {
    Cnf f;
    f.add(Clause({1, 2}));
    SaturationResult r = saturation_refute(f, 2);
    REQUIRE_FALSE(r.unsat);
    CHECK(eval_cnf(f, r.model));

    Cnf g;
    g.add(Clause({1, 2}));
    g.add(Clause({-1, 2}));
    g.add(Clause({-2, 3}));
    SaturationResult s = saturation_refute(g, 3);
    REQUIRE_FALSE(s.unsat);
    CHECK(eval_cnf(g, s.model));

    SaturationResult empty = saturation_refute(Cnf{}, 0);
    CHECK_FALSE(empty.unsat);
}

TEST_CASE("saturation validates blocks and honors the step budget") {
    Cnf f = tiny_cnf();
    CHECK_THROWS_AS(saturation_refute(f, {{1, 1}}), ParamError);
    CHECK_THROWS_AS(saturation_refute(f, {{2}}), ParamError); // var 1 uncovered
    SaturationOptions opts;
    opts.max_steps = 1;
    CHECK_THROWS_AS(saturation_refute(f, 1, opts), BudgetError);
}

TEST_CASE("the oracle refutes the clause family and the checker agrees") {
    for (auto [n, omega, xi] : {std::tuple{3, 2, 1}, {3, 3, 1}, {3, 3, 2}, {4, 2, 1}}) {
        VarSpace vs(n, omega, xi);
        Cnf f = generate_family(vs);
        SaturationResult r = saturation_refute(f, family_elimination_blocks(vs));
        REQUIRE(r.unsat);
        CHECK(check_refutation(r.proof, f).ok());

        // every step is reachable from the root: dead steps were pruned
        std::set<int> used{r.proof.root_id()};
        for (auto it = r.proof.steps().rbegin(); it != r.proof.steps().rend(); ++it)
            if (!it->axiom && used.count(it->id)) {
                used.insert(it->parent1);
                used.insert(it->parent2);
            }
        CHECK(used.size() == r.proof.size());

        // proof text line count equals the step count
        std::string text = write_proof(r.proof);
        size_t lines = 0;
        for (char ch : text)
            if (ch == '\n') ++lines;
        CHECK(lines == r.proof.size());
    }
}

TEST_CASE("mutating any single proof step makes the checker reject") {
    VarSpace vs(3, 2, 1);
    Cnf f = generate_family(vs);
    SaturationResult r = saturation_refute(f, family_elimination_blocks(vs));
    REQUIRE(r.unsat);
    const auto& steps = r.proof.steps();
    for (size_t i = 0; i < steps.size(); ++i) {
        std::vector<ProofStep> mutated(steps.begin(), steps.end());
        ProofStep& s = mutated[i];
        if (s.clause.empty())
            s.clause = Clause({1});
        else {
            std::vector<int> lits = s.clause.lits();
            lits[0] = -lits[0];
            s.clause = Clause(lits);
        }
        CHECK_FALSE(check_refutation(ResolutionProof(std::move(mutated)), f).ok());
    }
}

TEST_CASE("dimacs files round-trip with and without the layout comments") {
    testutil::TempDir tmp;
    VarSpace vs(3, 2, 1);
    Cnf f = generate_family(vs);
    save_dimacs(tmp.file("fam.cnf"), f, vs.num_vars(), vs);
    DimacsFile d = load_dimacs(tmp.file("fam.cnf"));
    CHECK(d.cnf == f);
    CHECK(d.num_vars == 12);
    REQUIRE(d.space.has_value());
    CHECK(d.space->n == 3);
    CHECK(d.space->omega == 2);
    CHECK(d.space->xi == 1);
    CHECK(write_dimacs(d.cnf, d.num_vars, d.space) == read_text_file(tmp.file("fam.cnf")));

    save_dimacs(tmp.file("plain.cnf"), f, 12);
    CHECK_FALSE(load_dimacs(tmp.file("plain.cnf")).space.has_value());
}

TEST_CASE("dimacs parser rejects malformed input") {
    CHECK_THROWS_AS(parse_dimacs("p cnf 2\n1 0\n"), FormatError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), FormatError);  // literal out of range
    CHECK_THROWS_AS(parse_dimacs("p cnf 1 2\n1 0\n"), FormatError);  // clause count mismatch
    CHECK_THROWS_AS(parse_dimacs("1 0\n"), FormatError);             // missing header
    CHECK_THROWS_AS(parse_dimacs("c params n=3 omega=2 xi=1\np cnf 12 0\n"),
                    FormatError); // params without block comments
    DimacsFile multi = parse_dimacs("p cnf 3 2\n1 2\n3 0\n-1\n0\n");
    CHECK(multi.cnf[0] == Clause({1, 2, 3}));
    CHECK(multi.cnf[1] == Clause({-1}));
}
