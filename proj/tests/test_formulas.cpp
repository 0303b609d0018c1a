#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "randres/formulas.hpp"
#include "randres/graph.hpp"
#include "randres/varspace.hpp"

using namespace randres;

namespace {

int choose2(int m) { return m * (m - 1) / 2; }

// Clique existence decided independently of is_in_U: try every vertex subset.
bool has_clique(const Graph& g, int omega) {
    int n = g.n();
    for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(mask) != omega) continue;
        bool ok = true;
        for (int i = 1; i <= n && ok; ++i)
            for (int j = i + 1; j <= n && ok; ++j)
                if ((mask >> (i - 1) & 1) && (mask >> (j - 1) & 1) && !g.has_edge(i, j)) ok = false;
        if (ok) return true;
    }
    return false;
}

// Colorability decided independently of is_in_V: try every color vector.
bool colorable(const Graph& g, int xi) {
    int n = g.n();
    std::vector<int> color(static_cast<size_t>(n), 0);
    for (;;) {
        bool proper = true;
        for (int i = 1; i <= n && proper; ++i)
            for (int j = i + 1; j <= n && proper; ++j)
                if (g.has_edge(i, j) && color[i - 1] == color[j - 1]) proper = false;
        if (proper) return true;
        int pos = 0;
        while (pos < n && color[pos] == xi - 1) color[pos++] = 0;
        if (pos == n) return false;
        ++color[pos];
    }
}

} // namespace

TEST_CASE("pair indexing is a bijection in row-major order") {
    CHECK(pair_index(3, 1, 2) == 1);
    CHECK(pair_index(3, 1, 3) == 2);
    CHECK(pair_index(3, 2, 3) == 3);
    CHECK(pair_index(3, 3, 2) == 3); // unordered
    for (int n = 2; n <= 6; ++n) {
        int t = 0;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) {
                ++t;
                CHECK(pair_index(n, i, j) == t);
                CHECK(pair_of_index(n, t) == std::pair<int, int>{i, j});
            }
    }
    CHECK_THROWS_AS(pair_index(3, 2, 2), ParamError);
    CHECK_THROWS_AS(pair_of_index(3, 4), ParamError);
}

TEST_CASE("variable blocks are laid out p then q then r") {
    VarSpace vs(3, 2, 1);
    CHECK(vs.num_p() == 3);
    CHECK(vs.num_q() == 6);
    CHECK(vs.num_r() == 3);
    CHECK(vs.num_vars() == 12);
    CHECK(vs.p_var(1, 2) == 1);
    CHECK(vs.q_var(1, 1) == 4);
    CHECK(vs.q_var(2, 3) == 9);
    CHECK(vs.r_var(1, 1) == 10);
    CHECK(vs.r_var(3, 1) == 12);
    CHECK(vs.block_of(1) == Block::P);
    CHECK(vs.block_of(4) == Block::Q);
    CHECK(vs.block_of(12) == Block::R);
    CHECK_THROWS_AS(vs.block_of(13), ParamError);

    // round trips
    for (int v = 1; v <= vs.num_p(); ++v) {
        auto [i, j] = vs.p_pair(v);
        CHECK(vs.p_var(i, j) == v);
    }
    for (int u = 1; u <= vs.omega; ++u)
        for (int i = 1; i <= vs.n; ++i) {
            auto [uu, ii] = vs.q_index(vs.q_var(u, i));
            CHECK(uu == u);
            CHECK(ii == i);
        }
    for (int i = 1; i <= vs.n; ++i)
        for (int c = 1; c <= vs.xi; ++c) {
            auto [ii, cc] = vs.r_index(vs.r_var(i, c));
            CHECK(ii == i);
            CHECK(cc == c);
        }
    CHECK(vs.family_params_ok());
    CHECK_FALSE(VarSpace(3, 1, 1).family_params_ok());
    CHECK_FALSE(VarSpace(2, 3, 1).family_params_ok());
}

TEST_CASE("clauses canonicalize, deduplicate and detect tautologies") {
    Clause c({3, -1, 3, 2});
    CHECK(c.lits() == std::vector<int>{-1, 2, 3});
    CHECK(c.contains(3));
    CHECK(c.contains(-1));
    CHECK_FALSE(c.contains(1));
    CHECK(c.has_var(1));
    CHECK_FALSE(c.is_tautological());
    CHECK(Clause({2, -2}).is_tautological());
    CHECK_THROWS_AS(Clause({0}), ParamError);
    CHECK(Clause({1, 2}) == Clause({2, 1, 2}));
    CHECK(Clause().empty());

    Cnf dedup(true);
    dedup.add(Clause({1, 2}));
    dedup.add(Clause({2, 1}));
    dedup.add(Clause({1, 3}));
    CHECK(dedup.size() == 2);
    Cnf plain;
    plain.add(Clause({1, 2}));
    plain.add(Clause({1, 2}));
    CHECK(plain.size() == 2);
}

TEST_CASE("clause family counts match closed forms and contain the expected members") {
    // clique side: omega cover rows, C(omega,2)*n same-vertex exclusions,
    // C(omega,2)*n*(n-1) edge clauses (ordered slot-vertex combinations,
    // duplicates collapsed)
    for (int n = 2; n <= 5; ++n)
        for (int omega = 1; omega <= n; ++omega) {
            VarSpace vs(n, omega, 1);
            Cnf cl = generate_clique_clauses(vs, true);
            int expected = omega + choose2(omega) * n + choose2(omega) * n * (n - 1);
            CHECK(cl.size() == expected);
            std::set<Clause> distinct(cl.clauses().begin(), cl.clauses().end());
            CHECK(static_cast<int>(distinct.size()) == cl.size());
        }
    for (int n = 2; n <= 5; ++n)
        for (int xi = 1; xi <= n; ++xi) {
            VarSpace vs(n, n, xi);
            Cnf co = generate_color_clauses(vs, true);
            int expected = n + n * choose2(xi) + xi * choose2(n);
            CHECK(co.size() == expected);
        }

    VarSpace vs(3, 2, 1);
    CHECK(generate_clique_clauses(vs).size() == 11);
    CHECK(generate_color_clauses(vs).size() == 6);
    CHECK(generate_color_clauses(VarSpace(3, 3, 2), true).size() == 12);
    CHECK(generate_family(vs).size() == 17);

    // spot members: an edge clause and a color-edge clause
    Cnf cl = generate_clique_clauses(vs);
    CHECK(cl.contains(Clause({-vs.q_var(1, 1), -vs.q_var(2, 2), vs.p_var(1, 2)})));
    Cnf co = generate_color_clauses(vs);
    CHECK(co.contains(Clause({-vs.r_var(1, 1), -vs.r_var(2, 1), -vs.p_var(1, 2)})));

    CHECK_THROWS_AS(generate_family(VarSpace(3, 1, 1)), ParamError);
    CHECK_NOTHROW(generate_family(VarSpace(3, 1, 1), true));
}

TEST_CASE("U and V membership agree with brute-force search") {
    for (int n = 2; n <= 4; ++n)
        for (int omega = 1; omega <= n; ++omega)
            for (const Graph& g : Graph::all(n)) {
                VarSpace vs(n, omega, 1);
                auto w = is_in_U(g, vs);
                CHECK(w.has_value() == has_clique(g, omega));
                if (w) {
                    // witness image really is a clique, in increasing order
                    for (size_t a = 0; a < w->vertex_of_slot.size(); ++a)
                        for (size_t b = a + 1; b < w->vertex_of_slot.size(); ++b) {
                            CHECK(w->vertex_of_slot[a] < w->vertex_of_slot[b]);
                            CHECK(g.has_edge(w->vertex_of_slot[a], w->vertex_of_slot[b]));
                        }
                }
            }
    for (int n = 2; n <= 4; ++n)
        for (int xi = 1; xi <= 3; ++xi)
            for (const Graph& g : Graph::all(n)) {
                VarSpace vs(n, n, xi > n ? n : xi);
                auto w = is_in_V(g, vs);
                CHECK(w.has_value() == colorable(g, vs.xi));
                if (w)
                    for (int i = 1; i <= n; ++i)
                        for (int j = i + 1; j <= n; ++j)
                            if (g.has_edge(i, j))
                                CHECK(w->color_of_vertex[static_cast<size_t>(i) - 1] !=
                                      w->color_of_vertex[static_cast<size_t>(j) - 1]);
            }
}

TEST_CASE("U grows and V shrinks when edges are added") {
    VarSpace vs(4, 3, 2);
    for (const Graph& g : Graph::all(4))
        for (int i = 1; i <= 4; ++i)
            for (int j = i + 1; j <= 4; ++j) {
                Graph h = g.with_edge(i, j);
                if (is_in_U(g, vs)) CHECK(is_in_U(h, vs).has_value());
                if (is_in_V(h, vs)) CHECK(is_in_V(g, vs).has_value());
            }
}

TEST_CASE("witness assignments satisfy their side of the family") {
    for (int n = 2; n <= 4; ++n)
        for (int omega = 1; omega <= n; ++omega)
            for (int xi = 1; xi <= omega; ++xi) {
                VarSpace vs(n, omega, xi);
                Cnf clique = generate_clique_clauses(vs, true);
                Cnf color = generate_color_clauses(vs, true);
                for (const Graph& g : Graph::all(n)) {
                    if (auto cw = is_in_U(g, vs)) {
                        Assignment a(vs.num_vars());
                        g.write_p_block(vs, a);
                        Assignment q = witness_assignment(g, *cw, vs);
                        for (int v = vs.num_p() + 1; v <= vs.num_p() + vs.num_q(); ++v)
                            a.set(v, q.value(v));
                        for (const Clause& c : clique.clauses()) CHECK(eval_clause(c, a));
                    }
                    if (auto rw = is_in_V(g, vs)) {
                        Assignment a(vs.num_vars());
                        g.write_p_block(vs, a);
                        Assignment r = witness_assignment(g, *rw, vs);
                        for (int v = vs.num_p() + vs.num_q() + 1; v <= vs.num_vars(); ++v)
                            a.set(v, r.value(v));
                        for (const Clause& c : color.clauses()) CHECK(eval_clause(c, a));
                    }
                }
            }
}

TEST_CASE("witness assignment for the single-edge graph pins the expected bits") {
    VarSpace vs(3, 2, 1);
    Graph g(3);
    g = g.with_edge(1, 2);
    auto w = is_in_U(g, vs);
    REQUIRE(w.has_value());
    CHECK(w->vertex_of_slot == std::vector<int>{1, 2});
    Assignment q = witness_assignment(g, *w, vs);
    CHECK(q.value(vs.q_var(1, 1)) == 1);
    CHECK(q.value(vs.q_var(2, 2)) == 1);
    CHECK(q.value(vs.q_var(1, 2)) == 0);
    CHECK(q.value(vs.q_var(1, 3)) == 0);
    CHECK(q.value(vs.q_var(2, 1)) == 0);
    CHECK(q.value(vs.q_var(2, 3)) == 0);
    CHECK_FALSE(q.is_set(1)); // p-block untouched
}

TEST_CASE("triangle needs three colors and gets the identity coloring") {
    VarSpace vs(3, 3, 3);
    Graph triangle(3, 0b111);
    CHECK_FALSE(is_in_V(triangle, VarSpace(3, 3, 2)).has_value());
    auto w = is_in_V(triangle, vs);
    REQUIRE(w.has_value());
    CHECK(w->color_of_vertex == std::vector<int>{1, 2, 3});
}

TEST_CASE("graphs round-trip through the p-block") {
    VarSpace vs(4, 2, 1);
    for (const Graph& g : Graph::all(4)) {
        Assignment a(vs.num_vars());
        g.write_p_block(vs, a);
        CHECK(Graph::from_p_block(vs, a) == g);
    }
    CHECK(Graph::parse("3:101") == Graph(3, 0b101));
    CHECK(Graph(3, 0b101).str() == "3:101");
    CHECK_THROWS_AS(Graph::parse("3:10"), FormatError);
    CHECK_THROWS_AS(Graph::parse("nope"), FormatError);
}

TEST_CASE("assignment scan finds the first model in bit order") {
    Cnf f;
    f.add(Clause({1, 2}));
    auto m = scan_satisfiable(f, 2);
    REQUIRE(m.has_value());
    CHECK(m->value(1) == 1);
    CHECK(m->value(2) == 0);

    Cnf g;
    g.add(Clause({1}));
    g.add(Clause({-1}));
    CHECK_FALSE(scan_satisfiable(g, 1).has_value());

    CHECK_THROWS_AS(scan_satisfiable(f, 2, 2), BudgetError);
}

TEST_CASE("the clique-coloring family is unsatisfiable and the blockwise scan agrees") {
    // blockwise result vs plain scan where the plain scan is affordable
    for (int n = 2; n <= 3; ++n)
        for (int omega = 1; omega <= n; ++omega)
            for (int xi = 1; xi <= omega; ++xi) {
                VarSpace vs(n, omega, xi);
                Cnf f = generate_family(vs, true);
                bool direct = !scan_satisfiable(f, vs.num_vars()).has_value();
                CHECK(family_unsatisfiable(vs) == direct);
            }
    CHECK(family_unsatisfiable(VarSpace(4, 2, 1)) ==
          !scan_satisfiable(generate_family(VarSpace(4, 2, 1)), 18).has_value());
    // valid parameters force unsatisfiability; a violating pair does not
    CHECK(family_unsatisfiable(VarSpace(3, 2, 1)));
    CHECK_FALSE(family_unsatisfiable(VarSpace(3, 2, 2)));
}
