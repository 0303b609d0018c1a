#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "randres/assignment.hpp"
#include "randres/clause.hpp"
#include "randres/graph.hpp"
#include "randres/varspace.hpp"

namespace randres {

// Injective slot -> vertex map whose image is a clique.
struct CliqueWitness {
    std::vector<int> vertex_of_slot; // size omega, entries in [n]
};

// Proper coloring, one color per vertex.
struct ColoringWitness {
    std::vector<int> color_of_vertex; // size n, entries in [xi]
};

Cnf generate_clique_clauses(const VarSpace& vs, bool unchecked = false);
Cnf generate_color_clauses(const VarSpace& vs, bool unchecked = false);
Cnf generate_family(const VarSpace& vs, bool unchecked = false);

std::optional<CliqueWitness> is_in_U(const Graph& g, const VarSpace& vs);
std::optional<ColoringWitness> is_in_V(const Graph& g, const VarSpace& vs);

/// Partial assignment covering exactly the q-block; one 1 per slot row.
Assignment witness_assignment(const Graph& g, const CliqueWitness& w, const VarSpace& vs);
/// Partial assignment covering exactly the r-block; one 1 per vertex row.
Assignment witness_assignment(const Graph& g, const ColoringWitness& w, const VarSpace& vs);

/// Total assignment (p := v_graph, q := q-block of qwit, r := r-block of rwit).
Assignment w_assignment(const Graph& v_graph, const Assignment& qwit, const Assignment& rwit,
                        const VarSpace& vs);

inline bool eval_clause(const Clause& c, const Assignment& a) {
    for (int lit : c.lits())
        if (a.sat_lit(lit)) return true;
    return false;
}

inline bool eval_cnf(const Cnf& f, const Assignment& a) {
    for (const Clause& c : f.clauses())
        if (!eval_clause(c, a)) return false;
    return true;
}

/// First satisfying assignment in increasing bit-pattern order, or nothing.
std::optional<Assignment> scan_satisfiable(const Cnf& f, int num_vars,
                                           uint64_t max_evals = uint64_t{1} << 26);

/// Exhaustive unsatisfiability scan for the clique/color family, factored by
/// block: a total assignment exists iff some p-part admits both a q-part
/// satisfying the clique clauses and an r-part satisfying the color clauses.
bool family_unsatisfiable(const VarSpace& vs, uint64_t max_evals = uint64_t{1} << 26);

// U and V fully enumerated with their deterministic witnesses, plus the
// cached witness assignment blocks used by protocols and rectangles.
struct UVContext {
    VarSpace vs;
    std::vector<Graph> u_graphs;
    std::vector<Graph> v_graphs;
    std::vector<Assignment> u_wits; // q-block partials, parallel to u_graphs
    std::vector<Assignment> v_wits; // r-block partials, parallel to v_graphs

    static UVContext build(const VarSpace& vs);

    /// w(u,v) for the i-th U graph and j-th V graph.
    Assignment w(int ui, int vi) const;
};

} // namespace randres
