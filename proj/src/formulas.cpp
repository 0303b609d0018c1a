#include "randres/formulas.hpp"

#include <algorithm>

#include "randres/bitscan.hpp"
#include "randres/errors.hpp"

namespace randres {

namespace {

void require_family_params(const VarSpace& vs, bool unchecked) {
    if (!unchecked && !vs.family_params_ok())
        throw ParamError("family parameters need n >= omega > xi >= 1 (use unchecked to override)");
}

} // namespace

Cnf generate_clique_clauses(const VarSpace& vs, bool unchecked) {
    require_family_params(vs, unchecked);
    Cnf out(true);
    for (int u = 1; u <= vs.omega; ++u) {
        std::vector<int> lits;
        lits.reserve(static_cast<size_t>(vs.n));
        for (int i = 1; i <= vs.n; ++i) lits.push_back(vs.q_var(u, i));
        out.add(Clause(lits));
    }
    for (int u = 1; u <= vs.omega; ++u)
        for (int v = u + 1; v <= vs.omega; ++v)
            for (int i = 1; i <= vs.n; ++i)
                out.add(Clause({-vs.q_var(u, i), -vs.q_var(v, i)}));
    for (int u = 1; u <= vs.omega; ++u)
        for (int v = 1; v <= vs.omega; ++v) {
            if (u == v) continue;
            for (int i = 1; i <= vs.n; ++i)
                for (int j = 1; j <= vs.n; ++j) {
                    if (i == j) continue;
                    out.add(Clause({-vs.q_var(u, i), -vs.q_var(v, j),
                                    vs.p_var(std::min(i, j), std::max(i, j))}));
                }
        }
    return out;
}

Cnf generate_color_clauses(const VarSpace& vs, bool unchecked) {
    require_family_params(vs, unchecked);
    Cnf out(true);
    for (int i = 1; i <= vs.n; ++i) {
        std::vector<int> lits;
        lits.reserve(static_cast<size_t>(vs.xi));
        for (int v = 1; v <= vs.xi; ++v) lits.push_back(vs.r_var(i, v));
        out.add(Clause(lits));
    }
    for (int u = 1; u <= vs.xi; ++u)
        for (int v = u + 1; v <= vs.xi; ++v)
            for (int i = 1; i <= vs.n; ++i)
                out.add(Clause({-vs.r_var(i, u), -vs.r_var(i, v)}));
    for (int v = 1; v <= vs.xi; ++v)
        for (int i = 1; i <= vs.n; ++i)
            for (int j = i + 1; j <= vs.n; ++j)
                out.add(Clause({-vs.r_var(i, v), -vs.r_var(j, v), -vs.p_var(i, j)}));
    return out;
}

Cnf generate_family(const VarSpace& vs, bool unchecked) {
    return Cnf::concat(generate_clique_clauses(vs, unchecked),
                       generate_color_clauses(vs, unchecked));
}

std::optional<CliqueWitness> is_in_U(const Graph& g, const VarSpace& vs) {
    if (g.n() != vs.n) throw ParamError("graph/space vertex count mismatch");
    // lexicographically first increasing omega-subset forming a clique,
    // mapped to slots in order
    std::vector<int> pick;
    auto extend = [&](auto&& self, int from) -> bool {
        if (static_cast<int>(pick.size()) == vs.omega) return true;
        for (int v = from; v <= vs.n; ++v) {
            bool joined = true;
            for (int w : pick)
                if (!g.has_edge(w, v)) { joined = false; break; }
            if (!joined) continue;
            pick.push_back(v);
            if (self(self, v + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!extend(extend, 1)) return std::nullopt;
    return CliqueWitness{pick};
}

std::optional<ColoringWitness> is_in_V(const Graph& g, const VarSpace& vs) {
    if (g.n() != vs.n) throw ParamError("graph/space vertex count mismatch");
    std::vector<int> colors(static_cast<size_t>(vs.n), 0);
    // lexicographically first proper coloring in vertex-major order
    auto extend = [&](auto&& self, int vertex) -> bool {
        if (vertex > vs.n) return true;
        for (int c = 1; c <= vs.xi; ++c) {
            bool clash = false;
            for (int w = 1; w < vertex; ++w)
                if (g.has_edge(w, vertex) && colors[static_cast<size_t>(w) - 1] == c) {
                    clash = true;
                    break;
                }
            if (clash) continue;
            colors[static_cast<size_t>(vertex) - 1] = c;
            if (self(self, vertex + 1)) return true;
        }
        colors[static_cast<size_t>(vertex) - 1] = 0;
        return false;
    };
    if (!extend(extend, 1)) return std::nullopt;
    return ColoringWitness{colors};
}

Assignment witness_assignment(const Graph& g, const CliqueWitness& w, const VarSpace& vs) {
    if (static_cast<int>(w.vertex_of_slot.size()) != vs.omega)
        throw ParamError("clique witness must map every slot");
    for (size_t a = 0; a < w.vertex_of_slot.size(); ++a) {
        int va = w.vertex_of_slot[a];
        if (va < 1 || va > vs.n) throw ParamError("clique witness vertex out of range");
        for (size_t b = a + 1; b < w.vertex_of_slot.size(); ++b) {
            int vb = w.vertex_of_slot[b];
            if (va == vb) throw ParamError("clique witness must be injective");
            if (!g.has_edge(std::min(va, vb), std::max(va, vb)))
                throw ParamError("clique witness image is not a clique");
        }
    }
    Assignment a(vs.num_vars());
    for (int u = 1; u <= vs.omega; ++u)
        for (int i = 1; i <= vs.n; ++i) a.set(vs.q_var(u, i), 0);
    for (int u = 1; u <= vs.omega; ++u)
        a.set(vs.q_var(u, w.vertex_of_slot[static_cast<size_t>(u) - 1]), 1);
    return a;
}

Assignment witness_assignment(const Graph& g, const ColoringWitness& w, const VarSpace& vs) {
    if (static_cast<int>(w.color_of_vertex.size()) != vs.n)
        throw ParamError("coloring witness must color every vertex");
    for (int i = 1; i <= vs.n; ++i) {
        int c = w.color_of_vertex[static_cast<size_t>(i) - 1];
        if (c < 1 || c > vs.xi) throw ParamError("coloring witness color out of range");
        for (int j = i + 1; j <= vs.n; ++j)
            if (g.has_edge(i, j) && c == w.color_of_vertex[static_cast<size_t>(j) - 1])
                throw ParamError("coloring witness is not proper");
    }
    Assignment a(vs.num_vars());
    for (int i = 1; i <= vs.n; ++i)
        for (int v = 1; v <= vs.xi; ++v) a.set(vs.r_var(i, v), 0);
    for (int i = 1; i <= vs.n; ++i)
        a.set(vs.r_var(i, w.color_of_vertex[static_cast<size_t>(i) - 1]), 1);
    return a;
}

Assignment w_assignment(const Graph& v_graph, const Assignment& qwit, const Assignment& rwit,
                        const VarSpace& vs) {
    if (v_graph.n() != vs.n) throw ParamError("graph/space vertex count mismatch");
    if (qwit.num_vars() != vs.num_vars() || rwit.num_vars() != vs.num_vars())
        throw ParamError("witness assignment over a different variable space");
    Assignment a(vs.num_vars());
    v_graph.write_p_block(vs, a);
    for (int x = vs.num_p() + 1; x <= vs.num_p() + vs.num_q(); ++x) a.set(x, qwit.value(x));
    for (int x = vs.num_p() + vs.num_q() + 1; x <= vs.num_vars(); ++x) a.set(x, rwit.value(x));
    return a;
}

std::optional<Assignment> scan_satisfiable(const Cnf& f, int num_vars, uint64_t max_evals) {
    if (num_vars < f.max_var()) throw ParamError("scan_satisfiable: variable count too small");
    if (num_vars > 62 || (uint64_t{1} << num_vars) > max_evals)
        throw BudgetError("scan_satisfiable: assignment space exceeds the evaluation budget");
    auto masks = mask_clauses(f, num_vars);
    for (uint64_t a = 0; a < (uint64_t{1} << num_vars); ++a)
        if (!falsifies_any(a, masks)) return assignment_from_mask(a, num_vars);
    return std::nullopt;
}

bool family_unsatisfiable(const VarSpace& vs, uint64_t max_evals) {
    Cnf clique = generate_clique_clauses(vs, true);
    Cnf color = generate_color_clauses(vs, true);
    int np = vs.num_p(), nq = vs.num_q(), nr = vs.num_r();
    if (np + nq > 62 || np + nr > 62)
        throw BudgetError("family_unsatisfiable: variable blocks too large");
    uint64_t evals = (uint64_t{1} << np) * ((uint64_t{1} << nq) + (uint64_t{1} << nr));
    if (evals > max_evals)
        throw BudgetError("family_unsatisfiable: assignment space exceeds the evaluation budget");
    auto clique_masks = mask_clauses(clique, vs.num_vars());
    auto color_masks = mask_clauses(color, vs.num_vars());
    for (uint64_t p = 0; p < (uint64_t{1} << np); ++p) {
        bool clique_sat = false;
        for (uint64_t q = 0; q < (uint64_t{1} << nq) && !clique_sat; ++q)
            clique_sat = !falsifies_any(p | (q << np), clique_masks);
        if (!clique_sat) continue;
        for (uint64_t r = 0; r < (uint64_t{1} << nr); ++r)
            if (!falsifies_any(p | (r << (np + nq)), color_masks)) return false;
    }
    return true;
}

UVContext UVContext::build(const VarSpace& vs) {
    UVContext ctx{vs, {}, {}, {}, {}};
    for (const Graph& g : Graph::all(vs.n)) {
        if (auto cw = is_in_U(g, vs)) {
            ctx.u_graphs.push_back(g);
            ctx.u_wits.push_back(witness_assignment(g, *cw, vs));
        }
        if (auto col = is_in_V(g, vs)) {
            ctx.v_graphs.push_back(g);
            ctx.v_wits.push_back(witness_assignment(g, *col, vs));
        }
    }
    return ctx;
}

Assignment UVContext::w(int ui, int vi) const {
    return w_assignment(v_graphs.at(static_cast<size_t>(vi)), u_wits.at(static_cast<size_t>(ui)),
                        v_wits.at(static_cast<size_t>(vi)), vs);
}

} // namespace randres
