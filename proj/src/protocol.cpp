#include "randres/protocol.hpp"

#include <algorithm>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "randres/errors.hpp"

namespace randres {

const char* axiom_origin_name(AxiomOrigin o) {
    switch (o) {
        case AxiomOrigin::CliqueCover: return "clique-cover";
        case AxiomOrigin::CliqueDisjoint: return "clique-disjoint";
        case AxiomOrigin::CliqueEdge: return "clique-edge";
        case AxiomOrigin::ColorCover: return "color-cover";
        case AxiomOrigin::ColorUnique: return "color-unique";
        case AxiomOrigin::ColorEdge: return "color-edge";
        case AxiomOrigin::Extra: return "extra";
    }
    return "unknown";
}

namespace {

bool matches_origin(const Clause& c, const VarSpace& vs, const Cnf& extra, AxiomOrigin o) {
    const auto& lits = c.lits();
    switch (o) {
        case AxiomOrigin::CliqueCover: {
            if (static_cast<int>(lits.size()) != vs.n || vs.n == 0) return false;
            int slot = 0;
            std::vector<bool> seen(static_cast<size_t>(vs.n) + 1, false);
            for (int lit : lits) {
                if (lit < 0 || !vs.valid_var(lit) || vs.block_of(lit) != Block::Q) return false;
                auto [u, i] = vs.q_index(lit);
                if (slot == 0) slot = u;
                if (u != slot || seen[static_cast<size_t>(i)]) return false;
                seen[static_cast<size_t>(i)] = true;
            }
            return true;
        }
        case AxiomOrigin::CliqueDisjoint: {
            if (lits.size() != 2) return false;
            for (int lit : lits)
                if (lit > 0 || !vs.valid_var(-lit) || vs.block_of(-lit) != Block::Q) return false;
            auto a = vs.q_index(-lits[0]), b = vs.q_index(-lits[1]);
            return a.first != b.first && a.second == b.second;
        }
        case AxiomOrigin::CliqueEdge: {
            if (lits.size() != 3) return false;
            std::vector<std::pair<int, int>> qs;
            int p = 0;
            for (int lit : lits) {
                if (!vs.valid_var(lit_var(lit))) return false;
                Block blk = vs.block_of(lit_var(lit));
                if (blk == Block::Q && lit < 0) qs.push_back(vs.q_index(-lit));
                else if (blk == Block::P && lit > 0 && p == 0) p = lit;
                else return false;
            }
            if (qs.size() != 2 || p == 0) return false;
            auto [i, j] = vs.p_pair(p);
            if (qs[0].first == qs[1].first) return false;
            return (qs[0].second == i && qs[1].second == j) ||
                   (qs[0].second == j && qs[1].second == i);
        }
        case AxiomOrigin::ColorCover: {
            if (static_cast<int>(lits.size()) != vs.xi || vs.xi == 0) return false;
            int vertex = 0;
            std::vector<bool> seen(static_cast<size_t>(vs.xi) + 1, false);
            for (int lit : lits) {
                if (lit < 0 || !vs.valid_var(lit) || vs.block_of(lit) != Block::R) return false;
                auto [i, v] = vs.r_index(lit);
                if (vertex == 0) vertex = i;
                if (i != vertex || seen[static_cast<size_t>(v)]) return false;
                seen[static_cast<size_t>(v)] = true;
            }
            return true;
        }
        case AxiomOrigin::ColorUnique: {
            if (lits.size() != 2) return false;
            for (int lit : lits)
                if (lit > 0 || !vs.valid_var(-lit) || vs.block_of(-lit) != Block::R) return false;
            auto a = vs.r_index(-lits[0]), b = vs.r_index(-lits[1]);
            return a.first == b.first && a.second != b.second;
        }
        case AxiomOrigin::ColorEdge: {
            if (lits.size() != 3) return false;
            std::vector<std::pair<int, int>> rs;
            int p = 0;
            for (int lit : lits) {
                if (lit > 0 || !vs.valid_var(-lit)) return false;
                Block blk = vs.block_of(-lit);
                if (blk == Block::R) rs.push_back(vs.r_index(-lit));
                else if (blk == Block::P && p == 0) p = -lit;
                else return false;
            }
            if (rs.size() != 2 || p == 0) return false;
            auto [i, j] = vs.p_pair(p);
            if (rs[0].second != rs[1].second) return false;
            return (rs[0].first == i && rs[1].first == j) ||
                   (rs[0].first == j && rs[1].first == i);
        }
        case AxiomOrigin::Extra:
            return extra.contains(c);
    }
    return false;
}

constexpr AxiomOrigin kOriginOrder[] = {
    AxiomOrigin::CliqueCover, AxiomOrigin::CliqueDisjoint, AxiomOrigin::CliqueEdge,
    AxiomOrigin::ColorCover,  AxiomOrigin::ColorUnique,    AxiomOrigin::ColorEdge,
    AxiomOrigin::Extra,
};

int ceil_log2(int n) {
    int bits = 0;
    while ((1 << bits) < n) ++bits;
    return bits;
}

} // namespace

AxiomOrigin classify_axiom(const Clause& c, const VarSpace& vs, const Cnf& extra) {
    for (AxiomOrigin o : kOriginOrder)
        if (matches_origin(c, vs, extra, o)) return o;
    throw ParamError("axiom " + c.str() + " is neither a family clause nor an extra clause");
}

KWProtocol::KWProtocol(VarSpace vs, std::vector<KwNode> nodes, int root, int k, Cnf extra)
    : vs_(vs), nodes_(std::move(nodes)), root_(root), k_(k), extra_(std::move(extra)) {}

KWProtocol build_protocol(const ResolutionProof& proof, const VarSpace& vs, const Cnf& extra,
                          const std::vector<AxiomOrigin>* tags) {
    if (proof.empty()) throw ParamError("cannot build a protocol from an empty proof");
    if (tags && tags->size() != proof.size())
        throw ParamError("axiom tag list must parallel the proof steps");
    std::vector<KwNode> nodes;
    nodes.reserve(proof.size() + static_cast<size_t>(vs.num_p()) + 1);
    std::unordered_map<int, int> node_of_step;
    for (size_t idx = 0; idx < proof.size(); ++idx) {
        const ProofStep& s = proof.steps()[idx];
        KwNode node;
        node.kind = KwNode::Kind::Inner;
        node.clause = s.clause;
        node.axiom = s.axiom;
        if (s.axiom) {
            if (tags) {
                node.origin = (*tags)[idx];
                if (!matches_origin(s.clause, vs, extra, node.origin))
                    throw ParamError("axiom " + s.clause.str() + " does not fit the tag " +
                                     axiom_origin_name(node.origin));
            } else {
                node.origin = classify_axiom(s.clause, vs, extra);
            }
        } else {
            node.parent1 = node_of_step.at(s.parent1);
            node.parent2 = node_of_step.at(s.parent2);
            node.pivot = s.pivot;
        }
        node_of_step[s.id] = static_cast<int>(nodes.size()) + 1;
        nodes.push_back(std::move(node));
    }
    int k = static_cast<int>(proof.size());
    for (int t = 1; t <= vs.num_p(); ++t) {
        KwNode leaf;
        leaf.kind = KwNode::Kind::Leaf;
        leaf.edge = pair_of_index(vs.n, t);
        nodes.push_back(std::move(leaf));
    }
    KwNode terminal;
    terminal.kind = KwNode::Kind::Terminal;
    nodes.push_back(std::move(terminal));
    return KWProtocol(vs, std::move(nodes), node_of_step.at(proof.root_id()), k, extra);
}

GameContext GameContext::make(const VarSpace& vs, const Graph& u, const Graph& v) {
    auto cw = is_in_U(u, vs);
    if (!cw) throw ParamError("left graph has no clique of the required size");
    auto col = is_in_V(v, vs);
    if (!col) throw ParamError("right graph is not colorable with the available colors");
    Assignment qw = witness_assignment(u, *cw, vs);
    Assignment rw = witness_assignment(v, *col, vs);
    return GameContext{u, v, *cw, *col, w_assignment(v, qw, rw, vs)};
}

GameContext GameContext::from_uv(const UVContext& ctx, int ui, int vi) {
    return make(ctx.vs, ctx.u_graphs.at(static_cast<size_t>(ui)),
                ctx.v_graphs.at(static_cast<size_t>(vi)));
}

bool consistency(const KWProtocol& pr, int node_id, const GameContext& ctx) {
    const KwNode& node = pr.node(node_id);
    switch (node.kind) {
        case KwNode::Kind::Inner:
            return !eval_clause(node.clause, ctx.w);
        case KwNode::Kind::Leaf: {
            auto [i, j] = node.edge;
            return ctx.u.has_edge(i, j) && !ctx.v.has_edge(i, j);
        }
        case KwNode::Kind::Terminal:
            return !eval_cnf(pr.extra(), ctx.w);
    }
    return false;
}

int strategy_step(const KWProtocol& pr, int node_id, const GameContext& ctx) {
    const KwNode& node = pr.node(node_id);
    if (node.kind != KwNode::Kind::Inner)
        throw ParamError("strategy is defined on clause nodes only");
    if (!consistency(pr, node_id, ctx))
        throw ParamError("strategy asked at a node whose clause the pair satisfies");
    int next = 0;
    if (!node.axiom) {
        next = ctx.w.value(node.pivot) ? node.parent2 : node.parent1;
    } else {
        switch (node.origin) {
            case AxiomOrigin::CliqueEdge: {
                int p = 0;
                for (int lit : node.clause.lits())
                    if (lit > 0) p = lit;
                auto [i, j] = pr.space().p_pair(p);
                next = pr.leaf_id(i, j);
                break;
            }
            case AxiomOrigin::Extra:
                next = pr.terminal();
                break;
            default:
                throw Error("protocol walk reached a " +
                            std::string(axiom_origin_name(node.origin)) +
                            " clause, which no witnessed pair falsifies; this is a bug");
        }
    }
    if (!consistency(pr, next, ctx))
        throw Error("strategy destination fails the consistency condition; this is a bug");
    return next;
}

RunTrace run_protocol(const KWProtocol& pr, const GameContext& ctx) {
    RunTrace trace;
    int current = pr.root();
    trace.visited.push_back(current);
    while (pr.node(current).kind == KwNode::Kind::Inner) {
        current = strategy_step(pr, current, ctx);
        trace.visited.push_back(current);
    }
    const KwNode& last = pr.node(current);
    if (last.kind == KwNode::Kind::Leaf) {
        trace.result.edge = last.edge;
    } else {
        trace.result.bottom = true;
    }
    return trace;
}

std::string trace_json(const RunTrace& t) {
    nlohmann::ordered_json doc;
    doc["visited"] = t.visited;
    if (t.result.bottom) {
        doc["result"] = "bottom";
    } else {
        doc["result"] = nlohmann::ordered_json::array({t.result.edge.first, t.result.edge.second});
    }
    return doc.dump(2) + "\n";
}

CommCostReport comm_cost(const KWProtocol& pr) {
    CommCostReport report;
    int leaf_budget = 2 * ceil_log2(pr.space().n);
    for (int id = 1; id <= pr.num_nodes(); ++id) {
        const KwNode& node = pr.node(id);
        NodeCost cost;
        cost.node = id;
        switch (node.kind) {
            case KwNode::Kind::Inner:
                cost.consistency_bits = 2;
                if (!node.axiom) {
                    cost.strategy_bits = 1;
                    cost.strategy_budget = 1;
                } else if (node.origin == AxiomOrigin::CliqueEdge) {
                    cost.strategy_bits = 0; // the landing leaf is fixed by the clause
                    cost.strategy_budget = leaf_budget;
                }
                break;
            case KwNode::Kind::Leaf:
                cost.consistency_bits = 2;
                break;
            case KwNode::Kind::Terminal:
                // established by the extra-clause axiom that routed here
                cost.consistency_bits = 0;
                break;
        }
        report.max_consistency = std::max(report.max_consistency, cost.consistency_bits);
        report.max_strategy = std::max(report.max_strategy, cost.strategy_budget);
        report.nodes.push_back(cost);
    }
    report.consistency_bound = 2;
    report.strategy_bound = 2 + 2 * ceil_log2(pr.space().n);
    report.within_bounds = report.max_consistency <= report.consistency_bound &&
                           report.max_strategy <= report.strategy_bound;
    return report;
}

} // namespace randres
