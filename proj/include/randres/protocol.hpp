#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randres/clause.hpp"
#include "randres/formulas.hpp"
#include "randres/graph.hpp"
#include "randres/resolution.hpp"
#include "randres/varspace.hpp"

namespace randres {

enum class AxiomOrigin {
    CliqueCover,    // {q(u,1..n)}
    CliqueDisjoint, // {-q(u,i), -q(v,i)}
    CliqueEdge,     // {-q(u,i), -q(v,j), p{i,j}}
    ColorCover,     // {r(i,1..xi)}
    ColorUnique,    // {-r(i,u), -r(i,v)}
    ColorEdge,      // {-r(i,v), -r(j,v), -p{i,j}}
    Extra           // clause of the sample's delta set
};

const char* axiom_origin_name(AxiomOrigin o);

/// Structural classification against the family patterns, falling back to
/// membership in extra. Throws ParamError if the clause matches nothing.
AxiomOrigin classify_axiom(const Clause& c, const VarSpace& vs, const Cnf& extra);

struct KwNode {
    enum class Kind { Inner, Leaf, Terminal } kind = Kind::Inner;
    // inner nodes mirror one proof step
    Clause clause;
    bool axiom = false;
    AxiomOrigin origin = AxiomOrigin::Extra;
    int parent1 = 0; // node ids
    int parent2 = 0;
    int pivot = 0;
    // leaves carry an unordered vertex pair
    std::pair<int, int> edge{0, 0};
};

// Game dag: inner nodes 1..k in proof order, then one leaf per vertex pair,
// then the single terminal for the extra-clause outcome. size() counts the
// graph part only (inner + leaves).
class KWProtocol {
public:
    KWProtocol(VarSpace vs, std::vector<KwNode> nodes, int root, int k, Cnf extra);

    const VarSpace& space() const { return vs_; }
    const KwNode& node(int id) const { return nodes_.at(static_cast<size_t>(id) - 1); }
    int num_nodes() const { return static_cast<int>(nodes_.size()); } // incl. terminal
    int size() const { return num_nodes() - 1; }
    int root() const { return root_; }
    int terminal() const { return num_nodes(); }
    int num_inner() const { return k_; }
    int leaf_id(int i, int j) const { return k_ + pair_index(vs_.n, i, j); }
    const Cnf& extra() const { return extra_; }

private:
    VarSpace vs_;
    std::vector<KwNode> nodes_;
    int root_ = 0;
    int k_ = 0;
    Cnf extra_;
};

/// One inner node per proof step plus all pair leaves and the terminal.
/// Axioms are tagged via `tags` (parallel to proof steps, checked against
/// the structural patterns) or classified automatically when absent.
KWProtocol build_protocol(const ResolutionProof& proof, const VarSpace& vs, const Cnf& extra,
                          const std::vector<AxiomOrigin>* tags = nullptr);

struct GameContext {
    Graph u, v;
    CliqueWitness uw;
    ColoringWitness vw;
    Assignment w; // total assignment (p := v, q := q^u, r := r^v)

    static GameContext make(const VarSpace& vs, const Graph& u, const Graph& v);
    static GameContext from_uv(const UVContext& ctx, int ui, int vi);
};

struct ProtocolResult {
    bool bottom = false;
    std::pair<int, int> edge{0, 0};

    bool operator==(const ProtocolResult&) const = default;
};

bool consistency(const KWProtocol& pr, int node_id, const GameContext& ctx);
int strategy_step(const KWProtocol& pr, int node_id, const GameContext& ctx);

struct RunTrace {
    std::vector<int> visited; // node ids from the root inclusive
    ProtocolResult result;
};

RunTrace run_protocol(const KWProtocol& pr, const GameContext& ctx);

std::string trace_json(const RunTrace& t);

struct NodeCost {
    int node = 0;
    int consistency_bits = 0;
    int strategy_bits = 0;   // realized by the walk
    int strategy_budget = 0; // worst-case allowance at this node
};

struct CommCostReport {
    std::vector<NodeCost> nodes;
    int max_consistency = 0;
    int max_strategy = 0; // max budget
    int consistency_bound = 0;
    int strategy_bound = 0;
    bool within_bounds = false;
};

/// Bit accounting: consistency needs one announcement per player at clause
/// nodes and leaves and nothing new at the terminal; strategy needs one bit
/// from the pivot owner at a resolve node, a budget of 2*ceil(log2 n) for
/// naming a leaf (realized 0: the edge is node-determined), and nothing at
/// an extra-clause axiom.
CommCostReport comm_cost(const KWProtocol& pr);

} // namespace randres
