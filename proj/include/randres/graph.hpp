#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randres/assignment.hpp"
#include "randres/errors.hpp"
#include "randres/varspace.hpp"

namespace randres {

// Undirected loop-free graph on [n], stored as a bitvector over unordered
// pairs in the same order as the p-variables. Bijective with p-assignments.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n, uint64_t edges = 0) : n_(n), edges_(edges) {
        if (n < 1 || n > 11) throw ParamError("Graph: n must be in 1..11");
        if (num_pairs() < 64 && (edges >> num_pairs()) != 0)
            throw ParamError("Graph: edge bits beyond C(n,2)");
    }

    int n() const { return n_; }
    uint64_t bits() const { return edges_; }
    int num_pairs() const { return n_ * (n_ - 1) / 2; }

    bool has_edge(int i, int j) const {
        return (edges_ >> (pair_index(n_, i, j) - 1)) & 1u;
    }

    Graph with_edge(int i, int j) const {
        return Graph(n_, edges_ | (uint64_t{1} << (pair_index(n_, i, j) - 1)));
    }

    int edge_count() const { return __builtin_popcountll(edges_); }

    /// "<n>:<bitstring>", bit order (1,2),(1,3),...,(n-1,n).
    std::string str() const {
        std::string s = std::to_string(n_) + ":";
        for (int t = 0; t < num_pairs(); ++t) s += ((edges_ >> t) & 1u) ? '1' : '0';
        return s;
    }

    static Graph parse(const std::string& s) {
        auto colon = s.find(':');
        if (colon == std::string::npos) throw FormatError("graph: missing ':' in '" + s + "'");
        int n = 0;
        try {
            n = std::stoi(s.substr(0, colon));
        } catch (const std::exception&) {
            throw FormatError("graph: bad vertex count in '" + s + "'");
        }
        if (n < 1 || n > 11) throw FormatError("graph: n must be in 1..11");
        std::string bitstr = s.substr(colon + 1);
        int np = n * (n - 1) / 2;
        if (static_cast<int>(bitstr.size()) != np)
            throw FormatError("graph: expected " + std::to_string(np) + " bits");
        uint64_t bits = 0;
        for (int t = 0; t < np; ++t) {
            if (bitstr[static_cast<size_t>(t)] == '1')
                bits |= uint64_t{1} << t;
            else if (bitstr[static_cast<size_t>(t)] != '0')
                throw FormatError("graph: bitstring must be 0/1");
        }
        return Graph(n, bits);
    }

    /// All 2^C(n,2) graphs in increasing bit-pattern order.
    static std::vector<Graph> all(int n) {
        Graph probe(n);
        if (probe.num_pairs() > 30) throw BudgetError("Graph::all: too many graphs");
        std::vector<Graph> out;
        out.reserve(size_t{1} << probe.num_pairs());
        for (uint64_t m = 0; m < (uint64_t{1} << probe.num_pairs()); ++m)
            out.emplace_back(n, m);
        return out;
    }

    /// Writes this graph into the p-block of an assignment over vs.
    void write_p_block(const VarSpace& vs, Assignment& a) const {
        if (vs.n != n_) throw ParamError("graph/space vertex count mismatch");
        for (int t = 1; t <= num_pairs(); ++t) a.set(t, (edges_ >> (t - 1)) & 1u);
    }

    static Graph from_p_block(const VarSpace& vs, const Assignment& a) {
        Graph g(vs.n);
        for (int t = 1; t <= g.num_pairs(); ++t)
            if (a.value(t)) g.edges_ |= uint64_t{1} << (t - 1);
        return g;
    }

    bool operator==(const Graph&) const = default;

private:
    int n_ = 1;
    uint64_t edges_ = 0;
};

} // namespace randres
