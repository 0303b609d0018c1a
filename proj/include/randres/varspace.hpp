#pragma once

#include <utility>

#include "randres/errors.hpp"

namespace randres {

/// 1-based index of the unordered pair {i,j} within 1..C(n,2), in the order
/// (1,2),(1,3),...,(1,n),(2,3),...,(n-1,n).
inline int pair_index(int n, int i, int j) {
    if (i == j || i < 1 || j < 1 || i > n || j > n)
        throw ParamError("pair_index: bad vertex pair");
    if (i > j) std::swap(i, j);
    // pairs starting with vertices < i, plus offset within row i
    return (i - 1) * n - (i - 1) * i / 2 + (j - i);
}

inline std::pair<int, int> pair_of_index(int n, int t) {
    if (t < 1 || t > n * (n - 1) / 2) throw ParamError("pair_of_index: out of range");
    int i = 1;
    while (t > n - i) {
        t -= n - i;
        ++i;
    }
    return {i, i + t};
}

enum class Block { P, Q, R };

// Tri-partitioned variable universe over vertices [n], clique slots [omega]
// and colors [xi]. Variable ids are 1-based DIMACS ids, assigned block-wise:
// the p-block (one var per unordered vertex pair), then the q-block in
// (slot, vertex) order, then the r-block in (vertex, color) order.
struct VarSpace {
    int n = 0;
    int omega = 0;
    int xi = 0;

    VarSpace() = default;
    VarSpace(int n_, int omega_, int xi_) : n(n_), omega(omega_), xi(xi_) {
        if (n < 1 || omega < 0 || xi < 0)
            throw ParamError("VarSpace: need n >= 1, omega >= 0, xi >= 0");
    }

    int num_p() const { return n * (n - 1) / 2; }
    int num_q() const { return omega * n; }
    int num_r() const { return n * xi; }
    int num_vars() const { return num_p() + num_q() + num_r(); }

    /// True when the parameters fit the clause family's constraint
    /// n >= omega > xi >= 1.
    bool family_params_ok() const { return n >= omega && omega > xi && xi >= 1; }

    int p_var(int i, int j) const { return pair_index(n, i, j); }

    int q_var(int u, int i) const {
        if (u < 1 || u > omega || i < 1 || i > n) throw ParamError("q_var: index out of range");
        return num_p() + (u - 1) * n + i;
    }

    int r_var(int i, int v) const {
        if (i < 1 || i > n || v < 1 || v > xi) throw ParamError("r_var: index out of range");
        return num_p() + num_q() + (i - 1) * xi + v;
    }

    bool valid_var(int var) const { return var >= 1 && var <= num_vars(); }

    Block block_of(int var) const {
        if (!valid_var(var)) throw ParamError("block_of: variable outside space");
        if (var <= num_p()) return Block::P;
        if (var <= num_p() + num_q()) return Block::Q;
        return Block::R;
    }

    std::pair<int, int> p_pair(int var) const {
        if (block_of(var) != Block::P) throw ParamError("p_pair: not a p-variable");
        return pair_of_index(n, var);
    }

    /// (slot u, vertex i) of a q-variable.
    std::pair<int, int> q_index(int var) const {
        if (block_of(var) != Block::Q) throw ParamError("q_index: not a q-variable");
        int off = var - num_p() - 1;
        return {off / n + 1, off % n + 1};
    }

    /// (vertex i, color v) of an r-variable.
    std::pair<int, int> r_index(int var) const {
        if (block_of(var) != Block::R) throw ParamError("r_index: not an r-variable");
        int off = var - num_p() - num_q() - 1;
        return {off / xi + 1, off % xi + 1};
    }

    bool operator==(const VarSpace&) const = default;
};

} // namespace randres
