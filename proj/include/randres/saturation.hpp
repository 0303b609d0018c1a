#pragma once

#include <cstdint>
#include <vector>

#include "randres/assignment.hpp"
#include "randres/clause.hpp"
#include "randres/resolution.hpp"
#include "randres/varspace.hpp"

namespace randres {

struct SaturationOptions {
    uint64_t max_steps = 2'000'000; // recorded proof steps before giving up
};

struct SaturationResult {
    bool unsat = false;
    ResolutionProof proof; // meaningful when unsat
    Assignment model;      // meaningful when satisfiable
};

/// Davis-Putnam variable elimination with proof recording. Variables are
/// eliminated block by block in the given order; inside a block the next
/// variable is the one minimizing |pos|*|neg| over the live clause set
/// (ties to the smaller id). Tautological resolvents are dropped, repeated
/// clauses reuse their first step, and the returned refutation is pruned to
/// the steps reachable from the empty clause and renumbered.
SaturationResult saturation_refute(const Cnf& f, const std::vector<std::vector<int>>& blocks,
                                   const SaturationOptions& opts = {});

/// Single-block variant over variables 1..max(num_vars, f.max_var()).
SaturationResult saturation_refute(const Cnf& f, int num_vars = 0,
                                   const SaturationOptions& opts = {});

/// Elimination blocks for the clique/color family: q-block, r-block, p-block.
std::vector<std::vector<int>> family_elimination_blocks(const VarSpace& vs);

} // namespace randres
