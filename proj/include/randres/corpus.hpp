#pragma once

#include <cstdint>

#include "randres/rng.hpp"
#include "randres/rrd.hpp"
#include "randres/varspace.hpp"

namespace randres {

/// Parameter triple for a seeded corpus instance, cycling through the
/// (n, omega, xi) combinations whose full variable count stays within the
/// exact enumeration threshold.
VarSpace corpus_space(uint64_t seed);

/// Deterministic random distribution over the clique/color family of vs:
/// 1..max_samples samples, each with up to max_clauses random clauses of
/// width 1..3 on distinct variables, integer weights normalized to sum 1,
/// and a saturation refutation of family + delta.
RandomRefutationDistribution make_distribution(const VarSpace& vs, uint64_t seed,
                                               int max_samples = 3, int max_clauses = 3);

} // namespace randres
