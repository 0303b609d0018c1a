#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randres/assignment.hpp"
#include "randres/clause.hpp"
#include "randres/rational.hpp"
#include "randres/resolution.hpp"
#include "randres/varspace.hpp"

namespace randres {

struct RrdSample {
    Rational weight;
    Cnf delta;
    ResolutionProof proof;
    std::string proof_path; // relative path recorded in the distribution file
};

// Finite weighted list of (delta clause set, refutation) pairs over a common
// base CNF. Weights are exact rationals summing to 1.
struct RandomRefutationDistribution {
    std::optional<VarSpace> vs;
    Cnf base;
    int num_vars = 0;
    std::string cnf_path;
    std::vector<RrdSample> samples;

    /// Throws FormatError on empty sample list, weights outside (0,1],
    /// weight sum != 1, or literals outside the variable range.
    void validate() const;
};

/// JSON file { "cnf": path, "samples": [ { "weight": "a/b",
/// "delta": [[lit,...],...], "proof": path }, ... ] }; member paths are
/// resolved relative to the distribution file's directory.
RandomRefutationDistribution load_rrd(const std::string& json_path);
void save_rrd(const std::string& json_path, const RandomRefutationDistribution& d);

struct SampleCheckResult {
    size_t index = 0;
    CheckReport report;
};

/// check_refutation of every sample proof against base + that sample's delta.
std::vector<SampleCheckResult> check_samples(const RandomRefutationDistribution& d);

struct DeltaExact {
    Rational delta_star;
    uint64_t assignments = 0; // distinct assignments the maximum ranges over
};

struct DeltaSampled {
    Rational estimate;
    Rational radius; // certified: exact value lies in [estimate, estimate+radius]
    uint64_t draws = 0;
};

/// Least delta such that a uniformly fixed total assignment falsifies some
/// delta clause with probability at most delta: the max over assignments of
/// the falsified samples' total weight. Enumeration collapses to the
/// variables occurring in delta clauses; the threshold still gates on the
/// distribution's full variable count.
DeltaExact delta_of_exact(const RandomRefutationDistribution& d, int max_vars = 24);
DeltaSampled delta_of_sampled(const RandomRefutationDistribution& d, uint64_t draws,
                              uint64_t seed);

struct SizeMetrics {
    int k = 0;    // max proof step count over samples
    int dmax = 0; // max delta clause count over samples
};

SizeMetrics size_metrics(const RandomRefutationDistribution& d);

struct SoundnessSample {
    size_t index = 0;
    bool proof_ok = false;
    bool delta_falsified = false;
};

struct SoundnessReport {
    bool applicable = false; // alpha satisfies the base CNF
    std::vector<SoundnessSample> samples;
    /// Samples with a checking proof whose delta alpha satisfies; any entry
    /// here means a refutation of a satisfiable clause set slipped through.
    std::vector<size_t> violations;
};

SoundnessReport soundness_audit(const RandomRefutationDistribution& d, const Assignment& alpha);

} // namespace randres
