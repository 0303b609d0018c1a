#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "randres/clause.hpp"
#include "randres/formulas.hpp"
#include "randres/protocol.hpp"
#include "randres/rational.hpp"
#include "randres/rrd.hpp"

namespace randres {

// Product subset of U x V selected by one clause, stored as indices into a
// UVContext's graph lists.
struct Rectangle {
    Clause source;
    std::vector<int> u_idx;
    std::vector<int> v_idx;
};

/// U side: graphs whose clique witness falsifies every q-literal of d.
/// V side: graphs falsifying every p- and r-literal of d (p from the graph,
/// r from the coloring witness).
Rectangle clause_rectangle(const Clause& d, const UVContext& ctx);

std::vector<Rectangle> delta_rectangles(const Cnf& delta, const UVContext& ctx);

/// Sorted (u index, v index) pairs covered by the clause rectangles.
std::vector<std::pair<int, int>> bad_set_rectangles(const Cnf& delta, const UVContext& ctx);
/// Same set by the direct definition: w(u,v) falsifies some delta clause.
std::vector<std::pair<int, int>> bad_set_direct(const Cnf& delta, const UVContext& ctx);

/// |U_i| <= sqrt(mu_i)|U| or |V_i| <= sqrt(mu_i)|V|, decided in squared form.
bool rectangle_split_holds(const Rectangle& r, size_t u_total, size_t v_total);

struct BestSample {
    size_t index = 0;
    Rational fraction;               // |Bad| / |U x V| for the winner
    Rational weighted_average;       // over all samples
    std::vector<Rational> fractions; // per sample
};

/// Sample minimizing the bad fraction; the average never falls below the
/// minimum and never exceeds delta*.
BestSample best_sample(const RandomRefutationDistribution& d, const UVContext& ctx);

struct Deletion {
    size_t rect_index = 0;
    char side = 'U'; // which side was wiped
    size_t count = 0;
    Rational mu; // measured against the original U, V
};

struct PruneResult {
    std::vector<int> u_kept; // indices into ctx.u_graphs
    std::vector<int> v_kept;
    std::vector<Deletion> deletions;
};

/// Greedy pass over the rectangles: wipe the U side when
/// |U_i| <= sqrt(mu_i)|U| (squared comparison, original sizes), else the V
/// side. The survivors meet no rectangle.
PruneResult prune(const std::vector<Rectangle>& rects, const UVContext& ctx);

struct KwCounterexample {
    int u_index = 0;
    int v_index = 0;
    ProtocolResult result;
};

/// Runs the protocol on every surviving pair; reports the first pair whose
/// outcome is the terminal or an invalid edge, if any.
std::optional<KwCounterexample> restricted_kw_check(const KWProtocol& pr, const PruneResult& pruned,
                                                    const UVContext& ctx);

struct BoundReport {
    int k = 0;
    int dmax = 0;
    Rational delta_star;
    size_t sample_index = 0;
    Rational min_fraction;
    Rational weighted_average;
    size_t delta_size = 0;          // clause count of the chosen sample
    size_t distinct_rectangles = 0; // after deduplicating rectangle extents
    Rational u_measure;             // |U'| / |U|
    Rational v_measure;
    bool degenerate = false; // empty U or V, measures meaningless
    // certified exact comparisons
    bool averaging_ok = false;      // min <= average <= delta*
    bool u_measure_certified = false; // deleted U fraction <= sum of sqrt(mu_i)
    bool v_measure_certified = false;
    bool all_mu_below_delta = false;  // every mu_i < delta*
    bool hypothesis_met = false;      // dmax * sqrt(delta*) < 1
    bool factor_bound_ok = false;     // measures >= 1 - dmax*sqrt(delta*) when applicable
    // decimal renderings, display only
    std::string factor_one;   // 1 - dmax*sqrt(delta*)
    std::string factor_two;   // 1 / (2*sqrt(delta*)), "unbounded" at delta* = 0
};

BoundReport bound_report(const RandomRefutationDistribution& d, const UVContext& ctx,
                         const BestSample& best, const PruneResult& pruned);

std::string bound_report_json(const BoundReport& r);

} // namespace randres
