#include "randres/rectangles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "randres/errors.hpp"

namespace randres {

using ordered_json = nlohmann::ordered_json;

Rectangle clause_rectangle(const Clause& d, const UVContext& ctx) {
    Rectangle rect;
    rect.source = d;
    for (size_t ui = 0; ui < ctx.u_graphs.size(); ++ui) {
        bool all_false = true;
        for (int lit : d.lits()) {
            int var = lit_var(lit);
            if (ctx.vs.block_of(var) != Block::Q) continue;
            if (ctx.u_wits[ui].sat_lit(lit)) {
                all_false = false;
                break;
            }
        }
        if (all_false) rect.u_idx.push_back(static_cast<int>(ui));
    }
    for (size_t vi = 0; vi < ctx.v_graphs.size(); ++vi) {
        bool all_false = true;
        for (int lit : d.lits()) {
            int var = lit_var(lit);
            Block blk = ctx.vs.block_of(var);
            bool value = false;
            if (blk == Block::P) value = ctx.v_graphs[vi].has_edge(ctx.vs.p_pair(var).first,
                                                                   ctx.vs.p_pair(var).second);
            else if (blk == Block::R) value = ctx.v_wits[vi].value(var);
            else continue;
            if ((lit > 0) == value) {
                all_false = false;
                break;
            }
        }
        if (all_false) rect.v_idx.push_back(static_cast<int>(vi));
    }
    return rect;
}

std::vector<Rectangle> delta_rectangles(const Cnf& delta, const UVContext& ctx) {
    std::vector<Rectangle> out;
    out.reserve(delta.size());
    for (const Clause& d : delta.clauses()) out.push_back(clause_rectangle(d, ctx));
    return out;
}

std::vector<std::pair<int, int>> bad_set_rectangles(const Cnf& delta, const UVContext& ctx) {
    std::set<std::pair<int, int>> bad;
    for (const Rectangle& rect : delta_rectangles(delta, ctx))
        for (int u : rect.u_idx)
            for (int v : rect.v_idx) bad.emplace(u, v);
    return {bad.begin(), bad.end()};
}

std::vector<std::pair<int, int>> bad_set_direct(const Cnf& delta, const UVContext& ctx) {
    std::vector<std::pair<int, int>> bad;
    for (size_t ui = 0; ui < ctx.u_graphs.size(); ++ui)
        for (size_t vi = 0; vi < ctx.v_graphs.size(); ++vi) {
            Assignment w = ctx.w(static_cast<int>(ui), static_cast<int>(vi));
            if (!eval_cnf(delta, w)) bad.emplace_back(static_cast<int>(ui), static_cast<int>(vi));
        }
    return bad;
}

bool rectangle_split_holds(const Rectangle& r, size_t u_total, size_t v_total) {
    // |U_i| <= sqrt(mu_i)|U| squares to |U_i| |V| <= |V_i| |U| (for |U_i| > 0)
    BigInt ui = r.u_idx.size(), vi = r.v_idx.size();
    return ui * ui * v_total <= ui * vi * u_total || vi * vi * u_total <= ui * vi * v_total;
}

BestSample best_sample(const RandomRefutationDistribution& d, const UVContext& ctx) {
    size_t pairs = ctx.u_graphs.size() * ctx.v_graphs.size();
    if (pairs == 0) throw ParamError("best_sample: measures over an empty product are undefined");
    d.validate();
    BestSample out;
    bool first = true;
    for (size_t s = 0; s < d.samples.size(); ++s) {
        size_t bad = bad_set_rectangles(d.samples[s].delta, ctx).size();
        Rational fraction = make_rational(static_cast<long long>(bad),
                                          static_cast<long long>(pairs));
        out.fractions.push_back(fraction);
        out.weighted_average += d.samples[s].weight * fraction;
        if (first || fraction < out.fraction) {
            out.fraction = fraction;
            out.index = s;
            first = false;
        }
    }
    return out;
}

PruneResult prune(const std::vector<Rectangle>& rects, const UVContext& ctx) {
    size_t u_total = ctx.u_graphs.size(), v_total = ctx.v_graphs.size();
    std::vector<char> u_gone(u_total, 0), v_gone(v_total, 0);
    PruneResult out;
    for (size_t i = 0; i < rects.size(); ++i) {
        const Rectangle& rect = rects[i];
        for (int u : rect.u_idx)
            if (u < 0 || static_cast<size_t>(u) >= u_total)
                throw ParamError("prune: rectangle sticks out of U");
        for (int v : rect.v_idx)
            if (v < 0 || static_cast<size_t>(v) >= v_total)
                throw ParamError("prune: rectangle sticks out of V");
        BigInt ui = rect.u_idx.size(), vi = rect.v_idx.size();
        Rational mu = (u_total && v_total)
                          ? Rational(ui * vi) / Rational(BigInt(u_total) * BigInt(v_total))
                          : Rational(0);
        // |U_i| <= sqrt(mu_i)|U|, in squared integer form; ties wipe the U side
        bool wipe_u = ui * ui * v_total <= ui * vi * u_total;
        if (wipe_u) {
            for (int u : rect.u_idx) u_gone[static_cast<size_t>(u)] = 1;
            out.deletions.push_back({i, 'U', rect.u_idx.size(), mu});
        } else {
            for (int v : rect.v_idx) v_gone[static_cast<size_t>(v)] = 1;
            out.deletions.push_back({i, 'V', rect.v_idx.size(), mu});
        }
    }
    for (size_t u = 0; u < u_total; ++u)
        if (!u_gone[u]) out.u_kept.push_back(static_cast<int>(u));
    for (size_t v = 0; v < v_total; ++v)
        if (!v_gone[v]) out.v_kept.push_back(static_cast<int>(v));
    return out;
}

std::optional<KwCounterexample> restricted_kw_check(const KWProtocol& pr,
                                                    const PruneResult& pruned,
                                                    const UVContext& ctx) {
    for (int ui : pruned.u_kept)
        for (int vi : pruned.v_kept) {
            GameContext game = GameContext::from_uv(ctx, ui, vi);
            RunTrace trace = run_protocol(pr, game);
            bool valid_edge = !trace.result.bottom &&
                              game.u.has_edge(trace.result.edge.first, trace.result.edge.second) &&
                              !game.v.has_edge(trace.result.edge.first, trace.result.edge.second);
            if (!valid_edge) return KwCounterexample{ui, vi, trace.result};
        }
    return std::nullopt;
}

namespace {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

} // namespace

BoundReport bound_report(const RandomRefutationDistribution& d, const UVContext& ctx,
                         const BestSample& best, const PruneResult& pruned) {
    BoundReport r;
    SizeMetrics metrics = size_metrics(d);
    r.k = metrics.k;
    r.dmax = metrics.dmax;
    r.delta_star = delta_of_exact(d).delta_star;
    size_t u_total = ctx.u_graphs.size(), v_total = ctx.v_graphs.size();
    if (u_total == 0 || v_total == 0) {
        r.degenerate = true;
        r.factor_one = "undefined";
        r.factor_two = "undefined";
        return r;
    }
    r.sample_index = best.index;
    r.min_fraction = best.fraction;
    r.weighted_average = best.weighted_average;
    const Cnf& delta = d.samples.at(best.index).delta;
    r.delta_size = delta.size();
    std::set<std::pair<std::vector<int>, std::vector<int>>> extents;
    for (const Rectangle& rect : delta_rectangles(delta, ctx))
        extents.emplace(rect.u_idx, rect.v_idx);
    r.distinct_rectangles = extents.size();
    r.u_measure = make_rational(static_cast<long long>(pruned.u_kept.size()),
                                static_cast<long long>(u_total));
    r.v_measure = make_rational(static_cast<long long>(pruned.v_kept.size()),
                                static_cast<long long>(v_total));

    r.averaging_ok = best.fraction <= best.weighted_average &&
                     best.weighted_average <= r.delta_star;

    // deleted fraction per side <= sum of sqrt(mu_i), certified term by term:
    // the deletion rule already guarantees |side_i| / |side| <= sqrt(mu_i)
    Rational u_deleted_terms = 0, v_deleted_terms = 0;
    bool terms_ok = true;
    size_t u_deletions = 0, v_deletions = 0;
    bool mu_below = true;
    for (const Deletion& del : pruned.deletions) {
        size_t total = del.side == 'U' ? u_total : v_total;
        Rational frac = make_rational(static_cast<long long>(del.count),
                                      static_cast<long long>(total));
        terms_ok = terms_ok && frac * frac <= del.mu;
        if (del.side == 'U') {
            u_deleted_terms += frac;
            ++u_deletions;
        } else {
            v_deleted_terms += frac;
            ++v_deletions;
        }
        mu_below = mu_below && del.mu < r.delta_star;
    }
    Rational u_gone = 1 - r.u_measure, v_gone = 1 - r.v_measure;
    r.u_measure_certified = terms_ok && u_gone <= u_deleted_terms;
    r.v_measure_certified = terms_ok && v_gone <= v_deleted_terms;
    r.all_mu_below_delta = mu_below;

    // dmax * sqrt(delta*) < 1 squares to dmax^2 * delta* < 1
    r.hypothesis_met = Rational(r.dmax) * Rational(r.dmax) * r.delta_star < 1;
    if (r.hypothesis_met && mu_below) {
        // each deleted side stays under sqrt(delta*) of its original size
        bool under = u_deletions <= static_cast<size_t>(r.dmax) &&
                     v_deletions <= static_cast<size_t>(r.dmax);
        for (const Deletion& del : pruned.deletions) {
            size_t total = del.side == 'U' ? u_total : v_total;
            Rational frac = make_rational(static_cast<long long>(del.count),
                                          static_cast<long long>(total));
            under = under && frac * frac < r.delta_star;
        }
        Rational bound = Rational(r.dmax) * Rational(r.dmax) * r.delta_star;
        // 1 - measure <= dmax sqrt(delta*) via (1 - measure)^2 <= dmax^2 delta*
        r.factor_bound_ok = under && u_gone * u_gone <= bound && v_gone * v_gone <= bound;
    }

    double ds = static_cast<double>(r.delta_star);
    r.factor_one = format_double(1.0 - r.dmax * std::sqrt(ds));
    r.factor_two = r.delta_star == 0 ? "unbounded" : format_double(1.0 / (2.0 * std::sqrt(ds)));
    return r;
}

std::string bound_report_json(const BoundReport& r) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["k"] = r.k;
    doc["dmax"] = r.dmax;
    doc["delta_star"] = rational_string(r.delta_star);
    doc["delta_star_decimal"] = decimal_string(r.delta_star);
    doc["degenerate"] = r.degenerate;
    if (!r.degenerate) {
        doc["sample_index"] = r.sample_index;
        doc["min_fraction"] = rational_string(r.min_fraction);
        doc["weighted_average"] = rational_string(r.weighted_average);
        doc["delta_size"] = r.delta_size;
        doc["distinct_rectangles"] = r.distinct_rectangles;
        doc["u_measure"] = rational_string(r.u_measure);
        doc["v_measure"] = rational_string(r.v_measure);
        doc["averaging_ok"] = r.averaging_ok;
        doc["u_measure_certified"] = r.u_measure_certified;
        doc["v_measure_certified"] = r.v_measure_certified;
        doc["all_mu_below_delta"] = r.all_mu_below_delta;
        doc["hypothesis_met"] = r.hypothesis_met;
        doc["factor_bound_ok"] = r.factor_bound_ok;
    }
    doc["factor_one"] = r.factor_one;
    doc["factor_two"] = r.factor_two;
    return doc.dump(2) + "\n";
}

} // namespace randres
