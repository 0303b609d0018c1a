// Command-line front-end: generation, refutation, checking, distribution
// audits, interpolation, game replay, pruning, and the combined report.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "randres/circuit.hpp"
#include "randres/corpus.hpp"
#include "randres/dimacs.hpp"
#include "randres/errors.hpp"
#include "randres/formulas.hpp"
#include "randres/protocol.hpp"
#include "randres/rectangles.hpp"
#include "randres/resolution.hpp"
#include "randres/rrd.hpp"
#include "randres/saturation.hpp"
#include "randres/tracecheck.hpp"

namespace {

using namespace randres;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitBudget = 4;

struct Options {
    uint64_t seed = 1;
    uint64_t budget = 2'000'000;
    bool sample_mode = false; // delta via sampling instead of exact enumeration
    uint64_t draws = 10'000;
    int max_vars = 24; // exact-mode gate on the full variable count
    std::string out;

    int n = 0, omega = 0, xi = 0;
    bool unchecked = false;
    std::string cnf_path;
    std::string proof_path;
    std::string dist_path;
    std::string out_dir;
    std::string u_graph, v_graph;
    bool all_pairs = false;
    int sample_index = -1; // prune: -1 selects the best sample
    int max_samples = 3;
    int max_clauses = 3;
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

int cmd_gen_formula(const Options& o) {
    VarSpace vs(o.n, o.omega, o.xi);
    Cnf f = generate_family(vs, o.unchecked);
    emit(write_dimacs(f, vs.num_vars(), vs), o.out);
    if (!o.out.empty())
        std::cout << "wrote " << o.out << ": " << f.size() << " clauses over " << vs.num_vars()
                  << " variables\n";
    return kExitOk;
}

int cmd_refute(const Options& o) {
    DimacsFile in = load_dimacs(o.cnf_path);
    SaturationOptions opts;
    opts.max_steps = o.budget;
    SaturationResult res = in.space ? saturation_refute(in.cnf, family_elimination_blocks(*in.space), opts)
                                    : saturation_refute(in.cnf, in.num_vars, opts);
    if (!res.unsat) {
        std::cout << "satisfiable:";
        for (int v = 1; v <= res.model.num_vars(); ++v)
            std::cout << " " << (res.model.value(v) ? v : -v);
        std::cout << " 0\n";
        return kExitVerification;
    }
    emit(write_proof(res.proof), o.out);
    if (!o.out.empty())
        std::cout << "wrote " << o.out << ": " << res.proof.size() << " steps ("
                  << num_axioms(res.proof) << " axioms)\n";
    return kExitOk;
}

int cmd_check(const Options& o) {
    DimacsFile in = load_dimacs(o.cnf_path);
    ResolutionProof proof = load_proof(o.proof_path);
    CheckReport report = check_refutation(proof, in.cnf);
    if (!report.ok()) {
        std::cout << report.str();
        return kExitVerification;
    }
    std::cout << "ok: " << proof.size() << " steps (" << num_axioms(proof) << " axioms)\n";
    return kExitOk;
}

ordered_json sample_check_json(const RandomRefutationDistribution& d,
                               const std::vector<SampleCheckResult>& checks, int& failures) {
    ordered_json arr = ordered_json::array();
    for (size_t i = 0; i < d.samples.size(); ++i) {
        const RrdSample& s = d.samples[i];
        ordered_json js;
        js["index"] = i;
        js["weight"] = rational_string(s.weight);
        js["delta_clauses"] = s.delta.size();
        js["proof_steps"] = s.proof.size();
        const CheckReport& rep = checks[i].report;
        if (rep.ok()) {
            js["check"] = "ok";
        } else {
            ++failures;
            ordered_json issues = ordered_json::array();
            for (const CheckIssue& iss : rep.issues) {
                ordered_json ji;
                ji["step"] = iss.step_id;
                ji["kind"] = check_error_name(iss.kind);
                ji["detail"] = iss.detail;
                issues.push_back(std::move(ji));
            }
            js["check"] = std::move(issues);
        }
        arr.push_back(std::move(js));
    }
    return arr;
}

void delta_star_fields(const RandomRefutationDistribution& d, const Options& o, ordered_json& doc) {
    if (o.sample_mode) {
        DeltaSampled ds = delta_of_sampled(d, o.draws, o.seed);
        doc["mode"] = "sample";
        doc["delta_star_estimate"] = rational_string(ds.estimate);
        doc["delta_star_radius"] = rational_string(ds.radius);
        doc["delta_star_decimal"] = decimal_string(ds.estimate);
        doc["draws"] = ds.draws;
    } else {
        DeltaExact de = delta_of_exact(d, o.max_vars);
        doc["mode"] = "exact";
        doc["delta_star"] = rational_string(de.delta_star);
        doc["delta_star_decimal"] = decimal_string(de.delta_star);
        doc["assignments"] = de.assignments;
    }
}

ordered_json audit_json(const RandomRefutationDistribution& d, const Options& o, int& failures) {
    std::vector<SampleCheckResult> checks = check_samples(d);
    SizeMetrics m = size_metrics(d);
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["cnf"] = d.cnf_path;
    doc["num_vars"] = d.num_vars;
    doc["samples"] = d.samples.size();
    doc["k"] = m.k;
    doc["d"] = m.dmax;
    delta_star_fields(d, o, doc);
    doc["per_sample"] = sample_check_json(d, checks, failures);
    return doc;
}

int cmd_audit_rrd(const Options& o) {
    RandomRefutationDistribution d = load_rrd(o.dist_path);
    d.validate();
    int failures = 0;
    ordered_json doc = audit_json(d, o, failures);
    emit(doc.dump(2) + "\n", o.out);
    if (!o.out.empty())
        std::cout << "wrote " << o.out << (failures ? ": sample check failures" : ": all samples check")
                  << "\n";
    return failures ? kExitVerification : kExitOk;
}

int cmd_interpolate(const Options& o) {
    if (!o.dist_path.empty()) {
        std::cerr << "interpolate extracts circuits from plain refutations only; "
                     "for a distribution with delta clauses use `prune`\n";
        return kExitUsage;
    }
    DimacsFile in = load_dimacs(o.cnf_path);
    if (!in.space)
        throw ParamError("interpolate: CNF lacks the params/block comments that fix the variable space");
    const VarSpace& vs = *in.space;
    ResolutionProof proof = load_proof(o.proof_path);
    CheckReport rep = check_refutation(proof, in.cnf);
    if (!rep.ok()) {
        std::cout << rep.str();
        return kExitVerification;
    }
    InterpolantCircuit interp = extract_circuit(proof, vs);
    if (!o.out.empty()) write_text_file(o.out, write_circuit(interp.circuit, vs));

    bool bad = false;
    std::cout << "circuit: " << interp.circuit.size() << " gates from " << proof.size()
              << " proof steps\n";
    if (!check_monotone(interp.circuit)) {
        std::cout << "monotone: FAILED\n";
        bad = true;
    } else {
        std::cout << "monotone: ok\n";
    }
    InvariantReport inv = check_clause_invariant(proof, interp, vs);
    if (inv.ok()) {
        std::cout << "clause-invariant: ok (" << inv.checks << " checks)\n";
    } else {
        std::cout << "clause-invariant: " << inv.violations.size() << " violations\n";
        bad = true;
    }
    UVContext ctx = UVContext::build(vs);
    size_t u_ok = 0, v_ok = 0;
    for (const Graph& g : ctx.u_graphs) u_ok += interp.circuit.eval_graph(g, vs) ? 1 : 0;
    for (const Graph& g : ctx.v_graphs) v_ok += interp.circuit.eval_graph(g, vs) ? 0 : 1;
    std::cout << "separates " << u_ok << "/" << ctx.u_graphs.size() << " U-graphs and " << v_ok
              << "/" << ctx.v_graphs.size() << " V-graphs\n";
    if (u_ok != ctx.u_graphs.size() || v_ok != ctx.v_graphs.size()) bad = true;
    return bad ? kExitVerification : kExitOk;
}

int cmd_game(const Options& o) {
    DimacsFile in = load_dimacs(o.cnf_path);
    if (!in.space)
        throw ParamError("game: CNF lacks the params/block comments that fix the variable space");
    const VarSpace& vs = *in.space;
    ResolutionProof proof = load_proof(o.proof_path);
    KWProtocol pr = build_protocol(proof, vs, Cnf{});
    CommCostReport cost = comm_cost(pr);

    if (o.all_pairs) {
        UVContext ctx = UVContext::build(vs);
        size_t total = 0, good = 0;
        std::optional<std::string> first_bad;
        for (size_t ui = 0; ui < ctx.u_graphs.size(); ++ui)
            for (size_t vi = 0; vi < ctx.v_graphs.size(); ++vi) {
                ++total;
                GameContext g = GameContext::from_uv(ctx, static_cast<int>(ui), static_cast<int>(vi));
                RunTrace t = run_protocol(pr, g);
                bool valid = !t.result.bottom &&
                             ctx.u_graphs[ui].has_edge(t.result.edge.first, t.result.edge.second) &&
                             !ctx.v_graphs[vi].has_edge(t.result.edge.first, t.result.edge.second);
                if (valid)
                    ++good;
                else if (!first_bad)
                    first_bad = "pair (" + ctx.u_graphs[ui].str() + ", " + ctx.v_graphs[vi].str() +
                                ") -> " +
                                (t.result.bottom ? std::string("bottom")
                                                 : "invalid edge {" + std::to_string(t.result.edge.first) +
                                                       "," + std::to_string(t.result.edge.second) + "}");
            }
        std::cout << "protocol: " << pr.size() << " nodes (" << pr.num_inner() << " inner)\n";
        std::cout << "comm cost: consistency <= " << cost.max_consistency << ", strategy <= "
                  << cost.max_strategy << (cost.within_bounds ? " (within bounds)" : " (OVER BOUNDS)")
                  << "\n";
        std::cout << "edges valid on " << good << "/" << total << " pairs\n";
        if (first_bad) std::cout << "first failure: " << *first_bad << "\n";
        return (good == total && cost.within_bounds) ? kExitOk : kExitVerification;
    }

    if (o.u_graph.empty() || o.v_graph.empty())
        throw ParamError("game: pass --u and --v graphs, or --all");
    Graph u, v;
    try {
        u = Graph::parse(o.u_graph);
        v = Graph::parse(o.v_graph);
    } catch (const FormatError& e) {
        throw ParamError(e.what());
    }
    GameContext g = GameContext::make(vs, u, v);
    RunTrace t = run_protocol(pr, g);
    emit(trace_json(t), o.out);
    if (t.result.bottom) {
        std::cout << "result: bottom\n";
        return kExitVerification;
    }
    std::cout << "result: edge {" << t.result.edge.first << "," << t.result.edge.second << "}\n";
    bool valid = u.has_edge(t.result.edge.first, t.result.edge.second) &&
                 !v.has_edge(t.result.edge.first, t.result.edge.second);
    if (!valid) {
        std::cout << "edge invalid for the given pair\n";
        return kExitVerification;
    }
    return kExitOk;
}

struct PrunePipeline {
    RandomRefutationDistribution d;
    UVContext ctx;
    BestSample best;
    PruneResult pruned;
    std::optional<KwCounterexample> counter;
    BoundReport bound;
    ordered_json prune_json;
    bool failed = false;
};

PrunePipeline run_prune_pipeline(const Options& o) {
    PrunePipeline p{load_rrd(o.dist_path), {}, {}, {}, {}, {}, {}, false};
    p.d.validate();
    if (!p.d.vs)
        throw ParamError("prune: distribution CNF lacks the params/block comments that fix the variable space");
    std::vector<SampleCheckResult> checks = check_samples(p.d);
    for (const SampleCheckResult& c : checks)
        if (!c.report.ok())
            throw ParamError("prune: sample " + std::to_string(c.index) +
                             " proof fails the checker; run audit-rrd for details");
    p.ctx = UVContext::build(*p.d.vs);
    p.best = best_sample(p.d, p.ctx);
    size_t chosen = o.sample_index >= 0 ? static_cast<size_t>(o.sample_index) : p.best.index;
    if (chosen >= p.d.samples.size()) throw ParamError("prune: sample index out of range");
    if (chosen != p.best.index) {
        p.best.index = chosen;
        p.best.fraction = p.best.fractions[chosen];
    }
    const RrdSample& s = p.d.samples[chosen];
    std::vector<Rectangle> rects = delta_rectangles(s.delta, p.ctx);
    p.pruned = prune(rects, p.ctx);
    KWProtocol pr = build_protocol(s.proof, *p.d.vs, s.delta);
    p.counter = restricted_kw_check(pr, p.pruned, p.ctx);
    p.bound = bound_report(p.d, p.ctx, p.best, p.pruned);

    ordered_json doc;
    doc["schema_version"] = 1;
    doc["sample_index"] = chosen;
    doc["u_total"] = p.ctx.u_graphs.size();
    doc["v_total"] = p.ctx.v_graphs.size();
    doc["u_kept"] = p.pruned.u_kept.size();
    doc["v_kept"] = p.pruned.v_kept.size();
    ordered_json dels = ordered_json::array();
    for (const Deletion& del : p.pruned.deletions) {
        ordered_json jd;
        jd["rectangle"] = del.rect_index;
        jd["side"] = std::string(1, del.side);
        jd["count"] = del.count;
        jd["mu"] = rational_string(del.mu);
        jd["mu_decimal"] = decimal_string(del.mu);
        dels.push_back(std::move(jd));
    }
    doc["deletions"] = std::move(dels);
    if (p.counter) {
        ordered_json jc;
        jc["u_index"] = p.counter->u_index;
        jc["v_index"] = p.counter->v_index;
        jc["result"] = p.counter->result.bottom
                           ? ordered_json("bottom")
                           : ordered_json::array({p.counter->result.edge.first, p.counter->result.edge.second});
        doc["restricted_kw"] = std::move(jc);
    } else {
        doc["restricted_kw"] = "ok";
    }
    doc["bound"] = ordered_json::parse(bound_report_json(p.bound));
    p.prune_json = std::move(doc);

    const BoundReport& b = p.bound;
    bool cert_fail = !b.degenerate &&
                     (!b.averaging_ok || !b.u_measure_certified || !b.v_measure_certified ||
                      (b.all_mu_below_delta && b.hypothesis_met && !b.factor_bound_ok));
    p.failed = p.counter.has_value() || cert_fail;
    return p;
}

int cmd_prune(const Options& o) {
    PrunePipeline p = run_prune_pipeline(o);
    emit(p.prune_json.dump(2) + "\n", o.out);
    if (!o.out.empty())
        std::cout << "wrote " << o.out << ": kept " << p.pruned.u_kept.size() << "/"
                  << p.ctx.u_graphs.size() << " U, " << p.pruned.v_kept.size() << "/"
                  << p.ctx.v_graphs.size() << " V"
                  << (p.counter ? "; restricted game FAILED" : "; restricted game ok") << "\n";
    return p.failed ? kExitVerification : kExitOk;
}

int cmd_report(const Options& o) {
    RandomRefutationDistribution d = load_rrd(o.dist_path);
    d.validate();
    int failures = 0;
    ordered_json audit = audit_json(d, o, failures);
    PrunePipeline p = run_prune_pipeline(o);
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["audit"] = std::move(audit);
    doc["prune"] = std::move(p.prune_json);
    emit(doc.dump(2) + "\n", o.out);
    if (!o.out.empty()) std::cout << "wrote " << o.out << "\n";
    return (failures || p.failed) ? kExitVerification : kExitOk;
}

int cmd_gen_rrd(const Options& o) {
    VarSpace vs = (o.n > 0) ? VarSpace(o.n, o.omega, o.xi) : corpus_space(o.seed);
    if (!vs.family_params_ok())
        throw ParamError("gen-rrd: parameters must satisfy n >= omega > xi >= 1");
    RandomRefutationDistribution d = make_distribution(vs, o.seed, o.max_samples, o.max_clauses);
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    if (ec) throw FileError("cannot create directory: " + o.out_dir);
    d.cnf_path = "family.cnf";
    save_dimacs((fs::path(o.out_dir) / d.cnf_path).string(), d.base, d.num_vars, vs);
    for (size_t i = 0; i < d.samples.size(); ++i) {
        d.samples[i].proof_path = "s" + std::to_string(i) + ".trace";
        save_proof((fs::path(o.out_dir) / d.samples[i].proof_path).string(), d.samples[i].proof);
    }
    std::string dist = (fs::path(o.out_dir) / "dist.json").string();
    save_rrd(dist, d);
    std::cout << "wrote " << dist << ": n=" << vs.n << " omega=" << vs.omega << " xi=" << vs.xi
              << ", " << d.samples.size() << " samples\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"clique-coloring interpolation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", o.seed, "seed for all randomized steps");
    app.add_option("--budget", o.budget, "step budget for saturation refutation");

    auto* gen = app.add_subcommand("gen-formula", "generate a clique-coloring family as extended DIMACS");
    gen->add_option("--n", o.n, "vertex count")->required();
    gen->add_option("--omega", o.omega, "clique size")->required();
    gen->add_option("--xi", o.xi, "color count")->required();
    gen->add_flag("--unchecked", o.unchecked, "skip the n >= omega > xi >= 1 parameter check");
    gen->add_option("--out", o.out, "output file (default stdout)");

    auto* ref = app.add_subcommand("refute", "search a resolution refutation by variable elimination");
    ref->add_option("--cnf", o.cnf_path, "input DIMACS file")->required();
    ref->add_option("--out", o.out, "output proof file (default stdout)");

    auto* chk = app.add_subcommand("check", "check a resolution refutation against a CNF");
    chk->add_option("--cnf", o.cnf_path, "input DIMACS file")->required();
    chk->add_option("--proof", o.proof_path, "proof file")->required();

    auto* aud = app.add_subcommand("audit-rrd", "validate a distribution and compute delta*");
    aud->add_option("--dist", o.dist_path, "distribution JSON file")->required();
    aud->add_option("--out", o.out, "report JSON file (default stdout)");
    aud->add_flag("--sample", o.sample_mode, "estimate delta* by sampling instead of enumeration");
    auto* aud_exact = aud->add_flag("--exact", "exact delta* enumeration (default)");
    aud->add_option("--draws", o.draws, "sampling mode: number of draws");
    aud->add_option("--max-vars", o.max_vars, "exact mode: refuse above this many variables");
    aud_exact->excludes("--sample");

    auto* itp = app.add_subcommand("interpolate", "extract and verify a monotone interpolant circuit");
    itp->add_option("--cnf", o.cnf_path, "family DIMACS file (with params comments)")->required();
    itp->add_option("--proof", o.proof_path, "refutation of the family")->required();
    itp->add_option("--dist", o.dist_path, "rejected; distributions go through `prune`");
    itp->add_option("--out", o.out, "circuit output file");

    auto* gam = app.add_subcommand("game", "build the protocol from a refutation and replay it");
    gam->add_option("--cnf", o.cnf_path, "family DIMACS file (with params comments)")->required();
    gam->add_option("--proof", o.proof_path, "refutation of the family")->required();
    gam->add_option("--u", o.u_graph, "clique-side graph, e.g. 3:110");
    gam->add_option("--v", o.v_graph, "coloring-side graph, e.g. 3:000");
    gam->add_flag("--all", o.all_pairs, "replay on every pair of U x V");
    gam->add_option("--out", o.out, "trace JSON file (default stdout)");

    auto* prn = app.add_subcommand("prune", "rectangle cover, greedy pruning, restricted game check");
    prn->add_option("--dist", o.dist_path, "distribution JSON file")->required();
    prn->add_option("--sample", o.sample_index, "sample index (default: best by bad fraction)");
    prn->add_option("--out", o.out, "report JSON file (default stdout)");

    auto* rep = app.add_subcommand("report", "full audit + prune quantity report");
    rep->add_option("--dist", o.dist_path, "distribution JSON file")->required();
    rep->add_option("--out", o.out, "report JSON file (default stdout)");
    rep->add_flag("--sample", o.sample_mode, "estimate delta* by sampling instead of enumeration");
    rep->add_option("--draws", o.draws, "sampling mode: number of draws");
    rep->add_option("--max-vars", o.max_vars, "exact mode: refuse above this many variables");

    auto* grr = app.add_subcommand("gen-rrd", "write a seeded random distribution corpus");
    grr->add_option("--n", o.n, "vertex count (default: from seed)");
    grr->add_option("--omega", o.omega, "clique size");
    grr->add_option("--xi", o.xi, "color count");
    grr->add_option("--samples", o.max_samples, "max sample count");
    grr->add_option("--max-clauses", o.max_clauses, "max delta clauses per sample");
    grr->add_option("--out-dir", o.out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen_formula(o);
        if (ref->parsed()) return cmd_refute(o);
        if (chk->parsed()) return cmd_check(o);
        if (aud->parsed()) return cmd_audit_rrd(o);
        if (itp->parsed()) return cmd_interpolate(o);
        if (gam->parsed()) return cmd_game(o);
        if (prn->parsed()) return cmd_prune(o);
        if (rep->parsed()) return cmd_report(o);
        if (grr->parsed()) return cmd_gen_rrd(o);
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitUsage;
}
