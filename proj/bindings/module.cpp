// Python bindings: text-in/text-out wrappers over the library, using the same
// DIMACS, proof, circuit, and distribution formats as the CLI.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "randres/circuit.hpp"
#include "randres/dimacs.hpp"
#include "randres/errors.hpp"
#include "randres/formulas.hpp"
#include "randres/protocol.hpp"
#include "randres/rectangles.hpp"
#include "randres/resolution.hpp"
#include "randres/rrd.hpp"
#include "randres/saturation.hpp"
#include "randres/tracecheck.hpp"

namespace py = pybind11;
using namespace randres;

namespace {

VarSpace space_of(const DimacsFile& in, const char* who) {
    if (!in.space)
        throw ParamError(std::string(who) +
                         ": CNF lacks the params/block comments that fix the variable space");
    return *in.space;
}

std::vector<std::string> issue_lines(const CheckReport& rep) {
    std::vector<std::string> out;
    for (const CheckIssue& iss : rep.issues)
        out.push_back("step " + std::to_string(iss.step_id) + ": " +
                      check_error_name(iss.kind) + ": " + iss.detail);
    return out;
}

ResolutionProof verified_proof(const std::string& proof_text, const Cnf& f, const char* who) {
    ResolutionProof proof = parse_proof(proof_text);
    CheckReport rep = check_refutation(proof, f);
    if (!rep.ok()) throw ParamError(std::string(who) + ": proof rejected: " + rep.str());
    return proof;
}

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [i, j] : edges) g = g.with_edge(i, j);
    return g;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Clique-coloring formulas, resolution refutations, interpolant circuits, "
              "protocol games, and distribution audits.";

    py::register_exception<FileError>(m, "FileError", PyExc_OSError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<ParamError>(m, "ParamError", PyExc_ValueError);
    py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

    m.def(
        "generate_formula",
        [](int n, int omega, int xi, bool unchecked) {
            VarSpace vs(n, omega, xi);
            return write_dimacs(generate_family(vs, unchecked), vs.num_vars(), vs);
        },
        py::arg("n"), py::arg("omega"), py::arg("xi"), py::arg("unchecked") = false,
        "Clique-coloring CNF as extended DIMACS text.");

    m.def(
        "family_unsatisfiable",
        [](int n, int omega, int xi) { return family_unsatisfiable(VarSpace(n, omega, xi)); },
        py::arg("n"), py::arg("omega"), py::arg("xi"),
        "Exhaustively confirm that no total assignment satisfies the family.");

    m.def(
        "refute",
        [](const std::string& dimacs, uint64_t budget) -> std::optional<std::string> {
            DimacsFile in = parse_dimacs(dimacs);
            SaturationOptions opts;
            opts.max_steps = budget;
            SaturationResult res =
                in.space ? saturation_refute(in.cnf, family_elimination_blocks(*in.space), opts)
                         : saturation_refute(in.cnf, in.num_vars, opts);
            if (!res.unsat) return std::nullopt;
            return write_proof(res.proof);
        },
        py::arg("dimacs"), py::arg("budget") = uint64_t{2'000'000},
        "Saturation refutation as proof text, or None when the CNF is satisfiable.");

    m.def(
        "check_proof",
        [](const std::string& dimacs, const std::string& proof_text) {
            DimacsFile in = parse_dimacs(dimacs);
            return issue_lines(check_refutation(parse_proof(proof_text), in.cnf));
        },
        py::arg("dimacs"), py::arg("proof"),
        "Verify a refutation against its CNF; returns a list of issues, empty when valid.");

    m.def(
        "extract_interpolant",
        [](const std::string& dimacs, const std::string& proof_text) {
            DimacsFile in = parse_dimacs(dimacs);
            VarSpace vs = space_of(in, "extract_interpolant");
            ResolutionProof proof = verified_proof(proof_text, in.cnf, "extract_interpolant");
            return write_circuit(extract_circuit(proof, vs).circuit, vs);
        },
        py::arg("dimacs"), py::arg("proof"),
        "Monotone interpolant circuit of a family refutation, as circuit text.");

    m.def(
        "eval_circuit",
        [](const std::string& circuit_text, int n, int omega, int xi,
           const std::vector<std::pair<int, int>>& edges) {
            VarSpace vs(n, omega, xi);
            return parse_circuit(circuit_text, vs).eval_graph(graph_from_edges(n, edges), vs);
        },
        py::arg("circuit"), py::arg("n"), py::arg("omega"), py::arg("xi"), py::arg("edges"),
        "Evaluate a circuit on the graph with the given edge list.");

    m.def(
        "separation_counts",
        [](const std::string& circuit_text, int n, int omega, int xi) {
            VarSpace vs(n, omega, xi);
            MonotoneCircuit c = parse_circuit(circuit_text, vs);
            UVContext ctx = UVContext::build(vs);
            size_t u_ok = 0, v_ok = 0;
            for (const Graph& g : ctx.u_graphs) u_ok += c.eval_graph(g, vs) ? 1 : 0;
            for (const Graph& g : ctx.v_graphs) v_ok += c.eval_graph(g, vs) ? 0 : 1;
            py::dict out;
            out["u_accepted"] = u_ok;
            out["u_total"] = ctx.u_graphs.size();
            out["v_rejected"] = v_ok;
            out["v_total"] = ctx.v_graphs.size();
            return out;
        },
        py::arg("circuit"), py::arg("n"), py::arg("omega"), py::arg("xi"),
        "How the circuit splits clique holders from colorable graphs.");

    m.def(
        "run_game",
        [](const std::string& dimacs, const std::string& proof_text, const std::string& u,
           const std::string& v) {
            DimacsFile in = parse_dimacs(dimacs);
            VarSpace vs = space_of(in, "run_game");
            ResolutionProof proof = verified_proof(proof_text, in.cnf, "run_game");
            KWProtocol pr = build_protocol(proof, vs, Cnf{});
            GameContext g = GameContext::make(vs, Graph::parse(u), Graph::parse(v));
            return trace_json(run_protocol(pr, g));
        },
        py::arg("dimacs"), py::arg("proof"), py::arg("u"), py::arg("v"),
        "Walk the protocol on a graph pair (\"<n>:<bitstring>\" form); returns the trace as JSON.");

    m.def(
        "delta_exact",
        [](const std::string& dist_path, int max_vars) {
            RandomRefutationDistribution d = load_rrd(dist_path);
            d.validate();
            return rational_string(delta_of_exact(d, max_vars).delta_star);
        },
        py::arg("dist_path"), py::arg("max_vars") = 24,
        "Exact delta* of a distribution file, as a rational string.");

    m.def(
        "delta_sampled",
        [](const std::string& dist_path, uint64_t draws, uint64_t seed) {
            RandomRefutationDistribution d = load_rrd(dist_path);
            d.validate();
            DeltaSampled ds = delta_of_sampled(d, draws, seed);
            return std::make_pair(rational_string(ds.estimate), rational_string(ds.radius));
        },
        py::arg("dist_path"), py::arg("draws"), py::arg("seed"),
        "Sampled lower bound on delta* with a certified enclosure radius.");

    m.def(
        "check_distribution",
        [](const std::string& dist_path) {
            RandomRefutationDistribution d = load_rrd(dist_path);
            d.validate();
            std::vector<std::string> out;
            for (const SampleCheckResult& sc : check_samples(d))
                for (const std::string& line : issue_lines(sc.report))
                    out.push_back("sample " + std::to_string(sc.index) + ": " + line);
            return out;
        },
        py::arg("dist_path"),
        "Check every sample proof of a distribution file; returns issues, empty when all pass.");

    m.def(
        "bound_report",
        [](const std::string& dist_path) {
            RandomRefutationDistribution d = load_rrd(dist_path);
            d.validate();
            if (!d.vs) throw ParamError("bound_report: distribution CNF lacks a variable space");
            UVContext ctx = UVContext::build(*d.vs);
            BestSample best = best_sample(d, ctx);
            PruneResult pruned =
                prune(delta_rectangles(d.samples[best.index].delta, ctx), ctx);
            return bound_report_json(bound_report(d, ctx, best, pruned));
        },
        py::arg("dist_path"),
        "Prune the best sample's rectangles and report the measure bounds as JSON.");

    m.attr("__version__") = "0.1.0";
}
