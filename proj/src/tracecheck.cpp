#include "randres/tracecheck.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "randres/errors.hpp"

namespace randres {

std::string write_proof(const ResolutionProof& proof) {
    std::string out;
    for (const ProofStep& s : proof.steps()) {
        out += std::to_string(s.id);
        for (int lit : s.clause.lits()) out += " " + std::to_string(lit);
        out += " 0";
        if (!s.axiom) out += " " + std::to_string(s.parent1) + " " + std::to_string(s.parent2);
        out += " 0\n";
    }
    return out;
}

namespace {

struct RawStep {
    int id = 0;
    std::vector<int> lits;
    std::vector<int> parents;
};

RawStep parse_line(const std::string& line, int lineno) {
    std::istringstream in(line);
    auto fail = [lineno](const std::string& msg) -> FormatError {
        return FormatError("proof line " + std::to_string(lineno) + ": " + msg);
    };
    RawStep raw;
    long long tok = 0;
    if (!(in >> tok) || tok <= 0 || tok > INT32_MAX) throw fail("expected a positive step id");
    raw.id = static_cast<int>(tok);
    bool closed = false;
    while (in >> tok) {
        if (tok == 0) { closed = true; break; }
        if (tok < INT32_MIN || tok > INT32_MAX) throw fail("literal out of range");
        raw.lits.push_back(static_cast<int>(tok));
    }
    if (!closed) throw fail("missing literal terminator");
    closed = false;
    while (in >> tok) {
        if (tok == 0) { closed = true; break; }
        if (tok < 0 || tok > INT32_MAX) throw fail("expected a parent step id");
        raw.parents.push_back(static_cast<int>(tok));
    }
    if (!closed) throw fail("missing parent terminator");
    std::string rest;
    if (in >> rest) throw fail("trailing tokens after the parent list");
    return raw;
}

} // namespace

ResolutionProof parse_proof(const std::string& text) {
    std::vector<ProofStep> steps;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    // first pass collects raw steps; pivots need the parents' clauses
    std::vector<RawStep> raws;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == 'c') continue;
        raws.push_back(parse_line(line, lineno));
    }
    steps.reserve(raws.size());
    std::unordered_map<int, size_t> seen;
    seen.reserve(raws.size());
    auto find_step = [&steps, &seen](int id) -> const ProofStep* {
        auto it = seen.find(id);
        return it == seen.end() ? nullptr : &steps[it->second];
    };
    for (const RawStep& raw : raws) {
        ProofStep s;
        s.id = raw.id;
        s.clause = Clause(raw.lits);
        if (raw.parents.empty()) {
            seen.emplace(s.id, steps.size());
            steps.push_back(std::move(s));
            continue;
        }
        if (raw.parents.size() != 2)
            throw FormatError("step " + std::to_string(raw.id) +
                              ": resolve steps take exactly two parents");
        const ProofStep* p1 = find_step(raw.parents[0]);
        const ProofStep* p2 = find_step(raw.parents[1]);
        if (!p1 || !p2)
            throw FormatError("step " + std::to_string(raw.id) +
                              ": parent step not seen before this line");
        // the pivot is the unique variable clashing between the parents
        int pivot = 0;
        for (int lit : p1->clause.lits()) {
            if (p2->clause.contains(-lit)) {
                int v = lit_var(lit);
                if (pivot != 0 && pivot != v)
                    throw FormatError("step " + std::to_string(raw.id) +
                                      ": ambiguous pivot between variables " +
                                      std::to_string(pivot) + " and " + std::to_string(v));
                pivot = v;
            }
        }
        if (pivot == 0)
            throw FormatError("step " + std::to_string(raw.id) +
                              ": parents share no clashing variable");
        s.axiom = false;
        s.pivot = pivot;
        if (p1->clause.contains(pivot)) {
            s.parent1 = p1->id;
            s.parent2 = p2->id;
        } else {
            s.parent1 = p2->id;
            s.parent2 = p1->id;
        }
        seen.emplace(s.id, steps.size());
        steps.push_back(std::move(s));
    }
    return ResolutionProof(std::move(steps));
}

ResolutionProof load_proof(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open proof file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_proof(buf.str());
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void save_proof(const std::string& path, const ResolutionProof& proof) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot open file for writing: " + path);
    out << write_proof(proof);
    if (!out) throw FileError("failed writing proof file: " + path);
}

} // namespace randres
