#include "randres/dimacs.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "randres/errors.hpp"

namespace randres {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FileError("cannot open file for writing: " + path);
    out << content;
    if (!out) throw FileError("failed writing file: " + path);
}

std::string write_dimacs(const Cnf& f, int num_vars, const std::optional<VarSpace>& vs) {
    if (num_vars < f.max_var()) throw ParamError("write_dimacs: variable count too small");
    std::string out;
    if (vs) {
        if (vs->num_vars() != num_vars)
            throw ParamError("write_dimacs: space size disagrees with variable count");
        out += "c params n=" + std::to_string(vs->n) + " omega=" + std::to_string(vs->omega) +
               " xi=" + std::to_string(vs->xi) + "\n";
        int p_hi = vs->num_p(), q_hi = p_hi + vs->num_q(), r_hi = vs->num_vars();
        out += "c block p 1.." + std::to_string(p_hi) + "\n";
        out += "c block q " + std::to_string(p_hi + 1) + ".." + std::to_string(q_hi) + "\n";
        out += "c block r " + std::to_string(q_hi + 1) + ".." + std::to_string(r_hi) + "\n";
    }
    out += "p cnf " + std::to_string(num_vars) + " " + std::to_string(f.size()) + "\n";
    for (const Clause& c : f.clauses()) {
        for (int lit : c.lits()) out += std::to_string(lit) + " ";
        out += "0\n";
    }
    return out;
}

namespace {

struct BlockRange {
    int lo = 0;
    int hi = 0;
    bool seen = false;
};

void parse_params_comment(std::istringstream& in, int& n, int& omega, int& xi) {
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw FormatError("params comment: expected key=value");
        std::string key = tok.substr(0, eq);
        int value = 0;
        try {
            value = std::stoi(tok.substr(eq + 1));
        } catch (const std::exception&) {
            throw FormatError("params comment: bad value in '" + tok + "'");
        }
        if (key == "n") n = value;
        else if (key == "omega") omega = value;
        else if (key == "xi") xi = value;
        else throw FormatError("params comment: unknown key '" + key + "'");
    }
}

BlockRange parse_block_range(const std::string& spec) {
    auto dots = spec.find("..");
    if (dots == std::string::npos) throw FormatError("block comment: expected <lo>..<hi>");
    BlockRange r;
    try {
        r.lo = std::stoi(spec.substr(0, dots));
        r.hi = std::stoi(spec.substr(dots + 2));
    } catch (const std::exception&) {
        throw FormatError("block comment: bad bounds in '" + spec + "'");
    }
    r.seen = true;
    return r;
}

} // namespace

DimacsFile parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int n = 0, omega = 0, xi = 0;
    bool params_seen = false;
    BlockRange pb, qb, rb;
    DimacsFile file;
    file.cnf = Cnf(false);
    bool header_seen = false;
    int declared_clauses = 0;
    std::vector<int> lits;
    bool in_clause = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto fail = [lineno](const std::string& msg) -> FormatError {
            return FormatError("cnf line " + std::to_string(lineno) + ": " + msg);
        };
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == 'c') {
            std::istringstream cs(line.substr(first + 1));
            std::string what;
            if (!(cs >> what)) continue;
            if (what == "params") {
                parse_params_comment(cs, n, omega, xi);
                params_seen = true;
            } else if (what == "block") {
                std::string name, range;
                if (!(cs >> name >> range)) throw fail("block comment: expected name and range");
                if (name == "p") pb = parse_block_range(range);
                else if (name == "q") qb = parse_block_range(range);
                else if (name == "r") rb = parse_block_range(range);
                else throw fail("block comment: unknown block '" + name + "'");
            }
            continue;
        }
        if (!header_seen) {
            std::istringstream hs(line);
            std::string p, kind;
            if (!(hs >> p >> kind >> file.num_vars >> declared_clauses) || p != "p" ||
                kind != "cnf" || file.num_vars < 0 || declared_clauses < 0)
                throw fail("expected header 'p cnf <vars> <clauses>'");
            std::string rest;
            if (hs >> rest) throw fail("trailing tokens after the header");
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        long long tok = 0;
        while (ls >> tok) {
            if (tok == 0) {
                file.cnf.add(Clause(lits));
                lits.clear();
                in_clause = false;
                continue;
            }
            if (tok < INT32_MIN || tok > INT32_MAX) throw fail("literal out of range");
            int lit = static_cast<int>(tok);
            if (std::abs(lit) > file.num_vars)
                throw fail("literal " + std::to_string(lit) + " outside declared variables");
            lits.push_back(lit);
            in_clause = true;
        }
        if (ls.fail() && !ls.eof()) throw fail("expected integer literals");
    }
    if (!header_seen) throw FormatError("cnf: missing 'p cnf' header");
    if (in_clause) throw FormatError("cnf: unterminated final clause");
    if (static_cast<int>(file.cnf.size()) != declared_clauses)
        throw FormatError("cnf: header declares " + std::to_string(declared_clauses) +
                          " clauses but " + std::to_string(file.cnf.size()) + " were found");
    if (params_seen || pb.seen || qb.seen || rb.seen) {
        if (!params_seen || !pb.seen || !qb.seen || !rb.seen)
            throw FormatError("cnf: params and block comments must appear together");
        VarSpace vs;
        try {
            vs = VarSpace(n, omega, xi);
        } catch (const ParamError& e) {
            throw FormatError(std::string("cnf: ") + e.what());
        }
        if (pb.lo != 1 || pb.hi != vs.num_p() || qb.lo != vs.num_p() + 1 ||
            qb.hi != vs.num_p() + vs.num_q() || rb.lo != vs.num_p() + vs.num_q() + 1 ||
            rb.hi != vs.num_vars() || vs.num_vars() != file.num_vars)
            throw FormatError("cnf: block ranges disagree with the declared parameters");
        file.space = vs;
    }
    return file;
}

DimacsFile load_dimacs(const std::string& path) {
    try {
        return parse_dimacs(read_text_file(path));
    } catch (const FormatError& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void save_dimacs(const std::string& path, const Cnf& f, int num_vars,
                 const std::optional<VarSpace>& vs) {
    write_text_file(path, write_dimacs(f, num_vars, vs));
}

} // namespace randres
