#include "randres/circuit.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "randres/errors.hpp"
#include "randres/formulas.hpp"

namespace randres {

int MonotoneCircuit::add(Gate g) {
    int id = static_cast<int>(gates_.size()) + 1;
    if (g.kind == Gate::Kind::And || g.kind == Gate::Kind::Or) {
        if (g.a < 1 || g.a >= id || g.b < 1 || g.b >= id)
            throw ParamError("gate operands must reference earlier gates");
    } else if (g.kind == Gate::Kind::Input) {
        if (g.var < 1) throw ParamError("input gate needs a variable id");
    }
    gates_.push_back(g);
    return id;
}

void MonotoneCircuit::replace(int id, Gate g) {
    if (id < 1 || id > size()) throw ParamError("gate id out of range");
    if ((g.kind == Gate::Kind::And || g.kind == Gate::Kind::Or) &&
        (g.a < 1 || g.a >= id || g.b < 1 || g.b >= id))
        throw ParamError("gate operands must reference earlier gates");
    gates_[static_cast<size_t>(id) - 1] = g;
}

void MonotoneCircuit::set_output(int id) {
    if (id < 1 || id > size()) throw ParamError("output gate id out of range");
    output_ = id;
}

bool MonotoneCircuit::eval(const std::vector<uint8_t>& input_bits) const {
    if (output_ == 0) throw ParamError("circuit has no output gate");
    std::vector<uint8_t> value(gates_.size());
    for (size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        switch (g.kind) {
            case Gate::Kind::Const0: value[i] = 0; break;
            case Gate::Kind::Const1: value[i] = 1; break;
            case Gate::Kind::Input:
                if (static_cast<size_t>(g.var) >= input_bits.size())
                    throw ParamError("input bits do not cover variable " + std::to_string(g.var));
                value[i] = input_bits[static_cast<size_t>(g.var)];
                break;
            case Gate::Kind::And:
                value[i] = value[static_cast<size_t>(g.a) - 1] &&
                           value[static_cast<size_t>(g.b) - 1];
                break;
            case Gate::Kind::Or:
                value[i] = value[static_cast<size_t>(g.a) - 1] ||
                           value[static_cast<size_t>(g.b) - 1];
                break;
        }
    }
    return value[static_cast<size_t>(output_) - 1];
}

bool MonotoneCircuit::eval_graph(const Graph& g, const VarSpace& vs) const {
    if (g.n() != vs.n) throw ParamError("graph/space vertex count mismatch");
    std::vector<uint8_t> bits(static_cast<size_t>(vs.num_p()) + 1, 0);
    for (int t = 1; t <= vs.num_p(); ++t) bits[static_cast<size_t>(t)] = (g.bits() >> (t - 1)) & 1u;
    return eval(bits);
}

bool eval_circuit(const MonotoneCircuit& c, const Graph& g, const VarSpace& vs) {
    return c.eval_graph(g, vs);
}

bool check_monotone(const MonotoneCircuit& c) {
    if (c.output() < 1 || c.output() > c.size()) return false;
    for (int id = 1; id <= c.size(); ++id) {
        const Gate& g = c.gate(id);
        switch (g.kind) {
            case Gate::Kind::And:
            case Gate::Kind::Or:
                if (g.a < 1 || g.a >= id || g.b < 1 || g.b >= id) return false;
                break;
            case Gate::Kind::Input:
                if (g.var < 1) return false;
                break;
            case Gate::Kind::Const0:
            case Gate::Kind::Const1:
                break;
        }
    }
    return true;
}

std::string write_circuit(const MonotoneCircuit& c, const VarSpace& vs) {
    std::string out;
    for (int id = 1; id <= c.size(); ++id) {
        const Gate& g = c.gate(id);
        out += "g" + std::to_string(id) + " = ";
        switch (g.kind) {
            case Gate::Kind::Const0: out += "CONST 0"; break;
            case Gate::Kind::Const1: out += "CONST 1"; break;
            case Gate::Kind::Input: {
                auto [i, j] = vs.p_pair(g.var);
                out += "INPUT p " + std::to_string(i) + " " + std::to_string(j);
                break;
            }
            case Gate::Kind::And:
                out += "AND g" + std::to_string(g.a) + " g" + std::to_string(g.b);
                break;
            case Gate::Kind::Or:
                out += "OR g" + std::to_string(g.a) + " g" + std::to_string(g.b);
                break;
        }
        out += "\n";
    }
    out += "output g" + std::to_string(c.output()) + "\n";
    return out;
}

namespace {

int parse_gate_ref(const std::string& tok, int lineno) {
    if (tok.size() < 2 || tok[0] != 'g')
        throw FormatError("circuit line " + std::to_string(lineno) + ": expected g<id>, got '" +
                          tok + "'");
    try {
        return std::stoi(tok.substr(1));
    } catch (const std::exception&) {
        throw FormatError("circuit line " + std::to_string(lineno) + ": bad gate id '" + tok +
                          "'");
    }
}

} // namespace

MonotoneCircuit parse_circuit(const std::string& text, const VarSpace& vs) {
    MonotoneCircuit c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool output_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto tail_check = [&](std::istringstream& ls) {
            std::string rest;
            if (ls >> rest)
                throw FormatError("circuit line " + std::to_string(lineno) + ": trailing tokens");
        };
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (output_seen)
            throw FormatError("circuit line " + std::to_string(lineno) +
                              ": content after the output line");
        if (first == "output") {
            std::string ref;
            if (!(ls >> ref)) throw FormatError("circuit: output line needs a gate");
            c.set_output(parse_gate_ref(ref, lineno));
            tail_check(ls);
            output_seen = true;
            continue;
        }
        int id = parse_gate_ref(first, lineno);
        if (id != c.size() + 1)
            throw FormatError("circuit line " + std::to_string(lineno) +
                              ": gates must be numbered consecutively from g1");
        std::string eq, kind;
        if (!(ls >> eq >> kind) || eq != "=")
            throw FormatError("circuit line " + std::to_string(lineno) +
                              ": expected g<id> = <kind> ...");
        Gate g;
        if (kind == "CONST") {
            int bit = -1;
            if (!(ls >> bit) || (bit != 0 && bit != 1))
                throw FormatError("circuit line " + std::to_string(lineno) +
                                  ": CONST takes 0 or 1");
            g.kind = bit ? Gate::Kind::Const1 : Gate::Kind::Const0;
        } else if (kind == "INPUT") {
            std::string block;
            int i = 0, j = 0;
            if (!(ls >> block >> i >> j) || block != "p")
                throw FormatError("circuit line " + std::to_string(lineno) +
                                  ": INPUT takes p <i> <j>");
            g.kind = Gate::Kind::Input;
            try {
                g.var = vs.p_var(i, j);
            } catch (const ParamError& e) {
                throw FormatError("circuit line " + std::to_string(lineno) + ": " + e.what());
            }
        } else if (kind == "AND" || kind == "OR") {
            std::string ra, rb;
            if (!(ls >> ra >> rb))
                throw FormatError("circuit line " + std::to_string(lineno) +
                                  ": expected two gate operands");
            g.kind = kind == "AND" ? Gate::Kind::And : Gate::Kind::Or;
            g.a = parse_gate_ref(ra, lineno);
            g.b = parse_gate_ref(rb, lineno);
        } else {
            throw FormatError("circuit line " + std::to_string(lineno) + ": unknown gate kind '" +
                              kind + "'");
        }
        tail_check(ls);
        try {
            c.add(g);
        } catch (const ParamError& e) {
            throw FormatError("circuit line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!output_seen) throw FormatError("circuit: missing output line");
    return c;
}

namespace {

// left = clique side (q allowed, p positive), right = color side (r allowed,
// p negative); 0 left, 1 right
int axiom_side(const Clause& c, const VarSpace& vs) {
    bool has_q = false, has_r = false, pos_p = false, neg_p = false;
    for (int lit : c.lits()) {
        int var = lit_var(lit);
        if (!vs.valid_var(var))
            throw ParamError("axiom " + c.str() + " uses variables outside the space");
        switch (vs.block_of(var)) {
            case Block::Q: has_q = true; break;
            case Block::R: has_r = true; break;
            case Block::P:
                (lit > 0 ? pos_p : neg_p) = true;
                break;
        }
    }
    if (has_q && has_r)
        throw ParamError("axiom " + c.str() + " mixes clique-side and color-side variables");
    if (has_q || (!has_r && !neg_p)) {
        if (neg_p)
            throw ParamError("axiom " + c.str() +
                             " puts a negative edge literal on the clique side");
        return 0;
    }
    if (pos_p)
        throw ParamError("axiom " + c.str() + " puts a positive edge literal on the color side");
    return 1;
}

} // namespace

InterpolantCircuit extract_circuit(const ResolutionProof& proof, const VarSpace& vs) {
    if (proof.empty()) throw ParamError("cannot extract a circuit from an empty proof");
    InterpolantCircuit out;
    out.left_axioms = Cnf(true);
    out.right_axioms = Cnf(true);
    out.step_gate.reserve(proof.size());
    out.step_side.reserve(proof.size());
    int const0 = 0, const1 = 0;
    std::unordered_map<int, int> input_gate;
    std::unordered_map<int, int> gate_of_step;
    auto get_const = [&](bool one) {
        int& slot = one ? const1 : const0;
        if (slot == 0)
            slot = out.circuit.add({one ? Gate::Kind::Const1 : Gate::Kind::Const0, 0, 0, 0});
        return slot;
    };
    auto get_input = [&](int var) {
        auto it = input_gate.find(var);
        if (it != input_gate.end()) return it->second;
        int id = out.circuit.add({Gate::Kind::Input, 0, 0, var});
        input_gate.emplace(var, id);
        return id;
    };
    for (const ProofStep& s : proof.steps()) {
        int gate = 0;
        int8_t side = -1;
        if (s.axiom) {
            side = static_cast<int8_t>(axiom_side(s.clause, vs));
            if (side == 0) {
                out.left_axioms.add(s.clause);
                gate = get_const(false);
            } else {
                out.right_axioms.add(s.clause);
                gate = get_const(true);
            }
        } else {
            int d1 = gate_of_step.at(s.parent1);
            int d2 = gate_of_step.at(s.parent2);
            switch (vs.block_of(s.pivot)) {
                case Block::Q:
                    gate = out.circuit.add({Gate::Kind::Or, d1, d2, 0});
                    break;
                case Block::R:
                    gate = out.circuit.add({Gate::Kind::And, d1, d2, 0});
                    break;
                case Block::P: {
                    int guarded = out.circuit.add({Gate::Kind::And, get_input(s.pivot), d2, 0});
                    gate = out.circuit.add({Gate::Kind::Or, guarded, d1, 0});
                    break;
                }
            }
        }
        gate_of_step[s.id] = gate;
        out.step_gate.push_back(gate);
        out.step_side.push_back(side);
    }
    out.circuit.set_output(gate_of_step.at(proof.root_id()));
    CheckReport check = check_refutation(proof, Cnf::concat(out.left_axioms, out.right_axioms));
    if (!check.ok())
        throw ParamError("extraction needs a checking refutation of its own axiom set:\n" +
                         check.str());
    return out;
}

InvariantReport check_clause_invariant(const ResolutionProof& proof,
                                       const InterpolantCircuit& interp, const VarSpace& vs) {
    int np = vs.num_p(), nq = vs.num_q(), nr = vs.num_r();
    if (np > 20 || nq > 20 || nr > 20)
        throw BudgetError("clause invariant: blocks too large for exhaustive enumeration");
    if (interp.step_gate.size() != proof.size())
        throw ParamError("clause invariant: circuit does not parallel the proof");

    // satisfying q-parts of the left set and r-parts of the right set, per
    // p-assignment
    auto left_sat = [&](uint64_t p_bits, uint64_t q_bits) {
        for (const Clause& c : interp.left_axioms.clauses()) {
            bool sat = false;
            for (int lit : c.lits()) {
                int var = lit_var(lit);
                uint64_t bit = vs.block_of(var) == Block::P
                                   ? (p_bits >> (var - 1)) & 1
                                   : (q_bits >> (var - np - 1)) & 1;
                if ((lit > 0) == (bit != 0)) {
                    sat = true;
                    break;
                }
            }
            if (!sat) return false;
        }
        return true;
    };
    auto right_sat = [&](uint64_t p_bits, uint64_t r_bits) {
        for (const Clause& c : interp.right_axioms.clauses()) {
            bool sat = false;
            for (int lit : c.lits()) {
                int var = lit_var(lit);
                uint64_t bit = vs.block_of(var) == Block::P
                                   ? (p_bits >> (var - 1)) & 1
                                   : (r_bits >> (var - np - nq - 1)) & 1;
                if ((lit > 0) == (bit != 0)) {
                    sat = true;
                    break;
                }
            }
            if (!sat) return false;
        }
        return true;
    };

    InvariantReport report;
    std::vector<uint8_t> input_bits(static_cast<size_t>(np) + 1, 0);
    for (uint64_t p_bits = 0; p_bits < (uint64_t{1} << np); ++p_bits) {
        for (int t = 1; t <= np; ++t)
            input_bits[static_cast<size_t>(t)] = (p_bits >> (t - 1)) & 1u;
        std::vector<uint64_t> sat_q, sat_r;
        for (uint64_t q = 0; q < (uint64_t{1} << nq); ++q)
            if (left_sat(p_bits, q)) sat_q.push_back(q);
        for (uint64_t r = 0; r < (uint64_t{1} << nr); ++r)
            if (right_sat(p_bits, r)) sat_r.push_back(r);

        // evaluate every step's subcircuit under this p-part in one pass
        std::vector<uint8_t> value(static_cast<size_t>(interp.circuit.size()));
        for (int id = 1; id <= interp.circuit.size(); ++id) {
            const Gate& g = interp.circuit.gate(id);
            uint8_t v = 0;
            switch (g.kind) {
                case Gate::Kind::Const0: v = 0; break;
                case Gate::Kind::Const1: v = 1; break;
                case Gate::Kind::Input: v = input_bits.at(static_cast<size_t>(g.var)); break;
                case Gate::Kind::And:
                    v = value[static_cast<size_t>(g.a) - 1] && value[static_cast<size_t>(g.b) - 1];
                    break;
                case Gate::Kind::Or:
                    v = value[static_cast<size_t>(g.a) - 1] || value[static_cast<size_t>(g.b) - 1];
                    break;
            }
            value[static_cast<size_t>(id) - 1] = v;
        }

        for (size_t idx = 0; idx < proof.size(); ++idx) {
            const Clause& c = proof.steps()[idx].clause;
            bool d = value[static_cast<size_t>(interp.step_gate[idx]) - 1];
            bool pos_p_falsified = true, neg_p_falsified = true;
            for (int lit : c.lits()) {
                int var = lit_var(lit);
                if (vs.block_of(var) != Block::P) continue;
                uint64_t bit = (p_bits >> (var - 1)) & 1;
                if (lit > 0 && bit) pos_p_falsified = false;
                if (lit < 0 && !bit) neg_p_falsified = false;
            }
            if (!d && pos_p_falsified) {
                ++report.checks;
                for (uint64_t q : sat_q) {
                    bool hit = false;
                    for (int lit : c.lits()) {
                        int var = lit_var(lit);
                        if (vs.block_of(var) != Block::Q) continue;
                        uint64_t bit = (q >> (var - np - 1)) & 1;
                        if ((lit > 0) == (bit != 0)) {
                            hit = true;
                            break;
                        }
                    }
                    if (!hit) {
                        report.violations.push_back(
                            {proof.steps()[idx].id, 1, p_bits, q});
                        break;
                    }
                }
            }
            if (d && neg_p_falsified) {
                ++report.checks;
                for (uint64_t r : sat_r) {
                    bool hit = false;
                    for (int lit : c.lits()) {
                        int var = lit_var(lit);
                        if (vs.block_of(var) != Block::R) continue;
                        uint64_t bit = (r >> (var - np - nq - 1)) & 1;
                        if ((lit > 0) == (bit != 0)) {
                            hit = true;
                            break;
                        }
                    }
                    if (!hit) {
                        report.violations.push_back(
                            {proof.steps()[idx].id, 2, p_bits, r});
                        break;
                    }
                }
            }
        }
    }
    return report;
}

} // namespace randres
