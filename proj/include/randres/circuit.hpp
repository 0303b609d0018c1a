#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randres/clause.hpp"
#include "randres/graph.hpp"
#include "randres/resolution.hpp"
#include "randres/varspace.hpp"

namespace randres {

struct Gate {
    enum class Kind { Const0, Const1, Input, And, Or } kind = Gate::Kind::Const0;
    int a = 0;   // gate ids for And/Or
    int b = 0;
    int var = 0; // p-variable id for Input
};

// And/Or dag over p-inputs, gate ids 1..size with operands preceding users.
class MonotoneCircuit {
public:
    int add(Gate g);
    void replace(int id, Gate g); // for negative-control corruption only
    const Gate& gate(int id) const { return gates_.at(static_cast<size_t>(id) - 1); }
    int size() const { return static_cast<int>(gates_.size()); }
    int output() const { return output_; }
    void set_output(int id);

    bool eval(const std::vector<uint8_t>& input_bits) const; // indexed by var
    bool eval_graph(const Graph& g, const VarSpace& vs) const;

private:
    std::vector<Gate> gates_;
    int output_ = 0;
};

bool eval_circuit(const MonotoneCircuit& c, const Graph& g, const VarSpace& vs);
bool check_monotone(const MonotoneCircuit& c);

/// Line format: `g<id> = AND g<a> g<b>`, `OR g<a> g<b>`, `CONST 0|1`,
/// `INPUT p <i> <j>`; final line `output g<id>`.
std::string write_circuit(const MonotoneCircuit& c, const VarSpace& vs);
MonotoneCircuit parse_circuit(const std::string& text, const VarSpace& vs);

struct InterpolantCircuit {
    MonotoneCircuit circuit;
    std::vector<int> step_gate;    // proof step index -> root gate of its subcircuit
    std::vector<int8_t> step_side; // axioms: 0 = left family, 1 = right; resolves: -1
    Cnf left_axioms;               // p positive, q allowed
    Cnf right_axioms;              // p negative, r allowed
};

/// One subcircuit per proof step: left axiom CONST0, right axiom CONST1,
/// q-resolution OR, r-resolution AND, p-resolution on x
/// OR(AND(x, D_neg-parent), D_pos-parent). Requires an empty extra set.
InterpolantCircuit extract_circuit(const ResolutionProof& proof, const VarSpace& vs);

struct InvariantViolation {
    int step_id = 0;
    int condition = 0;    // 1: zero side, 2: one side
    uint64_t p_bits = 0;  // offending p-assignment
    uint64_t qr_bits = 0; // offending q- or r-assignment
};

struct InvariantReport {
    std::vector<InvariantViolation> violations;
    uint64_t checks = 0;
    bool ok() const { return violations.empty(); }
};

/// Step-wise certificate that the extraction interpolates: wherever a step's
/// subcircuit outputs 0 and the p-part falsifies the step's positive
/// p-literals, no q-assignment satisfies the left axioms without satisfying
/// a q-literal of the step; dually for output 1, negative p-literals, and
/// the right axioms. At the empty clause this is exactly the separation.
InvariantReport check_clause_invariant(const ResolutionProof& proof,
                                       const InterpolantCircuit& interp, const VarSpace& vs);

} // namespace randres
