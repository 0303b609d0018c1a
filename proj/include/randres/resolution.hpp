#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "randres/clause.hpp"

namespace randres {

struct ProofStep {
    int id = 0;
    Clause clause;
    bool axiom = true;
    int parent1 = 0; // pivot occurs positively here
    int parent2 = 0; // and negatively here
    int pivot = 0;   // variable id
};

// Steps in derivation order; parents always refer to earlier steps. The root
// is the final step. Structural problems (duplicate ids, forward or unknown
// parents) are construction errors, not checker diagnostics.
class ResolutionProof {
public:
    ResolutionProof() = default;
    explicit ResolutionProof(std::vector<ProofStep> steps);

    const std::vector<ProofStep>& steps() const { return steps_; }
    size_t size() const { return steps_.size(); }
    bool empty() const { return steps_.empty(); }
    int root_id() const;
    const ProofStep& step(int id) const;
    bool has_step(int id) const { return index_.count(id) != 0; }

private:
    std::vector<ProofStep> steps_;
    std::unordered_map<int, size_t> index_;
};

Clause resolve(const Clause& c1, const Clause& c2, int pivot);

enum class CheckErrorKind { AxiomNotInInput, BadPivot, WrongResolvent, NonemptyRoot };

struct CheckIssue {
    int step_id = 0;
    CheckErrorKind kind = CheckErrorKind::AxiomNotInInput;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string str() const;
};

const char* check_error_name(CheckErrorKind kind);

CheckReport check_refutation(const ResolutionProof& proof, const Cnf& f);

inline int num_clauses(const ResolutionProof& proof) { return static_cast<int>(proof.size()); }
int num_axioms(const ResolutionProof& proof);

} // namespace randres
