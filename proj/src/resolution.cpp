#include "randres/resolution.hpp"

#include <algorithm>

#include "randres/errors.hpp"

namespace randres {

ResolutionProof::ResolutionProof(std::vector<ProofStep> steps) : steps_(std::move(steps)) {
    index_.reserve(steps_.size());
    for (size_t i = 0; i < steps_.size(); ++i) {
        const ProofStep& s = steps_[i];
        if (s.id <= 0) throw FormatError("proof step ids must be positive");
        if (!index_.emplace(s.id, i).second)
            throw FormatError("duplicate proof step id " + std::to_string(s.id));
        if (!s.axiom) {
            for (int parent : {s.parent1, s.parent2}) {
                auto it = index_.find(parent);
                if (it == index_.end() || it->second >= i)
                    throw FormatError("step " + std::to_string(s.id) +
                                      " references missing or later step " +
                                      std::to_string(parent));
            }
            if (s.pivot <= 0)
                throw FormatError("step " + std::to_string(s.id) + " has no pivot variable");
        }
    }
}

int ResolutionProof::root_id() const {
    if (steps_.empty()) throw ParamError("empty proof has no root");
    return steps_.back().id;
}

const ProofStep& ResolutionProof::step(int id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw ParamError("unknown proof step id " + std::to_string(id));
    return steps_[it->second];
}

Clause resolve(const Clause& c1, const Clause& c2, int pivot) {
    if (pivot <= 0) throw ParamError("resolve: pivot must be a variable id");
    if (!c1.contains(pivot)) throw ParamError("resolve: pivot not positive in first clause");
    if (!c2.contains(-pivot)) throw ParamError("resolve: pivot not negative in second clause");
    std::vector<int> lits;
    lits.reserve(c1.size() + c2.size() - 2);
    for (int lit : c1.lits())
        if (lit != pivot) lits.push_back(lit);
    for (int lit : c2.lits())
        if (lit != -pivot) lits.push_back(lit);
    return Clause(lits);
}

const char* check_error_name(CheckErrorKind kind) {
    switch (kind) {
        case CheckErrorKind::AxiomNotInInput: return "axiom-not-in-input";
        case CheckErrorKind::BadPivot: return "bad-pivot";
        case CheckErrorKind::WrongResolvent: return "wrong-resolvent";
        case CheckErrorKind::NonemptyRoot: return "nonempty-root";
    }
    return "unknown";
}

std::string CheckReport::str() const {
    if (ok()) return "ok";
    std::string out;
    for (const CheckIssue& issue : issues) {
        out += "step " + std::to_string(issue.step_id) + ": " + check_error_name(issue.kind);
        if (!issue.detail.empty()) out += " (" + issue.detail + ")";
        out += "\n";
    }
    return out;
}

CheckReport check_refutation(const ResolutionProof& proof, const Cnf& f) {
    CheckReport report;
    for (const ProofStep& s : proof.steps()) {
        if (s.axiom) {
            if (!f.contains(s.clause))
                report.issues.push_back(
                    {s.id, CheckErrorKind::AxiomNotInInput, s.clause.str()});
            continue;
        }
        const Clause& c1 = proof.step(s.parent1).clause;
        const Clause& c2 = proof.step(s.parent2).clause;
        if (!c1.contains(s.pivot) || !c2.contains(-s.pivot)) {
            report.issues.push_back({s.id, CheckErrorKind::BadPivot,
                                     "variable " + std::to_string(s.pivot)});
            continue;
        }
        if (resolve(c1, c2, s.pivot) != s.clause)
            report.issues.push_back({s.id, CheckErrorKind::WrongResolvent, s.clause.str()});
    }
    if (proof.empty() || !proof.steps().back().clause.empty())
        report.issues.push_back({proof.empty() ? 0 : proof.root_id(),
                                 CheckErrorKind::NonemptyRoot, ""});
    return report;
}

int num_axioms(const ResolutionProof& proof) {
    return static_cast<int>(
        std::count_if(proof.steps().begin(), proof.steps().end(),
                      [](const ProofStep& s) { return s.axiom; }));
}

} // namespace randres
