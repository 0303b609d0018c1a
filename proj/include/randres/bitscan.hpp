#pragma once

#include <cstdint>
#include <vector>

#include "randres/assignment.hpp"
#include "randres/clause.hpp"
#include "randres/errors.hpp"

namespace randres {

// Clause compiled to bitmasks for exhaustive scans. Assignment masks use
// bit (v-1) for variable v; a clause is falsified when every positive
// literal reads 0 and every negative literal reads 1.
struct MaskClause {
    uint64_t pos = 0;
    uint64_t neg = 0;

    bool falsified_by(uint64_t a) const { return (a & pos) == 0 && (a & neg) == neg; }
};

inline MaskClause mask_clause(const Clause& c, int num_vars) {
    if (num_vars > 63) throw BudgetError("mask_clause: more than 63 variables");
    MaskClause m;
    for (int lit : c.lits()) {
        int v = lit_var(lit);
        if (v > num_vars) throw ParamError("mask_clause: literal outside variable range");
        uint64_t bit = uint64_t{1} << (v - 1);
        if (lit > 0) m.pos |= bit; else m.neg |= bit;
    }
    return m;
}

inline std::vector<MaskClause> mask_clauses(const Cnf& f, int num_vars) {
    std::vector<MaskClause> out;
    out.reserve(f.size());
    for (const Clause& c : f.clauses()) out.push_back(mask_clause(c, num_vars));
    return out;
}

inline bool falsifies_any(uint64_t a, const std::vector<MaskClause>& cs) {
    for (const MaskClause& m : cs)
        if (m.falsified_by(a)) return true;
    return false;
}

inline Assignment assignment_from_mask(uint64_t a, int num_vars) {
    Assignment out(num_vars);
    for (int v = 1; v <= num_vars; ++v) out.set(v, (a >> (v - 1)) & 1u);
    return out;
}

inline uint64_t mask_from_assignment(const Assignment& a) {
    if (a.num_vars() > 63) throw BudgetError("mask_from_assignment: more than 63 variables");
    uint64_t m = 0;
    for (int v = 1; v <= a.num_vars(); ++v)
        if (a.value(v)) m |= uint64_t{1} << (v - 1);
    return m;
}

} // namespace randres
