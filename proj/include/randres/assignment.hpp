#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randres/clause.hpp"
#include "randres/errors.hpp"

namespace randres {

// Total or partial map from variable id (1-based) to a bit.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(int num_vars) : v_(static_cast<size_t>(num_vars), -1) {}

    static Assignment total_zeros(int num_vars) {
        Assignment a(num_vars);
        for (auto& x : a.v_) x = 0;
        return a;
    }

    int num_vars() const { return static_cast<int>(v_.size()); }

    bool in_range(int var) const { return var >= 1 && var <= num_vars(); }

    bool is_set(int var) const {
        return in_range(var) && v_[static_cast<size_t>(var - 1)] >= 0;
    }

    bool is_total() const {
        for (auto x : v_)
            if (x < 0) return false;
        return true;
    }

    int value(int var) const {
        if (!is_set(var)) throw ParamError("unassigned variable " + std::to_string(var));
        return v_[static_cast<size_t>(var - 1)];
    }

    void set(int var, int bit) {
        if (!in_range(var)) throw ParamError("assignment: variable out of range");
        v_[static_cast<size_t>(var - 1)] = static_cast<int8_t>(bit ? 1 : 0);
    }

    void unset(int var) {
        if (!in_range(var)) throw ParamError("assignment: variable out of range");
        v_[static_cast<size_t>(var - 1)] = -1;
    }

    /// True iff the literal is satisfied; throws on an unassigned variable.
    bool sat_lit(int lit) const {
        int b = value(lit_var(lit));
        return lit_pos(lit) ? b == 1 : b == 0;
    }

    bool operator==(const Assignment&) const = default;

private:
    std::vector<int8_t> v_; // -1 unset, else 0/1
};

} // namespace randres
