#pragma once

#include <algorithm>
#include <cstdlib>
#include <initializer_list>
#include <string>
#include <unordered_set>
#include <vector>

#include "randres/errors.hpp"

namespace randres {

/// Literals are signed DIMACS integers: +v / -v for variable v >= 1.
inline int lit_var(int lit) { return lit < 0 ? -lit : lit; }
inline bool lit_pos(int lit) { return lit > 0; }

// A clause is a duplicate-free set of literals in a canonical order (by
// variable, negative literal first). A clause may contain both signs of a
// variable; is_tautological() flags that case.
class Clause {
public:
    Clause() = default;

    explicit Clause(std::vector<int> lits) : lits_(std::move(lits)) {
        for (int lit : lits_)
            if (lit == 0) throw ParamError("clause literal 0");
        std::sort(lits_.begin(), lits_.end(), [](int a, int b) {
            if (lit_var(a) != lit_var(b)) return lit_var(a) < lit_var(b);
            return a < b;
        });
        lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    }

    Clause(std::initializer_list<int> lits) : Clause(std::vector<int>(lits)) {}

    const std::vector<int>& lits() const { return lits_; }
    bool empty() const { return lits_.empty(); }
    int size() const { return static_cast<int>(lits_.size()); }

    bool contains(int lit) const {
        return std::binary_search(lits_.begin(), lits_.end(), lit, [](int a, int b) {
            if (lit_var(a) != lit_var(b)) return lit_var(a) < lit_var(b);
            return a < b;
        });
    }

    bool has_var(int var) const { return contains(var) || contains(-var); }

    bool is_tautological() const {
        for (size_t i = 0; i + 1 < lits_.size(); ++i)
            if (lits_[i] == -lits_[i + 1]) return true;
        return false;
    }

    int max_var() const {
        int m = 0;
        for (int lit : lits_) m = std::max(m, lit_var(lit));
        return m;
    }

    std::string str() const {
        std::string s = "{";
        for (size_t i = 0; i < lits_.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(lits_[i]);
        }
        return s + "}";
    }

    bool operator==(const Clause&) const = default;
    auto operator<=>(const Clause&) const = default;

private:
    std::vector<int> lits_;
};

struct ClauseHash {
    size_t operator()(const Clause& c) const {
        size_t h = 1469598103934665603ull;
        for (int lit : c.lits()) {
            h ^= static_cast<size_t>(static_cast<unsigned>(lit));
            h *= 1099511628211ull;
        }
        return h;
    }
};

/// Ordered list of clauses. Duplicates are allowed unless dedup mode is
/// requested at build time, which silently drops repeated literal-sets.
class Cnf {
public:
    Cnf() = default;

    explicit Cnf(bool dedup) : dedup_(dedup) {}

    explicit Cnf(std::vector<Clause> clauses, bool dedup = false) : dedup_(dedup) {
        for (auto& c : clauses) add(std::move(c));
    }

    void add(Clause c) {
        if (dedup_ && !seen_.insert(c).second) return;
        clauses_.push_back(std::move(c));
    }

    /// Adds only if not already present (set semantics).
    bool add_unique(const Clause& c) {
        for (const auto& e : clauses_)
            if (e == c) return false;
        clauses_.push_back(c);
        return true;
    }

    const std::vector<Clause>& clauses() const { return clauses_; }
    int size() const { return static_cast<int>(clauses_.size()); }
    bool empty() const { return clauses_.empty(); }
    const Clause& operator[](int i) const { return clauses_[static_cast<size_t>(i)]; }

    bool contains(const Clause& c) const {
        for (const auto& e : clauses_)
            if (e == c) return true;
        return false;
    }

    int max_var() const {
        int m = 0;
        for (const auto& c : clauses_) m = std::max(m, c.max_var());
        return m;
    }

    static Cnf concat(const Cnf& a, const Cnf& b) {
        Cnf r = a;
        for (const auto& c : b.clauses()) r.add(c);
        return r;
    }

    bool operator==(const Cnf& o) const { return clauses_ == o.clauses_; }

private:
    std::vector<Clause> clauses_;
    bool dedup_ = false;
    std::unordered_set<Clause, ClauseHash> seen_;
};

} // namespace randres
