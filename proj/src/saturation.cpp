#include "randres/saturation.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "randres/errors.hpp"
#include "randres/formulas.hpp"

namespace randres {

std::vector<std::vector<int>> family_elimination_blocks(const VarSpace& vs) {
    std::vector<int> q, r, p;
    for (int x = vs.num_p() + 1; x <= vs.num_p() + vs.num_q(); ++x) q.push_back(x);
    for (int x = vs.num_p() + vs.num_q() + 1; x <= vs.num_vars(); ++x) r.push_back(x);
    for (int x = 1; x <= vs.num_p(); ++x) p.push_back(x);
    return {q, r, p};
}

namespace {

struct EliminationRecord {
    int var = 0;
    std::vector<Clause> pos; // clauses holding +var when it was eliminated
    std::vector<Clause> neg;
};

ResolutionProof prune_to_root(const std::vector<ProofStep>& steps, int root) {
    std::vector<char> keep(steps.size() + 1, 0);
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        if (keep[static_cast<size_t>(id)]) continue;
        keep[static_cast<size_t>(id)] = 1;
        const ProofStep& s = steps[static_cast<size_t>(id) - 1];
        if (!s.axiom) {
            stack.push_back(s.parent1);
            stack.push_back(s.parent2);
        }
    }
    std::vector<ProofStep> pruned;
    std::vector<int> renamed(steps.size() + 1, 0);
    for (const ProofStep& s : steps) {
        if (!keep[static_cast<size_t>(s.id)]) continue;
        ProofStep t = s;
        t.id = static_cast<int>(pruned.size()) + 1;
        if (!t.axiom) {
            t.parent1 = renamed[static_cast<size_t>(s.parent1)];
            t.parent2 = renamed[static_cast<size_t>(s.parent2)];
        }
        renamed[static_cast<size_t>(s.id)] = t.id;
        pruned.push_back(std::move(t));
    }
    return ResolutionProof(std::move(pruned));
}

} // namespace

SaturationResult saturation_refute(const Cnf& f, const std::vector<std::vector<int>>& blocks,
                                   const SaturationOptions& opts) {
    std::unordered_set<int> block_vars;
    int max_block_var = 0;
    for (const auto& block : blocks)
        for (int x : block) {
            if (x <= 0) throw ParamError("saturation: variable ids must be positive");
            if (!block_vars.insert(x).second)
                throw ParamError("saturation: variable " + std::to_string(x) +
                                 " listed twice in the elimination blocks");
            max_block_var = std::max(max_block_var, x);
        }
    for (const Clause& c : f.clauses())
        for (int lit : c.lits())
            if (!block_vars.count(lit_var(lit)))
                throw ParamError("saturation: variable " + std::to_string(lit_var(lit)) +
                                 " missing from the elimination blocks");

    std::vector<ProofStep> steps;
    std::unordered_map<Clause, int, ClauseHash> step_of;
    std::vector<std::pair<Clause, int>> active;
    int empty_id = 0;

    auto add_step = [&](Clause c, bool axiom, int par1, int par2, int piv) {
        if (steps.size() >= opts.max_steps)
            throw BudgetError("saturation: step budget exhausted");
        int id = static_cast<int>(steps.size()) + 1;
        if (c.empty()) empty_id = id;
        step_of.emplace(c, id);
        active.emplace_back(c, id);
        steps.push_back({id, std::move(c), axiom, par1, par2, piv});
    };

    for (const Clause& c : f.clauses()) {
        if (c.is_tautological() || step_of.count(c)) continue;
        add_step(c, true, 0, 0, 0);
        if (empty_id) break;
    }

    std::vector<EliminationRecord> elim;
    for (const auto& block : blocks) {
        if (empty_id) break;
        std::vector<int> remaining = block;
        std::sort(remaining.begin(), remaining.end());
        while (!remaining.empty() && !empty_id) {
            std::unordered_map<int, std::pair<uint64_t, uint64_t>> counts;
            for (int x : remaining) counts[x] = {0, 0};
            for (const auto& [c, id] : active)
                for (int lit : c.lits()) {
                    auto it = counts.find(lit_var(lit));
                    if (it == counts.end()) continue;
                    if (lit > 0) ++it->second.first;
                    else ++it->second.second;
                }
            int var = 0;
            uint64_t best_cost = 0;
            for (int x : remaining) {
                auto [np, nn] = counts[x];
                uint64_t cost = np * nn;
                if (var == 0 || cost < best_cost) {
                    var = x;
                    best_cost = cost;
                }
            }

            EliminationRecord rec;
            rec.var = var;
            std::vector<std::pair<Clause, int>> next_active;
            std::vector<std::pair<Clause, int>> pos, neg;
            for (auto& entry : active) {
                bool has_pos = entry.first.contains(var);
                bool has_neg = entry.first.contains(-var);
                if (has_pos) {
                    rec.pos.push_back(entry.first);
                    pos.push_back(entry);
                }
                if (has_neg) {
                    rec.neg.push_back(entry.first);
                    neg.push_back(entry);
                }
                if (!has_pos && !has_neg) next_active.push_back(std::move(entry));
            }
            active = std::move(next_active);
            for (const auto& [c1, id1] : pos) {
                for (const auto& [c2, id2] : neg) {
                    Clause res = resolve(c1, c2, var);
                    if (res.is_tautological() || step_of.count(res)) continue;
                    add_step(std::move(res), false, id1, id2, var);
                    if (empty_id) break;
                }
                if (empty_id) break;
            }
            elim.push_back(std::move(rec));
            remaining.erase(std::find(remaining.begin(), remaining.end(), var));
        }
    }

    SaturationResult result;
    if (empty_id) {
        result.unsat = true;
        result.proof = prune_to_root(steps, empty_id);
        return result;
    }

    Assignment model(max_block_var);
    for (int x : block_vars) model.set(x, 0);
    for (auto it = elim.rbegin(); it != elim.rend(); ++it) {
        bool need_one = false;
        for (const Clause& c : it->pos) {
            bool rest_satisfied = false;
            for (int lit : c.lits()) {
                if (lit == it->var) continue;
                if (model.sat_lit(lit)) {
                    rest_satisfied = true;
                    break;
                }
            }
            if (!rest_satisfied) {
                need_one = true;
                break;
            }
        }
        model.set(it->var, need_one ? 1 : 0);
    }
    if (!eval_cnf(f, model))
        throw Error("saturation: reconstructed model fails the input; this is a bug");
    result.model = std::move(model);
    return result;
}

SaturationResult saturation_refute(const Cnf& f, int num_vars, const SaturationOptions& opts) {
    int top = std::max(num_vars, f.max_var());
    std::vector<int> all(static_cast<size_t>(top));
    for (int x = 1; x <= top; ++x) all[static_cast<size_t>(x) - 1] = x;
    return saturation_refute(f, {all}, opts);
}

} // namespace randres
