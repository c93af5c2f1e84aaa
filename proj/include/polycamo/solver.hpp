#pragma once

#include <cstdint>
#include <vector>

#include "polycamo/cnf.hpp"

namespace polycamo {

// Conflict-driven clause-learning SAT solver with two-literal watching,
// first-UIP learning, VSIDS branching (ties broken toward the lowest
// variable index), phase saving and Luby restarts. Clauses may be added
// between solve() calls; solve() takes assumption literals. A conflict
// budget turns an over-long search into Status::Budget rather than an
// answer.
class Solver {
public:
    enum class Status { Sat, Unsat, Budget };

    Solver();

    Var new_var();
    void ensure_var(Var v);
    Var var_count() const { return static_cast<Var>(assign_.size()); }

    // False when the clause set is already unsatisfiable at the top level.
    bool add_clause(std::vector<Lit> lits);
    void add_cnf(const Cnf& cnf);

    Status solve(const std::vector<Lit>& assumptions = {});

    bool model_value(Var v) const;  // defined after Status::Sat

    void set_conflict_budget(int64_t budget) { conflict_budget_ = budget; }
    // Nonzero seeds add occasional randomized polarity/branching; zero keeps
    // the search fully deterministic.
    void set_random_seed(uint64_t seed) { rng_state_ = seed; }

    uint64_t conflicts() const { return total_conflicts_; }
    uint64_t decisions() const { return total_decisions_; }
    uint64_t propagations() const { return total_propagations_; }
    bool ok() const { return ok_; }

private:
    // Internal literal: variable index << 1 | sign (sign 1 = negated).
    using ILit = uint32_t;
    static constexpr ILit kUndefLit = ~0u;
    enum : uint8_t { kTrue = 0, kFalse = 1, kUndef = 2 };

    struct Clause {
        std::vector<ILit> lits;
        double activity = 0.0;
        bool learnt = false;
    };
    struct Watcher {
        uint32_t clause;
        ILit blocker;
    };
    struct VarOrderLt {
        const std::vector<double>* activity;
        bool operator()(uint32_t a, uint32_t b) const {
            double aa = (*activity)[a], ab = (*activity)[b];
            if (aa != ab) return aa > ab;
            return a < b;
        }
    };

    static ILit to_ilit(Lit l) {
        return (static_cast<uint32_t>(std::abs(l) - 1) << 1) | (l < 0 ? 1u : 0u);
    }
    static uint32_t ivar(ILit l) { return l >> 1; }
    static ILit inot(ILit l) { return l ^ 1u; }

    uint8_t value(ILit l) const {
        uint8_t a = assign_[ivar(l)];
        return a == kUndef ? kUndef : (a ^ static_cast<uint8_t>(l & 1u));
    }

    void attach(uint32_t ci);
    bool enqueue(ILit l, int32_t reason);
    int32_t propagate();  // returns conflicting clause index or -1
    void analyze(int32_t confl, std::vector<ILit>& learnt, int& backtrack_level);
    void cancel_until(int level);
    ILit pick_branch();
    void bump_var(uint32_t v);
    void bump_clause(Clause& c);
    void decay_activities();
    void reduce_db();
    uint64_t next_rand();

    // Heap helpers for the variable order.
    void heap_insert(uint32_t v);
    void heap_update(uint32_t v);
    uint32_t heap_pop();
    void heap_sift_up(size_t i);
    void heap_sift_down(size_t i);
    bool heap_contains(uint32_t v) const { return heap_pos_[v] != SIZE_MAX; }

    std::vector<Clause> clauses_;
    std::vector<std::vector<Watcher>> watches_;  // per internal literal
    std::vector<uint8_t> assign_;                // per var: kTrue/kFalse/kUndef
    std::vector<uint8_t> phase_;                 // saved polarity
    std::vector<int32_t> reason_;                // clause index or -1
    std::vector<int32_t> level_;
    std::vector<double> activity_;
    std::vector<uint8_t> seen_;
    std::vector<ILit> trail_;
    std::vector<size_t> trail_lim_;
    size_t qhead_ = 0;

    std::vector<uint32_t> heap_;
    std::vector<size_t> heap_pos_;

    std::vector<uint8_t> model_;
    bool ok_ = true;

    double var_inc_ = 1.0;
    double clause_inc_ = 1.0;
    int64_t conflict_budget_ = -1;
    uint64_t rng_state_ = 0;
    uint64_t total_conflicts_ = 0, total_decisions_ = 0, total_propagations_ = 0;
};

struct SolveResult {
    Solver::Status status;
    std::vector<bool> model;  // indexed by variable (entry 0 unused)
};

// One-shot convenience over a fresh solver.
SolveResult solve_cnf(const Cnf& cnf, const std::vector<Lit>& assumptions = {},
                      int64_t conflict_budget = -1);

}  // namespace polycamo
