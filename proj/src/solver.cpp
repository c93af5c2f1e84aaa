#include "polycamo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polycamo {

namespace {

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr double kRescaleLimit = 1e100;
constexpr int kRestartBase = 100;

// Luby sequence term (1-based).
int luby(int i) {
    int k = 1;
    while ((1 << (k + 1)) - 1 <= i) k++;
    while ((1 << k) - 1 != i) {
        i -= (1 << (k - 1));  // recurse into the prefix
        k = 1;
        while ((1 << (k + 1)) - 1 <= i) k++;
    }
    return 1 << (k - 1);
}

}  // namespace

Solver::Solver() = default;

Var Solver::new_var() {
    assign_.push_back(kUndef);
    phase_.push_back(1);  // default polarity: false (matches minisat)
    reason_.push_back(-1);
    level_.push_back(0);
    activity_.push_back(0.0);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_pos_.push_back(SIZE_MAX);
    uint32_t v = static_cast<uint32_t>(assign_.size() - 1);
    heap_insert(v);
    return static_cast<Var>(assign_.size());
}

void Solver::ensure_var(Var v) {
    while (var_count() < v) new_var();
}

uint64_t Solver::next_rand() {
    // xorshift64*; only consulted when a seed was set.
    rng_state_ ^= rng_state_ >> 12;
    rng_state_ ^= rng_state_ << 25;
    rng_state_ ^= rng_state_ >> 27;
    return rng_state_ * 0x2545F4914F6CDD1DULL;
}

void Solver::attach(uint32_t ci) {
    const Clause& c = clauses_[ci];
    watches_[inot(c.lits[0])].push_back({ci, c.lits[1]});
    watches_[inot(c.lits[1])].push_back({ci, c.lits[0]});
}

bool Solver::add_clause(std::vector<Lit> lits) {
    if (!ok_) return false;
    if (!trail_lim_.empty()) cancel_until(0);

    std::vector<ILit> ils;
    ils.reserve(lits.size());
    for (Lit l : lits) {
        if (l == 0) throw std::invalid_argument("zero literal");
        ensure_var(std::abs(l));
        ils.push_back(to_ilit(l));
    }
    std::sort(ils.begin(), ils.end());
    ils.erase(std::unique(ils.begin(), ils.end()), ils.end());

    // Tautology / level-0 simplification.
    std::vector<ILit> kept;
    for (size_t i = 0; i < ils.size(); ++i) {
        if (i + 1 < ils.size() && ils[i + 1] == inot(ils[i])) return true;  // tautology
        uint8_t v = value(ils[i]);
        if (v == kTrue) return true;  // already satisfied at level 0
        if (v == kUndef) kept.push_back(ils[i]);
    }
    if (kept.empty()) {
        ok_ = false;
        return false;
    }
    if (kept.size() == 1) {
        if (!enqueue(kept[0], -1)) {
            ok_ = false;
            return false;
        }
        ok_ = propagate() < 0;
        return ok_;
    }
    clauses_.push_back({std::move(kept), 0.0, false});
    attach(static_cast<uint32_t>(clauses_.size() - 1));
    return true;
}

void Solver::add_cnf(const Cnf& cnf) {
    ensure_var(cnf.var_count);
    for (const auto& clause : cnf.clauses) add_clause(clause);
}

bool Solver::enqueue(ILit l, int32_t reason) {
    uint8_t v = value(l);
    if (v != kUndef) return v == kTrue;
    assign_[ivar(l)] = static_cast<uint8_t>(l & 1u);
    reason_[ivar(l)] = reason;
    level_[ivar(l)] = static_cast<int32_t>(trail_lim_.size());
    trail_.push_back(l);
    return true;
}

int32_t Solver::propagate() {
    while (qhead_ < trail_.size()) {
        ILit p = trail_[qhead_++];
        total_propagations_++;
        auto& ws = watches_[p];
        size_t keep = 0;
        for (size_t i = 0; i < ws.size(); ++i) {
            Watcher w = ws[i];
            if (value(w.blocker) == kTrue) {
                ws[keep++] = w;
                continue;
            }
            Clause& c = clauses_[w.clause];
            ILit false_lit = inot(p);
            if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
            // c.lits[1] == false_lit now
            if (value(c.lits[0]) == kTrue) {
                ws[keep++] = {w.clause, c.lits[0]};
                continue;
            }
            bool moved = false;
            for (size_t k = 2; k < c.lits.size(); ++k) {
                if (value(c.lits[k]) != kFalse) {
                    std::swap(c.lits[1], c.lits[k]);
                    watches_[inot(c.lits[1])].push_back({w.clause, c.lits[0]});
                    moved = true;
                    break;
                }
            }
            if (moved) continue;
            // Unit or conflicting.
            ws[keep++] = w;
            if (value(c.lits[0]) == kFalse) {
                for (size_t j = i + 1; j < ws.size(); ++j) ws[keep++] = ws[j];
                ws.resize(keep);
                qhead_ = trail_.size();
                return static_cast<int32_t>(w.clause);
            }
            enqueue(c.lits[0], static_cast<int32_t>(w.clause));
        }
        ws.resize(keep);
    }
    return -1;
}

void Solver::bump_var(uint32_t v) {
    activity_[v] += var_inc_;
    if (activity_[v] > kRescaleLimit) {
        for (double& a : activity_) a *= 1e-100;
        var_inc_ *= 1e-100;
    }
    if (heap_contains(v)) heap_update(v);
}

void Solver::bump_clause(Clause& c) {
    c.activity += clause_inc_;
    if (c.activity > kRescaleLimit) {
        for (auto& cl : clauses_)
            if (cl.learnt) cl.activity *= 1e-100;
        clause_inc_ *= 1e-100;
    }
}

void Solver::decay_activities() {
    var_inc_ /= kVarDecay;
    clause_inc_ /= kClauseDecay;
}

void Solver::analyze(int32_t confl, std::vector<ILit>& learnt, int& backtrack_level) {
    learnt.clear();
    learnt.push_back(kUndefLit);  // slot for the asserting literal
    int counter = 0;
    ILit p = kUndefLit;
    size_t index = trail_.size();
    int current_level = static_cast<int>(trail_lim_.size());

    do {
        Clause& c = clauses_[confl];
        if (c.learnt) bump_clause(c);
        for (size_t j = (p == kUndefLit ? 0 : 1); j < c.lits.size(); ++j) {
            ILit q = c.lits[j];
            uint32_t v = ivar(q);
            if (!seen_[v] && level_[v] > 0) {
                seen_[v] = 1;
                bump_var(v);
                if (level_[v] >= current_level)
                    counter++;
                else
                    learnt.push_back(q);
            }
        }
        // Next literal to resolve on.
        while (!seen_[ivar(trail_[--index])]) {
        }
        p = trail_[index];
        confl = reason_[ivar(p)];
        seen_[ivar(p)] = 0;
        counter--;
    } while (counter > 0);
    learnt[0] = inot(p);

    // Cheap self-subsumption: drop literals implied by the rest.
    size_t kept = 1;
    for (size_t i = 1; i < learnt.size(); ++i) {
        uint32_t v = ivar(learnt[i]);
        int32_t r = reason_[v];
        bool redundant = false;
        if (r >= 0) {
            redundant = true;
            const Clause& rc = clauses_[r];
            for (size_t j = 1; j < rc.lits.size(); ++j) {
                uint32_t w = ivar(rc.lits[j]);
                if (!seen_[w] && level_[w] > 0) {
                    redundant = false;
                    break;
                }
            }
        }
        if (!redundant) learnt[kept++] = learnt[i];
    }
    learnt.resize(kept);
    for (ILit l : learnt) seen_[ivar(l)] = 0;
    // seen_ for dropped literals: clear via scan of learnt only is not
    // enough; clear the rest from the original set.
    for (size_t i = 0; i < trail_.size(); ++i) seen_[ivar(trail_[i])] = 0;

    if (learnt.size() == 1) {
        backtrack_level = 0;
    } else {
        size_t max_i = 1;
        for (size_t i = 2; i < learnt.size(); ++i)
            if (level_[ivar(learnt[i])] > level_[ivar(learnt[max_i])]) max_i = i;
        backtrack_level = level_[ivar(learnt[max_i])];
        std::swap(learnt[1], learnt[max_i]);
    }
}

void Solver::cancel_until(int target) {
    if (static_cast<int>(trail_lim_.size()) <= target) return;
    for (size_t i = trail_.size(); i > trail_lim_[target];) {
        --i;
        uint32_t v = ivar(trail_[i]);
        phase_[v] = assign_[v];
        assign_[v] = kUndef;
        reason_[v] = -1;
        if (!heap_contains(v)) heap_insert(v);
    }
    trail_.resize(trail_lim_[target]);
    trail_lim_.resize(target);
    qhead_ = trail_.size();
}

Solver::ILit Solver::pick_branch() {
    // Occasional random pick when seeded, to diversify attack trajectories.
    if (rng_state_ != 0 && (next_rand() & 0x3F) == 0) {
        uint32_t tries = 8;
        while (tries--) {
            uint32_t v = static_cast<uint32_t>(next_rand() % assign_.size());
            if (assign_[v] == kUndef)
                return (v << 1) | (next_rand() & 1u);
        }
    }
    while (!heap_.empty()) {
        uint32_t v = heap_pop();
        if (assign_[v] == kUndef) return (v << 1) | phase_[v];
    }
    return kUndefLit;
}

void Solver::reduce_db() {
    // Drop the less active half of the learnt clauses; keep reasons.
    std::vector<uint32_t> learnts;
    for (uint32_t i = 0; i < clauses_.size(); ++i)
        if (clauses_[i].learnt) learnts.push_back(i);
    if (learnts.size() < 256) return;
    std::sort(learnts.begin(), learnts.end(), [&](uint32_t a, uint32_t b) {
        return clauses_[a].activity < clauses_[b].activity;
    });
    std::vector<bool> locked(clauses_.size(), false);
    for (ILit l : trail_) {
        int32_t r = reason_[ivar(l)];
        if (r >= 0) locked[r] = true;
    }
    std::vector<bool> remove(clauses_.size(), false);
    for (size_t i = 0; i < learnts.size() / 2; ++i)
        if (!locked[learnts[i]] && clauses_[learnts[i]].lits.size() > 2) remove[learnts[i]] = true;

    // Rebuild watches without the removed clauses (indices stay stable; the
    // clause bodies are emptied).
    for (auto& wl : watches_) {
        size_t keep = 0;
        for (auto& w : wl)
            if (!remove[w.clause]) wl[keep++] = w;
        wl.resize(keep);
    }
    for (uint32_t ci = 0; ci < clauses_.size(); ++ci)
        if (remove[ci]) {
            clauses_[ci].lits.clear();
            clauses_[ci].lits.shrink_to_fit();
            clauses_[ci].learnt = false;  // emptied slot
        }
}

Solver::Status Solver::solve(const std::vector<Lit>& assumptions) {
    if (!ok_) return Status::Unsat;
    cancel_until(0);

    std::vector<ILit> assume;
    assume.reserve(assumptions.size());
    for (Lit l : assumptions) {
        ensure_var(std::abs(l));
        assume.push_back(to_ilit(l));
    }

    int64_t budget = conflict_budget_;
    uint64_t conflicts_this_call = 0;
    int restart_count = 0;
    uint64_t restart_limit = uint64_t(kRestartBase) * luby(++restart_count);
    uint64_t conflicts_since_restart = 0;
    uint64_t learnt_since_reduce = 0;

    std::vector<ILit> learnt_clause;
    for (;;) {
        int32_t confl = propagate();
        if (confl >= 0) {
            total_conflicts_++;
            conflicts_this_call++;
            conflicts_since_restart++;
            learnt_since_reduce++;
            if (trail_lim_.empty()) {
                ok_ = false;
                return Status::Unsat;
            }
            int backtrack_level = 0;
            analyze(confl, learnt_clause, backtrack_level);
            cancel_until(backtrack_level);
            if (learnt_clause.size() == 1) {
                if (!enqueue(learnt_clause[0], -1)) {
                    ok_ = false;
                    return Status::Unsat;
                }
            } else {
                clauses_.push_back({learnt_clause, 0.0, true});
                uint32_t ci = static_cast<uint32_t>(clauses_.size() - 1);
                bump_clause(clauses_[ci]);
                attach(ci);
                enqueue(learnt_clause[0], static_cast<int32_t>(ci));
            }
            decay_activities();
            if (budget > 0 && static_cast<int64_t>(conflicts_this_call) >= budget) {
                cancel_until(0);
                return Status::Budget;
            }
            if (conflicts_since_restart >= restart_limit) {
                cancel_until(0);
                conflicts_since_restart = 0;
                restart_limit = uint64_t(kRestartBase) * luby(++restart_count);
            }
            if (learnt_since_reduce >= 8192) {
                learnt_since_reduce = 0;
                reduce_db();
            }
        } else {
            // Place assumptions first, one decision level each.
            if (trail_lim_.size() < assume.size()) {
                ILit a = assume[trail_lim_.size()];
                uint8_t v = value(a);
                if (v == kFalse) {
                    cancel_until(0);
                    return Status::Unsat;  // assumption contradicted
                }
                trail_lim_.push_back(trail_.size());
                if (v == kUndef) enqueue(a, -1);
                continue;
            }
            ILit next = pick_branch();
            if (next == kUndefLit) {
                // Model found.
                model_.assign(assign_.begin(), assign_.end());
                cancel_until(0);
                return Status::Sat;
            }
            total_decisions_++;
            trail_lim_.push_back(trail_.size());
            enqueue(next, -1);
        }
    }
}

bool Solver::model_value(Var v) const {
    if (v <= 0 || static_cast<size_t>(v) > model_.size()) return false;
    return model_[v - 1] == kTrue;
}

// --- order heap ---------------------------------------------------------

void Solver::heap_insert(uint32_t v) {
    heap_pos_[v] = heap_.size();
    heap_.push_back(v);
    heap_sift_up(heap_.size() - 1);
}

void Solver::heap_update(uint32_t v) {
    heap_sift_up(heap_pos_[v]);
}

uint32_t Solver::heap_pop() {
    uint32_t top = heap_[0];
    heap_pos_[top] = SIZE_MAX;
    heap_[0] = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
        heap_pos_[heap_[0]] = 0;
        heap_sift_down(0);
    }
    return top;
}

void Solver::heap_sift_up(size_t i) {
    VarOrderLt lt{&activity_};
    uint32_t v = heap_[i];
    while (i > 0) {
        size_t parent = (i - 1) / 2;
        if (!lt(v, heap_[parent])) break;
        heap_[i] = heap_[parent];
        heap_pos_[heap_[i]] = i;
        i = parent;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

void Solver::heap_sift_down(size_t i) {
    VarOrderLt lt{&activity_};
    uint32_t v = heap_[i];
    for (;;) {
        size_t left = 2 * i + 1;
        if (left >= heap_.size()) break;
        size_t best = left;
        if (left + 1 < heap_.size() && lt(heap_[left + 1], heap_[left])) best = left + 1;
        if (!lt(heap_[best], v)) break;
        heap_[i] = heap_[best];
        heap_pos_[heap_[i]] = i;
        i = best;
    }
    heap_[i] = v;
    heap_pos_[v] = i;
}

SolveResult solve_cnf(const Cnf& cnf, const std::vector<Lit>& assumptions,
                      int64_t conflict_budget) {
    Solver s;
    s.set_conflict_budget(conflict_budget);
    s.add_cnf(cnf);
    SolveResult r;
    r.status = s.solve(assumptions);
    if (r.status == Solver::Status::Sat) {
        r.model.assign(static_cast<size_t>(s.var_count()) + 1, false);
        for (Var v = 1; v <= s.var_count(); ++v) r.model[v] = s.model_value(v);
    }
    return r;
}

}  // namespace polycamo
