#include "polycamo/atpg.hpp"

#include <algorithm>
#include <random>

#include "polycamo/cnf.hpp"
#include "polycamo/sim.hpp"
#include "polycamo/solver.hpp"

namespace polycamo {

namespace {

// Exact test generation for faults PODEM gives up on: a two-copy miter
// (fault-free vs faulty) over shared PIs, satisfiable iff some pattern
// drives a primary-output difference. CDCL copes with the reconvergent
// parity cones that blow up PI-level enumeration, and UNSAT is a proof of
// untestability.
PodemResult sat_testgen(const Netlist& n, const Fault& f, int64_t conflict_budget) {
    Cnf cnf;
    auto golden = tseitin_append(cnf, n, {});

    // Faulty copy: shared PI vars, fresh internal vars, with the fault site
    // cut loose and forced.
    std::unordered_map<NetId, Var> faulty;
    for (NetId pi : n.inputs()) faulty[pi] = golden.at(pi);
    auto var_of = [&](NetId net) {
        auto it = faulty.find(net);
        if (it != faulty.end()) return it->second;
        Var v = cnf.new_var();
        faulty.emplace(net, v);
        return v;
    };
    if (f.site == Fault::Site::Net) {
        Var fv = cnf.new_var();
        faulty[f.net] = fv;  // overrides a shared PI var when the site is a PI
        cnf.add_clause({f.stuck_at ? fv : -fv});
    }
    Var pin_const = 0;
    if (f.site == Fault::Site::Pin) {
        pin_const = cnf.new_var();
        cnf.add_clause({f.stuck_at ? pin_const : -pin_const});
    }
    for (GateId g = 0; g < n.gate_count(); ++g) {
        const Gate& gate = n.gate(g);
        if (f.site == Fault::Site::Net && gate.out == f.net) continue;  // driver cut loose
        Var a = var_of(gate.in[0]);
        Var b = gate.fn.arity == 2 ? var_of(gate.in[1]) : a;
        if (f.site == Fault::Site::Pin && f.gate == g) {
            if (f.pin == 0) a = pin_const;
            if (f.pin == 1 && gate.fn.arity == 2) b = pin_const;
        }
        encode_gate(cnf, gate.fn, var_of(gate.out), a, b);
    }

    std::vector<Lit> any_diff;
    for (NetId po : n.outputs()) {
        Var x = cnf.new_var();
        encode_gate(cnf, GateFunction::xor2(), x, golden.at(po), var_of(po));
        any_diff.push_back(x);
    }
    cnf.add_clause(any_diff);

    Solver solver;
    solver.set_conflict_budget(conflict_budget);
    solver.add_cnf(cnf);
    PodemResult result;
    switch (solver.solve()) {
        case Solver::Status::Sat: {
            result.outcome = PodemResult::Outcome::Found;
            result.pattern.assign(n.input_count(), false);
            for (size_t i = 0; i < n.input_count(); ++i)
                result.pattern[i] = solver.model_value(golden.at(n.inputs()[i]));
            return result;
        }
        case Solver::Status::Unsat:
            result.outcome = PodemResult::Outcome::Untestable;
            return result;
        case Solver::Status::Budget:
            result.outcome = PodemResult::Outcome::Aborted;
            return result;
    }
    return result;
}

// Forward pass with fault dropping; returns the subset of patterns that
// newly detect at least one fault, preserving order.
std::vector<std::vector<bool>> drop_useless(const Netlist& n, const FaultUniverse& universe,
                                            const std::vector<std::vector<bool>>& patterns) {
    std::vector<bool> detected(universe.faults.size(), false);
    std::vector<std::vector<bool>> kept;
    // Batch for speed, attribute detections to the first pattern in order.
    size_t at = 0;
    while (at < patterns.size()) {
        size_t take = std::min<size_t>(64, patterns.size() - at);
        std::vector<std::vector<bool>> batch(patterns.begin() + at, patterns.begin() + at + take);
        auto fresh = fault_simulate_incremental(n, universe, batch, detected);
        for (size_t i = 0; i < take; ++i)
            if (fresh[i] > 0) kept.push_back(batch[i]);
        at += take;
    }
    return kept;
}

}  // namespace

AtpgResult atpg(const Netlist& n, const AtpgParams& params) {
    AtpgResult result;
    FaultUniverse universe = enumerate_faults(n, params.collapse);
    std::vector<bool> detected(universe.faults.size(), false);
    std::vector<std::vector<bool>> patterns;

    const size_t total = universe.faults.size();
    auto coverage = [&](size_t det) { return total ? 100.0 * double(det) / double(total) : 0.0; };
    size_t detected_count = 0;

    // Phase 1: random patterns, keep a pattern iff it newly detects.
    std::mt19937_64 rng(params.seed);
    size_t stale = 0;
    for (size_t batch_no = 0;
         batch_no < params.random_batches_limit && stale < params.stale_batches &&
         coverage(detected_count) < params.target_fc;
         ++batch_no) {
        std::vector<std::vector<bool>> batch(64, std::vector<bool>(n.input_count()));
        for (auto& p : batch)
            for (size_t i = 0; i < p.size(); ++i) p[i] = rng() & 1;
        auto fresh = fault_simulate_incremental(n, universe, batch, detected);
        size_t yield = 0;
        for (size_t i = 0; i < batch.size(); ++i)
            if (fresh[i] > 0) {
                patterns.push_back(batch[i]);
                detected_count += fresh[i];
                yield++;
            }
        stale = yield == 0 ? stale + 1 : 0;
    }
    result.random_patterns = patterns.size();

    // Phase 2: deterministic search for each remaining fault, under a
    // global backtrack budget so one pathological circuit cannot stall the
    // whole run.
    size_t backtracks_spent = 0;
    size_t sat_fallbacks = 0;
    for (size_t fi = 0; fi < universe.faults.size(); ++fi) {
        if (detected[fi] || coverage(detected_count) >= params.target_fc) continue;
        PodemResult pr;
        if (backtracks_spent >= params.total_backtrack_budget) {
            pr.outcome = PodemResult::Outcome::Aborted;  // straight to the fallback
        } else {
            size_t limit = std::min(params.backtrack_limit,
                                    params.total_backtrack_budget - backtracks_spent);
            pr = podem(n, universe.faults[fi], limit);
            backtracks_spent += pr.backtracks;
        }
        if (pr.outcome == PodemResult::Outcome::Aborted && sat_fallbacks < params.sat_fallback_limit) {
            sat_fallbacks++;
            pr = sat_testgen(n, universe.faults[fi], 20000);
        }
        if (pr.outcome == PodemResult::Outcome::Untestable) {
            result.untestable++;
            continue;
        }
        if (pr.outcome == PodemResult::Outcome::Aborted) {
            result.aborted++;
            continue;
        }
        auto fresh = fault_simulate_incremental(n, universe, {pr.pattern}, detected);
        if (fresh[0] > 0) {
            patterns.push_back(pr.pattern);
            detected_count += fresh[0];
            result.deterministic_patterns++;
        }
    }

    // Reverse-order compaction, then a forward pass so that every retained
    // pattern newly detects at least one fault in final order.
    std::reverse(patterns.begin(), patterns.end());
    patterns = drop_useless(n, universe, patterns);
    std::reverse(patterns.begin(), patterns.end());
    patterns = drop_useless(n, universe, patterns);

    result.tests = make_test_set(n, patterns);
    auto final_sim = fault_simulate(n, universe, result.tests, params.jobs);
    result.coverage_percent = final_sim.coverage_percent;
    result.tests.fault_coverage = final_sim.coverage_percent;
    return result;
}

}  // namespace polycamo
