#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "polycamo/fault_sim.hpp"
#include "polycamo/faults.hpp"
#include "polycamo/netlist.hpp"

namespace polycamo {

struct PodemResult {
    enum class Outcome { Found, Untestable, Aborted };
    Outcome outcome = Outcome::Aborted;
    std::vector<bool> pattern;  // valid when Found
    size_t backtracks = 0;
};

// PODEM: PI-level implicit enumeration with five-valued (two-plane,
// three-valued) forward implication. `Untestable` is definitive; `Aborted`
// means the backtrack limit was hit first.
PodemResult podem(const Netlist& n, const Fault& fault, size_t backtrack_limit = 100000);

struct AtpgParams {
    double target_fc = 100.0;         // percent
    uint64_t seed = 1;
    bool collapse = false;            // fault universe mode
    size_t random_batches_limit = 256;  // 64 patterns per batch
    size_t stale_batches = 6;           // stop random phase after this many yieldless batches
    size_t backtrack_limit = 100000;    // per fault
    size_t total_backtrack_budget = 40000;  // across the deterministic phase
    size_t sat_fallback_limit = 64;          // SAT-backed fault proofs per run
    int jobs = 1;
};

struct AtpgResult {
    TestSet tests;
    double coverage_percent = 0.0;
    size_t untestable = 0;
    size_t aborted = 0;
    size_t random_patterns = 0;
    size_t deterministic_patterns = 0;
};

// Two-phase ATPG: random patterns with fault-simulation-guided retention
// (a pattern is kept only if it newly detects at least one fault), then
// PODEM on every remaining undetected fault, followed by reverse-order
// compaction. Coverage shortfalls are reported, never thrown.
AtpgResult atpg(const Netlist& n, const AtpgParams& params = {});

}  // namespace polycamo
