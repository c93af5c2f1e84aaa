#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polycamo/camo.hpp"
#include "polycamo/oracle.hpp"
#include "polycamo/sim.hpp"

namespace polycamo {

struct AttackTraceRow {
    size_t iteration = 0;
    std::string dip;
    std::string oracle_output;
    size_t constraint_pairs = 0;
    uint64_t solver_conflicts = 0;
};

struct AttackResult {
    enum class Outcome { KeyFound, Inconsistent, Budget };
    Outcome outcome = Outcome::Budget;
    std::string key;  // de-camouflaged key when KeyFound
    size_t dip_count = 0;
    size_t query_count = 0;
    double wall_seconds = 0.0;
    bool replay_ok = false;  // recovered key reproduces every recorded query

    // AppSAT extras.
    double estimated_error = -1.0;
    std::string stitched_key;  // best consistent key seen, even on failure

    std::vector<AttackTraceRow> trace;

    static const char* outcome_name(Outcome o);
};

struct SatAttackOptions {
    int64_t conflict_budget = 10000000;  // per solver call
    size_t max_iterations = 100000;
    uint64_t seed = 0;  // nonzero adds solver randomization
    bool record_trace = false;
};

// Oracle-guided de-camouflaging: repeatedly solves a two-copy miter of the
// MUX-expanded keyed netlist for a discriminating input pattern, queries
// the oracle once per DIP, and constrains both copies with the observed
// response. Ends when no DIP remains; any key consistent with every
// recorded response is returned. Morphing oracles can make the recorded
// responses mutually inconsistent (Outcome::Inconsistent) or steer the
// attack to a key matching none of the templates.
AttackResult sat_attack(const CamoNetlist& c, Oracle& oracle, const SatAttackOptions& opts = {});

struct AppSatParams {
    size_t random_queries_per_round = 50;
    size_t dips_per_round = 12;
    double error_threshold = 0.01;
    size_t estimation_samples = 2000;
    size_t max_iterations = 100000;
    int64_t conflict_budget = 10000000;
    uint64_t seed = 1;
    bool record_trace = false;
};

// Approximate attack: the DIP loop is augmented with batches of random
// oracle queries added as constraints, and the current candidate key's
// disagreement rate against the oracle is estimated periodically on fresh
// samples. Terminates with the stitched key once the estimate drops to the
// threshold (or on budget/convergence). Estimation queries are
// measurement-only and never added as constraints.
AttackResult appsat_attack(const CamoNetlist& c, Oracle& oracle, const AppSatParams& params = {});

// HD/OER of apply_key(c, key) against a reference function.
MetricReport evaluate_recovered_key(const CamoNetlist& c, const std::string& key,
                                    const Netlist& reference, size_t patterns = 100000,
                                    uint64_t seed = 1);

}  // namespace polycamo
