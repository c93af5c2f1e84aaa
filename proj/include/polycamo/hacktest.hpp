#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polycamo/atpg.hpp"
#include "polycamo/camo.hpp"
#include "polycamo/fault_sim.hpp"

namespace polycamo {

// Score of one key assignment against supplied test data. Keys are ranked
// by (response_matches, fault_coverage) lexicographically; the supplied
// responses are part of the attacker's assets, so consistency with them
// outranks raw coverage.
struct HackTestScore {
    std::string key;
    size_t response_matches = 0;
    double fault_coverage = 0.0;  // percent

    bool better_than(const HackTestScore& other) const {
        if (response_matches != other.response_matches)
            return response_matches > other.response_matches;
        if (fault_coverage != other.fault_coverage) return fault_coverage > other.fault_coverage;
        return key < other.key;  // lowest key value wins ties
    }
};

struct HackTestOptions {
    size_t exhaustive_key_limit = 20;  // key bits; beyond this, hill-climb
    size_t restarts = 10;
    uint64_t seed = 1;
};

// Test-data-mining attack: finds the key assignment maximizing the score
// above. Exhaustive for small key spaces, greedy per-cell hill climbing
// with seeded restarts otherwise.
HackTestScore hacktest(const CamoNetlist& k, const TestSet& t, const HackTestOptions& opts = {});

// Full score table (exhaustive key spaces only), in ascending key order.
std::vector<HackTestScore> hacktest_score_table(const CamoNetlist& k, const TestSet& t);

struct PostTestReport {
    std::string decoy_key;
    std::string recovered_key;
    size_t wrong_cells_vs_true = 0;   // recovered assignment vs the true key
    size_t decoy_cells_vs_true = 0;   // decoy assignment vs the true key
    bool response_match_maximal = false;
    HackTestScore score;
    MetricReport hd_vs_true;
    double test_fc = 0.0;  // coverage of the generated test set
};

// Post-test-configuration experiment: the chip is configured with
// `decoy_key` for manufacturing test, the test set is generated on that
// configuration, HackTest runs on the supplied test data, and the recovered
// assignment is compared against the true key.
PostTestReport post_test_experiment(const CamoNetlist& k, const std::string& true_key,
                                    const std::string& decoy_key, const AtpgParams& atpg_params,
                                    const HackTestOptions& opts = {});

// Fraction of key bits equal between two keys of the same length.
double key_bit_accuracy(const std::string& a, const std::string& b);

}  // namespace polycamo
