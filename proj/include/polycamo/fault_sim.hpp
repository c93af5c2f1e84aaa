#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polycamo/faults.hpp"
#include "polycamo/netlist.hpp"

namespace polycamo {

// Test patterns with golden responses for a specific netlist.
struct TestSet {
    std::vector<std::string> input_names;
    std::vector<std::string> output_names;
    std::vector<std::vector<bool>> patterns;
    std::vector<std::vector<bool>> responses;
    double fault_coverage = 0.0;  // percent, as achieved at generation time

    size_t size() const { return patterns.size(); }

    // Text format: `patterns <n> inputs <pi...> outputs <po...>` header,
    // then one `bits -> bits` line per pattern.
    std::string to_text() const;
    static TestSet from_text(const std::string& text);
};

// Golden responses recomputed on `n` for the given patterns.
TestSet make_test_set(const Netlist& n, const std::vector<std::vector<bool>>& patterns);

struct FaultSimResult {
    std::vector<bool> detected;  // indexed like universe.faults
    size_t detected_count = 0;
    double coverage_percent = 0.0;
};

// Parallel-pattern single-fault propagation: one golden bit-parallel pass,
// then a cone-limited faulty pass per fault. A fault counts as detected if
// any pattern produces a primary-output difference.
FaultSimResult fault_simulate(const Netlist& n, const FaultUniverse& universe, const TestSet& t,
                              int jobs = 1);

// Incremental core used by ATPG: simulates `patterns` against the subset of
// still-undetected faults and flips their entry in `detected`. Returns per
// pattern the number of faults that pattern newly detected (first detecting
// pattern wins within the batch).
std::vector<size_t> fault_simulate_incremental(const Netlist& n, const FaultUniverse& universe,
                                               const std::vector<std::vector<bool>>& patterns,
                                               std::vector<bool>& detected);

}  // namespace polycamo
