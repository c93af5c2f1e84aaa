#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "polycamo/netlist.hpp"

namespace polycamo {

// 64 patterns per word, one word row per net. Bit i of a word holds pattern
// i's value for that net within the block.
class PatternBlock {
public:
    PatternBlock() = default;
    PatternBlock(size_t nets, size_t patterns);

    size_t pattern_count() const { return patterns_; }
    size_t words_per_net() const { return words_; }
    size_t net_count() const { return nets_; }

    uint64_t* row(NetId n) { return data_.data() + static_cast<size_t>(n) * words_; }
    const uint64_t* row(NetId n) const { return data_.data() + static_cast<size_t>(n) * words_; }

    void set(NetId n, size_t pattern, bool value);
    bool get(NetId n, size_t pattern) const;

    // Mask with ones for every valid pattern position in the last word.
    uint64_t tail_mask() const;

private:
    size_t nets_ = 0, patterns_ = 0, words_ = 0;
    std::vector<uint64_t> data_;
};

struct MetricReport {
    double hd = 0.0;
    double oer = 0.0;
    size_t patterns = 0;
    uint64_t seed = 0;
    bool exhaustive = false;

    // CSV row: benchmark, trial, patterns, seed, hd, oer
    std::string csv_row(const std::string& benchmark, size_t trial) const;
};

// Evaluates every net of the netlist; `block` must carry values for all
// primary inputs and have a row for every net. Gates are evaluated in
// topological order.
void simulate_all(const Netlist& n, PatternBlock& block);

// Fills PI rows from a seeded generator, simulates, and returns the block
// restricted to output rows in output order.
std::vector<std::vector<uint64_t>> simulate_random(const Netlist& n, size_t patterns,
                                                   uint64_t seed);

// Single-pattern convenience used by oracles.
std::vector<bool> simulate_pattern(const Netlist& n, const std::vector<bool>& pi_values);

struct HdOerOptions {
    size_t patterns = 100000;
    uint64_t seed = 1;
    // Circuits with at most this many inputs are measured exhaustively
    // instead of sampled.
    size_t exhaustive_pi_limit = 16;
};

// Hamming distance and output error rate between two netlists with
// identical PI/PO name sets. HD counts differing output bits over
// patterns x |PO|; OER counts patterns with at least one differing output.
MetricReport hd_oer(const Netlist& a, const Netlist& b, const HdOerOptions& opts = {});

// Fills `pattern` words for one PI row.
void fill_random_row(uint64_t* row, size_t words, std::mt19937_64& rng);

}  // namespace polycamo
