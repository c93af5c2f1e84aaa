#include "polycamo/hacktest.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "polycamo/sim.hpp"

namespace polycamo {

namespace {

std::string key_from_indices(const CamoNetlist& k, const std::vector<size_t>& indices) {
    std::string key(k.key_len, '0');
    for (size_t ci = 0; ci < k.cells.size(); ++ci) {
        const CamoCell& cell = k.cells[ci];
        for (size_t j = 0; j < cell.key_width; ++j)
            key[cell.key_offset + j] =
                ((indices[ci] >> (cell.key_width - 1 - j)) & 1u) ? '1' : '0';
    }
    return key;
}

std::vector<size_t> indices_from_key(const CamoNetlist& k, const std::string& key) {
    std::vector<size_t> indices(k.cells.size(), 0);
    for (size_t ci = 0; ci < k.cells.size(); ++ci) {
        const CamoCell& cell = k.cells[ci];
        size_t idx = 0;
        for (size_t j = 0; j < cell.key_width; ++j)
            idx = (idx << 1) | size_t(key[cell.key_offset + j] - '0');
        indices[ci] = idx;
    }
    return indices;
}

inline uint64_t eval_word(GateFunction fn, uint64_t a, uint64_t b) {
    using G = GateFunction;
    switch (fn.tt) {
        case G::TT_AND: return a & b;
        case G::TT_OR: return a | b;
        case G::TT_NAND: return ~(a & b);
        case G::TT_NOR: return ~(a | b);
        case G::TT_XOR: return a ^ b;
        case G::TT_XNOR: return ~(a ^ b);
        case G::TT_BUF: return a;
        case G::TT_INV: return ~a;
        default: {
            uint64_t out = 0;
            if (fn.tt & 0b0001) out |= ~a & ~b;
            if (fn.tt & 0b0010) out |= ~a & b;
            if (fn.tt & 0b0100) out |= a & ~b;
            if (fn.tt & 0b1000) out |= a & b;
            return out;
        }
    }
}

// Scores candidate keys without rebuilding netlists: the camouflaged
// netlist's structure is key-independent, so a key assignment is just a
// per-gate function override on top of the base circuit.
struct Scorer {
    const CamoNetlist& camo;
    const TestSet& tests;
    PatternBlock block;
    std::vector<uint64_t> expected;  // po-major packed golden responses
    std::vector<GateFunction> fn;    // working function table
    std::unordered_map<std::string, double> fc_cache;
    FaultUniverse universe;  // key-independent: candidates never change arity
    bool universe_ready = false;

    Scorer(const CamoNetlist& k, const TestSet& t) : camo(k), tests(t) {
        const Netlist& n = k.base;
        block = PatternBlock(n.net_count(), std::max<size_t>(t.size(), 1));
        for (size_t p = 0; p < t.patterns.size(); ++p)
            for (size_t i = 0; i < t.patterns[p].size(); ++i)
                block.set(n.inputs()[i], p, t.patterns[p][i]);
        const size_t words = block.words_per_net();
        expected.assign(n.output_count() * words, 0);
        for (size_t p = 0; p < t.responses.size(); ++p)
            for (size_t o = 0; o < t.responses[p].size(); ++o)
                if (t.responses[p][o])
                    expected[o * words + p / 64] |= uint64_t{1} << (p % 64);
        fn.resize(n.gate_count());
        for (GateId g = 0; g < n.gate_count(); ++g) fn[g] = n.gate(g).fn.lifted();
    }

    struct MatchScore {
        size_t full = 0;  // patterns whose whole response matches
        size_t bits = 0;  // agreeing output bits (climbing gradient)
        bool operator>(const MatchScore& o) const {
            return full != o.full ? full > o.full : bits > o.bits;
        }
    };

    MatchScore score(const std::vector<size_t>& indices) {
        if (tests.patterns.empty()) return {};
        const Netlist& n = camo.base;
        for (size_t ci = 0; ci < camo.cells.size(); ++ci)
            fn[camo.cells[ci].gate_id] = camo.cells[ci].candidates[indices[ci]];
        const size_t words = block.words_per_net();
        for (GateId g = 0; g < n.gate_count(); ++g) {
            const Gate& gate = n.gate(g);
            const uint64_t* a = block.row(gate.in[0]);
            const uint64_t* b = gate.fn.arity == 2 ? block.row(gate.in[1]) : a;
            uint64_t* out = block.row(gate.out);
            GateFunction f = fn[g];
            for (size_t w = 0; w < words; ++w) out[w] = eval_word(f, a[w], b[w]);
        }
        const uint64_t tail = block.tail_mask();
        std::vector<uint64_t> mismatch(words, 0);
        size_t bad_bits = 0;
        for (size_t o = 0; o < n.output_count(); ++o) {
            const uint64_t* got = block.row(n.outputs()[o]);
            const uint64_t* want = expected.data() + o * words;
            for (size_t w = 0; w < words; ++w) {
                uint64_t d = got[w] ^ want[w];
                if (w == words - 1) d &= tail;
                mismatch[w] |= d;
                bad_bits += std::popcount(d);
            }
        }
        size_t bad = 0;
        for (uint64_t m : mismatch) bad += std::popcount(m);
        return {tests.size() - bad, tests.size() * n.output_count() - bad_bits};
    }

    size_t matches(const std::vector<size_t>& indices) { return score(indices).full; }

    double coverage(const std::vector<size_t>& indices) {
        std::string key = key_from_indices(camo, indices);
        auto it = fc_cache.find(key);
        if (it != fc_cache.end()) return it->second;
        Netlist resolved = apply_key(camo, key);
        if (!universe_ready) {
            universe = enumerate_faults(resolved, false);
            universe_ready = true;
        }
        double fc = fault_simulate(resolved, universe, tests).coverage_percent;
        fc_cache.emplace(std::move(key), fc);
        return fc;
    }
};

}  // namespace

std::vector<HackTestScore> hacktest_score_table(const CamoNetlist& k, const TestSet& t) {
    if (k.key_len > 24) throw std::invalid_argument("key space too large for a full table");
    std::vector<HackTestScore> table;
    if (k.cells.empty()) return table;
    Scorer scorer(k, t);
    std::vector<size_t> indices(k.cells.size(), 0);
    for (;;) {
        HackTestScore s;
        s.key = key_from_indices(k, indices);
        s.response_matches = scorer.matches(indices);
        s.fault_coverage = scorer.coverage(indices);
        table.push_back(std::move(s));
        size_t ci = k.cells.size();
        bool done = false;
        while (ci > 0) {
            --ci;
            if (++indices[ci] < k.cells[ci].candidates.size()) break;
            indices[ci] = 0;
            if (ci == 0) done = true;
        }
        if (done) break;
    }
    return table;
}

HackTestScore hacktest(const CamoNetlist& k, const TestSet& t, const HackTestOptions& opts) {
    if (k.cells.empty()) throw std::invalid_argument("netlist has no camouflaged cells");
    Scorer scorer(k, t);

    if (k.key_len <= opts.exhaustive_key_limit) {
        std::vector<size_t> indices(k.cells.size(), 0);
        std::vector<std::vector<size_t>> leaders;
        size_t best_matches = 0;
        bool first = true;
        for (;;) {
            size_t m = scorer.matches(indices);
            if (first || m > best_matches) {
                best_matches = m;
                leaders.assign(1, indices);
                first = false;
            } else if (m == best_matches) {
                leaders.push_back(indices);
            }
            size_t ci = k.cells.size();
            bool done = false;
            while (ci > 0) {
                --ci;
                if (++indices[ci] < k.cells[ci].candidates.size()) break;
                indices[ci] = 0;
                if (ci == 0) done = true;
            }
            if (done) break;
        }
        // FC breaks ties among the leaders; enumeration order already
        // visits keys lowest-first, so the first winner has the lowest key.
        HackTestScore best;
        bool have = false;
        for (const auto& cand : leaders) {
            HackTestScore s{key_from_indices(k, cand), best_matches, scorer.coverage(cand)};
            if (!have || s.better_than(best)) {
                best = s;
                have = true;
            }
        }
        return best;
    }

    // Greedy per-cell hill climbing with seeded restarts. Each restart
    // first climbs the response-match count to a fixpoint (including
    // pairwise cell moves to hop the most common plateaus), then polishes
    // along match-preserving moves by fault coverage.
    std::mt19937_64 rng(opts.seed);
    HackTestScore global_best;
    bool have_global = false;
    for (size_t restart = 0; restart < opts.restarts; ++restart) {
        std::vector<size_t> indices(k.cells.size(), 0);
        if (restart > 0)  // restart 0 is the deterministic lowest key
            for (size_t ci = 0; ci < indices.size(); ++ci) {
                std::uniform_int_distribution<size_t> dist(0,
                                                           k.cells[ci].candidates.size() - 1);
                indices[ci] = dist(rng);
            }
        auto cur = scorer.score(indices);
        const size_t full = t.size();

        // Phase 1: single-cell climbing on (full matches, agreeing bits);
        // the bit term supplies a gradient where whole-pattern matches are
        // flat.
        bool improved = true;
        while (improved) {
            improved = false;
            for (size_t ci = 0; ci < k.cells.size(); ++ci) {
                size_t best_idx = indices[ci];
                for (size_t cand = 0; cand < k.cells[ci].candidates.size(); ++cand) {
                    if (cand == best_idx) continue;
                    indices[ci] = cand;
                    auto s = scorer.score(indices);
                    if (s > cur) {
                        cur = s;
                        best_idx = cand;
                        improved = true;
                    }
                }
                indices[ci] = best_idx;
            }
            // Pairwise moves over adjacent cell pairs when stuck short of a
            // full match; compensating cell pairs are the usual trap.
            if (!improved && cur.full < full) {
                for (size_t ci = 0; ci + 1 < k.cells.size() && !improved; ++ci) {
                    size_t keep_a = indices[ci], keep_b = indices[ci + 1];
                    for (size_t ca = 0; ca < k.cells[ci].candidates.size() && !improved; ++ca)
                        for (size_t cb = 0; cb < k.cells[ci + 1].candidates.size(); ++cb) {
                            if (ca == keep_a && cb == keep_b) continue;
                            indices[ci] = ca;
                            indices[ci + 1] = cb;
                            auto s = scorer.score(indices);
                            if (s > cur) {
                                cur = s;
                                improved = true;
                                break;
                            }
                        }
                    if (!improved) {
                        indices[ci] = keep_a;
                        indices[ci + 1] = keep_b;
                    }
                }
            }
        }
        size_t cur_matches = cur.full;

        // Phase 2: bounded coverage polish along match-preserving moves.
        // Restarts that cannot beat the current leader on matches skip it:
        // coverage only ever breaks response-match ties.
        double cur_fc = -1.0;
        if (!have_global || cur_matches >= global_best.response_matches) {
            cur_fc = scorer.coverage(indices);
            size_t fc_evals = 0;
            for (size_t ci = 0; ci < k.cells.size() && fc_evals < 64; ++ci) {
                size_t best_idx = indices[ci];
                for (size_t cand = 0; cand < k.cells[ci].candidates.size(); ++cand) {
                    if (cand == best_idx || fc_evals >= 64) continue;
                    indices[ci] = cand;
                    if (scorer.matches(indices) == cur_matches) {
                        fc_evals++;
                        double fc = scorer.coverage(indices);
                        if (fc > cur_fc) {
                            cur_fc = fc;
                            best_idx = cand;
                        }
                    }
                }
                indices[ci] = best_idx;
            }
        }

        HackTestScore score{key_from_indices(k, indices), cur_matches, cur_fc};
        if (!have_global || score.better_than(global_best)) {
            global_best = score;
            have_global = true;
        }
    }
    return global_best;
}

double key_bit_accuracy(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) throw std::invalid_argument("key length mismatch");
    if (a.empty()) return 1.0;
    size_t same = 0;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] == b[i]) same++;
    return double(same) / double(a.size());
}

PostTestReport post_test_experiment(const CamoNetlist& k, const std::string& true_key,
                                    const std::string& decoy_key, const AtpgParams& atpg_params,
                                    const HackTestOptions& opts) {
    if (true_key.size() != k.key_len || decoy_key.size() != k.key_len)
        throw std::invalid_argument("key length mismatch");

    Netlist decoy_netlist = apply_key(k, decoy_key);
    AtpgResult gen = atpg(decoy_netlist, atpg_params);

    PostTestReport report;
    report.decoy_key = decoy_key;
    report.test_fc = gen.coverage_percent;
    report.score = hacktest(k, gen.tests, opts);
    report.recovered_key = report.score.key;
    report.response_match_maximal = report.score.response_matches == gen.tests.size();

    auto recovered_idx = indices_from_key(k, report.recovered_key);
    auto true_idx = indices_from_key(k, true_key);
    auto decoy_idx = indices_from_key(k, decoy_key);
    for (size_t ci = 0; ci < k.cells.size(); ++ci) {
        if (recovered_idx[ci] != true_idx[ci]) report.wrong_cells_vs_true++;
        if (decoy_idx[ci] != true_idx[ci]) report.decoy_cells_vs_true++;
    }
    HdOerOptions hd_opts;
    hd_opts.seed = atpg_params.seed + 1;
    report.hd_vs_true = hd_oer(apply_key(k, report.recovered_key), apply_key(k, true_key), hd_opts);
    return report;
}

}  // namespace polycamo
