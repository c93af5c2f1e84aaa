#include "polycamo/sim.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace polycamo {

PatternBlock::PatternBlock(size_t nets, size_t patterns)
    : nets_(nets), patterns_(patterns), words_((patterns + 63) / 64), data_(nets * words_, 0) {}

void PatternBlock::set(NetId n, size_t pattern, bool value) {
    uint64_t& w = row(n)[pattern / 64];
    uint64_t bit = uint64_t{1} << (pattern % 64);
    w = value ? (w | bit) : (w & ~bit);
}

bool PatternBlock::get(NetId n, size_t pattern) const {
    return (row(n)[pattern / 64] >> (pattern % 64)) & 1u;
}

uint64_t PatternBlock::tail_mask() const {
    size_t rem = patterns_ % 64;
    return rem == 0 ? ~uint64_t{0} : ((uint64_t{1} << rem) - 1);
}

std::string MetricReport::csv_row(const std::string& benchmark, size_t trial) const {
    std::ostringstream os;
    os << benchmark << "," << trial << "," << patterns << "," << seed << "," << hd << "," << oer;
    return os.str();
}

namespace {

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

}  // namespace

void simulate_all(const Netlist& n, PatternBlock& block) {
    if (block.net_count() < n.net_count())
        throw std::invalid_argument("pattern block smaller than netlist");
    const size_t words = block.words_per_net();
    for (const Gate& g : n.gates()) {
        const uint64_t* a = block.row(g.in[0]);
        const uint64_t* b = g.fn.arity == 2 ? block.row(g.in[1]) : a;
        uint64_t* out = block.row(g.out);
        for (size_t w = 0; w < words; ++w) out[w] = eval_word(g.fn, a[w], b[w]);
    }
}

void fill_random_row(uint64_t* row, size_t words, std::mt19937_64& rng) {
    for (size_t w = 0; w < words; ++w) row[w] = rng();
}

std::vector<std::vector<uint64_t>> simulate_random(const Netlist& n, size_t patterns,
                                                   uint64_t seed) {
    PatternBlock block(n.net_count(), patterns);
    std::mt19937_64 rng(seed);
    for (NetId pi : n.inputs()) fill_random_row(block.row(pi), block.words_per_net(), rng);
    simulate_all(n, block);
    std::vector<std::vector<uint64_t>> out;
    out.reserve(n.output_count());
    for (NetId po : n.outputs())
        out.emplace_back(block.row(po), block.row(po) + block.words_per_net());
    return out;
}

std::vector<bool> simulate_pattern(const Netlist& n, const std::vector<bool>& pi_values) {
    if (pi_values.size() != n.input_count())
        throw std::invalid_argument("pattern does not cover all primary inputs");
    PatternBlock block(n.net_count(), 1);
    for (size_t i = 0; i < pi_values.size(); ++i) block.set(n.inputs()[i], 0, pi_values[i]);
    simulate_all(n, block);
    std::vector<bool> out(n.output_count());
    for (size_t i = 0; i < out.size(); ++i) out[i] = block.get(n.outputs()[i], 0);
    return out;
}

MetricReport hd_oer(const Netlist& a, const Netlist& b, const HdOerOptions& opts) {
    if (a.input_names() != b.input_names() || a.output_names() != b.output_names())
        throw std::invalid_argument("hd_oer requires identical PI/PO name sets");

    const size_t n_pi = a.input_count();
    const size_t n_po = a.output_count();
    const bool exhaustive = n_pi <= opts.exhaustive_pi_limit;
    const size_t patterns = exhaustive ? (size_t{1} << n_pi) : opts.patterns;

    PatternBlock ba(a.net_count(), patterns);
    PatternBlock bb(b.net_count(), patterns);
    const size_t words = ba.words_per_net();

    if (exhaustive) {
        for (size_t i = 0; i < n_pi; ++i) {
            uint64_t* ra = ba.row(a.inputs()[i]);
            uint64_t* rb = bb.row(b.inputs()[i]);
            for (size_t p = 0; p < patterns; ++p) {
                bool v = (p >> i) & 1u;
                if (v) {
                    ra[p / 64] |= uint64_t{1} << (p % 64);
                    rb[p / 64] |= uint64_t{1} << (p % 64);
                }
            }
        }
    } else {
        std::mt19937_64 rng(opts.seed);
        for (size_t i = 0; i < n_pi; ++i) {
            uint64_t* ra = ba.row(a.inputs()[i]);
            fill_random_row(ra, words, rng);
            std::copy(ra, ra + words, bb.row(b.inputs()[i]));
        }
    }

    simulate_all(a, ba);
    simulate_all(b, bb);

    const uint64_t tail = ba.tail_mask();
    size_t diff_bits = 0;
    std::vector<uint64_t> any_diff(words, 0);
    for (size_t o = 0; o < n_po; ++o) {
        const uint64_t* ra = ba.row(a.outputs()[o]);
        const uint64_t* rb = bb.row(b.outputs()[o]);
        for (size_t w = 0; w < words; ++w) {
            uint64_t d = ra[w] ^ rb[w];
            if (w == words - 1) d &= tail;
            diff_bits += std::popcount(d);
            any_diff[w] |= d;
        }
    }
    size_t diff_patterns = 0;
    for (uint64_t w : any_diff) diff_patterns += std::popcount(w);

    MetricReport r;
    r.patterns = patterns;
    r.seed = exhaustive ? 0 : opts.seed;
    r.exhaustive = exhaustive;
    r.hd = n_po == 0 ? 0.0 : double(diff_bits) / (double(patterns) * double(n_po));
    r.oer = double(diff_patterns) / double(patterns);
    return r;
}

}  // namespace polycamo
