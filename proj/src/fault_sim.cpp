#include "polycamo/fault_sim.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "polycamo/sim.hpp"

namespace polycamo {

std::string TestSet::to_text() const {
    std::ostringstream os;
    os << "patterns " << patterns.size() << " inputs";
    for (const auto& s : input_names) os << " " << s;
    os << " outputs";
    for (const auto& s : output_names) os << " " << s;
    os << "\n";
    for (size_t p = 0; p < patterns.size(); ++p) {
        for (bool b : patterns[p]) os << (b ? '1' : '0');
        os << " -> ";
        for (bool b : responses[p]) os << (b ? '1' : '0');
        os << "\n";
    }
    return os.str();
}

TestSet TestSet::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    TestSet t;
    size_t count = 0;
    is >> tok;
    if (tok != "patterns") throw std::runtime_error("test set: missing 'patterns' header");
    is >> count >> tok;
    if (tok != "inputs") throw std::runtime_error("test set: missing 'inputs'");
    while (is >> tok && tok != "outputs") t.input_names.push_back(tok);
    std::string line;
    std::getline(is, line);
    std::istringstream rest(line);
    while (rest >> tok) t.output_names.push_back(tok);

    auto parse_bits = [](const std::string& s) {
        std::vector<bool> bits;
        bits.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw std::runtime_error("test set: bad bit string");
            bits.push_back(c == '1');
        }
        return bits;
    };
    std::string in_bits, arrow, out_bits;
    for (size_t p = 0; p < count; ++p) {
        if (!(is >> in_bits >> arrow >> out_bits) || arrow != "->")
            throw std::runtime_error("test set: truncated pattern list");
        t.patterns.push_back(parse_bits(in_bits));
        t.responses.push_back(parse_bits(out_bits));
    }
    return t;
}

TestSet make_test_set(const Netlist& n, const std::vector<std::vector<bool>>& patterns) {
    TestSet t;
    t.input_names = n.input_names();
    t.output_names = n.output_names();
    t.patterns = patterns;
    t.responses.reserve(patterns.size());
    for (const auto& p : patterns) t.responses.push_back(simulate_pattern(n, p));
    return t;
}

namespace {

// Scratch state for cone-limited faulty resimulation, reusable across
// faults. Stamping avoids clearing between faults.
struct FaultyPlane {
    std::vector<uint64_t> scratch;  // net x word
    std::vector<uint32_t> stamp;    // per net
    uint32_t epoch = 0;
    size_t words = 0;

    void reset(size_t nets, size_t words_per_net) {
        words = words_per_net;
        scratch.assign(nets * words, 0);
        stamp.assign(nets, 0);
        epoch = 0;
    }
    uint64_t* row(NetId n) { return scratch.data() + size_t(n) * words; }
    bool dirty(NetId n) const { return stamp[n] == epoch; }
};

inline uint64_t eval_fn(GateFunction fn, uint64_t a, uint64_t b) {
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

// Simulates one fault against the golden plane. Returns a per-word mask of
// patterns whose outputs differ.
void simulate_one_fault(const Netlist& n, const PatternBlock& golden, const Fault& f,
                        FaultyPlane& plane, std::vector<uint64_t>& diff_out) {
    const size_t words = golden.words_per_net();
    plane.epoch++;
    if (plane.epoch == 0) {  // stamp wrap
        std::fill(plane.stamp.begin(), plane.stamp.end(), 0);
        plane.epoch = 1;
    }
    std::fill(diff_out.begin(), diff_out.end(), 0);

    GateId start_gate = 0;
    if (f.site == Fault::Site::Net) {
        uint64_t v = f.stuck_at ? ~uint64_t{0} : 0;
        uint64_t* row = plane.row(f.net);
        for (size_t w = 0; w < words; ++w) row[w] = v;
        plane.stamp[f.net] = plane.epoch;
        int32_t d = n.driver_of(f.net);
        start_gate = d < 0 ? 0 : static_cast<GateId>(d + 1);
    } else {
        start_gate = f.gate;
    }

    for (GateId g = start_gate; g < n.gate_count(); ++g) {
        const Gate& gate = n.gate(g);
        bool pin_here = f.site == Fault::Site::Pin && f.gate == g;
        bool any_dirty = pin_here;
        for (NetId in : gate.fanins())
            if (plane.dirty(in)) any_dirty = true;
        if (!any_dirty) continue;

        const uint64_t* a_src =
            plane.dirty(gate.in[0]) ? plane.row(gate.in[0]) : golden.row(gate.in[0]);
        NetId bnet = gate.fn.arity == 2 ? gate.in[1] : gate.in[0];
        const uint64_t* b_src = plane.dirty(bnet) ? plane.row(bnet) : golden.row(bnet);

        uint64_t forced = f.stuck_at ? ~uint64_t{0} : 0;
        uint64_t* out = plane.row(gate.out);
        const uint64_t* gold_out = golden.row(gate.out);
        bool changed = false;
        for (size_t w = 0; w < words; ++w) {
            uint64_t av = pin_here && f.pin == 0 ? forced : a_src[w];
            uint64_t bv = pin_here && f.pin == 1 ? forced : b_src[w];
            uint64_t v = eval_fn(gate.fn, av, bv);
            out[w] = v;
            if (v != gold_out[w]) changed = true;
        }
        if (changed) plane.stamp[gate.out] = plane.epoch;
    }

    const uint64_t tail = golden.tail_mask();
    for (NetId po : n.outputs()) {
        const uint64_t* faulty =
            plane.dirty(po) ? plane.row(po) : golden.row(po);
        const uint64_t* gold = golden.row(po);
        for (size_t w = 0; w < words; ++w) {
            uint64_t d = (faulty[w] ^ gold[w]);
            if (w == words - 1) d &= tail;
            diff_out[w] |= d;
        }
    }
}

PatternBlock build_golden(const Netlist& n, const std::vector<std::vector<bool>>& patterns) {
    PatternBlock block(n.net_count(), patterns.size());
    for (size_t p = 0; p < patterns.size(); ++p) {
        if (patterns[p].size() != n.input_count())
            throw std::invalid_argument("test pattern does not cover all PIs");
        for (size_t i = 0; i < patterns[p].size(); ++i)
            block.set(n.inputs()[i], p, patterns[p][i]);
    }
    simulate_all(n, block);
    return block;
}

}  // namespace

FaultSimResult fault_simulate(const Netlist& n, const FaultUniverse& universe, const TestSet& t,
                              int jobs) {
    FaultSimResult result;
    result.detected.assign(universe.faults.size(), false);
    if (t.patterns.empty()) return result;

    PatternBlock golden = build_golden(n, t.patterns);
    const size_t words = golden.words_per_net();

    auto worker = [&](size_t begin, size_t end) {
        FaultyPlane plane;
        plane.reset(n.net_count(), words);
        std::vector<uint64_t> diff(words);
        for (size_t fi = begin; fi < end; ++fi) {
            simulate_one_fault(n, golden, universe.faults[fi], plane, diff);
            for (uint64_t w : diff)
                if (w) {
                    result.detected[fi] = true;
                    break;
                }
        }
    };

    if (jobs <= 1 || universe.faults.size() < 64) {
        worker(0, universe.faults.size());
    } else {
        size_t n_jobs = std::min<size_t>(jobs, universe.faults.size());
        std::vector<std::thread> threads;
        size_t chunk = (universe.faults.size() + n_jobs - 1) / n_jobs;
        for (size_t j = 0; j < n_jobs; ++j) {
            size_t begin = j * chunk;
            size_t end = std::min(begin + chunk, universe.faults.size());
            if (begin < end) threads.emplace_back(worker, begin, end);
        }
        for (auto& th : threads) th.join();
    }

    for (bool d : result.detected)
        if (d) result.detected_count++;
    result.coverage_percent =
        universe.faults.empty()
            ? 0.0
            : 100.0 * double(result.detected_count) / double(universe.faults.size());
    return result;
}

std::vector<size_t> fault_simulate_incremental(const Netlist& n, const FaultUniverse& universe,
                                               const std::vector<std::vector<bool>>& patterns,
                                               std::vector<bool>& detected) {
    std::vector<size_t> new_per_pattern(patterns.size(), 0);
    if (patterns.empty()) return new_per_pattern;
    PatternBlock golden = build_golden(n, patterns);
    const size_t words = golden.words_per_net();

    FaultyPlane plane;
    plane.reset(n.net_count(), words);
    std::vector<uint64_t> diff(words);
    for (size_t fi = 0; fi < universe.faults.size(); ++fi) {
        if (detected[fi]) continue;
        simulate_one_fault(n, golden, universe.faults[fi], plane, diff);
        for (size_t w = 0; w < words; ++w) {
            if (!diff[w]) continue;
            size_t bit = static_cast<size_t>(std::countr_zero(diff[w]));
            size_t pattern = w * 64 + bit;
            detected[fi] = true;
            new_per_pattern[pattern]++;
            break;
        }
    }
    return new_per_pattern;
}

}  // namespace polycamo
