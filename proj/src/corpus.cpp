#include "polycamo/corpus.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "polycamo/bench.hpp"

namespace polycamo {

namespace {

struct BuiltinFixture {
    const char* name;
    const char* text;
};

const BuiltinFixture kBuiltins[] = {
    {"c17", R"(# c17
INPUT(1)
INPUT(2)
INPUT(3)
INPUT(6)
INPUT(7)
OUTPUT(22)
OUTPUT(23)
10 = NAND(1, 3)
11 = NAND(3, 6)
16 = NAND(2, 11)
19 = NAND(11, 7)
22 = NAND(10, 16)
23 = NAND(16, 19)
)"},
    {"and1", R"(INPUT(a)
INPUT(b)
OUTPUT(y)
y = AND(a, b)
)"},
    {"buf1", R"(INPUT(a)
OUTPUT(y)
y = BUF(a)
)"},
    {"xor1", R"(INPUT(a)
INPUT(b)
OUTPUT(y)
y = XOR(a, b)
)"},
    // Desk-scale reconstruction of the running two-camouflaged-gate
    // example: u22 (true OR) and u28 (true AND) sit mid-cone with parity
    // observers so every wrong assignment disturbs some response.
    {"fig6", R"(INPUT(a)
INPUT(b)
INPUT(c)
INPUT(d)
INPUT(e)
INPUT(f)
INPUT(g)
INPUT(h)
OUTPUT(o1)
OUTPUT(o2)
OUTPUT(o3)
u10 = NAND(a, b)
u11 = XOR(c, d)
u12 = OR(e, f)
u13 = AND(g, h)
u22 = OR(u10, u11)
u28 = AND(u12, u13)
u30 = XOR(u22, u13)
u31 = NAND(u28, u11)
u32 = AND(u22, u28)
u33 = OR(u30, u32)
u34 = XOR(u31, u12)
o1 = AND(u33, u31)
o2 = OR(u34, u30)
o3 = XOR(u32, u34)
)"},
    // Test-facility example: stuck-at-1 at the output of u4 is detected at
    // o2 by pattern 11001 (fault-free/faulty = 1/0), and the supplied
    // response rules NOR out for the camouflaged u3.
    {"fig7", R"(INPUT(i1)
INPUT(i2)
INPUT(i3)
INPUT(i4)
INPUT(i5)
OUTPUT(o1)
OUTPUT(o2)
u1 = AND(i1, i2)
u2 = NOR(i3, i4)
u3 = NAND(u1, i3)
u4 = AND(i3, i5)
u4n = NOT(u4)
o2 = AND(u3, u4n)
o1 = OR(u1, u2)
)"},
};

}  // namespace

std::vector<GenSpec> standin_specs() {
    // Interface widths follow the original ISCAS-85 circuits; gate counts
    // follow the published post-synthesis scale.
    return {
        {"c432", 36, 7, 160, 432},
        {"c499", 41, 32, 202, 499},
        {"c880", 60, 26, 273, 880},
        {"c1355", 41, 32, 546, 1355},
        {"c1908", 33, 25, 230, 1908},
        {"c2670", 233, 140, 433, 2670},
        {"c3540", 50, 22, 814, 3540},
        {"c5315", 178, 123, 1232, 5315},
        {"c6288", 32, 32, 2416, 6288},
        {"c7552", 207, 108, 1197, 7552},
    };
}

std::optional<GenSpec> standin_spec(const std::string& name) {
    for (const auto& spec : standin_specs())
        if (spec.name == name) return spec;
    return std::nullopt;
}

Netlist generate_circuit(const GenSpec& spec) {
    if (spec.inputs < 2 || spec.outputs < 1 || spec.gates < spec.outputs)
        throw std::invalid_argument("generator needs >=2 inputs and gates >= outputs");
    std::mt19937_64 rng(spec.seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL);

    NetlistBuilder b;
    std::vector<std::string> nets;     // every declared net
    std::vector<uint64_t> support;     // hashed PI-support signature per net
    std::vector<uint32_t> fanout;      // readers per net
    std::deque<size_t> unused;         // net indices with no reader yet
    for (size_t i = 0; i < spec.inputs; ++i) {
        std::string name = "i" + std::to_string(i);
        b.add_input(name);
        nets.push_back(name);
        support.push_back(uint64_t{1} << (i % 64));
        fanout.push_back(0);
        unused.push_back(i);
    }

    // NAND-rich mix like the synthesized originals, with enough parity
    // gates to keep faults observable.
    struct Weighted {
        GateFunction fn;
        int weight;
    };
    const Weighted mix[] = {
        {GateFunction::nand2(), 22}, {GateFunction::nor2(), 10}, {GateFunction::and2(), 16},
        {GateFunction::or2(), 14},   {GateFunction::xor2(), 18}, {GateFunction::xnor2(), 10},
        {GateFunction::inv(), 7},    {GateFunction::buf(), 3},
    };
    int total_weight = 0;
    for (const auto& m : mix) total_weight += m.weight;
    auto pick_fn = [&]() {
        int r = int(rng() % uint64_t(total_weight));
        for (const auto& m : mix) {
            r -= m.weight;
            if (r < 0) return m.fn;
        }
        return mix[0].fn;
    };

    auto take_unused = [&]() {
        size_t n = unused.front();
        unused.pop_front();
        return n;
    };
    auto random_recent = [&](size_t window) {
        size_t lo = nets.size() > window ? nets.size() - window : 0;
        return lo + rng() % (nets.size() - lo);
    };

    const size_t window = std::max<size_t>(24, spec.inputs);
    size_t built = 0;
    size_t serial = 0;
    while (built < spec.gates) {
        size_t remaining = spec.gates - built;
        size_t surplus = unused.size() > spec.outputs ? unused.size() - spec.outputs : 0;
        bool combine = surplus >= remaining;

        GateFunction fn = pick_fn();
        if (combine && fn.arity == 1) fn = GateFunction::xor2();
        std::string out = "n" + std::to_string(serial++);
        if (fn.arity == 1) {
            size_t a = !unused.empty() && (rng() % 10) < 8 ? take_unused()
                                                           : random_recent(window);
            b.add_gate(out, fn, nets[a]);
            support.push_back(support[a]);
            fanout[a]++;
            fanout.push_back(0);
        } else {
            size_t a;
            if (combine || (!unused.empty() && (rng() % 10) < 8))
                a = !unused.empty() ? take_unused() : random_recent(window);
            else
                a = random_recent(window);
            size_t bn;
            if (combine && !unused.empty()) {
                bn = take_unused();
            } else if (!unused.empty() && (rng() % 10) < 3) {
                // Mostly tree-shaped circuits stay testable; reconvergent
                // sharing is what breeds redundant and search-hard faults.
                bn = take_unused();
            } else {
                // Controlling-value gates mask faults when their fanins
                // share support; resample toward a disjoint, lightly loaded
                // partner and fall back to a parity gate for stubbornly
                // correlated pairs (parity never masks).
                bn = random_recent(window);
                uint64_t best_overlap = ~uint64_t{0};
                size_t best = bn;
                for (int attempt = 0; attempt < 8; ++attempt) {
                    size_t cand = attempt < 4 ? random_recent(window) : rng() % nets.size();
                    if (cand == a || fanout[cand] >= 3) continue;
                    uint64_t overlap = support[a] & support[cand];
                    if (std::popcount(overlap) < std::popcount(best_overlap)) {
                        best_overlap = overlap;
                        best = cand;
                    }
                    if (overlap == 0) break;
                }
                bn = best;
                bool masking_family = fn.tt == GateFunction::TT_AND ||
                                      fn.tt == GateFunction::TT_NAND ||
                                      fn.tt == GateFunction::TT_OR ||
                                      fn.tt == GateFunction::TT_NOR;
                if (masking_family && std::popcount(support[a] & support[bn]) > 1)
                    fn = (rng() & 1) ? GateFunction::xor2() : GateFunction::xnor2();
            }
            if (bn == a) bn = random_recent(nets.size());
            if (bn == a && !unused.empty()) bn = unused.front();
            if (bn == a) bn = rng() % nets.size();
            if (bn == a) {
                // Degenerate corner (single net so far): invert instead.
                b.add_gate(out, GateFunction::inv(), nets[a]);
                support.push_back(support[a]);
                fanout[a]++;
            } else {
                b.add_gate(out, fn, nets[a], nets[bn]);
                support.push_back(support[a] | support[bn]);
                fanout[a]++;
                fanout[bn]++;
            }
            fanout.push_back(0);
        }
        nets.push_back(out);
        unused.push_back(nets.size() - 1);
        built++;
    }

    // Primary outputs: all remaining unread nets first (nothing dangles),
    // then the freshest nets to reach the requested width.
    std::vector<std::string> po_names;
    for (size_t idx : unused) po_names.push_back(nets[idx]);
    for (size_t i = nets.size(); po_names.size() < spec.outputs && i > 0; --i) {
        const std::string& cand = nets[i - 1];
        if (std::find(po_names.begin(), po_names.end(), cand) == po_names.end())
            po_names.push_back(cand);
    }
    if (po_names.size() > spec.outputs) po_names.resize(spec.outputs);
    for (const auto& name : po_names) b.add_output(name);
    return b.build();
}

std::vector<std::string> fixture_names() {
    std::vector<std::string> names;
    for (const auto& f : kBuiltins) names.push_back(f.name);
    for (const auto& spec : standin_specs()) names.push_back(spec.name);
    return names;
}

Fixture load_fixture(const std::string& name, const std::string& data_dir) {
    for (const auto& f : kBuiltins) {
        if (name == f.name) {
            Fixture fx;
            fx.netlist = parse_bench(f.text);
            fx.info = {name, fx.netlist.gate_count(), fx.netlist.input_count(),
                       fx.netlist.output_count(), false};
            return fx;
        }
    }
    if (auto spec = standin_spec(name)) {
        Fixture fx;
        fx.netlist = generate_circuit(*spec);
        fx.info = {name, fx.netlist.gate_count(), fx.netlist.input_count(),
                   fx.netlist.output_count(), true};
        return fx;
    }
    std::string dir = data_dir;
    if (dir.empty()) {
        const char* env = std::getenv("POLYCAMO_DATA");
        if (env) dir = env;
    }
    if (!dir.empty()) {
        std::string path = dir + "/benches/" + name + ".bench";
        std::ifstream probe(path);
        if (probe) {
            Fixture fx;
            fx.netlist = read_bench_file(path);
            fx.info = {name, fx.netlist.gate_count(), fx.netlist.input_count(),
                       fx.netlist.output_count(), false};
            return fx;
        }
    }
    throw std::runtime_error("unknown fixture: " + name);
}

BinaryImage glyph_image() {
    BinaryImage img(100, 100, 0);
    auto rect = [&](size_t x0, size_t y0, size_t x1, size_t y1) {
        for (size_t y = y0; y < y1; ++y)
            for (size_t x = x0; x < x1; ++x) img.at(x, y) = 1;
    };
    // Block letters "EC" with a frame, enough structure for OCR-style
    // degradation to be visible.
    rect(2, 2, 98, 6);
    rect(2, 94, 98, 98);
    rect(2, 2, 6, 98);
    rect(94, 2, 98, 98);
    // E
    rect(14, 20, 24, 80);
    rect(14, 20, 46, 30);
    rect(14, 45, 42, 55);
    rect(14, 70, 46, 80);
    // C
    rect(56, 20, 66, 80);
    rect(56, 20, 88, 30);
    rect(56, 70, 88, 80);
    return img;
}

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace polycamo
