#include <doctest.h>

#include <random>

#include "polycamo/bench.hpp"
#include "polycamo/sim.hpp"
#include "support/naive.hpp"

using namespace polycamo;

namespace {

const char* kC17 = R"(INPUT(1)
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
)";

}  // namespace

TEST_CASE("c17 with all-zero inputs") {
    // First NAND level sees zeros and yields ones, the output level then
    // NANDs two ones: both primary outputs settle at 0.
    Netlist n = parse_bench(kC17);
    auto out = simulate_pattern(n, {false, false, false, false, false});
    CHECK(out == std::vector<bool>{false, false});
}

TEST_CASE("XOR gate over the four patterns") {
    Netlist n = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = XOR(a, b)\n");
    CHECK(simulate_pattern(n, {false, false})[0] == false);
    CHECK(simulate_pattern(n, {false, true})[0] == true);
    CHECK(simulate_pattern(n, {true, false})[0] == true);
    CHECK(simulate_pattern(n, {true, true})[0] == false);
}

TEST_CASE("missing PI assignment is an error") {
    Netlist n = parse_bench(kC17);
    CHECK_THROWS(simulate_pattern(n, {false, false}));
}

TEST_CASE("bit-parallel simulation equals naive per-pattern simulation") {
    Netlist n = parse_bench(kC17);
    std::mt19937_64 rng(42);
    const size_t patterns = 1000;
    PatternBlock block(n.net_count(), patterns);
    std::vector<std::vector<bool>> pi_patterns(patterns, std::vector<bool>(n.input_count()));
    for (size_t p = 0; p < patterns; ++p)
        for (size_t i = 0; i < n.input_count(); ++i) {
            bool v = rng() & 1;
            pi_patterns[p][i] = v;
            block.set(n.inputs()[i], p, v);
        }
    simulate_all(n, block);
    for (size_t p = 0; p < patterns; ++p) {
        auto expect = testsupport::naive_simulate(n, pi_patterns[p]);
        for (size_t o = 0; o < n.output_count(); ++o)
            CHECK(block.get(n.outputs()[o], p) == expect[o]);
    }
}

TEST_CASE("hd_oer basics") {
    Netlist n = parse_bench(kC17);
    SUBCASE("identical netlists") {
        auto r = hd_oer(n, n);
        CHECK(r.hd == 0.0);
        CHECK(r.oer == 0.0);
        CHECK(r.exhaustive);  // 5 inputs -> exhaustive mode
        CHECK(r.patterns == 32);
    }
    SUBCASE("one inverted output forces hd = 1/|O| and oer = 1") {
        // Same circuit with output 22 complemented.
        Netlist inv = parse_bench(
            "INPUT(1)\nINPUT(2)\nINPUT(3)\nINPUT(6)\nINPUT(7)\n"
            "OUTPUT(22)\nOUTPUT(23)\n"
            "10 = NAND(1, 3)\n11 = NAND(3, 6)\n16 = NAND(2, 11)\n19 = NAND(11, 7)\n"
            "22i = NAND(10, 16)\n22 = NOT(22i)\n23 = NAND(16, 19)\n");
        auto r = hd_oer(n, inv);
        CHECK(r.hd == doctest::Approx(0.5));
        CHECK(r.oer == doctest::Approx(1.0));
    }
    SUBCASE("PI mismatch is an error") {
        Netlist other = parse_bench("INPUT(a)\nOUTPUT(y)\ny = BUF(a)\n");
        CHECK_THROWS(hd_oer(n, other));
    }
}

TEST_CASE("hd/oer invariants: oer >= hd, symmetry") {
    // Two small distinct circuits over the same interface.
    Netlist a = parse_bench(
        "INPUT(x)\nINPUT(y)\nINPUT(z)\nOUTPUT(o1)\nOUTPUT(o2)\n"
        "o1 = AND(x, y)\no2 = XOR(y, z)\n");
    Netlist b = parse_bench(
        "INPUT(x)\nINPUT(y)\nINPUT(z)\nOUTPUT(o1)\nOUTPUT(o2)\n"
        "o1 = OR(x, y)\no2 = XNOR(y, z)\n");
    auto r1 = hd_oer(a, b);
    auto r2 = hd_oer(b, a);
    CHECK(r1.hd == r2.hd);
    CHECK(r1.oer == r2.oer);
    CHECK(r1.oer >= r1.hd);
    CHECK(r1.hd > 0.0);
}

TEST_CASE("metric report serializes to a csv row") {
    MetricReport r;
    r.hd = 0.25;
    r.oer = 0.5;
    r.patterns = 64;
    r.seed = 7;
    CHECK(r.csv_row("c17", 3) == "c17,3,64,7,0.25,0.5");
}
