#include <doctest.h>

#include "polycamo/bench.hpp"
#include "polycamo/netlist.hpp"
#include "polycamo/sim.hpp"

using namespace polycamo;

namespace {

// The standard c17 netlist: 5 inputs, 2 outputs, 6 NAND2 gates.
const char* kC17 = R"(# c17
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
)";

}  // namespace

TEST_CASE("c17 parses to 6 gates and 11 nets") {
    ParseInfo info;
    Netlist n = parse_bench(kC17, &info);
    CHECK(n.gate_count() == 6);
    CHECK(n.net_count() == 11);
    CHECK(n.input_count() == 5);
    CHECK(n.output_count() == 2);
    CHECK(info.source_gates == 6);
    CHECK(validate(n).empty());
}

TEST_CASE("single BUF identity netlist") {
    Netlist n = parse_bench("INPUT(a)\nOUTPUT(y)\ny = BUF(a)\n");
    CHECK(n.gate_count() == 1);
    CHECK(simulate_pattern(n, {false}) == std::vector<bool>{false});
    CHECK(simulate_pattern(n, {true}) == std::vector<bool>{true});
}

TEST_CASE("multi-fanin AND decomposes to a tree matching 3-input AND") {
    Netlist n = parse_bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(y)\ny = AND(a, b, c)\n");
    CHECK(n.gate_count() == 2);
    for (int p = 0; p < 8; ++p) {
        bool a = p & 1, b = p & 2, c = p & 4;
        auto out = simulate_pattern(n, {a, b, c});
        CHECK(out[0] == (a && b && c));
    }
}

TEST_CASE("multi-fanin decomposition preserves function for every family") {
    struct Case {
        const char* func;
        bool (*ref)(unsigned, int);
    };
    auto and_ref = [](unsigned p, int k) {
        for (int i = 0; i < k; ++i)
            if (!((p >> i) & 1)) return false;
        return true;
    };
    auto or_ref = [](unsigned p, int k) {
        for (int i = 0; i < k; ++i)
            if ((p >> i) & 1) return true;
        return false;
    };
    auto xor_ref = [](unsigned p, int k) {
        bool v = false;
        for (int i = 0; i < k; ++i) v ^= ((p >> i) & 1) != 0;
        return v;
    };
    const Case cases[] = {
        {"AND", +and_ref},
        {"OR", +or_ref},
        {"XOR", +xor_ref},
    };
    for (int k = 3; k <= 10; ++k) {
        for (const auto& c : cases) {
            for (int invert = 0; invert < 2; ++invert) {
                std::string func = c.func;
                if (invert) func = func == "AND" ? "NAND" : (func == "OR" ? "NOR" : "XNOR");
                std::string text;
                std::string args;
                for (int i = 0; i < k; ++i) {
                    text += "INPUT(i" + std::to_string(i) + ")\n";
                    if (i) args += ", ";
                    args += "i" + std::to_string(i);
                }
                text += "OUTPUT(y)\ny = " + func + "(" + args + ")\n";
                Netlist n = parse_bench(text);
                for (unsigned p = 0; p < (1u << k); ++p) {
                    std::vector<bool> ins(k);
                    for (int i = 0; i < k; ++i) ins[i] = (p >> i) & 1;
                    bool expect = c.ref(p, k) ^ (invert != 0);
                    CHECK(simulate_pattern(n, ins)[0] == expect);
                }
            }
        }
    }
}

TEST_CASE("parse errors carry line numbers") {
    SUBCASE("undeclared fanin") {
        try {
            parse_bench("INPUT(a)\nOUTPUT(y)\ny = AND(a, ghost)\n");
            FAIL("expected netlist_error");
        } catch (const netlist_error& e) {
            REQUIRE(e.diagnostics().size() == 1);
            CHECK(e.diagnostics()[0].code == "undeclared-fanin");
            CHECK(e.diagnostics()[0].line == 3);
        }
    }
    SUBCASE("duplicate driver") {
        try {
            parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\ny = OR(a, b)\n");
            FAIL("expected netlist_error");
        } catch (const netlist_error& e) {
            CHECK(e.diagnostics()[0].code == "duplicate-driver");
        }
    }
    SUBCASE("cycle") {
        try {
            parse_bench("INPUT(a)\nOUTPUT(y)\nx = AND(a, y)\ny = AND(a, x)\n");
            FAIL("expected netlist_error");
        } catch (const netlist_error& e) {
            CHECK(e.diagnostics()[0].code == "cycle");
        }
    }
    SUBCASE("gate reading its own output") {
        try {
            parse_bench("INPUT(a)\nOUTPUT(y)\ny = AND(a, y)\n");
            FAIL("expected netlist_error");
        } catch (const netlist_error& e) {
            CHECK(e.diagnostics()[0].code == "cycle");
        }
    }
    SUBCASE("unknown function token") {
        try {
            parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = FROB(a, b)\n");
            FAIL("expected netlist_error");
        } catch (const netlist_error& e) {
            CHECK(e.diagnostics()[0].code == "unknown-function");
            CHECK(e.diagnostics()[0].line == 4);
        }
    }
    SUBCASE("sequential element rejected") {
        CHECK_THROWS_AS(parse_bench("INPUT(a)\nOUTPUT(q)\nq = DFF(a)\n"), netlist_error);
    }
}

TEST_CASE("write_bench round-trips c17") {
    Netlist n = parse_bench(kC17);
    Netlist again = parse_bench(write_bench(n));
    CHECK(n == again);
}

TEST_CASE("CRLF input is accepted and LF emitted") {
    Netlist n = parse_bench("INPUT(a)\r\nOUTPUT(y)\r\ny = BUF(a)\r\n");
    std::string out = write_bench(n);
    CHECK(out.find('\r') == std::string::npos);
    CHECK(parse_bench(out) == n);
}

TEST_CASE("key header emission and arity check") {
    Netlist n = parse_bench(
        "INPUT(a)\nINPUT(keyinput0)\nINPUT(keyinput1)\nOUTPUT(y)\n"
        "t = XOR(a, keyinput0)\ny = XOR(t, keyinput1)\n");
    std::string text = write_bench(n, std::string("01"));
    CHECK(text.rfind("# key=01\n", 0) == 0);
    ParseInfo info;
    Netlist again = parse_bench(text, &info);
    REQUIRE(info.key_header.has_value());
    CHECK(*info.key_header == "01");
    CHECK(again == n);

    // 3 key inputs against a 2-bit header must fail.
    Netlist bad = parse_bench(
        "INPUT(keyinput0)\nINPUT(keyinput1)\nINPUT(keyinput2)\nOUTPUT(y)\n"
        "t = AND(keyinput0, keyinput1)\ny = AND(t, keyinput2)\n");
    CHECK_THROWS_AS(write_bench(bad, std::string("01")), netlist_error);
}

TEST_CASE("validate flags hand-built violations") {
    Netlist n = parse_bench(kC17);
    CHECK(validate(n).empty());
}
