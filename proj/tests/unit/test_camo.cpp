#include <doctest.h>

#include "polycamo/bench.hpp"
#include "polycamo/camo.hpp"
#include "polycamo/corpus.hpp"
#include "support/naive.hpp"

using namespace polycamo;

TEST_CASE("select_gates is deterministic, uniform-subset, error-checked") {
    Fixture fx = load_fixture("c880");
    auto a = select_gates(fx.netlist, 128, 7);
    auto b = select_gates(fx.netlist, 128, 7);
    CHECK(a == b);
    CHECK(a.size() == 128);
    auto c = select_gates(fx.netlist, 128, 8);
    CHECK(a != c);

    CHECK(select_gates(fx.netlist, 0, 1).empty());
    CHECK_THROWS(select_gates(fx.netlist, fx.netlist.gate_count() + 1, 1));

    // fraction selection truncates
    auto half = select_gates_fraction(fx.netlist, 0.5, 3);
    CHECK(half.size() == fx.netlist.gate_count() / 2);
}

TEST_CASE("camouflage key widths follow candidate counts") {
    Fixture fx = load_fixture("c17");
    auto gates = select_gates(fx.netlist, 2, 1);

    auto two = camouflage(fx.netlist, gates, CamoScheme::NandNor);
    CHECK(two.camo.cells.size() == 2);
    CHECK(two.camo.cells[0].key_width == 1);
    CHECK(two.camo.key_len == 2);

    auto eight = camouflage(fx.netlist, gates, CamoScheme::Meso8);
    CHECK(eight.camo.cells[0].key_width == 3);
    CHECK(eight.camo.key_len == 6);

    auto sixteen = camouflage(fx.netlist, gates, CamoScheme::Meso16);
    CHECK(sixteen.camo.cells[0].key_width == 4);
    CHECK(sixteen.camo.cells[0].candidates.size() == 16);
}

TEST_CASE("gates outside the scheme are skipped with a diagnostic") {
    Netlist n = parse_bench(
        "INPUT(a)\nINPUT(b)\nOUTPUT(y)\nOUTPUT(z)\n"
        "y = XOR(a, b)\nz = NAND(a, b)\n");
    auto result = camouflage(n, {0, 1}, CamoScheme::NandNor);
    CHECK(result.camo.cells.size() == 1);   // the NAND
    CHECK(result.skipped.size() == 1);      // the XOR
    CHECK(result.skipped[0].code == "policy-miss");

    // Everything skipped -> error.
    Netlist only_xor = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = XOR(a, b)\n");
    CHECK_THROWS(camouflage(only_xor, {0}, CamoScheme::NandNor));
}

TEST_CASE("fig6 fixture: 2 cells x 6 candidates span 36 netlists") {
    Fixture fx = load_fixture("fig6");
    GateId u22 = 0, u28 = 0;
    for (GateId g = 0; g < fx.netlist.gate_count(); ++g) {
        const std::string& name = fx.netlist.net_name(fx.netlist.gate(g).out);
        if (name == "u22") u22 = g;
        if (name == "u28") u28 = g;
    }
    auto result = camouflage(fx.netlist, {u22, u28}, CamoScheme::Meso6);
    CHECK(result.camo.solution_space() == doctest::Approx(36.0));
    CHECK(result.skipped.empty());
}

TEST_CASE("apply_key with the true key reproduces the original function") {
    Fixture fx = load_fixture("c17");
    auto gates = select_gates(fx.netlist, 3, 11);
    for (auto scheme : {CamoScheme::NandNor, CamoScheme::Meso8, CamoScheme::Meso16}) {
        auto camo = camouflage(fx.netlist, gates, scheme).camo;
        Netlist resolved = apply_key(camo, camo.true_key());
        CHECK(testsupport::exhaustive_equivalent(resolved, fx.netlist));
        CHECK(hd_oer(resolved, fx.netlist).hd == 0.0);
    }
}

TEST_CASE("meso8 key bit mapping: bits 001 select BUF") {
    // Single camouflaged inverter; candidate order INV,BUF,AND,OR,NAND,NOR,XOR,XNOR.
    Netlist n = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\nOUTPUT(z)\ny = NOT(a)\nz = AND(a, b)\n");
    auto camo = camouflage(n, {0}, CamoScheme::Meso8).camo;
    CHECK(camo.true_key() == "000");  // INV is index 0
    Netlist as_buf = apply_key(camo, "001");
    // y now follows a instead of !a.
    CHECK(testsupport::naive_simulate(as_buf, {true, false})[0] == true);
    CHECK(testsupport::naive_simulate(as_buf, {false, false})[0] == false);
}

TEST_CASE("single NAND/NOR cell: wrong key corrupts the function") {
    Netlist n = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = NAND(a, b)\n");
    auto camo = camouflage(n, {0}, CamoScheme::NandNor).camo;
    CHECK(camo.true_key() == "0");
    Netlist wrong = apply_key(camo, "1");
    auto r = hd_oer(wrong, n);
    CHECK(r.hd > 0.0);  // NAND vs NOR differ on 2 of 4 patterns
    CHECK(r.hd == doctest::Approx(0.5));
}

TEST_CASE("apply_key rejects out-of-range codes of non-power-of-two cells") {
    Netlist n = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = NAND(a, b)\n");
    auto camo = camouflage(n, {0}, CamoScheme::Meso3).camo;  // 3 candidates, 2 bits
    CHECK_NOTHROW(apply_key(camo, "10"));
    CHECK_THROWS(apply_key(camo, "11"));
    CHECK_THROWS(apply_key(camo, "1"));  // wrong length
}

TEST_CASE("expand_to_keyed models every cell as a key-driven MUX") {
    Netlist n = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = NAND(a, b)\n");
    SUBCASE("two candidates, one keyinput") {
        auto camo = camouflage(n, {0}, CamoScheme::NandNor).camo;
        Netlist keyed = expand_to_keyed(camo);
        CHECK(keyed.input_count() == 3);  // a, b, keyinput0
        CHECK(keyed.net_name(keyed.inputs()[2]) == "keyinput0");
        // Fixing the key input to the true index reproduces the original.
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                auto out = testsupport::naive_simulate(keyed, {a != 0, b != 0, false});
                CHECK(out[0] == !(a && b));
                auto nor_out = testsupport::naive_simulate(keyed, {a != 0, b != 0, true});
                CHECK(nor_out[0] == !(a || b));
            }
    }
    SUBCASE("meso8 cell instantiates all eight candidates and three keyinputs") {
        auto camo = camouflage(n, {0}, CamoScheme::Meso8).camo;
        Netlist keyed = expand_to_keyed(camo);
        CHECK(keyed.input_count() == 5);
        size_t cand_gates = 0;
        for (const Gate& g : keyed.gates())
            if (keyed.net_name(g.out).rfind("y_cand", 0) == 0) cand_gates++;
        CHECK(cand_gates >= 8);  // one net per candidate (helpers excluded)
    }
}

TEST_CASE("keyed expansion agrees with apply_key for every in-range key") {
    Fixture fx = load_fixture("c17");
    auto gates = select_gates(fx.netlist, 2, 5);
    auto camo = camouflage(fx.netlist, gates, CamoScheme::Meso6).camo;
    Netlist keyed = expand_to_keyed(camo);
    REQUIRE(camo.key_len == 6);

    for (size_t i0 = 0; i0 < 6; ++i0)
        for (size_t i1 = 0; i1 < 6; ++i1) {
            std::string key;
            for (int j = 2; j >= 0; --j) key += ((i0 >> j) & 1) ? '1' : '0';
            for (int j = 2; j >= 0; --j) key += ((i1 >> j) & 1) ? '1' : '0';
            Netlist resolved = apply_key(camo, key);
            // Compare over all 32 input patterns.
            for (uint32_t m = 0; m < 32; ++m) {
                std::vector<bool> ins(5), keyed_ins(5 + 6);
                for (size_t i = 0; i < 5; ++i) {
                    ins[i] = (m >> i) & 1;
                    keyed_ins[i] = ins[i];
                }
                for (size_t i = 0; i < 6; ++i) keyed_ins[5 + i] = key[i] == '1';
                CHECK(testsupport::naive_simulate(resolved, ins) ==
                      testsupport::naive_simulate(keyed, keyed_ins));
            }
        }
}

TEST_CASE("foundry emulation accuracy bounds") {
    Fixture fx = load_fixture("c880");
    auto gates = select_gates(fx.netlist, 32, 2);
    auto camo = camouflage(fx.netlist, gates, CamoScheme::Meso8).camo;

    auto perfect = emulate_foundry_attack(camo, 1.0, 9, 4096);
    CHECK(perfect.metrics.hd == 0.0);
    CHECK(perfect.reconstructed_key == camo.true_key());

    auto half = emulate_foundry_attack(camo, 0.5, 9, 4096);
    CHECK(half.correct_cells == 16);
    CHECK(half.metrics.hd > 0.0);
}

TEST_CASE("camo netlist json round-trip") {
    Fixture fx = load_fixture("c17");
    auto camo = camouflage(fx.netlist, select_gates(fx.netlist, 2, 3), CamoScheme::Meso8).camo;
    CamoNetlist again = CamoNetlist::from_json(camo.to_json());
    CHECK(again.key_len == camo.key_len);
    CHECK(again.cells.size() == camo.cells.size());
    CHECK(again.base == camo.base);
    CHECK(again.true_key() == camo.true_key());
}
