import polycamo as pc

C17 = """INPUT(1)
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
"""


def test_parse_simulate_roundtrip():
    n = pc.parse_bench(C17)
    assert n.gate_count == 6
    assert pc.validate(n) == []
    assert pc.simulate(n, [False] * 5) == [False, False]
    assert pc.parse_bench(pc.write_bench(n)) == n


def test_fixture_corpus():
    names = pc.fixture_names()
    assert "c17" in names and "c7552" in names
    c880 = pc.load_fixture("c880")
    assert c880.gate_count == 273


def test_metrics():
    n = pc.parse_bench(C17)
    r = pc.hd_oer(n, n)
    assert r.hd == 0.0 and r.oer == 0.0
    assert r.exhaustive  # 5 inputs


def test_camouflage_and_sat_attack():
    n = pc.parse_bench(C17)
    camo = pc.camouflage(n, pc.select_gates(n, 2, 7), "meso8")
    assert camo.key_len == 6
    assert camo.solution_space() == 64.0

    resolved = pc.apply_key(camo, camo.true_key())
    assert pc.hd_oer(resolved, n).hd == 0.0

    oracle = pc.StaticOracle(camo, camo.true_key())
    result = pc.sat_attack(camo, oracle)
    assert result.outcome == "KeyFound"
    assert result.replay_ok
    assert pc.evaluate_recovered_key(camo, result.key, n).hd == 0.0


def test_morphing_oracle_defeats_sat():
    n = pc.load_fixture("c432")
    camo = pc.camouflage(n, pc.select_gates(n, 8, 432), "meso8")
    t0 = camo.true_key()
    t1 = ("1" if t0[0] == "0" else "0") + t0[1:]
    oracle = pc.MorphingOracle(camo, [t0, t1], pc.MorphPolicy.cycle(1))
    result = pc.sat_attack(camo, oracle)
    if result.outcome == "KeyFound":
        assert pc.evaluate_recovered_key(camo, result.key, pc.apply_key(camo, t0)).hd > 0.0
    else:
        assert result.outcome == "Inconsistent"


def test_atpg_and_hacktest():
    n = pc.load_fixture("fig6")
    tests, fc, untestable, aborted = pc.atpg(n)
    assert fc == 100.0
    camo = pc.camouflage(n, pc.select_gates(n, 2, 3), "nandnor")
    key, matches, score_fc = pc.hacktest(camo, tests)
    assert key == camo.true_key()
    assert matches == tests.size


def test_device_physics():
    r = pc.me_switching(pc.DeviceParams())
    assert abs(r.electric_field - 6.0e6) < 1e-3
    assert abs(r.tau_total - 258e-12) / 258e-12 < 0.02
    assert pc.iree_current(1e8) == 1.4
    assert pc.meso_eval("AND", True, True) is True
    assert pc.meso_eval("NAND", True, True) is False


def test_ppa():
    lib = {e.name: e for e in pc.tech_library()}
    area, power, delay = pc.ppa_estimate(24228, 50, lib["meso_obfuscated"])
    assert abs(power - 1.5e-3) / 1.5e-3 < 0.01
    assert abs(delay - 12.9e-9) / 12.9e-9 < 0.01


def test_image_pipeline():
    glyph = pc.glyph_image()
    assert glyph.width == 100 and glyph.height == 100
    noisy = pc.corrupt_by_hd(glyph, 0.25, 7)
    err, psnr = pc.image_metrics(noisy, glyph)
    assert abs(err - 0.25) < 0.02
    assert pc.read_pbm(pc.write_pbm(glyph)).pixels == glyph.pixels
