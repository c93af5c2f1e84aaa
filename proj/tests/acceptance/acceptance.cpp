// Acceptance suite: quantitative and property checks of the whole toolkit,
// one numbered criterion per run (or all, with no argument). Each criterion
// prints a single PASS/FAIL line; the exit code is the failure count.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "polycamo/attacks.hpp"
#include "polycamo/atpg.hpp"
#include "polycamo/bench.hpp"
#include "polycamo/camo.hpp"
#include "polycamo/cenn.hpp"
#include "polycamo/cnf.hpp"
#include "polycamo/corpus.hpp"
#include "polycamo/hacktest.hpp"
#include "polycamo/meso.hpp"
#include "polycamo/oracle.hpp"
#include "polycamo/sim.hpp"
#include "polycamo/solver.hpp"
#include "support/naive.hpp"

using namespace polycamo;

namespace {

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::ostream&)> run;
};

bool within(double value, double target, double rel_tol) {
    return std::abs(value - target) <= rel_tol * std::abs(target);
}

// --- 1: tech table consistency ---------------------------------------------

bool c1_tech_consistency(std::ostream& log) {
    auto lib = builtin_tech_library();
    if (lib.size() != 7) {
        log << "expected 7 device rows, got " << lib.size();
        return false;
    }
    bool ok = true;
    for (const auto& e : lib) {
        double implied = e.power * e.delay;
        double rel = std::abs(implied - e.energy) / e.energy;
        log << e.name << " p*d=" << implied << " e=" << e.energy << " rel=" << rel << "; ";
        if (rel > 0.03) ok = false;
    }
    // The worked example: 0.0622 uW * 0.2579 ns = 16.04 aJ.
    double worked = 0.0622e-6 * 0.2579e-9;
    if (!within(worked, 16.04e-18, 0.03)) ok = false;
    return ok;
}

// --- 2: PPA reproduction ----------------------------------------------------

bool c2_ppa(std::ostream& log) {
    auto lib = builtin_tech_library();
    const TechEntry *meso = nullptr, *gshe = nullptr;
    for (const auto& e : lib) {
        if (e.name == "meso_obfuscated") meso = &e;
        if (e.name == "gshe_obfuscated") gshe = &e;
    }
    if (!meso || !gshe) return false;
    PpaEstimate m = ppa_estimate(24228, 50, *meso);
    PpaEstimate g = ppa_estimate(24228, 50, *gshe);
    log << "meso: " << m.power * 1e3 << " mW, " << m.delay * 1e9 << " ns, " << m.area * 1e12
        << " um2; gshe: " << g.power * 1e3 << " mW, " << g.delay * 1e9 << " ns";
    return within(m.power, 1.5e-3, 0.01) && within(m.delay, 12.9e-9, 0.01) &&
           within(m.area, 575.4e-12, 0.01) && within(g.power, 6.5e-3, 0.01) &&
           within(g.delay, 91.5e-9, 0.01);
}

// --- 3: device physics ------------------------------------------------------

bool c3_device_physics(std::ostream& log) {
    DeviceParams p;
    SwitchingReport r = me_switching(p);
    log << "E=" << r.electric_field << " tau_mag=" << r.tau_mag
        << " tau_intrinsic=" << r.tau_intrinsic << " tau_total=" << r.tau_total;
    bool ok = r.electric_field == 6.0e6;  // exact from defaults
    ok = ok && within(r.tau_mag, 178.5e-12, 0.001);
    ok = ok && within(r.tau_intrinsic, 230e-12, 0.02);
    ok = ok && within(r.tau_total, 258e-12, 0.02);
    return ok;
}

// --- 4: foundry emulation ---------------------------------------------------

bool c4_foundry(std::ostream& log) {
    Fixture fx = load_fixture("c7552");
    auto gates = select_gates(fx.netlist, 128, 7552);
    CamoNetlist camo = camouflage(fx.netlist, gates, CamoScheme::Meso8).camo;

    const size_t trials = 100;
    std::map<double, double> mean_hd;
    for (double accuracy : {0.5, 0.7, 0.9}) {
        double sum = 0.0;
        for (size_t t = 0; t < trials; ++t)
            sum += emulate_foundry_attack(camo, accuracy, 1000 + t).metrics.hd;
        mean_hd[accuracy] = sum / double(trials);
    }
    log << "mean HD @0.5=" << mean_hd[0.5] << " @0.7=" << mean_hd[0.7]
        << " @0.9=" << mean_hd[0.9];
    bool band = std::abs(mean_hd[0.9] - 0.05) <= 0.03;
    bool monotone = mean_hd[0.5] > mean_hd[0.7] && mean_hd[0.7] > mean_hd[0.9];
    return band && monotone;
}

// --- 5: HackTest desk oracle -------------------------------------------------

bool c5_hacktest_desk(std::ostream& log) {
    Fixture fx = load_fixture("fig6");
    GateId u22 = 0, u28 = 0;
    for (GateId g = 0; g < fx.netlist.gate_count(); ++g) {
        const std::string& name = fx.netlist.net_name(fx.netlist.gate(g).out);
        if (name == "u22") u22 = g;
        if (name == "u28") u28 = g;
    }
    // Two cells, two candidates each (AND/OR), true assignment (OR, AND).
    CamoNetlist camo;
    camo.base = fx.netlist;
    camo.scheme = "andor2";
    std::vector<GateFunction> cands{GateFunction::and2().lifted(), GateFunction::or2().lifted()};
    camo.cells.push_back({u22, cands, 1, 0, 1});  // OR
    camo.cells.push_back({u28, cands, 0, 1, 1});  // AND
    camo.key_len = 2;

    AtpgParams params;
    AtpgResult gen = atpg(fx.netlist, params);
    if (gen.coverage_percent < 100.0) {
        log << "fixture test set does not reach 100% FC";
        return false;
    }
    auto table = hacktest_score_table(camo, gen.tests);
    HackTestScore best = hacktest(camo, gen.tests);
    bool ok = best.key == camo.true_key();
    double best_fc = 0.0;
    for (const auto& row : table) {
        log << row.key << ": matches=" << row.response_matches << " fc=" << row.fault_coverage
            << "; ";
        if (row.key == camo.true_key()) best_fc = row.fault_coverage;
    }
    if (best_fc != 100.0) ok = false;
    for (const auto& row : table)
        if (row.key != camo.true_key() && row.fault_coverage >= best_fc) ok = false;
    return ok;
}

// --- 6: dynamic vs static test defense ---------------------------------------

bool c6_post_test(std::ostream& log) {
    Fixture fx = load_fixture("c5315");

    // Part A: random decoys on MESO-8 cells; recovered keys must match the
    // decoy function on the test data and miss more cells than the static
    // baseline does.
    auto gates = select_gates(fx.netlist, 24, 5315);
    CamoNetlist camo = camouflage(fx.netlist, gates, CamoScheme::Meso8).camo;
    std::string true_key = camo.true_key();

    AtpgParams params;
    params.target_fc = 99.0;
    HackTestOptions hopts;

    PostTestReport baseline = post_test_experiment(camo, true_key, true_key, params, hopts);
    log << "static wrong=" << baseline.wrong_cells_vs_true << "; ";

    std::mt19937_64 rng(99);
    bool ok = true;
    size_t exceeds = 0;
    const size_t trials = 10;
    for (size_t t = 0; t < trials; ++t) {
        std::string decoy = true_key;
        for (auto& cell : camo.cells) {
            std::uniform_int_distribution<size_t> dist(0, cell.candidates.size() - 2);
            size_t idx = dist(rng);
            if (idx >= cell.true_index) idx++;
            for (size_t j = 0; j < cell.key_width; ++j)
                decoy[cell.key_offset + j] =
                    ((idx >> (cell.key_width - 1 - j)) & 1u) ? '1' : '0';
        }
        AtpgParams tparams = params;
        tparams.seed = 100 + t;
        PostTestReport r = post_test_experiment(camo, true_key, decoy, tparams, hopts);
        if (!r.response_match_maximal) {
            log << "trial " << t << " not response-maximal; ";
            ok = false;
        }
        if (r.wrong_cells_vs_true > baseline.wrong_cells_vs_true) exceeds++;
        log << "t" << t << " wrong=" << r.wrong_cells_vs_true << "; ";
    }
    if (exceeds != trials) {
        log << "only " << exceeds << "/" << trials << " trials exceed the static baseline; ";
        ok = false;
    }

    // Part B: HackTest bit accuracy non-increasing over candidate-set sizes
    // {3,4,8,16} on a fixed NAND/NOR gate set, test data from the true key.
    std::vector<GateId> nn_gates;
    for (GateId g = 0; g < fx.netlist.gate_count() && nn_gates.size() < 32; ++g) {
        uint8_t tt = fx.netlist.gate(g).fn.lifted().tt;
        if (tt == GateFunction::TT_NAND || tt == GateFunction::TT_NOR) nn_gates.push_back(g);
    }
    AtpgResult gen = atpg(fx.netlist, params);
    double prev = 2.0;
    bool trend = true;
    for (CamoScheme scheme :
         {CamoScheme::Meso3, CamoScheme::Meso4, CamoScheme::Meso8, CamoScheme::Meso16}) {
        CamoNetlist c = camouflage(fx.netlist, nn_gates, scheme).camo;
        double acc_sum = 0.0;
        for (size_t t = 0; t < 10; ++t) {
            HackTestOptions o;
            o.seed = 500 + t;
            o.restarts = 2;
            o.exhaustive_key_limit = 0;  // same search algorithm at every size
            HackTestScore s = hacktest(c, gen.tests, o);
            acc_sum += key_bit_accuracy(s.key, c.true_key());
        }
        double acc = acc_sum / 10.0;
        log << scheme_name(scheme) << " acc=" << acc << "; ";
        if (acc > prev + 1e-12) trend = false;
        prev = acc;
    }
    return ok && trend;
}

// --- 7: SAT attack soundness --------------------------------------------------

bool c7_sat_soundness(std::ostream& log) {
    bool ok = true;
    size_t run = 0;
    for (const char* name : {"c432", "c880"}) {
        Fixture fx = load_fixture(name);
        for (uint64_t seed = 1; seed <= 5; ++seed, ++run) {
            // 6..10 MESO-8 cells: 18..30 key bits.
            size_t cells = 6 + (seed - 1);
            CamoNetlist camo =
                camouflage(fx.netlist, select_gates(fx.netlist, cells, seed), CamoScheme::Meso8)
                    .camo;
            StaticOracle oracle(camo, camo.true_key());
            SatAttackOptions opts;
            opts.seed = seed;
            AttackResult r = sat_attack(camo, oracle, opts);
            if (r.outcome != AttackResult::Outcome::KeyFound || !r.replay_ok) {
                log << name << " seed " << seed << ": " << AttackResult::outcome_name(r.outcome)
                    << "; ";
                ok = false;
                continue;
            }
            MetricReport hd = evaluate_recovered_key(camo, r.key, fx.netlist, 100000, seed);
            log << name << "/" << seed << " dips=" << r.dip_count << " hd=" << hd.hd << "; ";
            if (hd.hd != 0.0) ok = false;
            if (r.dip_count > (size_t{1} << camo.key_len)) ok = false;
        }
    }
    return ok;
}

// --- 8: dynamic morphing defeats the SAT attack --------------------------------

bool c8_morphing_defeats_sat(std::ostream& log) {
    Fixture fx = load_fixture("c432");
    CamoNetlist camo =
        camouflage(fx.netlist, select_gates(fx.netlist, 8, 432), CamoScheme::Meso8).camo;
    std::string t0 = camo.true_key();
    // Second template: a different candidate in four of the eight cells.
    std::string t1 = t0;
    for (size_t ci = 0; ci < camo.cells.size(); ci += 2) {
        const CamoCell& cell = camo.cells[ci];
        size_t idx = (cell.true_index + 3) % cell.candidates.size();
        for (size_t j = 0; j < cell.key_width; ++j)
            t1[cell.key_offset + j] = ((idx >> (cell.key_width - 1 - j)) & 1u) ? '1' : '0';
    }
    auto hd_between = [&](const std::string& key, const Netlist& reference) {
        return evaluate_recovered_key(camo, key, reference, 100000, 77).hd;
    };
    Netlist f0 = apply_key(camo, t0);
    Netlist f1 = apply_key(camo, t1);
    if (hd_between(t1, f0) == 0.0) {
        log << "templates accidentally equivalent";
        return false;
    }

    size_t inconsistent = 0, corrupted = 0, equivalent = 0;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
        MorphPolicy policy;
        policy.kind = MorphPolicy::Kind::CycleEveryQ;
        policy.cycle_period = 1;  // per-query morph
        MorphingOracle oracle(camo, {t0, t1}, policy);
        SatAttackOptions opts;
        opts.seed = seed;
        AttackResult r = sat_attack(camo, oracle, opts);
        if (r.outcome == AttackResult::Outcome::Inconsistent) {
            inconsistent++;
            continue;
        }
        if (r.outcome != AttackResult::Outcome::KeyFound) {
            log << "seed " << seed << " unexpected outcome "
                << AttackResult::outcome_name(r.outcome);
            return false;
        }
        if (hd_between(r.key, f0) == 0.0 || hd_between(r.key, f1) == 0.0)
            equivalent++;
        else
            corrupted++;
    }
    log << "inconsistent=" << inconsistent << " corrupted=" << corrupted
        << " template-equivalent=" << equivalent;
    return equivalent == 0 && inconsistent + corrupted == 100;
}

// --- 9: AppSAT amplification ----------------------------------------------------

bool c9_appsat_amplification(std::ostream& log) {
    Fixture fx = load_fixture("c880");
    CamoNetlist camo =
        camouflage(fx.netlist, select_gates(fx.netlist, 24, 880), CamoScheme::Meso8).camo;
    std::string true_key = camo.true_key();

    // Three templates, each reconfiguring its own block of cells, sized so
    // the template HDs land in the published 9-15% band.
    auto template_with_block = [&](size_t begin, size_t count, size_t step) {
        std::string key = true_key;
        for (size_t ci = begin; ci < begin + count && ci < camo.cells.size(); ++ci) {
            const CamoCell& cell = camo.cells[ci];
            size_t idx = (cell.true_index + step) % cell.candidates.size();
            for (size_t j = 0; j < cell.key_width; ++j)
                key[cell.key_offset + j] = ((idx >> (cell.key_width - 1 - j)) & 1u) ? '1' : '0';
        }
        return key;
    };
    auto hd_of = [&](const std::string& key) {
        return evaluate_recovered_key(camo, key, fx.netlist, 100000, 424242).hd;
    };

    std::vector<std::string> templates;
    double max_template_hd = 0.0;
    for (size_t block = 0; block < 3; ++block) {
        std::string chosen;
        double chosen_hd = 0.0;
        for (size_t count = 1; count <= 8; ++count) {
            std::string key = template_with_block(block * 8, count, 2 + block);
            double hd = hd_of(key);
            chosen = key;
            chosen_hd = hd;
            if (hd >= 0.09) break;
        }
        if (chosen_hd < 0.09 || chosen_hd > 0.15) {
            log << "template " << block << " hd " << chosen_hd << " outside the 9-15% band; ";
            return false;
        }
        log << "template" << block << " hd=" << chosen_hd << "; ";
        max_template_hd = std::max(max_template_hd, chosen_hd);
        templates.push_back(chosen);
    }

    MorphPolicy policy;
    policy.kind = MorphPolicy::Kind::PrngPerQuery;
    policy.seed = 3;
    MorphingOracle oracle(camo, templates, policy);
    AppSatParams params;
    params.seed = 9;
    params.dips_per_round = 4;
    params.random_queries_per_round = 50;
    params.estimation_samples = 2000;
    params.max_iterations = 200;
    AttackResult r = appsat_attack(camo, oracle, params);
    std::string stitched = r.stitched_key.empty() ? r.key : r.stitched_key;
    if (stitched.empty()) {
        log << "no stitched key (outcome " << AttackResult::outcome_name(r.outcome) << ")";
        return false;
    }
    double stitched_hd = hd_of(stitched);
    log << "outcome=" << AttackResult::outcome_name(r.outcome) << " stitched hd=" << stitched_hd
        << " vs max template hd=" << max_template_hd;
    return stitched_hd > max_template_hd;
}

// --- 10: ATPG quality -------------------------------------------------------------

bool c10_atpg_quality(std::ostream& log) {
    struct Row {
        const char* name;
        size_t published_patterns;
    };
    bool ok = true;
    for (Row row : {Row{"c880", 63}, Row{"c1908", 80}}) {
        Fixture fx = load_fixture(row.name);
        AtpgParams params;
        params.target_fc = 100.0;
        AtpgResult r = atpg(fx.netlist, params);
        log << row.name << ": fc=" << r.coverage_percent << " patterns=" << r.tests.size()
            << " (limit " << 3 * row.published_patterns << "); ";
        if (r.coverage_percent < 99.0) ok = false;
        if (r.tests.size() > 3 * row.published_patterns) ok = false;
    }
    return ok;
}

// --- 11: CeNN corruption ------------------------------------------------------------

bool c11_cenn(std::ostream& log) {
    BinaryImage glyph = glyph_image();

    // Clean fixed-point reconstruction at hd = 0.
    CennResult clean = cenn_run(glyph.to_bipolar(), CennParams::identity());
    double clean_err = image_metrics(clean.output, glyph).pixel_error_rate;
    log << "clean reconstruction err=" << clean_err << "; ";
    bool ok = clean.converged && clean_err == 0.0;

    double prev = -1.0;
    for (double hd : {0.10, 0.15, 0.20, 0.25}) {
        BinaryImage corrupted = corrupt_by_hd(clean.output, hd, 2026);
        double err = image_metrics(corrupted, clean.output).pixel_error_rate;
        log << "hd=" << hd << " err=" << err << "; ";
        if (std::abs(err - hd) > 0.02) ok = false;
        if (err <= prev) ok = false;
        prev = err;
    }
    return ok;
}

// --- 12: oracle equivalence suites ---------------------------------------------------

bool c12_equivalence(std::ostream& log) {
    bool ok = true;

    // Bit-parallel vs serial simulation, exhaustive on small fixtures.
    for (const char* name : {"c17", "fig6", "fig7", "and1", "xor1", "buf1"}) {
        Fixture fx = load_fixture(name);
        size_t n_pi = fx.netlist.input_count();
        PatternBlock block(fx.netlist.net_count(), size_t{1} << n_pi);
        for (size_t p = 0; p < (size_t{1} << n_pi); ++p)
            for (size_t i = 0; i < n_pi; ++i)
                block.set(fx.netlist.inputs()[i], p, (p >> i) & 1);
        simulate_all(fx.netlist, block);
        for (size_t p = 0; p < (size_t{1} << n_pi); ++p) {
            std::vector<bool> ins(n_pi);
            for (size_t i = 0; i < n_pi; ++i) ins[i] = (p >> i) & 1;
            auto expect = testsupport::naive_simulate(fx.netlist, ins);
            for (size_t o = 0; o < expect.size(); ++o)
                if (block.get(fx.netlist.outputs()[o], p) != expect[o]) ok = false;
        }
    }
    log << "sim ok=" << ok << "; ";

    // Fault simulation vs the naive serial oracle, exhaustive patterns.
    for (const char* name : {"c17", "fig7"}) {
        Fixture fx = load_fixture(name);
        size_t n_pi = fx.netlist.input_count();
        std::vector<std::vector<bool>> patterns;
        for (size_t p = 0; p < (size_t{1} << n_pi); ++p) {
            std::vector<bool> ins(n_pi);
            for (size_t i = 0; i < n_pi; ++i) ins[i] = (p >> i) & 1;
            patterns.push_back(ins);
        }
        TestSet tests = make_test_set(fx.netlist, patterns);
        FaultUniverse u = enumerate_faults(fx.netlist, false);
        FaultSimResult fast = fault_simulate(fx.netlist, u, tests);
        for (size_t fi = 0; fi < u.faults.size(); ++fi) {
            auto naive = testsupport::naive_fault_detects(fx.netlist, u.faults[fi], patterns);
            bool any = false;
            for (bool d : naive) any = any || d;
            if (fast.detected[fi] != any) ok = false;
        }
    }
    log << "fault-sim ok=" << ok << "; ";

    // MUX expansion vs apply_key over every key and every input.
    {
        Fixture fx = load_fixture("c17");
        CamoNetlist camo =
            camouflage(fx.netlist, select_gates(fx.netlist, 2, 6), CamoScheme::Meso6).camo;
        Netlist keyed = expand_to_keyed(camo);
        for (size_t i0 = 0; i0 < 6 && ok; ++i0)
            for (size_t i1 = 0; i1 < 6 && ok; ++i1) {
                std::string key;
                for (int j = 2; j >= 0; --j) key += ((i0 >> j) & 1) ? '1' : '0';
                for (int j = 2; j >= 0; --j) key += ((i1 >> j) & 1) ? '1' : '0';
                Netlist resolved = apply_key(camo, key);
                for (uint32_t m = 0; m < 32; ++m) {
                    std::vector<bool> ins(5), keyed_ins(11);
                    for (size_t i = 0; i < 5; ++i) {
                        ins[i] = (m >> i) & 1;
                        keyed_ins[i] = ins[i];
                    }
                    for (size_t i = 0; i < 6; ++i) keyed_ins[5 + i] = key[i] == '1';
                    if (testsupport::naive_simulate(resolved, ins) !=
                        testsupport::naive_simulate(keyed, keyed_ins))
                        ok = false;
                }
            }
    }
    log << "mux ok=" << ok << "; ";

    // SAT models vs simulation on every input of small fixtures.
    for (const char* name : {"c17", "fig6"}) {
        Fixture fx = load_fixture(name);
        Cnf cnf = tseitin_encode(fx.netlist);
        Solver solver;
        solver.add_cnf(cnf);
        size_t n_pi = fx.netlist.input_count();
        for (size_t p = 0; p < (size_t{1} << n_pi); ++p) {
            std::vector<bool> ins(n_pi);
            std::vector<Lit> assumptions;
            for (size_t i = 0; i < n_pi; ++i) {
                ins[i] = (p >> i) & 1;
                Var v = cnf.net_var.at(fx.netlist.inputs()[i]);
                assumptions.push_back(ins[i] ? v : -v);
            }
            if (solver.solve(assumptions) != Solver::Status::Sat) {
                ok = false;
                break;
            }
            auto expect = testsupport::naive_simulate(fx.netlist, ins);
            for (size_t o = 0; o < expect.size(); ++o)
                if (solver.model_value(cnf.net_var.at(fx.netlist.outputs()[o])) != expect[o])
                    ok = false;
        }
    }
    log << "sat ok=" << ok;
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "tech table power x delay = energy within 3%", c1_tech_consistency},
        {2, "b17_C full-chip PPA within 1%", c2_ppa},
        {3, "device switching physics", c3_device_physics},
        {4, "foundry emulation HD band and trend (c7552, 128 cells)", c4_foundry},
        {5, "HackTest desk oracle strict maximum", c5_hacktest_desk},
        {6, "post-test configuration defense and size trend", c6_post_test},
        {7, "SAT attack soundness on static oracles", c7_sat_soundness},
        {8, "per-query morphing defeats the SAT attack (100 seeds)", c8_morphing_defeats_sat},
        {9, "AppSAT stitched-key HD exceeds every template HD", c9_appsat_amplification},
        {10, "ATPG coverage and pattern budget", c10_atpg_quality},
        {11, "CeNN corruption rates", c11_cenn},
        {12, "oracle equivalence suites", c12_equivalence},
    };

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.number != only) continue;
        std::ostringstream log;
        bool pass = false;
        try {
            pass = c.run(log);
        } catch (const std::exception& e) {
            log << " exception: " << e.what();
        }
        std::printf("criterion %2d %s: %s\n", c.number, pass ? "PASS" : "FAIL", c.title.c_str());
        if (!log.str().empty()) std::printf("              %s\n", log.str().c_str());
        if (!pass) failures++;
    }
    return failures;
}
