// Experiment harness: every pipeline of the toolkit as a reproducible
// subcommand. All tabular output is CSV; reports embed the resolved
// configuration so a row can always be traced back to its run.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <memory>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "polycamo/attacks.hpp"
#include "polycamo/atpg.hpp"
#include "polycamo/bench.hpp"
#include "polycamo/camo.hpp"
#include "polycamo/cenn.hpp"
#include "polycamo/corpus.hpp"
#include "polycamo/hacktest.hpp"
#include "polycamo/meso.hpp"
#include "polycamo/oracle.hpp"
#include "polycamo/sim.hpp"

using namespace polycamo;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;
constexpr int kExitBudget = 4;

int default_jobs() {
    if (const char* env = std::getenv("POLYCAMO_JOBS")) {
        int j = std::atoi(env);
        if (j > 0) return j;
    }
    return 1;
}

std::string default_data_dir() {
    if (const char* env = std::getenv("POLYCAMO_DATA")) return env;
#ifdef POLYCAMO_DEFAULT_DATA_DIR
    return POLYCAMO_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

struct Report {
    std::ostringstream body;
    std::vector<std::string> config_lines;
    bool timestamp = false;

    void config(const std::string& key, const std::string& value) {
        config_lines.push_back(key + "=" + value);
    }
    void write(const std::string& path) {
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!path.empty() && path != "-") {
            file.open(path, std::ios::binary);
            if (!file) throw std::runtime_error("cannot open report file: " + path);
            os = &file;
        }
        for (const auto& line : config_lines) *os << "# " << line << "\n";
        if (timestamp) {
            auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            *os << "# generated_at=" << now << "\n";
        }
        *os << body.str();
    }
};

Netlist load_bench_or_fixture(const std::string& spec_arg, const std::string& data_dir) {
    std::ifstream probe(spec_arg);
    if (probe) return read_bench_file(spec_arg);
    return load_fixture(spec_arg, data_dir).netlist;
}

size_t circuit_depth(const Netlist& n) {
    std::vector<size_t> level(n.net_count(), 0);
    size_t depth = 0;
    for (const Gate& g : n.gates()) {
        size_t l = 0;
        for (NetId in : g.fanins()) l = std::max(l, level[in]);
        level[g.out] = l + 1;
        depth = std::max(depth, l + 1);
    }
    return depth;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::istringstream is(csv);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

// Runs `trials` jobs over a small thread pool, merging results in trial
// order so reports are deterministic regardless of the job count.
template <typename Fn>
std::vector<std::string> run_trials(size_t trials, int jobs, Fn&& fn) {
    std::vector<std::string> rows(trials);
    if (jobs <= 1) {
        for (size_t t = 0; t < trials; ++t) rows[t] = fn(t);
        return rows;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (;;) {
                size_t t = next.fetch_add(1);
                if (t >= trials) return;
                rows[t] = fn(t);
            }
        });
    for (auto& th : pool) th.join();
    return rows;
}

// --- camo -----------------------------------------------------------------

struct CamoArgs {
    std::string bench, scheme = "meso8", out_prefix = "camo_out";
    size_t count = 0;
    double fraction = -1.0;
    uint64_t seed = 1;
    bool timestamp = false;
};

int cmd_camo(const CamoArgs& args, const std::string& data_dir) {
    Netlist n = load_bench_or_fixture(args.bench, data_dir);
    auto diags = validate(n);
    if (!diags.empty()) {
        for (const auto& d : diags) std::cerr << d.code << ": " << d.message << "\n";
        return kExitValidation;
    }
    std::vector<GateId> gates;
    if (args.fraction >= 0.0)
        gates = select_gates_fraction(n, args.fraction, args.seed);
    else
        gates = select_gates(n, args.count, args.seed);
    CamoResult result = camouflage(n, gates, scheme_from_name(args.scheme));
    for (const auto& d : result.skipped) std::cerr << d.code << ": " << d.message << "\n";

    const CamoNetlist& camo = result.camo;
    Netlist keyed = expand_to_keyed(camo);
    write_bench_file(args.out_prefix + ".keyed.bench", keyed, camo.true_key());
    std::ofstream(args.out_prefix + ".camo.json") << camo.to_json();
    std::ofstream(args.out_prefix + ".key") << camo.true_key() << "\n";

    std::cout << "cells=" << camo.cells.size() << " key_len=" << camo.key_len
              << " solution_space=" << camo.solution_space() << "\n";
    return 0;
}

// --- attack -----------------------------------------------------------------

struct AttackArgs {
    std::string kind = "sat";
    std::string camo_json;
    std::string oracle_key;
    std::string morph_templates;  // comma-separated key bit strings
    std::string morph_policy = "prng";
    uint64_t morph_seed = 1;
    size_t trials = 1;
    uint64_t seed = 1;
    std::string out = "-";
    std::string testset;  // hacktest input
    double atpg_fc = 99.0;
    std::string accuracies = "0.5,0.7,0.9";  // foundry sweep
    size_t patterns = 100000;
    AppSatParams appsat;
    int64_t budget = 10000000;
    bool timestamp = false;
    int jobs = 1;
};

std::unique_ptr<Oracle> make_oracle(const CamoNetlist& camo, const AttackArgs& args,
                                    uint64_t trial_seed) {
    if (!args.morph_templates.empty()) {
        MorphPolicy policy;
        if (args.morph_policy == "prng") {
            policy.kind = MorphPolicy::Kind::PrngPerQuery;
            policy.seed = args.morph_seed + trial_seed;
        } else if (args.morph_policy.rfind("cycle", 0) == 0) {
            policy.kind = MorphPolicy::Kind::CycleEveryQ;
            auto colon = args.morph_policy.find(':');
            policy.cycle_period =
                colon == std::string::npos ? 1 : std::stoul(args.morph_policy.substr(colon + 1));
        } else {
            throw CLI::ValidationError("--morph-policy", "expected prng or cycle[:q]");
        }
        return std::make_unique<MorphingOracle>(camo, split_list(args.morph_templates), policy);
    }
    std::string key = args.oracle_key.empty() ? camo.true_key() : args.oracle_key;
    return std::make_unique<StaticOracle>(camo, key);
}

int cmd_attack(const AttackArgs& args) {
    std::ifstream in(args.camo_json);
    if (!in) {
        std::cerr << "cannot open camo description: " << args.camo_json << "\n";
        return kExitConfig;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    CamoNetlist camo = CamoNetlist::from_json(ss.str());

    Report report;
    report.timestamp = args.timestamp;
    report.config("kind", args.kind);
    report.config("camo", args.camo_json);
    report.config("scheme", camo.scheme);
    report.config("trials", std::to_string(args.trials));
    report.config("seed", std::to_string(args.seed));
    bool budget_hit = false;

    if (args.kind == "sat" || args.kind == "appsat") {
        report.config("oracle", args.morph_templates.empty() ? "static" : "morphing");
        report.body << "scheme,trial,seed,outcome,dips,queries,hd,oer,runtime_s\n";
        auto rows = run_trials(args.trials, args.jobs, [&](size_t t) {
            uint64_t trial_seed = args.seed + t;
            auto oracle = make_oracle(camo, args, trial_seed);
            AttackResult r;
            if (args.kind == "sat") {
                SatAttackOptions opts;
                opts.seed = trial_seed;
                opts.conflict_budget = args.budget;
                r = sat_attack(camo, *oracle, opts);
            } else {
                AppSatParams params = args.appsat;
                params.seed = trial_seed;
                params.conflict_budget = args.budget;
                r = appsat_attack(camo, *oracle, params);
            }
            std::string key = !r.key.empty() ? r.key : r.stitched_key;
            MetricReport hd;
            if (!key.empty()) hd = evaluate_recovered_key(camo, key, camo.base, args.patterns);
            std::ostringstream row;
            row << camo.scheme << "," << t << "," << trial_seed << ","
                << AttackResult::outcome_name(r.outcome) << "," << r.dip_count << ","
                << r.query_count << "," << hd.hd << "," << hd.oer << "," << r.wall_seconds
                << "\n";
            return row.str();
        });
        for (auto& row : rows) {
            if (row.find(",Budget,") != std::string::npos) budget_hit = true;
            report.body << row;
        }
    } else if (args.kind == "foundry") {
        report.config("patterns", std::to_string(args.patterns));
        report.body << "scheme,accuracy,trial,seed,correct_cells,hd,oer\n";
        for (const auto& acc_str : split_list(args.accuracies)) {
            double accuracy = std::stod(acc_str);
            auto rows = run_trials(args.trials, args.jobs, [&](size_t t) {
                uint64_t trial_seed = args.seed + t;
                auto r = emulate_foundry_attack(camo, accuracy, trial_seed, args.patterns);
                std::ostringstream row;
                row << camo.scheme << "," << accuracy << "," << t << "," << trial_seed << ","
                    << r.correct_cells << "," << r.metrics.hd << "," << r.metrics.oer << "\n";
                return row.str();
            });
            for (auto& row : rows) report.body << row;
        }
    } else if (args.kind == "hacktest") {
        TestSet tests;
        if (!args.testset.empty()) {
            std::ifstream tf(args.testset);
            if (!tf) {
                std::cerr << "cannot open test set: " << args.testset << "\n";
                return kExitConfig;
            }
            std::ostringstream ts;
            ts << tf.rdbuf();
            tests = TestSet::from_text(ts.str());
        } else {
            AtpgParams params;
            params.target_fc = args.atpg_fc;
            params.seed = args.seed;
            tests = atpg(apply_key(camo, camo.true_key()), params).tests;
        }
        report.config("patterns", std::to_string(tests.size()));
        report.body << "scheme,trial,seed,response_matches,fc,key_accuracy,hd,oer\n";
        auto rows = run_trials(args.trials, args.jobs, [&](size_t t) {
            HackTestOptions opts;
            opts.seed = args.seed + t;
            HackTestScore score = hacktest(camo, tests, opts);
            auto hd = evaluate_recovered_key(camo, score.key, camo.base, args.patterns);
            std::ostringstream row;
            row << camo.scheme << "," << t << "," << (args.seed + t) << ","
                << score.response_matches << "," << score.fault_coverage << ","
                << key_bit_accuracy(score.key, camo.true_key()) << "," << hd.hd << "," << hd.oer
                << "\n";
            return row.str();
        });
        for (auto& row : rows) report.body << row;
    } else {
        std::cerr << "unknown attack kind: " << args.kind << "\n";
        return kExitConfig;
    }

    report.write(args.out);
    return budget_hit ? kExitBudget : 0;
}

// --- ppa --------------------------------------------------------------------

struct PpaArgs {
    std::string bench;
    size_t instances = 0, stages = 0;
    std::string tech_file;
    std::string published;
    std::string out = "-";
    bool timestamp = false;
};

int cmd_ppa(const PpaArgs& args, const std::string& data_dir) {
    size_t instances = args.instances, stages = args.stages;
    if (!args.bench.empty()) {
        Netlist n = load_bench_or_fixture(args.bench, data_dir);
        instances = n.gate_count();
        stages = circuit_depth(n);
    }
    if (instances == 0 && stages == 0 && args.bench.empty()) {
        std::cerr << "need --bench or --instances/--stages\n";
        return kExitConfig;
    }
    std::vector<TechEntry> lib = args.tech_file.empty()
                                     ? load_tech_library(data_dir + "/tech/devices.tech")
                                     : load_tech_library(args.tech_file);
    Report report;
    report.timestamp = args.timestamp;
    report.config("instances", std::to_string(instances));
    report.config("stages", std::to_string(stages));
    report.body << "entry,instances,stages,area_um2,power_mW,delay_ns,source\n";
    for (const auto& e : lib) {
        PpaEstimate est = ppa_estimate(instances, stages, e);
        report.body << e.name << "," << instances << "," << stages << "," << est.area * 1e12
                    << "," << est.power * 1e3 << "," << est.delay * 1e9 << ",model\n";
    }
    if (!args.published.empty()) {
        std::ifstream pub(args.published);
        if (!pub) {
            std::cerr << "cannot open published table: " << args.published << "\n";
            return kExitConfig;
        }
        std::string line;
        while (std::getline(pub, line)) {
            if (line.empty() || line[0] == '#') continue;
            report.body << line << ",published\n";
        }
    }
    report.write(args.out);
    return 0;
}

// --- cenn ---------------------------------------------------------------------

struct CennArgs {
    std::string image;
    std::string hd_list = "0,0.10,0.25";
    uint64_t seed = 1;
    std::string template_name = "denoise";
    std::string out_prefix = "cenn_out";
    std::string out = "-";
    int jobs = 1;
    bool timestamp = false;
};

int cmd_cenn(const CennArgs& args, const std::string& data_dir) {
    BinaryImage input;
    if (args.image.empty() || args.image == "glyph") {
        input = glyph_image();
    } else {
        std::ifstream probe(args.image);
        input = probe ? read_image_file(args.image)
                      : read_image_file(data_dir + "/images/" + args.image);
    }
    CennParams params =
        args.template_name == "identity" ? CennParams::identity() : CennParams::denoising();

    CennResult reference = cenn_run(input.to_bipolar(), params, args.jobs);
    if (reference.diverged) {
        std::cerr << "cenn run diverged\n";
        return kExitValidation;
    }

    Report report;
    report.timestamp = args.timestamp;
    report.config("template", args.template_name);
    report.config("seed", std::to_string(args.seed));
    report.body << "hd,pixel_error,psnr_db,image\n";
    write_image_file(args.out_prefix + ".reference.pbm", reference.output);
    for (const auto& hd_str : split_list(args.hd_list)) {
        double hd = std::stod(hd_str);
        BinaryImage corrupted = corrupt_by_hd(reference.output, hd, args.seed);
        std::string path = args.out_prefix + ".hd" + hd_str + ".pbm";
        write_image_file(path, corrupted);
        ImageMetrics m = image_metrics(corrupted, reference.output);
        report.body << hd << "," << m.pixel_error_rate << "," << m.psnr_db << "," << path << "\n";
    }
    report.write(args.out);
    return 0;
}

// --- atpg ---------------------------------------------------------------------

struct AtpgArgs {
    std::string bench;
    double target_fc = 99.0;
    uint64_t seed = 1;
    bool collapse = false;
    std::string out = "tests.txt";
    std::string report = "-";
    std::string simulate_only;  // existing test set to score
    int jobs = 1;
    bool timestamp = false;
};

int cmd_atpg(const AtpgArgs& args, const std::string& data_dir) {
    Netlist n = load_bench_or_fixture(args.bench, data_dir);
    Report report;
    report.timestamp = args.timestamp;
    report.config("bench", args.bench);
    report.config("seed", std::to_string(args.seed));

    if (!args.simulate_only.empty()) {
        std::ifstream tf(args.simulate_only);
        if (!tf) {
            std::cerr << "cannot open test set: " << args.simulate_only << "\n";
            return kExitConfig;
        }
        std::ostringstream ts;
        ts << tf.rdbuf();
        TestSet tests = TestSet::from_text(ts.str());
        FaultUniverse u = enumerate_faults(n, args.collapse);
        FaultSimResult r = fault_simulate(n, u, tests, args.jobs);
        report.body << "patterns,faults,detected,fc\n";
        report.body << tests.size() << "," << u.size() << "," << r.detected_count << ","
                    << r.coverage_percent << "\n";
        report.write(args.report);
        return 0;
    }

    AtpgParams params;
    params.target_fc = args.target_fc;
    params.seed = args.seed;
    params.collapse = args.collapse;
    params.jobs = args.jobs;
    AtpgResult r = atpg(n, params);
    std::ofstream(args.out, std::ios::binary) << r.tests.to_text();
    report.body << "patterns,random,deterministic,fc,untestable,aborted\n";
    report.body << r.tests.size() << "," << r.random_patterns << "," << r.deterministic_patterns
                << "," << r.coverage_percent << "," << r.untestable << "," << r.aborted << "\n";
    report.write(args.report);
    return 0;
}

// --- metrics --------------------------------------------------------------------

struct MetricsArgs {
    std::string bench_a, bench_b;
    size_t patterns = 100000;
    uint64_t seed = 1;
    size_t trials = 1;
    std::string name = "pair";
    std::string out = "-";
    int jobs = 1;
    bool timestamp = false;
};

int cmd_metrics(const MetricsArgs& args, const std::string& data_dir) {
    Netlist a = load_bench_or_fixture(args.bench_a, data_dir);
    Netlist b = load_bench_or_fixture(args.bench_b, data_dir);
    Report report;
    report.timestamp = args.timestamp;
    report.config("patterns", std::to_string(args.patterns));
    report.body << "benchmark,trial,patterns,seed,hd,oer\n";
    auto rows = run_trials(args.trials, args.jobs, [&](size_t t) {
        HdOerOptions opts;
        opts.patterns = args.patterns;
        opts.seed = args.seed + t;
        MetricReport r = hd_oer(a, b, opts);
        return r.csv_row(args.name, t) + "\n";
    });
    for (auto& row : rows) report.body << row;
    report.write(args.out);
    return 0;
}

// --- device ---------------------------------------------------------------------

struct DeviceArgs {
    DeviceParams params;
    double spin_current = -1.0;
    std::string out = "-";
    bool timestamp = false;
};

int cmd_device(const DeviceArgs& args) {
    Report report;
    report.timestamp = args.timestamp;
    SwitchingReport r = me_switching(args.params);
    report.body << "quantity,value,unit\n";
    report.body << "electric_field," << r.electric_field << ",V/m\n";
    report.body << "me_charge," << r.me_charge << ",C\n";
    report.body << "tau_me," << r.tau_me << ",s\n";
    report.body << "tau_mag," << r.tau_mag << ",s\n";
    report.body << "tau_intrinsic," << r.tau_intrinsic << ",s\n";
    report.body << "tau_total," << r.tau_total << ",s\n";
    if (args.spin_current >= 0.0)
        report.body << "j_c," << iree_current(args.spin_current, args.params) << ",A/m\n";
    report.write(args.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gate-level dynamic camouflaging and attack-evaluation toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "configuration file ([section] + key=value)");

    std::string data_dir = default_data_dir();
    int jobs = default_jobs();
    bool timestamp = false;
    app.add_option("--data", data_dir, "data directory (benches/, tech/, images/)");
    app.add_option("--jobs", jobs, "worker threads for trial fan-out");
    app.add_flag("--timestamp", timestamp, "add a generated_at comment to reports");

    CamoArgs camo_args;
    auto* camo_cmd = app.add_subcommand("camo", "camouflage a netlist, emit keyed BENCH + key");
    camo_cmd->add_option("--bench", camo_args.bench, "BENCH file or fixture name")->required();
    camo_cmd->add_option("--scheme", camo_args.scheme,
                         "nandnor|nandnorxor|meso3|meso4|meso6|meso8|meso16");
    camo_cmd->add_option("--count", camo_args.count, "gates to camouflage");
    camo_cmd->add_option("--fraction", camo_args.fraction, "fraction of gates to camouflage");
    camo_cmd->add_option("--seed", camo_args.seed, "selection seed");
    camo_cmd->add_option("--out", camo_args.out_prefix, "output prefix");

    AttackArgs attack_args;
    auto* attack_cmd = app.add_subcommand("attack", "run sat/appsat/hacktest/foundry attacks");
    attack_cmd->add_option("--kind", attack_args.kind, "sat|appsat|hacktest|foundry")->required();
    attack_cmd->add_option("--camo", attack_args.camo_json, "camo json from `camo`")->required();
    attack_cmd->add_option("--oracle-key", attack_args.oracle_key,
                           "static oracle key (default: true key)");
    attack_cmd->add_option("--morph-templates", attack_args.morph_templates,
                           "comma-separated template keys for a morphing oracle");
    attack_cmd->add_option("--morph-policy", attack_args.morph_policy, "prng | cycle[:q]");
    attack_cmd->add_option("--morph-seed", attack_args.morph_seed, "morphing selector seed");
    attack_cmd->add_option("--trials", attack_args.trials, "independent trials");
    attack_cmd->add_option("--seed", attack_args.seed, "base seed");
    attack_cmd->add_option("--out", attack_args.out, "CSV output path (- for stdout)");
    attack_cmd->add_option("--testset", attack_args.testset, "hacktest: test set file");
    attack_cmd->add_option("--atpg-fc", attack_args.atpg_fc, "hacktest: generate tests at FC");
    attack_cmd->add_option("--accuracies", attack_args.accuracies, "foundry: accuracy sweep");
    attack_cmd->add_option("--patterns", attack_args.patterns, "metric sample size");
    attack_cmd->add_option("--budget", attack_args.budget, "solver conflict budget");
    attack_cmd->add_option("--appsat-r", attack_args.appsat.random_queries_per_round,
                           "appsat: random queries per round");
    attack_cmd->add_option("--appsat-interval", attack_args.appsat.dips_per_round,
                           "appsat: DIP iterations per round");
    attack_cmd->add_option("--appsat-eps", attack_args.appsat.error_threshold,
                           "appsat: termination error threshold");
    attack_cmd->add_option("--appsat-samples", attack_args.appsat.estimation_samples,
                           "appsat: estimation sample count");

    PpaArgs ppa_args;
    auto* ppa_cmd = app.add_subcommand("ppa", "full-chip power/performance/area projection");
    ppa_cmd->add_option("--bench", ppa_args.bench, "derive instance/stage counts from a netlist");
    ppa_cmd->add_option("--instances", ppa_args.instances, "instance count");
    ppa_cmd->add_option("--stages", ppa_args.stages, "critical path stages");
    ppa_cmd->add_option("--tech", ppa_args.tech_file, "tech library file");
    ppa_cmd->add_option("--published", ppa_args.published, "append published baseline rows");
    ppa_cmd->add_option("--out", ppa_args.out, "CSV output path");

    CennArgs cenn_args;
    auto* cenn_cmd = app.add_subcommand("cenn", "image reconstruction + HD corruption study");
    cenn_cmd->add_option("--image", cenn_args.image, "P1/P2 image file or 'glyph'");
    cenn_cmd->add_option("--hd", cenn_args.hd_list, "comma-separated HD levels");
    cenn_cmd->add_option("--seed", cenn_args.seed, "corruption seed");
    cenn_cmd->add_option("--template", cenn_args.template_name, "denoise | identity");
    cenn_cmd->add_option("--out-prefix", cenn_args.out_prefix, "image output prefix");
    cenn_cmd->add_option("--out", cenn_args.out, "metrics CSV path");

    AtpgArgs atpg_args;
    auto* atpg_cmd = app.add_subcommand("atpg", "stuck-at test generation / fault grading");
    atpg_cmd->add_option("--bench", atpg_args.bench, "BENCH file or fixture name")->required();
    atpg_cmd->add_option("--target-fc", atpg_args.target_fc, "target fault coverage percent");
    atpg_cmd->add_option("--seed", atpg_args.seed, "random phase seed");
    atpg_cmd->add_flag("--collapse", atpg_args.collapse, "collapse the fault universe");
    atpg_cmd->add_option("--out", atpg_args.out, "test set output file");
    atpg_cmd->add_option("--report", atpg_args.report, "report CSV path");
    atpg_cmd->add_option("--simulate-only", atpg_args.simulate_only,
                         "grade an existing test set instead of generating");

    MetricsArgs metrics_args;
    auto* metrics_cmd = app.add_subcommand("metrics", "HD/OER between two netlists");
    metrics_cmd->add_option("--bench-a", metrics_args.bench_a, "first netlist")->required();
    metrics_cmd->add_option("--bench-b", metrics_args.bench_b, "second netlist")->required();
    metrics_cmd->add_option("--patterns", metrics_args.patterns, "sample size");
    metrics_cmd->add_option("--seed", metrics_args.seed, "base seed");
    metrics_cmd->add_option("--trials", metrics_args.trials, "trials (seed+t)");
    metrics_cmd->add_option("--name", metrics_args.name, "benchmark column value");
    metrics_cmd->add_option("--out", metrics_args.out, "CSV output path");

    DeviceArgs device_args;
    auto* device_cmd = app.add_subcommand("device", "MESO switching physics calculator");
    device_cmd->add_option("--area", device_args.params.me_capacitor_area, "A_ME (m^2)");
    device_cmd->add_option("--eps", device_args.params.relative_permittivity, "relative permittivity");
    device_cmd->add_option("--pmf", device_args.params.ferroelectric_polarization, "P_mf (C/m^2)");
    device_cmd->add_option("--emf", device_args.params.electric_switching_field, "E_mf (V/m)");
    device_cmd->add_option("--bmf", device_args.params.exchange_bias_at_switching, "B_mf (T)");
    device_cmd->add_option("--bc", device_args.params.me_switching_field, "B_c (T)");
    device_cmd->add_option("--lambda", device_args.params.iree_length, "lambda_IREE (m)");
    device_cmd->add_option("--isoc", device_args.params.spin_orbit_read_current, "I_ISOC (A)");
    device_cmd->add_option("--gamma", device_args.params.gyromagnetic_ratio, "gyromagnetic ratio");
    device_cmd->add_option("--js", device_args.spin_current, "spin current density (A/m^2)");
    device_cmd->add_option("--out", device_args.out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    attack_args.jobs = jobs;
    atpg_args.jobs = jobs;
    metrics_args.jobs = jobs;
    cenn_args.jobs = jobs;
    camo_args.timestamp = attack_args.timestamp = ppa_args.timestamp = cenn_args.timestamp =
        atpg_args.timestamp = metrics_args.timestamp = device_args.timestamp = timestamp;

    try {
        if (camo_cmd->parsed()) return cmd_camo(camo_args, data_dir);
        if (attack_cmd->parsed()) return cmd_attack(attack_args);
        if (ppa_cmd->parsed()) return cmd_ppa(ppa_args, data_dir);
        if (cenn_cmd->parsed()) return cmd_cenn(cenn_args, data_dir);
        if (atpg_cmd->parsed()) return cmd_atpg(atpg_args, data_dir);
        if (metrics_cmd->parsed()) return cmd_metrics(metrics_args, data_dir);
        if (device_cmd->parsed()) return cmd_device(device_args);
    } catch (const netlist_error& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
