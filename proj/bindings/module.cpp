// Python bindings for the main operations: netlist I/O, simulation and
// metrics, camouflaging, the attack suite, test generation, device physics
// and the image-processing study.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

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

namespace py = pybind11;
using namespace polycamo;

namespace {

CamoScheme scheme_arg(const std::string& name) { return scheme_from_name(name); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "gate-level dynamic camouflaging and attack evaluation toolkit";

    // --- netlist ---------------------------------------------------------
    py::class_<Netlist>(m, "Netlist")
        .def_property_readonly("gate_count", &Netlist::gate_count)
        .def_property_readonly("input_names", &Netlist::input_names)
        .def_property_readonly("output_names", &Netlist::output_names)
        .def("__eq__", [](const Netlist& a, const Netlist& b) { return a == b; })
        .def("__repr__", [](const Netlist& n) {
            std::ostringstream os;
            os << "Netlist(gates=" << n.gate_count() << ", inputs=" << n.input_count()
               << ", outputs=" << n.output_count() << ")";
            return os.str();
        });

    m.def("parse_bench", [](const std::string& text) { return parse_bench(text); },
          py::arg("text"));
    m.def("read_bench", [](const std::string& path) { return read_bench_file(path); },
          py::arg("path"));
    m.def(
        "write_bench",
        [](const Netlist& n, std::optional<std::string> key) { return write_bench(n, key); },
        py::arg("netlist"), py::arg("key_header") = std::nullopt);
    m.def("validate", [](const Netlist& n) {
        std::vector<std::string> out;
        for (const auto& d : validate(n)) out.push_back(d.code + ": " + d.message);
        return out;
    });

    // --- simulation and metrics ------------------------------------------
    m.def("simulate", &simulate_pattern, py::arg("netlist"), py::arg("inputs"));
    py::class_<MetricReport>(m, "MetricReport")
        .def_readonly("hd", &MetricReport::hd)
        .def_readonly("oer", &MetricReport::oer)
        .def_readonly("patterns", &MetricReport::patterns)
        .def_readonly("seed", &MetricReport::seed)
        .def_readonly("exhaustive", &MetricReport::exhaustive)
        .def("csv_row", &MetricReport::csv_row, py::arg("benchmark"), py::arg("trial"));
    m.def(
        "hd_oer",
        [](const Netlist& a, const Netlist& b, size_t patterns, uint64_t seed) {
            HdOerOptions opts;
            opts.patterns = patterns;
            opts.seed = seed;
            return hd_oer(a, b, opts);
        },
        py::arg("a"), py::arg("b"), py::arg("patterns") = 100000, py::arg("seed") = 1);

    // --- camouflaging ------------------------------------------------------
    py::class_<CamoNetlist>(m, "CamoNetlist")
        .def_property_readonly("key_len", [](const CamoNetlist& c) { return c.key_len; })
        .def_property_readonly("cell_count",
                               [](const CamoNetlist& c) { return c.cells.size(); })
        .def_property_readonly("scheme", [](const CamoNetlist& c) { return c.scheme; })
        .def_property_readonly("base", [](const CamoNetlist& c) { return c.base; })
        .def("true_key", &CamoNetlist::true_key)
        .def("solution_space", &CamoNetlist::solution_space)
        .def("to_json", &CamoNetlist::to_json)
        .def_static("from_json", &CamoNetlist::from_json);

    m.def(
        "select_gates",
        [](const Netlist& n, size_t count, uint64_t seed) {
            auto ids = select_gates(n, count, seed);
            return std::vector<size_t>(ids.begin(), ids.end());
        },
        py::arg("netlist"), py::arg("count"), py::arg("seed"));
    m.def(
        "camouflage",
        [](const Netlist& n, const std::vector<size_t>& gates, const std::string& scheme) {
            std::vector<GateId> ids(gates.begin(), gates.end());
            return camouflage(n, ids, scheme_arg(scheme)).camo;
        },
        py::arg("netlist"), py::arg("gates"), py::arg("scheme"));
    m.def("apply_key", &apply_key, py::arg("camo"), py::arg("key"));
    m.def("expand_to_keyed", &expand_to_keyed, py::arg("camo"));
    m.def(
        "emulate_foundry_attack",
        [](const CamoNetlist& c, double accuracy, uint64_t seed, size_t patterns) {
            auto r = emulate_foundry_attack(c, accuracy, seed, patterns);
            return py::make_tuple(r.reconstructed_key, r.correct_cells, r.metrics);
        },
        py::arg("camo"), py::arg("accuracy"), py::arg("seed"), py::arg("patterns") = 100000);

    // --- oracles and attacks ------------------------------------------------
    py::class_<Oracle>(m, "Oracle")
        .def("query", &Oracle::query, py::arg("inputs"))
        .def_property_readonly("query_count", &Oracle::query_count);
    py::class_<StaticOracle, Oracle>(m, "StaticOracle")
        .def(py::init<const CamoNetlist&, const std::string&>(), py::arg("camo"),
             py::arg("key"));
    py::class_<MorphPolicy>(m, "MorphPolicy")
        .def_static(
            "cycle", [](size_t q) { return MorphPolicy{MorphPolicy::Kind::CycleEveryQ, q, 0}; },
            py::arg("period") = 1)
        .def_static(
            "prng", [](uint64_t seed) {
                return MorphPolicy{MorphPolicy::Kind::PrngPerQuery, 1, seed};
            },
            py::arg("seed"));
    py::class_<MorphingOracle, Oracle>(m, "MorphingOracle")
        .def(py::init<const CamoNetlist&, const std::vector<std::string>&, MorphPolicy>(),
             py::arg("camo"), py::arg("template_keys"), py::arg("policy"));

    py::class_<AttackResult>(m, "AttackResult")
        .def_property_readonly("outcome",
                               [](const AttackResult& r) {
                                   return std::string(AttackResult::outcome_name(r.outcome));
                               })
        .def_readonly("key", &AttackResult::key)
        .def_readonly("stitched_key", &AttackResult::stitched_key)
        .def_readonly("dip_count", &AttackResult::dip_count)
        .def_readonly("query_count", &AttackResult::query_count)
        .def_readonly("estimated_error", &AttackResult::estimated_error)
        .def_readonly("replay_ok", &AttackResult::replay_ok)
        .def_readonly("wall_seconds", &AttackResult::wall_seconds);

    m.def(
        "sat_attack",
        [](const CamoNetlist& c, Oracle& o, uint64_t seed, int64_t budget) {
            SatAttackOptions opts;
            opts.seed = seed;
            opts.conflict_budget = budget;
            return sat_attack(c, o, opts);
        },
        py::arg("camo"), py::arg("oracle"), py::arg("seed") = 0,
        py::arg("conflict_budget") = 10000000);
    m.def(
        "appsat_attack",
        [](const CamoNetlist& c, Oracle& o, size_t random_queries, size_t dips_per_round,
           double eps, size_t samples, uint64_t seed) {
            AppSatParams params;
            params.random_queries_per_round = random_queries;
            params.dips_per_round = dips_per_round;
            params.error_threshold = eps;
            params.estimation_samples = samples;
            params.seed = seed;
            return appsat_attack(c, o, params);
        },
        py::arg("camo"), py::arg("oracle"), py::arg("random_queries") = 50,
        py::arg("dips_per_round") = 12, py::arg("error_threshold") = 0.01,
        py::arg("samples") = 2000, py::arg("seed") = 1);
    m.def("evaluate_recovered_key", &evaluate_recovered_key, py::arg("camo"), py::arg("key"),
          py::arg("reference"), py::arg("patterns") = 100000, py::arg("seed") = 1);

    // --- test generation -----------------------------------------------------
    py::class_<TestSet>(m, "TestSet")
        .def_property_readonly("size", [](const TestSet& t) { return t.size(); })
        .def_readonly("patterns", &TestSet::patterns)
        .def_readonly("responses", &TestSet::responses)
        .def_readonly("fault_coverage", &TestSet::fault_coverage)
        .def("to_text", &TestSet::to_text)
        .def_static("from_text", &TestSet::from_text);
    m.def(
        "atpg",
        [](const Netlist& n, double target_fc, uint64_t seed, bool collapse) {
            AtpgParams params;
            params.target_fc = target_fc;
            params.seed = seed;
            params.collapse = collapse;
            AtpgResult r = atpg(n, params);
            return py::make_tuple(r.tests, r.coverage_percent, r.untestable, r.aborted);
        },
        py::arg("netlist"), py::arg("target_fc") = 100.0, py::arg("seed") = 1,
        py::arg("collapse") = false);
    m.def(
        "fault_coverage",
        [](const Netlist& n, const TestSet& t, bool collapse) {
            FaultUniverse u = enumerate_faults(n, collapse);
            auto r = fault_simulate(n, u, t);
            return py::make_tuple(r.coverage_percent, r.detected_count, u.size());
        },
        py::arg("netlist"), py::arg("tests"), py::arg("collapse") = false);
    m.def(
        "hacktest",
        [](const CamoNetlist& k, const TestSet& t, uint64_t seed) {
            HackTestOptions opts;
            opts.seed = seed;
            HackTestScore s = hacktest(k, t, opts);
            return py::make_tuple(s.key, s.response_matches, s.fault_coverage);
        },
        py::arg("camo"), py::arg("tests"), py::arg("seed") = 1);

    // --- device model -----------------------------------------------------------
    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init<>())
        .def_readwrite("me_capacitor_area", &DeviceParams::me_capacitor_area)
        .def_readwrite("relative_permittivity", &DeviceParams::relative_permittivity)
        .def_readwrite("ferroelectric_polarization", &DeviceParams::ferroelectric_polarization)
        .def_readwrite("electric_switching_field", &DeviceParams::electric_switching_field)
        .def_readwrite("exchange_bias_at_switching", &DeviceParams::exchange_bias_at_switching)
        .def_readwrite("me_switching_field", &DeviceParams::me_switching_field)
        .def_readwrite("iree_length", &DeviceParams::iree_length)
        .def_readwrite("spin_orbit_read_current", &DeviceParams::spin_orbit_read_current)
        .def_readwrite("gyromagnetic_ratio", &DeviceParams::gyromagnetic_ratio);
    py::class_<SwitchingReport>(m, "SwitchingReport")
        .def_readonly("electric_field", &SwitchingReport::electric_field)
        .def_readonly("me_charge", &SwitchingReport::me_charge)
        .def_readonly("tau_me", &SwitchingReport::tau_me)
        .def_readonly("tau_mag", &SwitchingReport::tau_mag)
        .def_readonly("tau_intrinsic", &SwitchingReport::tau_intrinsic)
        .def_readonly("tau_total", &SwitchingReport::tau_total);
    m.def("me_switching", &me_switching, py::arg("params") = DeviceParams{});
    m.def("iree_current", &iree_current, py::arg("spin_current_density"),
          py::arg("params") = DeviceParams{});
    m.def(
        "meso_eval",
        [](const std::string& function, bool a, bool b) {
            auto fn = gate_from_token(function);
            if (!fn) throw std::invalid_argument("unknown function: " + function);
            return meso_eval(MesoGateConfig::for_function(*fn), a, b);
        },
        py::arg("function"), py::arg("a"), py::arg("b"));

    py::class_<TechEntry>(m, "TechEntry")
        .def_readonly("name", &TechEntry::name)
        .def_readonly("energy", &TechEntry::energy)
        .def_readonly("power", &TechEntry::power)
        .def_readonly("delay", &TechEntry::delay)
        .def_readonly("area", &TechEntry::area);
    m.def("tech_library", &builtin_tech_library);
    m.def(
        "ppa_estimate",
        [](size_t instances, size_t stages, const TechEntry& t) {
            PpaEstimate e = ppa_estimate(instances, stages, t);
            return py::make_tuple(e.area, e.power, e.delay);
        },
        py::arg("instances"), py::arg("stages"), py::arg("tech"));

    // --- image-processing study ----------------------------------------------
    py::class_<BinaryImage>(m, "BinaryImage")
        .def_readonly("width", &BinaryImage::width)
        .def_readonly("height", &BinaryImage::height)
        .def_property_readonly("pixels",
                               [](const BinaryImage& img) {
                                   return std::vector<int>(img.pixels.begin(), img.pixels.end());
                               });
    m.def("glyph_image", &glyph_image);
    m.def("corrupt_by_hd", &corrupt_by_hd, py::arg("reference"), py::arg("hd"), py::arg("seed"));
    m.def(
        "image_metrics",
        [](const BinaryImage& a, const BinaryImage& b) {
            ImageMetrics m2 = image_metrics(a, b);
            return py::make_tuple(m2.pixel_error_rate, m2.psnr_db);
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "cenn_denoise",
        [](const BinaryImage& input) {
            CennResult r = cenn_run(input.to_bipolar(), CennParams::denoising());
            return r.output;
        },
        py::arg("image"));
    m.def("write_pbm", &write_pbm, py::arg("image"));
    m.def("read_pbm", &read_pbm, py::arg("text"));

    // --- corpus -----------------------------------------------------------------
    m.def("fixture_names", &fixture_names);
    m.def(
        "load_fixture",
        [](const std::string& name, const std::string& data_dir) {
            Fixture fx = load_fixture(name, data_dir);
            return fx.netlist;
        },
        py::arg("name"), py::arg("data_dir") = std::string());
}
