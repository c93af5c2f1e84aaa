#include "polycamo/meso.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace polycamo {

namespace {
constexpr double kEps0 = 8.85e-12;  // F/m
}

void DeviceParams::check() const {
    const double fields[] = {me_capacitor_area,    relative_permittivity,
                             ferroelectric_polarization, electric_switching_field,
                             exchange_bias_at_switching, me_switching_field,
                             iree_length,          spin_orbit_read_current,
                             gyromagnetic_ratio,   interconnect_delay,
                             peripheral_delay,     supply_voltage};
    for (double f : fields)
        if (!(f > 0.0)) throw std::invalid_argument("device parameters must be strictly positive");
}

double iree_current(double spin_current_density, const DeviceParams& p) {
    if (!std::isfinite(spin_current_density))
        throw std::invalid_argument("spin current density must be finite");
    return p.iree_length * spin_current_density;
}

SwitchingReport me_switching(const DeviceParams& p) {
    p.check();
    SwitchingReport r;
    r.electric_field =
        p.electric_switching_field * p.me_switching_field / p.exchange_bias_at_switching;
    r.me_charge = p.me_capacitor_area *
                  (kEps0 * p.relative_permittivity * r.electric_field +
                   p.ferroelectric_polarization);
    r.tau_me = 2.0 * r.me_charge / p.spin_orbit_read_current;
    r.tau_mag = std::numbers::pi / (p.gyromagnetic_ratio * p.me_switching_field);
    r.tau_intrinsic = r.tau_me + r.tau_mag;
    r.tau_total = r.tau_intrinsic + p.interconnect_delay + p.peripheral_delay;
    return r;
}

MesoGateConfig MesoGateConfig::from_control_bits(uint8_t control) {
    if (control & 0xF8) throw std::invalid_argument("control bits C4-C8 must be zero");
    MesoGateConfig cfg;
    cfg.routing = static_cast<Routing>(control & 0x3);
    cfg.supply_flipped = (control >> 2) & 1;
    return cfg;
}

uint8_t MesoGateConfig::control_bits() const {
    return static_cast<uint8_t>(static_cast<uint8_t>(routing) |
                                (supply_flipped ? 0x4 : 0x0));
}

GateFunction MesoGateConfig::function() const {
    switch (routing) {
        case Routing::SingleInput:
            return supply_flipped ? GateFunction::inv() : GateFunction::buf();
        case Routing::MajorityNegX:
            return supply_flipped ? GateFunction::nand2() : GateFunction::and2();
        case Routing::MajorityPosX:
            return supply_flipped ? GateFunction::nor2() : GateFunction::or2();
        case Routing::VoltageB:
            return supply_flipped ? GateFunction::xnor2() : GateFunction::xor2();
    }
    throw std::logic_error("bad routing");
}

MesoGateConfig MesoGateConfig::for_function(GateFunction fn) {
    using G = GateFunction;
    MesoGateConfig cfg;
    switch (fn.lifted().tt) {
        case G::TT_BUF: cfg.routing = Routing::SingleInput; cfg.supply_flipped = false; break;
        case G::TT_INV: cfg.routing = Routing::SingleInput; cfg.supply_flipped = true; break;
        case G::TT_AND: cfg.routing = Routing::MajorityNegX; cfg.supply_flipped = false; break;
        case G::TT_NAND: cfg.routing = Routing::MajorityNegX; cfg.supply_flipped = true; break;
        case G::TT_OR: cfg.routing = Routing::MajorityPosX; cfg.supply_flipped = false; break;
        case G::TT_NOR: cfg.routing = Routing::MajorityPosX; cfg.supply_flipped = true; break;
        case G::TT_XOR: cfg.routing = Routing::VoltageB; cfg.supply_flipped = false; break;
        case G::TT_XNOR: cfg.routing = Routing::VoltageB; cfg.supply_flipped = true; break;
        default: throw std::invalid_argument("no single-device configuration for " + fn.name());
    }
    return cfg;
}

bool meso_eval(const MesoGateConfig& cfg, bool a, bool b) {
    // Logic 1 -> +1 current, logic 0 -> -1.
    int ca = a ? 1 : -1;
    int cb = b ? 1 : -1;
    bool state;
    switch (cfg.routing) {
        case MesoGateConfig::Routing::SingleInput:
            state = ca > 0;
            break;
        case MesoGateConfig::Routing::MajorityNegX:
            state = (ca + cb - 1) > 0;
            break;
        case MesoGateConfig::Routing::MajorityPosX:
            state = (ca + cb + 1) > 0;
            break;
        case MesoGateConfig::Routing::VoltageB: {
            // B rides on the supply terminals: a set B swaps the read-out
            // polarity exactly like a supply flip, so the device computes
            // parity of A and B.
            bool x = a != b;
            return cfg.supply_flipped ? !x : x;
        }
        default:
            throw std::invalid_argument("invalid control-bit combination");
    }
    return cfg.supply_flipped ? !state : state;
}

PpaEstimate ppa_estimate(size_t instances, size_t critical_path_stages, const TechEntry& t) {
    PpaEstimate e;
    e.area = double(instances) * t.area;
    e.power = double(instances) * t.power;
    e.delay = double(critical_path_stages) * t.delay;
    return e;
}

std::vector<TechEntry> parse_tech_library(const std::string& text) {
    std::vector<TechEntry> entries;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        TechEntry e;
        if (ls >> e.name >> e.energy >> e.power >> e.delay >> e.area) entries.push_back(e);
    }
    return entries;
}

std::vector<TechEntry> load_tech_library(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tech library: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    auto entries = parse_tech_library(ss.str());
    if (entries.empty()) throw std::runtime_error("tech library has no records: " + path);
    return entries;
}

std::vector<TechEntry> builtin_tech_library() {
    // Published per-gate figures. Areas: the intrinsic MESO footprint is
    // published directly; the obfuscated MESO and GSHE per-gate areas are
    // back-derived from the b17_C full-chip totals over 24,228 instances.
    return {
        {"asl_a", 0.58e-12, 351.52e-6, 1.65e-9, 0.0},
        {"asl_b", 1.16e-12, 351.52e-6, 3.3e-9, 0.0},
        {"asl_c", 0.13e-12, 342.11e-6, 0.38e-9, 0.0},
        {"gshe_intrinsic", 0.33e-15, 0.2125e-6, 1.55e-9, 0.0},
        {"gshe_obfuscated", 0.49e-15, 0.2673e-6, 1.83e-9, 2.8999504704474164e-14},
        {"meso_intrinsic", 9.3e-18, 0.0404e-6, 0.23e-9, 1.4e-14},
        {"meso_obfuscated", 16.04e-18, 0.0622e-6, 0.2579e-9, 2.3749380056133397e-14},
    };
}

}  // namespace polycamo
