#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polycamo/gate.hpp"

namespace polycamo {

// Physical constants and calibration knobs of the magneto-electric
// spin-orbit device. SI units throughout.
struct DeviceParams {
    double me_capacitor_area = 1e-16;      // m^2
    double relative_permittivity = 54.0;   // unitless
    double ferroelectric_polarization = 0.1;  // C/m^2 (calibration, see below)
    double electric_switching_field = 1.8e6;  // V/m
    double exchange_bias_at_switching = 0.03; // T
    double me_switching_field = 0.1;          // T
    double iree_length = 1.4e-8;              // m
    double spin_orbit_read_current = 4.0e-7;  // A (calibration)
    double gyromagnetic_ratio = 1.76e11;      // rad s^-1 T^-1
    double interconnect_delay = 2.9e-12;      // s
    double peripheral_delay = 2.5e-11;        // s (MUX network)
    double supply_voltage = 0.1;              // |V+/-|, volts

    void check() const;  // throws on non-positive entries
};

// The polarization and read-current defaults are calibration values chosen
// so the charging time plus the magnetization reversal time lands on the
// device's ~230 ps intrinsic switching figure; they are inputs, not
// outputs, of the model.

struct SwitchingReport {
    double electric_field = 0.0;   // V/m
    double me_charge = 0.0;        // C
    double tau_me = 0.0;           // s, capacitor charging
    double tau_mag = 0.0;          // s, magnetization reversal
    double tau_intrinsic = 0.0;    // s
    double tau_total = 0.0;        // s, with interconnect + peripherals
};

// j_c = lambda_IREE * j_s (inverse Rashba-Edelstein transduction).
double iree_current(double spin_current_density, const DeviceParams& p);

// E = E_mf * B_c / B_mf;  Q_ME = A_ME (eps0 epsr E + P_mf);
// tau_ME = 2 Q_ME / I_ISOC;  tau_mag = pi / (gamma B_c).
SwitchingReport me_switching(const DeviceParams& p);

// --- polymorphic gate behavioral model -----------------------------------

// Input/control configuration of the generic gate (the C1-C8 control word).
// Routing mode and supply polarity jointly select one of the eight
// functions: majority with a negative or positive tie-break realizes
// AND/OR, flipped supplies give the complements, single-input mode gives
// BUF/INV, and voltage-encoded-B mode gives XOR/XNOR.
struct MesoGateConfig {
    enum class Routing : uint8_t {
        SingleInput,   // only A drives the capacitor
        MajorityNegX,  // A + B + (-I) tie-break
        MajorityPosX,  // A + B + (+I) tie-break
        VoltageB,      // A at the input, B encoded on the supply terminals
    };
    Routing routing = Routing::SingleInput;
    bool supply_flipped = false;  // V+/V- exchanged: inverts the read-out

    // Packs/unpacks the 8-bit control word C1..C8 (C1 = LSB). Bits 0-1
    // select the routing, bit 2 the supply polarity; C4-C8 must be zero.
    static MesoGateConfig from_control_bits(uint8_t control);
    uint8_t control_bits() const;

    // The Boolean function this configuration realizes.
    GateFunction function() const;

    static MesoGateConfig for_function(GateFunction fn);
};

// Behavioral evaluation: logic levels are current directions (+I/-I); a
// written state of sign(a + b + x) realizes majority, and flipping the
// supplies negates the read-out.
bool meso_eval(const MesoGateConfig& cfg, bool a, bool b);

// --- PPA projection -------------------------------------------------------

struct TechEntry {
    std::string name;
    double energy = 0.0;  // J per switching event
    double power = 0.0;   // W per gate
    double delay = 0.0;   // s per gate
    double area = 0.0;    // m^2 per gate (0 when unpublished)
};

struct PpaEstimate {
    double area = 0.0;   // m^2
    double power = 0.0;  // W
    double delay = 0.0;  // s
};

// Full-chip projection: instance count scales area and power, critical-path
// stage count scales delay.
PpaEstimate ppa_estimate(size_t instances, size_t critical_path_stages, const TechEntry& t);

// Tech library file: one `name energy_J power_W delay_s area_m2` record per
// line, `#` comments allowed.
std::vector<TechEntry> load_tech_library(const std::string& path);
std::vector<TechEntry> parse_tech_library(const std::string& text);

// The seven published device rows (three ASL variants, GSHE intrinsic and
// obfuscated, MESO intrinsic and obfuscated), as shipped in the data file.
std::vector<TechEntry> builtin_tech_library();

}  // namespace polycamo
