#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polycamo/cenn.hpp"
#include "polycamo/netlist.hpp"

namespace polycamo {

struct FixtureInfo {
    std::string name;
    size_t gates = 0;
    size_t inputs = 0;
    size_t outputs = 0;
    bool generated = false;  // stand-in produced by the bundled generator
};

struct Fixture {
    Netlist netlist;
    FixtureInfo info;
};

// Registered fixture names: small hand-written circuits (c17, and1, buf1,
// xor1, fig6, fig7) plus ISCAS-85-scale stand-ins (c432..c7552) emitted by
// the deterministic generator below. ITC-99 circuits resolve only from the
// data directory (see scripts/fetch_itc99.sh).
std::vector<std::string> fixture_names();

// Loads a fixture by name. Lookup order: built-in circuits, generated
// stand-ins, then `<data_dir>/benches/<name>.bench` when a data directory
// is given (or the POLYCAMO_DATA environment variable is set).
Fixture load_fixture(const std::string& name, const std::string& data_dir = std::string());

// --- deterministic random-circuit generator ------------------------------

struct GenSpec {
    std::string name;
    size_t inputs = 8;
    size_t outputs = 4;
    size_t gates = 64;
    uint64_t seed = 1;
};

// Layered random DAG with every net on a path to a primary output. The same
// spec always produces the same netlist.
Netlist generate_circuit(const GenSpec& spec);

// Generation specs for the ISCAS-85-scale stand-ins bundled with the
// project (interface widths of the original benchmarks, gate counts at the
// published post-synthesis scale).
std::vector<GenSpec> standin_specs();
std::optional<GenSpec> standin_spec(const std::string& name);

// 100x100 test glyph (block letters) used by the image-processing
// experiments.
BinaryImage glyph_image();

// FNV-1a 64-bit digest used by the fixture manifest.
uint64_t fnv1a64(const std::string& data);

}  // namespace polycamo
