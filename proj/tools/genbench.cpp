// Regenerates the bundled benchmark stand-ins, the fixture manifest, the
// tech library file and the glyph image under a data directory. The outputs
// are deterministic; CI checks the committed files against them.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "polycamo/bench.hpp"
#include "polycamo/cenn.hpp"
#include "polycamo/corpus.hpp"
#include "polycamo/meso.hpp"

using namespace polycamo;

int main(int argc, char** argv) {
    CLI::App app{"regenerate bundled data files"};
    std::string out_dir = "data";
    app.add_option("--out", out_dir, "data directory to populate");
    CLI11_PARSE(app, argc, argv);

    std::ofstream manifest(out_dir + "/benches/manifest.tsv");
    if (!manifest) {
        std::cerr << "cannot write to " << out_dir << "/benches\n";
        return 1;
    }

    for (const auto& f : {"c17", "and1", "buf1", "xor1", "fig6", "fig7"}) {
        Fixture fx = load_fixture(f);
        std::string text = write_bench(fx.netlist);
        std::string rel = std::string("benches/") + f + ".bench";
        std::ofstream(out_dir + "/" + rel, std::ios::binary) << text;
        char digest[32];
        std::snprintf(digest, sizeof digest, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(text)));
        manifest << f << "\t" << rel << "\t" << digest << "\n";
    }
    for (const auto& spec : standin_specs()) {
        std::string text = write_bench(generate_circuit(spec));
        std::string rel = "benches/" + spec.name + ".bench";
        std::ofstream(out_dir + "/" + rel, std::ios::binary) << text;
        char digest[32];
        std::snprintf(digest, sizeof digest, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(text)));
        manifest << spec.name << "\t" << rel << "\t" << digest << "\n";
        std::cout << spec.name << ": " << spec.gates << " gates\n";
    }

    std::ofstream tech(out_dir + "/tech/devices.tech");
    tech << "# name energy_J power_W delay_s area_m2\n";
    for (const TechEntry& e : builtin_tech_library()) {
        char line[256];
        std::snprintf(line, sizeof line, "%s %.6e %.6e %.6e %.6e\n", e.name.c_str(), e.energy,
                      e.power, e.delay, e.area);
        tech << line;
    }

    std::ofstream(out_dir + "/images/glyph100.pbm", std::ios::binary)
        << write_pbm(glyph_image());
    std::cout << "data files written to " << out_dir << "\n";
    return 0;
}
