#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polycamo/netlist.hpp"
#include "polycamo/sim.hpp"

namespace polycamo {

// Candidate-set policies. Order inside each set fixes the key encoding:
// a cell's key bits, read most-significant-first, index into the candidate
// list. The eight-function set is ordered INV, BUF, AND, OR, NAND, NOR,
// XOR, XNOR so key bits 000..111 map to those functions in that order.
enum class CamoScheme {
    NandNor,      // {NAND, NOR}
    NandNorXor,   // {NAND, NOR, XOR}
    Meso3,        // alias of NandNorXor
    Meso4,        // {AND, OR, NAND, NOR}
    Meso6,        // {AND, OR, NAND, NOR, XOR, XNOR}
    Meso8,        // {INV, BUF, AND, OR, NAND, NOR, XOR, XNOR}
    Meso16,       // all 16 two-input truth tables, ordered by table value
};

CamoScheme scheme_from_name(const std::string& name);
std::string scheme_name(CamoScheme s);
std::vector<GateFunction> scheme_candidates(CamoScheme s);

struct CamoCell {
    GateId gate_id = 0;
    std::vector<GateFunction> candidates;  // lifted to arity 2
    size_t true_index = 0;
    size_t key_offset = 0;
    size_t key_width = 0;  // ceil(log2 |candidates|)
};

struct CamoNetlist {
    Netlist base;
    std::vector<CamoCell> cells;
    size_t key_len = 0;
    std::string scheme;

    std::string true_key() const;
    // Product of candidate counts over all cells.
    double solution_space() const;

    std::string to_json() const;
    static CamoNetlist from_json(const std::string& text);
};

// Uniform random gate subset without replacement; deterministic per seed
// and returned in ascending gate order so repeated trials reuse the set.
std::vector<GateId> select_gates(const Netlist& n, size_t how_many, uint64_t seed);
std::vector<GateId> select_gates_fraction(const Netlist& n, double fraction, uint64_t seed);

// Gates whose true function is outside the scheme's candidate set are
// skipped and reported here.
struct CamoResult {
    CamoNetlist camo;
    std::vector<Diagnostic> skipped;
};

CamoResult camouflage(const Netlist& n, const std::vector<GateId>& gates, CamoScheme scheme);

// Resolves every cell to the candidate its key bits select. Key bits are
// read per cell at [key_offset, key_offset + key_width), most significant
// first. Throws on out-of-range indices for non-power-of-two candidate
// lists.
Netlist apply_key(const CamoNetlist& c, const std::string& key);

// Replaces each cell with all candidate gates on shared fanins feeding an
// AND/OR/INV multiplexer tree selected by inputs keyinput<i>. Select codes
// beyond the candidate count alias candidate 0.
Netlist expand_to_keyed(const CamoNetlist& c);

struct FoundryAttackReport {
    std::string reconstructed_key;
    size_t correct_cells = 0;
    MetricReport metrics;
};

// Models an inside-foundry attacker who correctly infers a fraction of the
// camouflaged cells: round(accuracy * cells) cells get their true function,
// every other cell a uniformly random wrong candidate. Reports HD/OER of
// the reconstruction against the original.
FoundryAttackReport emulate_foundry_attack(const CamoNetlist& c, double accuracy, uint64_t seed,
                                           size_t patterns = 100000);

}  // namespace polycamo
