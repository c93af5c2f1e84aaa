#pragma once

#include <optional>
#include <string>

#include "polycamo/netlist.hpp"

namespace polycamo {

struct ParseInfo {
    size_t source_gates = 0;      // gate lines in the source text
    size_t decomposed_gates = 0;  // gates after multi-fanin decomposition
    size_t inputs = 0;
    size_t outputs = 0;
    std::optional<std::string> key_header;  // bits from a leading `# key=` line
};

// Parses an ISCAS BENCH document. Multi-fanin AND/OR/NAND/NOR (and the
// parity gates) are decomposed into balanced trees of two-input gates of the
// same family; for the inverting families the inversion is kept on the final
// stage only. Throws netlist_error with one diagnostic per problem, each
// carrying its source line.
Netlist parse_bench(const std::string& text, ParseInfo* info = nullptr);

// Emits BENCH text that parses back to an identical netlist. When
// `key_header` is given the first line is `# key=<bits>` and the netlist
// must contain exactly |bits| inputs named keyinput0..keyinputN-1
// (keyinput0 is the most significant bit of the header). Gates outside the
// BENCH alphabet (arbitrary truth tables from the 16-function mode) are
// synthesized into AND/OR/NOT networks.
std::string write_bench(const Netlist& n, const std::optional<std::string>& key_header = {});

Netlist read_bench_file(const std::string& path, ParseInfo* info = nullptr);
void write_bench_file(const std::string& path, const Netlist& n,
                      const std::optional<std::string>& key_header = {});

// Adds gates computing `fn(a, b)` onto `out` using only the BENCH alphabet
// (AND/OR/NAND/NOR/XOR/XNOR/NOT/BUFF), introducing fresh helper nets where
// the table has no direct gate. Used for MUX expansion and for writing
// 16-function-mode netlists.
void emit_gate_in_alphabet(NetlistBuilder& b, const std::string& out, GateFunction fn,
                           const std::string& a, const std::string& bn);

}  // namespace polycamo
