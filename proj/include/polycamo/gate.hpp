#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace polycamo {

// A gate function is a 4-bit truth table over two inputs (a, b) plus an
// arity. Row index is (a << 1) | b, so bit 0 holds the output for a=0,b=0
// and bit 3 the output for a=1,b=1. One-input functions (INV/BUF) ignore b;
// their tables are stored in the same form so a camouflaged cell can treat
// them as two-input gates with a dummy second input.
struct GateFunction {
    uint8_t tt = 0;     // 4-bit truth table
    uint8_t arity = 2;  // 1 or 2

    static constexpr uint8_t TT_AND = 0b1000;
    static constexpr uint8_t TT_OR = 0b1110;
    static constexpr uint8_t TT_NAND = 0b0111;
    static constexpr uint8_t TT_NOR = 0b0001;
    static constexpr uint8_t TT_XOR = 0b0110;
    static constexpr uint8_t TT_XNOR = 0b1001;
    static constexpr uint8_t TT_BUF = 0b1100;  // output = a
    static constexpr uint8_t TT_INV = 0b0011;  // output = !a

    static GateFunction and2() { return {TT_AND, 2}; }
    static GateFunction or2() { return {TT_OR, 2}; }
    static GateFunction nand2() { return {TT_NAND, 2}; }
    static GateFunction nor2() { return {TT_NOR, 2}; }
    static GateFunction xor2() { return {TT_XOR, 2}; }
    static GateFunction xnor2() { return {TT_XNOR, 2}; }
    static GateFunction buf() { return {TT_BUF, 1}; }
    static GateFunction inv() { return {TT_INV, 1}; }

    // Any 4-bit table as a two-input gate (the 16-function mode).
    static GateFunction from_table(uint8_t table) {
        if (table > 0xF) throw std::invalid_argument("truth table exceeds 4 bits");
        return {table, 2};
    }

    bool eval(bool a, bool b = false) const {
        unsigned idx = (static_cast<unsigned>(a) << 1) | static_cast<unsigned>(b);
        return (tt >> idx) & 1u;
    }

    // Same function lifted to arity 2 (dummy b input for INV/BUF).
    GateFunction lifted() const { return {tt, 2}; }

    bool operator==(const GateFunction&) const = default;

    std::string name() const;
};

// Maps a BENCH function token (AND, NAND, NOT, BUFF, ...) to a GateFunction.
// Returns nullopt for unknown tokens; DFF is recognized and rejected upstream.
std::optional<GateFunction> gate_from_token(const std::string& token);

}  // namespace polycamo
