#include "polycamo/gate.hpp"

namespace polycamo {

std::string GateFunction::name() const {
    if (arity == 1) {
        if (tt == TT_INV) return "NOT";
        if (tt == TT_BUF) return "BUFF";
    }
    switch (tt) {
        case TT_AND: return "AND";
        case TT_OR: return "OR";
        case TT_NAND: return "NAND";
        case TT_NOR: return "NOR";
        case TT_XOR: return "XOR";
        case TT_XNOR: return "XNOR";
        case TT_BUF: return "BUFF";
        case TT_INV: return "NOT";
        default: break;
    }
    static const char* hex = "0123456789abcdef";
    return std::string("TT") + hex[tt & 0xF];
}

std::optional<GateFunction> gate_from_token(const std::string& token) {
    std::string t;
    t.reserve(token.size());
    for (char c : token) t.push_back(static_cast<char>(::toupper(static_cast<unsigned char>(c))));
    if (t == "AND") return GateFunction::and2();
    if (t == "OR") return GateFunction::or2();
    if (t == "NAND") return GateFunction::nand2();
    if (t == "NOR") return GateFunction::nor2();
    if (t == "XOR") return GateFunction::xor2();
    if (t == "XNOR") return GateFunction::xnor2();
    if (t == "NOT" || t == "INV") return GateFunction::inv();
    if (t == "BUF" || t == "BUFF") return GateFunction::buf();
    return std::nullopt;
}

}  // namespace polycamo
