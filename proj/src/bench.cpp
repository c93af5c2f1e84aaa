#include "polycamo/bench.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace polycamo {

namespace {

struct Line {
    std::string text;
    int number;
};

std::vector<Line> split_lines(const std::string& text) {
    std::vector<Line> lines;
    std::string current;
    int number = 1;
    for (char c : text) {
        if (c == '\n') {
            if (!current.empty() && current.back() == '\r') current.pop_back();
            lines.push_back({current, number++});
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) {
        if (current.back() == '\r') current.pop_back();
        lines.push_back({current, number});
    }
    return lines;
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool valid_net_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '[' && c != ']' &&
            c != '.' && c != '$')
            return false;
    return true;
}

// Balanced pairwise reduction; the inverting member of a family is applied
// at the root only, so NAND(a,b,c,d) becomes NAND(AND(a,b), AND(c,d)).
void emit_tree(NetlistBuilder& b, const std::string& out, GateFunction inner, GateFunction root,
               std::vector<std::string> operands, int line) {
    while (operands.size() > 2) {
        std::vector<std::string> next;
        size_t i = 0;
        for (; i + 1 < operands.size(); i += 2) {
            std::string t = b.fresh_net(out + "_t");
            b.add_gate(t, inner, operands[i], operands[i + 1], line);
            next.push_back(t);
        }
        if (i < operands.size()) next.push_back(operands[i]);
        operands = std::move(next);
    }
    b.add_gate(out, root, operands[0], operands[1], line);
}

}  // namespace

void emit_gate_in_alphabet(NetlistBuilder& b, const std::string& out, GateFunction fn,
                           const std::string& a, const std::string& bn) {
    using G = GateFunction;
    if (fn.arity == 1) {
        b.add_gate(out, fn, a);
        return;
    }
    switch (fn.tt) {
        case G::TT_AND: b.add_gate(out, G::and2(), a, bn); return;
        case G::TT_OR: b.add_gate(out, G::or2(), a, bn); return;
        case G::TT_NAND: b.add_gate(out, G::nand2(), a, bn); return;
        case G::TT_NOR: b.add_gate(out, G::nor2(), a, bn); return;
        case G::TT_XOR: b.add_gate(out, G::xor2(), a, bn); return;
        case G::TT_XNOR: b.add_gate(out, G::xnor2(), a, bn); return;
        case G::TT_BUF: b.add_gate(out, G::buf(), a); return;
        case G::TT_INV: b.add_gate(out, G::inv(), a); return;
        case 0b1010: b.add_gate(out, G::buf(), bn); return;
        case 0b0101: b.add_gate(out, G::inv(), bn); return;
        default: break;
    }
    auto negated = [&](const std::string& x) {
        std::string t = b.fresh_net(out + "_n");
        b.add_gate(t, G::inv(), x);
        return t;
    };
    switch (fn.tt) {
        case 0b0000: b.add_gate(out, G::and2(), a, negated(a)); return;
        case 0b1111: b.add_gate(out, G::or2(), a, negated(a)); return;
        case 0b0100: b.add_gate(out, G::and2(), a, negated(bn)); return;  // a & !b
        case 0b0010: b.add_gate(out, G::and2(), negated(a), bn); return;  // !a & b
        case 0b1101: b.add_gate(out, G::or2(), a, negated(bn)); return;   // a | !b
        case 0b1011: b.add_gate(out, G::or2(), negated(a), bn); return;   // !a | b
        default: throw std::logic_error("unhandled truth table");
    }
}

namespace {

bool in_bench_alphabet(GateFunction fn) {
    using G = GateFunction;
    if (fn.arity == 1) return fn.tt == G::TT_BUF || fn.tt == G::TT_INV;
    switch (fn.tt) {
        case G::TT_AND:
        case G::TT_OR:
        case G::TT_NAND:
        case G::TT_NOR:
        case G::TT_XOR:
        case G::TT_XNOR: return true;
        default: return false;
    }
}

}  // namespace

Netlist parse_bench(const std::string& text, ParseInfo* info) {
    NetlistBuilder builder;
    std::vector<Diagnostic> diags;
    ParseInfo local;

    auto lines = split_lines(text);
    bool first_content = true;
    for (const auto& [raw, lineno] : lines) {
        std::string line = strip(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (first_content && line.rfind("# key=", 0) == 0)
                local.key_header = strip(line.substr(6));
            first_content = false;
            continue;
        }
        first_content = false;

        auto open = line.find('(');
        auto close = line.rfind(')');
        auto eq = line.find('=');

        if (eq == std::string::npos || (open != std::string::npos && open < eq)) {
            // INPUT(x) / OUTPUT(x)
            if (open == std::string::npos || close == std::string::npos || close < open) {
                diags.push_back({"syntax", "unrecognized line '" + line + "'", lineno});
                continue;
            }
            std::string head = strip(line.substr(0, open));
            std::string arg = strip(line.substr(open + 1, close - open - 1));
            for (auto& c : head) c = static_cast<char>(::toupper(static_cast<unsigned char>(c)));
            if (!valid_net_name(arg)) {
                diags.push_back({"syntax", "bad net name '" + arg + "'", lineno});
                continue;
            }
            if (head == "INPUT") {
                builder.add_input(arg, lineno);
                local.inputs++;
            } else if (head == "OUTPUT") {
                builder.add_output(arg, lineno);
                local.outputs++;
            } else {
                diags.push_back({"syntax", "unknown declaration '" + head + "'", lineno});
            }
            continue;
        }

        // out = FUNC(a, b, ...)
        std::string out = strip(line.substr(0, eq));
        std::string rhs = strip(line.substr(eq + 1));
        open = rhs.find('(');
        close = rhs.rfind(')');
        if (!valid_net_name(out) || open == std::string::npos || close == std::string::npos ||
            close < open) {
            diags.push_back({"syntax", "unrecognized gate line '" + line + "'", lineno});
            continue;
        }
        std::string func = strip(rhs.substr(0, open));
        std::string args = rhs.substr(open + 1, close - open - 1);
        std::vector<std::string> fanins;
        std::string token;
        std::istringstream as(args);
        while (std::getline(as, token, ',')) {
            token = strip(token);
            if (!valid_net_name(token)) {
                diags.push_back({"syntax", "bad fanin name '" + token + "'", lineno});
                token.clear();
                continue;
            }
            fanins.push_back(token);
        }

        std::string upper = func;
        for (auto& c : upper) c = static_cast<char>(::toupper(static_cast<unsigned char>(c)));
        if (upper == "DFF" || upper == "DFFSR" || upper == "LATCH") {
            diags.push_back({"sequential",
                             "sequential element '" + func + "' is not supported", lineno});
            continue;
        }
        auto fn = gate_from_token(func);
        if (!fn) {
            diags.push_back({"unknown-function", "unknown function token '" + func + "'", lineno});
            continue;
        }
        local.source_gates++;

        if (fn->arity == 1) {
            if (fanins.size() != 1) {
                diags.push_back({"bad-arity", "'" + func + "' expects one fanin", lineno});
                continue;
            }
            builder.add_gate(out, *fn, fanins[0], "", lineno);
            continue;
        }
        if (fanins.size() < 2) {
            diags.push_back({"bad-arity", "'" + func + "' expects at least two fanins", lineno});
            continue;
        }
        if (fanins.size() == 2) {
            builder.add_gate(out, *fn, fanins[0], fanins[1], lineno);
            continue;
        }
        // Multi-fanin: balanced tree, inversion only at the root.
        using G = GateFunction;
        GateFunction inner = *fn;
        if (fn->tt == G::TT_NAND) inner = G::and2();
        if (fn->tt == G::TT_NOR) inner = G::or2();
        if (fn->tt == G::TT_XNOR) inner = G::xor2();
        emit_tree(builder, out, inner, *fn, fanins, lineno);
    }

    if (!diags.empty()) throw netlist_error(std::move(diags));
    Netlist n = builder.build();
    local.decomposed_gates = n.gate_count();
    if (info) *info = local;
    return n;
}

std::string write_bench(const Netlist& n, const std::optional<std::string>& key_header) {
    if (key_header) {
        size_t key_inputs = 0;
        for (NetId pi : n.inputs()) {
            const std::string& name = n.net_name(pi);
            if (name.rfind("keyinput", 0) == 0) key_inputs++;
        }
        if (key_inputs != key_header->size())
            throw netlist_error({{"key-header",
                                  "key header has " + std::to_string(key_header->size()) +
                                      " bits but netlist has " + std::to_string(key_inputs) +
                                      " key inputs"}});
    }

    // Rewrite any gate outside the BENCH alphabet first.
    const Netlist* src = &n;
    Netlist rewritten;
    bool needs_rewrite = false;
    for (const Gate& g : n.gates())
        if (!in_bench_alphabet(g.fn)) needs_rewrite = true;
    if (needs_rewrite) {
        NetlistBuilder b;
        for (NetId pi : n.inputs()) b.add_input(n.net_name(pi));
        for (const Gate& g : n.gates())
            emit_gate_in_alphabet(b, n.net_name(g.out), g.fn, n.net_name(g.in[0]),
                                g.fn.arity == 2 ? n.net_name(g.in[1]) : "");
        for (NetId po : n.outputs()) b.add_output(n.net_name(po));
        rewritten = b.build();
        src = &rewritten;
    }

    std::ostringstream os;
    if (key_header) os << "# key=" << *key_header << "\n";
    for (NetId pi : src->inputs()) os << "INPUT(" << src->net_name(pi) << ")\n";
    for (NetId po : src->outputs()) os << "OUTPUT(" << src->net_name(po) << ")\n";
    for (const Gate& g : src->gates()) {
        os << src->net_name(g.out) << " = " << g.fn.name() << "(" << src->net_name(g.in[0]);
        if (g.fn.arity == 2) os << ", " << src->net_name(g.in[1]);
        os << ")\n";
    }
    return os.str();
}

Netlist read_bench_file(const std::string& path, ParseInfo* info) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open bench file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_bench(ss.str(), info);
}

void write_bench_file(const std::string& path, const Netlist& n,
                      const std::optional<std::string>& key_header) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << write_bench(n, key_header);
}

}  // namespace polycamo
