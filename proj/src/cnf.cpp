#include "polycamo/cnf.hpp"

#include <sstream>
#include <stdexcept>

namespace polycamo {

void Cnf::add_clause(std::vector<Lit> clause) {
    if (clause.empty()) throw std::invalid_argument("empty clause");
    for (Lit l : clause)
        if (l == 0 || std::abs(l) > var_count)
            throw std::invalid_argument("literal references undeclared variable");
    clauses.push_back(std::move(clause));
}

std::string Cnf::to_dimacs() const {
    std::ostringstream os;
    os << "p cnf " << var_count << " " << clauses.size() << "\n";
    for (const auto& clause : clauses) {
        for (Lit l : clause) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

void encode_gate(Cnf& cnf, GateFunction fn, Var out, Var a, Var b) {
    using G = GateFunction;
    switch (fn.tt) {
        case G::TT_AND:
            cnf.add_clause({-a, -b, out});
            cnf.add_clause({a, -out});
            cnf.add_clause({b, -out});
            return;
        case G::TT_OR:
            cnf.add_clause({a, b, -out});
            cnf.add_clause({-a, out});
            cnf.add_clause({-b, out});
            return;
        case G::TT_NAND:
            cnf.add_clause({-a, -b, -out});
            cnf.add_clause({a, out});
            cnf.add_clause({b, out});
            return;
        case G::TT_NOR:
            cnf.add_clause({a, b, out});
            cnf.add_clause({-a, -out});
            cnf.add_clause({-b, -out});
            return;
        case G::TT_XOR:
            cnf.add_clause({-a, -b, -out});
            cnf.add_clause({a, b, -out});
            cnf.add_clause({-a, b, out});
            cnf.add_clause({a, -b, out});
            return;
        case G::TT_XNOR:
            cnf.add_clause({-a, -b, out});
            cnf.add_clause({a, b, out});
            cnf.add_clause({-a, b, -out});
            cnf.add_clause({a, -b, -out});
            return;
        case G::TT_BUF:
            cnf.add_clause({-a, out});
            cnf.add_clause({a, -out});
            return;
        case G::TT_INV:
            cnf.add_clause({-a, -out});
            cnf.add_clause({a, out});
            return;
        default:
            // One clause per input row forcing the tabulated output.
            for (int row = 0; row < 4; ++row) {
                Lit la = (row & 2) ? -a : a;
                Lit lb = (row & 1) ? -b : b;
                Lit lo = ((fn.tt >> row) & 1) ? out : -out;
                cnf.add_clause({la, lb, lo});
            }
            return;
    }
}

std::unordered_map<NetId, Var> tseitin_append(Cnf& cnf, const Netlist& n,
                                              const std::unordered_map<NetId, Var>& pinned) {
    std::unordered_map<NetId, Var> vars = pinned;
    auto var_of = [&](NetId net) {
        auto it = vars.find(net);
        if (it != vars.end()) return it->second;
        Var v = cnf.new_var();
        vars.emplace(net, v);
        return v;
    };
    for (NetId pi : n.inputs()) var_of(pi);
    for (const Gate& g : n.gates()) {
        Var a = var_of(g.in[0]);
        Var b = g.fn.arity == 2 ? var_of(g.in[1]) : a;
        Var out = var_of(g.out);
        encode_gate(cnf, g.fn, out, a, b);
    }
    return vars;
}

Cnf tseitin_encode(const Netlist& n) {
    Cnf cnf;
    cnf.net_var = tseitin_append(cnf, n, {});
    return cnf;
}

}  // namespace polycamo
