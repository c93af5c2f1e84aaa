#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "polycamo/netlist.hpp"

namespace polycamo {

// Literals are nonzero DIMACS-style signed ints: +v asserts variable v,
// -v its negation. Variables are numbered from 1.
using Lit = int32_t;
using Var = int32_t;

struct Cnf {
    Var var_count = 0;
    std::vector<std::vector<Lit>> clauses;
    std::unordered_map<NetId, Var> net_var;  // nets of the encoded circuit

    Var new_var() { return ++var_count; }
    void add_clause(std::vector<Lit> clause);

    std::string to_dimacs() const;
};

// Standard Tseitin encoding, one variable per net: AND/OR/NAND/NOR take 3
// clauses, XOR/XNOR 4, INV/BUF 2; arbitrary tables get one clause per
// input row. The encoding is equisatisfiable (here: satisfiable, with
// models in bijection with input assignments).
Cnf tseitin_encode(const Netlist& n);

// Appends an encoding of `n` onto an existing formula, allocating fresh
// variables for every net not already pinned in `pinned` (net id -> var).
// Returns net->var map for this copy. Lets attack code share PI or key
// variables between circuit copies.
std::unordered_map<NetId, Var> tseitin_append(Cnf& cnf, const Netlist& n,
                                              const std::unordered_map<NetId, Var>& pinned);

// Gate clauses for one gate over pre-assigned variables.
void encode_gate(Cnf& cnf, GateFunction fn, Var out, Var a, Var b);

}  // namespace polycamo
