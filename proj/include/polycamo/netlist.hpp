#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "polycamo/gate.hpp"

namespace polycamo {

using NetId = uint32_t;
using GateId = uint32_t;

constexpr NetId kNoNet = static_cast<NetId>(-1);

struct Gate {
    GateFunction fn;
    NetId out = kNoNet;
    std::array<NetId, 2> in{kNoNet, kNoNet};

    uint8_t fanin_count() const { return fn.arity; }
    std::span<const NetId> fanins() const { return {in.data(), fn.arity}; }
    bool operator==(const Gate&) const = default;
};

struct Diagnostic {
    std::string code;     // e.g. "cycle", "duplicate-driver"
    std::string message;  // human-readable, includes line number when known
    int line = 0;         // 0 when not tied to source text
};

// Immutable combinational gate-level netlist. Net ids are dense and
// normalized: primary inputs first (in declaration order), then one id per
// gate output in topological order. Gates are stored in that same
// topological order, so a single forward pass evaluates the circuit.
class Netlist {
public:
    Netlist() = default;

    size_t net_count() const { return names_.size(); }
    size_t gate_count() const { return gates_.size(); }
    size_t input_count() const { return inputs_.size(); }
    size_t output_count() const { return outputs_.size(); }

    const std::vector<NetId>& inputs() const { return inputs_; }
    const std::vector<NetId>& outputs() const { return outputs_; }
    const std::vector<Gate>& gates() const { return gates_; }
    const Gate& gate(GateId g) const { return gates_[g]; }

    const std::string& net_name(NetId n) const { return names_[n]; }
    NetId find_net(const std::string& name) const;  // kNoNet when absent

    // Gate driving a net, or -1 for primary inputs.
    int32_t driver_of(NetId n) const { return drivers_[n]; }
    bool is_input(NetId n) const { return drivers_[n] < 0; }

    std::vector<std::string> input_names() const;
    std::vector<std::string> output_names() const;

    bool operator==(const Netlist&) const = default;

private:
    friend class NetlistBuilder;
    std::vector<std::string> names_;
    std::unordered_map<std::string, NetId> by_name_;
    std::vector<NetId> inputs_;
    std::vector<NetId> outputs_;
    std::vector<Gate> gates_;       // topological order
    std::vector<int32_t> drivers_;  // net -> gate index, -1 for PIs
};

// Structural invariant checks, one diagnostic per violation. Empty result
// means the netlist is well-formed. Mostly useful on hand-built or
// deserialized netlists; NetlistBuilder enforces the same rules at build
// time.
std::vector<Diagnostic> validate(const Netlist& n);

// Accumulates declarations and produces a normalized Netlist. Fanins may
// reference nets declared later; build() topologically sorts and rejects
// cycles, duplicate drivers and dangling references.
class NetlistBuilder {
public:
    void add_input(const std::string& name, int line = 0);
    void add_output(const std::string& name, int line = 0);
    // Two-input gate, or one-input when fn.arity == 1 (b ignored).
    void add_gate(const std::string& out, GateFunction fn, const std::string& a,
                  const std::string& b = std::string(), int line = 0);

    // Fresh net name derived from `base` that collides with nothing declared
    // so far. Used for decomposition trees and MUX expansion.
    std::string fresh_net(const std::string& base);

    size_t gate_count() const { return gates_.size(); }

    // Throws netlist_error listing every violation found.
    Netlist build();

private:
    struct PendingGate {
        std::string out;
        GateFunction fn;
        std::string a, b;
        int line;
    };
    std::vector<std::string> input_order_;
    std::vector<std::string> output_order_;
    std::vector<PendingGate> gates_;
    std::unordered_map<std::string, int> declared_;  // name -> declaration line
    std::unordered_map<std::string, int> fresh_counters_;
};

class netlist_error : public std::runtime_error {
public:
    explicit netlist_error(std::vector<Diagnostic> diags);
    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

}  // namespace polycamo
