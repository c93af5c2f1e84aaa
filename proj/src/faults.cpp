#include "polycamo/faults.hpp"

#include <numeric>
#include <unordered_map>

namespace polycamo {

std::string Fault::describe(const Netlist& n) const {
    std::string s = n.net_name(net);
    if (site == Site::Pin)
        s += "->" + n.net_name(n.gate(gate).out) + ".in" + std::to_string(pin);
    s += stuck_at ? " s-a-1" : " s-a-0";
    return s;
}

namespace {

struct DisjointSet {
    std::vector<size_t> parent;
    explicit DisjointSet(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void merge(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // Keep the smaller index as representative so collapsed universes
        // preserve enumeration order.
        if (a < b)
            parent[b] = a;
        else
            parent[a] = b;
    }
};

}  // namespace

FaultUniverse enumerate_faults(const Netlist& n, bool collapse) {
    FaultUniverse u;
    u.collapsed = collapse;

    // Net faults over every driven net and PI, in net-id order.
    for (NetId net = 0; net < n.net_count(); ++net)
        for (int v = 0; v < 2; ++v)
            u.faults.push_back({Fault::Site::Net, net, 0, 0, v == 1});

    // Pin faults in topological gate order.
    for (GateId g = 0; g < n.gate_count(); ++g) {
        const Gate& gate = n.gate(g);
        for (uint8_t pin = 0; pin < gate.fanin_count(); ++pin)
            for (int v = 0; v < 2; ++v)
                u.faults.push_back({Fault::Site::Pin, gate.in[pin], g, pin, v == 1});
    }
    if (!collapse) return u;

    // Index lookup tables.
    auto net_fault = [&](NetId net, bool sa) { return 2 * static_cast<size_t>(net) + (sa ? 1 : 0); };
    std::unordered_map<uint64_t, size_t> pin_fault;
    for (size_t i = 2 * n.net_count(); i < u.faults.size(); ++i) {
        const Fault& f = u.faults[i];
        pin_fault[(uint64_t(f.gate) << 2) | (f.pin << 1) | (f.stuck_at ? 1 : 0)] = i;
    }
    auto pin_index = [&](GateId g, uint8_t pin, bool sa) {
        return pin_fault.at((uint64_t(g) << 2) | (uint64_t(pin) << 1) | (sa ? 1 : 0));
    };

    std::vector<int> sink_count(n.net_count(), 0);
    for (const Gate& g : n.gates())
        for (NetId f : g.fanins()) sink_count[f]++;

    DisjointSet ds(u.faults.size());

    // Branch == stem on fanout-free nets.
    for (GateId g = 0; g < n.gate_count(); ++g) {
        const Gate& gate = n.gate(g);
        for (uint8_t pin = 0; pin < gate.fanin_count(); ++pin) {
            NetId net = gate.in[pin];
            if (sink_count[net] == 1)
                for (int v = 0; v < 2; ++v)
                    ds.merge(pin_index(g, pin, v == 1), net_fault(net, v == 1));
        }
    }

    // Controlled-value input faults merge with the matching output fault.
    using G = GateFunction;
    for (GateId g = 0; g < n.gate_count(); ++g) {
        const Gate& gate = n.gate(g);
        switch (gate.fn.tt) {
            case G::TT_AND:
            case G::TT_NAND: {
                bool out_sa = gate.fn.tt == G::TT_NAND;  // in s-a-0 => out s-a-(0^inv)
                for (uint8_t pin = 0; pin < 2; ++pin)
                    ds.merge(pin_index(g, pin, false), net_fault(gate.out, out_sa));
                break;
            }
            case G::TT_OR:
            case G::TT_NOR: {
                bool out_sa = gate.fn.tt == G::TT_OR;
                for (uint8_t pin = 0; pin < 2; ++pin)
                    ds.merge(pin_index(g, pin, true), net_fault(gate.out, out_sa));
                break;
            }
            case G::TT_BUF:
                ds.merge(pin_index(g, 0, false), net_fault(gate.out, false));
                ds.merge(pin_index(g, 0, true), net_fault(gate.out, true));
                break;
            case G::TT_INV:
                ds.merge(pin_index(g, 0, false), net_fault(gate.out, true));
                ds.merge(pin_index(g, 0, true), net_fault(gate.out, false));
                break;
            default:
                break;  // XOR/XNOR and generic tables have no equivalences
        }
    }

    FaultUniverse collapsed_u;
    collapsed_u.collapsed = true;
    for (size_t i = 0; i < u.faults.size(); ++i)
        if (ds.find(i) == i) collapsed_u.faults.push_back(u.faults[i]);
    return collapsed_u;
}

}  // namespace polycamo
