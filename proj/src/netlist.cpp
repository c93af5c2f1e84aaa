#include "polycamo/netlist.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace polycamo {

namespace {

std::string join_messages(const std::vector<Diagnostic>& diags) {
    std::ostringstream os;
    os << diags.size() << " netlist error(s):";
    for (const auto& d : diags) {
        os << "\n  [" << d.code << "] " << d.message;
        if (d.line > 0) os << " (line " << d.line << ")";
    }
    return os.str();
}

}  // namespace

netlist_error::netlist_error(std::vector<Diagnostic> diags)
    : std::runtime_error(join_messages(diags)), diags_(std::move(diags)) {}

NetId Netlist::find_net(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? kNoNet : it->second;
}

std::vector<std::string> Netlist::input_names() const {
    std::vector<std::string> out;
    out.reserve(inputs_.size());
    for (NetId n : inputs_) out.push_back(names_[n]);
    return out;
}

std::vector<std::string> Netlist::output_names() const {
    std::vector<std::string> out;
    out.reserve(outputs_.size());
    for (NetId n : outputs_) out.push_back(names_[n]);
    return out;
}

std::vector<Diagnostic> validate(const Netlist& n) {
    std::vector<Diagnostic> diags;
    const size_t nets = n.net_count();

    std::vector<int> driver_count(nets, 0);
    for (NetId pi : n.inputs()) {
        if (pi >= nets) {
            diags.push_back({"bad-net", "primary input id out of range"});
            return diags;
        }
        driver_count[pi]++;
    }
    for (const Gate& g : n.gates()) {
        if (g.out >= nets) {
            diags.push_back({"bad-net", "gate output id out of range"});
            return diags;
        }
        driver_count[g.out]++;
        for (NetId f : g.fanins())
            if (f >= nets) diags.push_back({"bad-net", "fanin id out of range"});
        if (g.fn.arity != 1 && g.fn.arity != 2)
            diags.push_back({"bad-arity", "gate arity must be 1 or 2"});
    }
    for (NetId i = 0; i < nets; ++i) {
        if (driver_count[i] == 0)
            diags.push_back({"undriven", "net '" + n.net_name(i) + "' has no driver"});
        else if (driver_count[i] > 1)
            diags.push_back({"duplicate-driver", "net '" + n.net_name(i) + "' has multiple drivers"});
    }
    for (NetId po : n.outputs())
        if (po >= nets) diags.push_back({"bad-output", "primary output id out of range"});

    // Gates must appear after all of their fanins (valid topological order,
    // which also rules out cycles).
    std::vector<int> position(nets, -1);
    for (NetId pi : n.inputs()) position[pi] = 0;
    for (size_t gi = 0; gi < n.gate_count(); ++gi) {
        const Gate& g = n.gate(static_cast<GateId>(gi));
        for (NetId f : g.fanins()) {
            if (f < nets && position[f] < 0)
                diags.push_back({"topo-order",
                                 "gate driving '" + n.net_name(g.out) +
                                     "' reads '" + n.net_name(f) + "' before it is defined"});
        }
        if (g.out < nets) position[g.out] = static_cast<int>(gi) + 1;
    }
    return diags;
}

void NetlistBuilder::add_input(const std::string& name, int line) {
    input_order_.push_back(name);
    declared_.emplace(name, line);
}

void NetlistBuilder::add_output(const std::string& name, int line) {
    output_order_.push_back(name);
    (void)line;
}

void NetlistBuilder::add_gate(const std::string& out, GateFunction fn, const std::string& a,
                              const std::string& b, int line) {
    gates_.push_back({out, fn, a, b, line});
    declared_.emplace(out, line);
}

std::string NetlistBuilder::fresh_net(const std::string& base) {
    int& counter = fresh_counters_[base];
    for (;;) {
        std::string candidate = base + "_" + std::to_string(counter++);
        if (!declared_.contains(candidate)) return candidate;
    }
}

Netlist NetlistBuilder::build() {
    std::vector<Diagnostic> diags;

    // Name table: inputs first, then gate outputs in declaration order.
    std::unordered_map<std::string, int> seen_driver;  // name -> line
    std::unordered_map<std::string, size_t> gate_of;   // output name -> pending index
    for (const auto& name : input_order_) {
        auto [it, fresh] = seen_driver.emplace(name, declared_[name]);
        if (!fresh)
            diags.push_back({"duplicate-driver", "net '" + name + "' declared more than once",
                             declared_[name]});
    }
    for (size_t i = 0; i < gates_.size(); ++i) {
        const auto& pg = gates_[i];
        auto [it, fresh] = seen_driver.emplace(pg.out, pg.line);
        if (!fresh)
            diags.push_back({"duplicate-driver", "net '" + pg.out + "' has more than one driver",
                             pg.line});
        else
            gate_of[pg.out] = i;
        if (pg.fn.arity == 2 && pg.b.empty())
            diags.push_back({"bad-arity", "two-input gate '" + pg.out + "' lists one fanin",
                             pg.line});
    }

    auto check_fanin = [&](const PendingGate& pg, const std::string& f) {
        if (!seen_driver.contains(f))
            diags.push_back({"undeclared-fanin",
                             "gate '" + pg.out + "' reads undeclared net '" + f + "'", pg.line});
    };
    for (const auto& pg : gates_) {
        check_fanin(pg, pg.a);
        if (pg.fn.arity == 2) check_fanin(pg, pg.b);
    }
    for (const auto& name : output_order_)
        if (!seen_driver.contains(name))
            diags.push_back({"unknown-output", "primary output '" + name + "' names no net"});

    if (!diags.empty()) throw netlist_error(std::move(diags));

    // Kahn topological sort, stable in declaration order.
    std::vector<int> indegree(gates_.size(), 0);
    std::vector<std::vector<size_t>> dependents(gates_.size());
    for (size_t i = 0; i < gates_.size(); ++i) {
        const auto& pg = gates_[i];
        auto take = [&](const std::string& f) {
            auto it = gate_of.find(f);
            if (it != gate_of.end()) {
                indegree[i]++;
                dependents[it->second].push_back(i);
            }
        };
        take(pg.a);
        if (pg.fn.arity == 2) take(pg.b);
    }
    std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready;
    for (size_t i = 0; i < gates_.size(); ++i)
        if (indegree[i] == 0) ready.push(i);
    std::vector<size_t> order;
    order.reserve(gates_.size());
    while (!ready.empty()) {
        size_t i = ready.top();
        ready.pop();
        order.push_back(i);
        for (size_t d : dependents[i])
            if (--indegree[d] == 0) ready.push(d);
    }
    if (order.size() != gates_.size()) {
        for (size_t i = 0; i < gates_.size(); ++i)
            if (indegree[i] > 0)
                diags.push_back({"cycle", "gate '" + gates_[i].out + "' is part of a cycle",
                                 gates_[i].line});
        throw netlist_error(std::move(diags));
    }

    Netlist n;
    auto intern = [&](const std::string& name) {
        NetId id = static_cast<NetId>(n.names_.size());
        n.names_.push_back(name);
        n.by_name_.emplace(name, id);
        return id;
    };
    for (const auto& name : input_order_) {
        NetId id = intern(name);
        n.inputs_.push_back(id);
        n.drivers_.push_back(-1);
    }
    for (size_t k = 0; k < order.size(); ++k) {
        intern(gates_[order[k]].out);
        n.drivers_.push_back(static_cast<int32_t>(k));
    }
    // Second pass now that every net has an id.
    for (size_t k = 0; k < order.size(); ++k) {
        const auto& pg = gates_[order[k]];
        Gate g;
        g.fn = pg.fn;
        g.out = n.by_name_.at(pg.out);
        g.in[0] = n.by_name_.at(pg.a);
        g.in[1] = pg.fn.arity == 2 ? n.by_name_.at(pg.b) : kNoNet;
        n.gates_.push_back(g);
    }
    for (const auto& name : output_order_) n.outputs_.push_back(n.by_name_.at(name));
    return n;
}

}  // namespace polycamo
