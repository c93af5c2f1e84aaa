#include <optional>

#include "polycamo/atpg.hpp"

namespace polycamo {

namespace {

// Three-valued logic: 0, 1, X.
enum : uint8_t { V0 = 0, V1 = 1, VX = 2 };

inline bool is_pin_site(const Fault& f, GateId g, uint8_t pin) {
    return f.site == Fault::Site::Pin && f.gate == g && f.pin == pin;
}

inline uint8_t eval3(GateFunction fn, uint8_t a, uint8_t b) {
    using G = GateFunction;
    switch (fn.tt) {
        case G::TT_AND:
            if (a == V0 || b == V0) return V0;
            if (a == V1 && b == V1) return V1;
            return VX;
        case G::TT_NAND:
            if (a == V0 || b == V0) return V1;
            if (a == V1 && b == V1) return V0;
            return VX;
        case G::TT_OR:
            if (a == V1 || b == V1) return V1;
            if (a == V0 && b == V0) return V0;
            return VX;
        case G::TT_NOR:
            if (a == V1 || b == V1) return V0;
            if (a == V0 && b == V0) return V1;
            return VX;
        case G::TT_XOR:
            if (a == VX || b == VX) return VX;
            return static_cast<uint8_t>(a ^ b);
        case G::TT_XNOR:
            if (a == VX || b == VX) return VX;
            return static_cast<uint8_t>((a ^ b) ^ 1);
        case G::TT_BUF: return a;
        case G::TT_INV: return a == VX ? static_cast<uint8_t>(VX) : static_cast<uint8_t>(a ^ 1);
        default: {
            // Generic table: definite only if every reachable row agrees.
            uint8_t out = 3;
            for (int ra = 0; ra < 2; ++ra) {
                if (a != VX && a != ra) continue;
                for (int rb = 0; rb < 2; ++rb) {
                    if (b != VX && b != rb) continue;
                    uint8_t v = (fn.tt >> ((ra << 1) | rb)) & 1;
                    if (out == 3)
                        out = v;
                    else if (out != v)
                        return VX;
                }
            }
            return out;
        }
    }
}

struct PodemState {
    const Netlist& n;
    const Fault& fault;
    std::vector<uint8_t> good;
    std::vector<uint8_t> faulty;

    PodemState(const Netlist& nl, const Fault& f)
        : n(nl), fault(f), good(nl.net_count(), VX), faulty(nl.net_count(), VX) {}

    void imply(const std::vector<uint8_t>& pi_values) {
        std::fill(good.begin(), good.end(), VX);
        std::fill(faulty.begin(), faulty.end(), VX);
        for (size_t i = 0; i < n.input_count(); ++i) {
            good[n.inputs()[i]] = pi_values[i];
            faulty[n.inputs()[i]] = pi_values[i];
        }
        if (fault.site == Fault::Site::Net && n.is_input(fault.net))
            faulty[fault.net] = fault.stuck_at ? V1 : V0;
        for (GateId g = 0; g < n.gate_count(); ++g) {
            const Gate& gate = n.gate(g);
            uint8_t ga = good[gate.in[0]];
            uint8_t gb = gate.fn.arity == 2 ? good[gate.in[1]] : ga;
            good[gate.out] = eval3(gate.fn, ga, gb);

            uint8_t fa = faulty[gate.in[0]];
            uint8_t fb = gate.fn.arity == 2 ? faulty[gate.in[1]] : fa;
            if (is_pin_site(fault, g, 0)) fa = fault.stuck_at ? V1 : V0;
            if (gate.fn.arity == 2 && is_pin_site(fault, g, 1)) fb = fault.stuck_at ? V1 : V0;
            uint8_t fv = eval3(gate.fn, fa, fb);
            if (fault.site == Fault::Site::Net && !n.is_input(fault.net) &&
                gate.out == fault.net)
                fv = fault.stuck_at ? V1 : V0;
            faulty[gate.out] = fv;
        }
    }

    uint8_t site_good() const { return good[fault.net]; }

    bool detected_at_po() const {
        for (NetId po : n.outputs()) {
            uint8_t g = good[po], f = faulty[po];
            if (g != VX && f != VX && g != f) return true;
        }
        return false;
    }

    // Fault effect present on a gate input while the planes can still
    // diverge at its output.
    bool frontier_alive() const {
        for (GateId g = 0; g < n.gate_count(); ++g) {
            const Gate& gate = n.gate(g);
            uint8_t go = good[gate.out], fo = faulty[gate.out];
            if (go != VX && fo != VX) continue;  // output settled or already split upstream
            for (uint8_t pin = 0; pin < gate.fanin_count(); ++pin) {
                NetId in = gate.in[pin];
                uint8_t gi = good[in];
                uint8_t fi = is_pin_site(fault, g, pin) ? (fault.stuck_at ? V1 : V0) : faulty[in];
                if (gi != VX && fi != VX && gi != fi) return true;
            }
        }
        return false;
    }
};

struct Objective {
    NetId net;
    uint8_t value;
};

std::optional<Objective> propagation_objective(const PodemState& st) {
    const Netlist& n = st.n;
    for (GateId g = 0; g < n.gate_count(); ++g) {
        const Gate& gate = n.gate(g);
        uint8_t go = st.good[gate.out], fo = st.faulty[gate.out];
        if (go != VX && fo != VX) continue;
        bool has_fault_input = false;
        for (uint8_t pin = 0; pin < gate.fanin_count(); ++pin) {
            NetId in = gate.in[pin];
            uint8_t gi = st.good[in];
            uint8_t fi =
                is_pin_site(st.fault, g, pin) ? (st.fault.stuck_at ? V1 : V0) : st.faulty[in];
            if (gi != VX && fi != VX && gi != fi) has_fault_input = true;
        }
        if (!has_fault_input) continue;
        for (uint8_t pin = 0; pin < gate.fanin_count(); ++pin) {
            NetId in = gate.in[pin];
            if (st.good[in] != VX) continue;
            using G = GateFunction;
            uint8_t v;
            switch (gate.fn.tt) {
                case G::TT_AND:
                case G::TT_NAND: v = V1; break;
                case G::TT_OR:
                case G::TT_NOR: v = V0; break;
                default: v = V0; break;  // parity and table gates: either side
            }
            return Objective{in, v};
        }
    }
    return std::nullopt;
}

std::optional<Objective> backtrace(const PodemState& st, Objective obj) {
    const Netlist& n = st.n;
    NetId net = obj.net;
    uint8_t v = obj.value;
    for (;;) {
        int32_t d = n.driver_of(net);
        if (d < 0) {
            if (st.good[net] != VX) return std::nullopt;
            return Objective{net, v};
        }
        const Gate& gate = n.gate(static_cast<GateId>(d));
        using G = GateFunction;
        bool inverting = gate.fn.tt == G::TT_NAND || gate.fn.tt == G::TT_NOR ||
                         gate.fn.tt == G::TT_INV || gate.fn.tt == G::TT_XNOR;
        uint8_t inner = inverting ? v ^ 1 : v;

        NetId next = kNoNet;
        uint8_t other = VX;
        for (uint8_t pin = 0; pin < gate.fanin_count(); ++pin) {
            NetId in = gate.in[pin];
            if (st.good[in] == VX && next == kNoNet)
                next = in;
            else
                other = st.good[in];
        }
        if (next == kNoNet) return std::nullopt;
        // Parity gates: fold the sibling's known value into the target so
        // the first try already satisfies the objective.
        if ((gate.fn.tt == G::TT_XOR || gate.fn.tt == G::TT_XNOR) && other != VX)
            inner = inner ^ other;
        net = next;
        v = inner;
    }
}

}  // namespace

PodemResult podem(const Netlist& n, const Fault& target, size_t backtrack_limit) {
    PodemResult result;
    PodemState st(n, target);

    struct Decision {
        size_t pi;
        uint8_t value;
        bool flipped;
    };
    std::vector<Decision> stack;
    std::vector<uint8_t> pi_values(n.input_count(), VX);

    // Map nets to PI slots once.
    std::vector<int32_t> pi_slot(n.net_count(), -1);
    for (size_t i = 0; i < n.input_count(); ++i) pi_slot[n.inputs()[i]] = static_cast<int32_t>(i);

    const uint8_t activation_value = target.stuck_at ? V0 : V1;
    size_t backtracks = 0;
    st.imply(pi_values);
    for (;;) {
        if (st.detected_at_po()) {
            result.outcome = PodemResult::Outcome::Found;
            result.backtracks = backtracks;
            result.pattern.assign(n.input_count(), false);
            for (size_t i = 0; i < n.input_count(); ++i)
                result.pattern[i] = pi_values[i] == V1;  // unassigned PIs default to 0
            return result;
        }

        uint8_t sg = st.site_good();
        bool dead = sg != VX && sg != activation_value;
        if (!dead && sg == activation_value && !st.frontier_alive()) dead = true;

        std::optional<Objective> obj;
        if (!dead) {
            if (sg == VX)
                obj = Objective{target.net, activation_value};
            else
                obj = propagation_objective(st);
            if (obj) obj = backtrace(st, *obj);
            if (!obj) dead = true;
        }

        if (dead) {
            for (;;) {
                if (stack.empty()) {
                    result.outcome = PodemResult::Outcome::Untestable;
                    result.backtracks = backtracks;
                    return result;
                }
                Decision& d = stack.back();
                pi_values[d.pi] = VX;
                if (!d.flipped) {
                    d.flipped = true;
                    d.value ^= 1;
                    pi_values[d.pi] = d.value;
                    backtracks++;
                    if (backtracks >= backtrack_limit) {
                        result.outcome = PodemResult::Outcome::Aborted;
                        result.backtracks = backtracks;
                        return result;
                    }
                    break;
                }
                stack.pop_back();
            }
            st.imply(pi_values);
            continue;
        }

        int32_t slot = pi_slot[obj->net];
        stack.push_back({static_cast<size_t>(slot), obj->value, false});
        pi_values[slot] = obj->value;
        st.imply(pi_values);
    }
}

}  // namespace polycamo
