#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polycamo/netlist.hpp"

namespace polycamo {

// Single stuck-at fault. Net faults sit on a net (stem); pin faults sit on
// one gate's reading of a net (branch) and leave the net itself healthy.
struct Fault {
    enum class Site : uint8_t { Net, Pin };
    Site site = Site::Net;
    NetId net = kNoNet;   // faulty net (Net) or the net feeding the pin (Pin)
    GateId gate = 0;      // consuming gate, Pin only
    uint8_t pin = 0;      // fanin position, Pin only
    bool stuck_at = false;

    bool operator==(const Fault&) const = default;
    std::string describe(const Netlist& n) const;
};

struct FaultUniverse {
    std::vector<Fault> faults;
    bool collapsed = false;

    size_t size() const { return faults.size(); }
};

// Deterministic enumeration: both polarities per net (PIs and gate outputs,
// in net-id order), then both polarities per gate input pin (topological
// gate order). Collapsing merges the classic structural equivalences:
// branch faults on fanout-free nets with their stem, and controlled-value
// input faults with the matching output fault; one representative per
// class, in enumeration order.
FaultUniverse enumerate_faults(const Netlist& n, bool collapse);

}  // namespace polycamo
