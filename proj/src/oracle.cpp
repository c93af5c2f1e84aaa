#include "polycamo/oracle.hpp"

#include <stdexcept>

#include "polycamo/sim.hpp"

namespace polycamo {

StaticOracle::StaticOracle(const CamoNetlist& c, const std::string& key)
    : resolved_(apply_key(c, key)) {}

StaticOracle::StaticOracle(Netlist resolved) : resolved_(std::move(resolved)) {}

std::vector<bool> StaticOracle::query(const std::vector<bool>& inputs) {
    queries_++;
    return simulate_pattern(resolved_, inputs);
}

MorphingOracle::MorphingOracle(const CamoNetlist& c, const std::vector<std::string>& template_keys,
                               MorphPolicy policy)
    : policy_(policy) {
    if (template_keys.empty()) throw std::invalid_argument("morphing oracle needs templates");
    templates_.reserve(template_keys.size());
    for (const auto& key : template_keys) templates_.push_back(apply_key(c, key));
}

size_t MorphingOracle::template_for_query(size_t query_index) const {
    if (policy_.kind == MorphPolicy::Kind::CycleEveryQ) {
        size_t period = policy_.cycle_period == 0 ? 1 : policy_.cycle_period;
        return (query_index / period) % templates_.size();
    }
    // Splitmix-style hash of (seed, query index): stateless, so the choice
    // for query q never depends on evaluation order.
    uint64_t z = policy_.seed + 0x9E3779B97F4A7C15ULL * (query_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return static_cast<size_t>(z % templates_.size());
}

std::vector<bool> MorphingOracle::query(const std::vector<bool>& inputs) {
    size_t t = template_for_query(queries_);
    queries_++;
    return simulate_pattern(templates_[t], inputs);
}

}  // namespace polycamo
