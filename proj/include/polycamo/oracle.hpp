#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "polycamo/camo.hpp"

namespace polycamo {

// Black-box input -> output evaluator, the attacker's working chip. Query
// counting is part of the contract: morphing oracles advance on oracle
// queries only.
class Oracle {
public:
    virtual ~Oracle() = default;
    virtual std::vector<bool> query(const std::vector<bool>& inputs) = 0;
    size_t query_count() const { return queries_; }

protected:
    size_t queries_ = 0;
};

// Fixed-key chip: a pure function of its inputs.
class StaticOracle : public Oracle {
public:
    StaticOracle(const CamoNetlist& c, const std::string& key);
    explicit StaticOracle(Netlist resolved);
    std::vector<bool> query(const std::vector<bool>& inputs) override;
    const Netlist& function() const { return resolved_; }

private:
    Netlist resolved_;
};

struct MorphPolicy {
    enum class Kind { CycleEveryQ, PrngPerQuery };
    Kind kind = Kind::PrngPerQuery;
    size_t cycle_period = 1;  // queries per template under CycleEveryQ
    uint64_t seed = 1;        // PrngPerQuery template selection
};

// Chip whose active function switches among pre-resolved templates between
// queries. The template used for query q is fully determined by
// (policy, q, seed).
class MorphingOracle : public Oracle {
public:
    MorphingOracle(const CamoNetlist& c, const std::vector<std::string>& template_keys,
                   MorphPolicy policy);
    std::vector<bool> query(const std::vector<bool>& inputs) override;

    size_t template_count() const { return templates_.size(); }
    const Netlist& template_function(size_t i) const { return templates_[i]; }
    size_t template_for_query(size_t query_index) const;

private:
    std::vector<Netlist> templates_;
    MorphPolicy policy_;
};

}  // namespace polycamo
