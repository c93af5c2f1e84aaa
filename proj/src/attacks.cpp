#include "polycamo/attacks.hpp"

#include <chrono>
#include <stdexcept>

#include "polycamo/bench.hpp"
#include "polycamo/cnf.hpp"
#include "polycamo/solver.hpp"

namespace polycamo {

const char* AttackResult::outcome_name(Outcome o) {
    switch (o) {
        case Outcome::KeyFound: return "KeyFound";
        case Outcome::Inconsistent: return "Inconsistent";
        case Outcome::Budget: return "Budget";
    }
    return "?";
}

namespace {

// Shared scaffolding for the oracle-guided attacks: a two-copy miter over
// the keyed netlist with shared PIs and per-copy key variables, plus the
// machinery for appending I/O constraint copies.
struct MiterAttack {
    const CamoNetlist& camo;
    Netlist keyed;
    Cnf cnf;
    Solver solver;

    std::vector<Var> pi_vars;            // shared between the two miter copies
    std::vector<Var> key_a, key_b;       // per-copy key variables
    std::vector<Var> out_a, out_b;       // miter copy output variables
    Var diff_select = 0;                 // assumption literal enabling the miter
    std::vector<NetId> pi_nets, key_nets, po_nets;

    std::vector<std::pair<std::vector<bool>, std::vector<bool>>> recorded;  // dip -> response

    explicit MiterAttack(const CamoNetlist& c, uint64_t seed, int64_t conflict_budget)
        : camo(c), keyed(expand_to_keyed(c)) {
        solver.set_random_seed(seed);
        solver.set_conflict_budget(conflict_budget);

        const size_t n_pi = c.base.input_count();
        for (size_t i = 0; i < n_pi; ++i) pi_nets.push_back(keyed.inputs()[i]);
        for (size_t i = 0; i < c.key_len; ++i) key_nets.push_back(keyed.inputs()[n_pi + i]);
        po_nets = keyed.outputs();

        for (size_t i = 0; i < pi_nets.size(); ++i) pi_vars.push_back(cnf.new_var());
        for (size_t i = 0; i < key_nets.size(); ++i) key_a.push_back(cnf.new_var());
        for (size_t i = 0; i < key_nets.size(); ++i) key_b.push_back(cnf.new_var());

        auto copy_vars = [&](const std::vector<Var>& keys) {
            std::unordered_map<NetId, Var> pinned;
            for (size_t i = 0; i < pi_nets.size(); ++i) pinned[pi_nets[i]] = pi_vars[i];
            for (size_t i = 0; i < key_nets.size(); ++i) pinned[key_nets[i]] = keys[i];
            return tseitin_append(cnf, keyed, pinned);
        };
        auto map_a = copy_vars(key_a);
        auto map_b = copy_vars(key_b);
        for (NetId po : po_nets) {
            out_a.push_back(map_a.at(po));
            out_b.push_back(map_b.at(po));
        }

        // Difference selector: under assumption `diff_select`, at least one
        // output pair must differ.
        diff_select = cnf.new_var();
        std::vector<Lit> any{-diff_select};
        for (size_t o = 0; o < po_nets.size(); ++o) {
            Var x = cnf.new_var();
            encode_gate(cnf, GateFunction::xor2(), x, out_a[o], out_b[o]);
            any.push_back(x);
        }
        cnf.add_clause(any);

        // The attacker knows each cell's candidate count: exclude unused
        // select codes of non-power-of-two cells for both key copies.
        for (const auto& cell : c.cells) {
            size_t codes = size_t{1} << cell.key_width;
            for (size_t v = cell.candidates.size(); v < codes; ++v) {
                for (const auto& keys : {std::cref(key_a), std::cref(key_b)}) {
                    std::vector<Lit> block;
                    for (size_t j = 0; j < cell.key_width; ++j) {
                        bool bit = (v >> (cell.key_width - 1 - j)) & 1u;
                        Var kv = keys.get()[cell.key_offset + j];
                        block.push_back(bit ? -kv : kv);
                    }
                    cnf.add_clause(block);
                }
            }
        }
        solver.add_cnf(cnf);
        cnf.clauses.clear();  // transferred; keep var counter only
    }

    void add_clause_now(std::vector<Lit> lits) { solver.add_clause(std::move(lits)); }

    Var fresh_var() {
        Var v = cnf.new_var();
        solver.ensure_var(v);
        return v;
    }

    // Appends one circuit copy pinned to the given key variables with the
    // PIs and POs forced to the observed values.
    void add_io_constraint(const std::vector<Var>& keys, const std::vector<bool>& dip,
                           const std::vector<bool>& response) {
        std::unordered_map<NetId, Var> pinned;
        for (size_t i = 0; i < key_nets.size(); ++i) pinned[key_nets[i]] = keys[i];
        Cnf local;
        local.var_count = cnf.var_count;
        auto map = tseitin_append(local, keyed, pinned);
        cnf.var_count = local.var_count;
        solver.ensure_var(cnf.var_count);
        for (const auto& clause : local.clauses) solver.add_clause(clause);
        for (size_t i = 0; i < pi_nets.size(); ++i)
            solver.add_clause({dip[i] ? map.at(pi_nets[i]) : -map.at(pi_nets[i])});
        for (size_t o = 0; o < po_nets.size(); ++o)
            solver.add_clause({response[o] ? map.at(po_nets[o]) : -map.at(po_nets[o])});
    }

    void record(const std::vector<bool>& dip, const std::vector<bool>& response) {
        add_io_constraint(key_a, dip, response);
        add_io_constraint(key_b, dip, response);
        recorded.emplace_back(dip, response);
    }

    std::vector<bool> extract_dip() const {
        std::vector<bool> dip(pi_vars.size());
        for (size_t i = 0; i < pi_vars.size(); ++i) dip[i] = solver.model_value(pi_vars[i]);
        return dip;
    }

    std::string extract_key(const std::vector<Var>& keys) const {
        std::string key(keys.size(), '0');
        for (size_t i = 0; i < keys.size(); ++i)
            key[i] = solver.model_value(keys[i]) ? '1' : '0';
        return key;
    }

    bool replay_check(const std::string& key) {
        Netlist resolved = apply_key(camo, key);
        for (const auto& [dip, response] : recorded)
            if (simulate_pattern(resolved, dip) != response) return false;
        return true;
    }

    static std::string bits(const std::vector<bool>& v) {
        std::string s(v.size(), '0');
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i]) s[i] = '1';
        return s;
    }
};

}  // namespace

AttackResult sat_attack(const CamoNetlist& c, Oracle& oracle, const SatAttackOptions& opts) {
    if (c.key_len < 1) throw std::invalid_argument("nothing to attack: key_len is 0");
    auto start = std::chrono::steady_clock::now();
    AttackResult result;
    MiterAttack attack(c, opts.seed, opts.conflict_budget);

    size_t base_queries = oracle.query_count();
    for (size_t iter = 0; iter < opts.max_iterations; ++iter) {
        Solver::Status st = attack.solver.solve({attack.diff_select});
        if (st == Solver::Status::Budget) {
            result.outcome = AttackResult::Outcome::Budget;
            break;
        }
        if (st == Solver::Status::Unsat) {
            // No DIP remains: extract any key consistent with the record.
            Solver::Status fin = attack.solver.solve({});
            if (fin == Solver::Status::Sat) {
                result.key = attack.extract_key(attack.key_a);
                result.outcome = AttackResult::Outcome::KeyFound;
                result.replay_ok = attack.replay_check(result.key);
            } else {
                result.outcome = AttackResult::Outcome::Inconsistent;
            }
            break;
        }
        std::vector<bool> dip = attack.extract_dip();
        std::vector<bool> response = oracle.query(dip);
        attack.record(dip, response);
        result.dip_count++;
        if (opts.record_trace)
            result.trace.push_back({result.dip_count, MiterAttack::bits(dip),
                                    MiterAttack::bits(response), attack.recorded.size(),
                                    attack.solver.conflicts()});
    }
    result.query_count = oracle.query_count() - base_queries;
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

namespace {

// Disagreement rate of a fixed key against the (possibly moving) oracle.
// Exhaustive over the input space when it fits inside the sample budget.
double estimate_error(const CamoNetlist& c, const std::string& key, Oracle& oracle,
                      size_t samples, std::mt19937_64& rng) {
    Netlist resolved = apply_key(c, key);
    const size_t n_pi = c.base.input_count();
    size_t total;
    bool exhaustive = n_pi < 20 && (size_t{1} << n_pi) <= samples;
    total = exhaustive ? (size_t{1} << n_pi) : samples;

    size_t mismatches = 0;
    std::vector<bool> input(n_pi);
    for (size_t s = 0; s < total; ++s) {
        for (size_t i = 0; i < n_pi; ++i)
            input[i] = exhaustive ? ((s >> i) & 1) != 0 : (rng() & 1) != 0;
        if (oracle.query(input) != simulate_pattern(resolved, input)) mismatches++;
    }
    return double(mismatches) / double(total);
}

}  // namespace

AttackResult appsat_attack(const CamoNetlist& c, Oracle& oracle, const AppSatParams& params) {
    if (c.key_len < 1) throw std::invalid_argument("nothing to attack: key_len is 0");
    auto start = std::chrono::steady_clock::now();
    AttackResult result;
    MiterAttack attack(c, params.seed, params.conflict_budget);
    std::mt19937_64 rng(params.seed * 0x9E3779B97F4A7C15ULL + 17);

    size_t base_queries = oracle.query_count();
    const size_t n_pi = c.base.input_count();

    auto finish = [&](AttackResult::Outcome outcome) {
        result.outcome = outcome;
        result.query_count = oracle.query_count() - base_queries;
        result.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    };

    for (size_t iter = 0; iter < params.max_iterations; ++iter) {
        Solver::Status st = attack.solver.solve({attack.diff_select});
        if (st == Solver::Status::Budget) return finish(AttackResult::Outcome::Budget);
        if (st == Solver::Status::Unsat) {
            Solver::Status fin = attack.solver.solve({});
            if (fin != Solver::Status::Sat) return finish(AttackResult::Outcome::Inconsistent);
            result.key = attack.extract_key(attack.key_a);
            result.stitched_key = result.key;
            result.replay_ok = attack.replay_check(result.key);
            return finish(AttackResult::Outcome::KeyFound);
        }
        std::vector<bool> dip = attack.extract_dip();
        std::vector<bool> response = oracle.query(dip);
        attack.record(dip, response);
        result.dip_count++;
        // Every miter model carries a key consistent with all constraints
        // recorded before this DIP; remember it as the running stitched key.
        result.stitched_key = attack.extract_key(attack.key_a);
        if (params.record_trace)
            result.trace.push_back({result.dip_count, MiterAttack::bits(dip),
                                    MiterAttack::bits(response), attack.recorded.size(),
                                    attack.solver.conflicts()});

        if (result.dip_count % params.dips_per_round != 0) continue;

        // Round boundary: append random query constraints...
        for (size_t q = 0; q < params.random_queries_per_round; ++q) {
            std::vector<bool> input(n_pi);
            for (size_t i = 0; i < n_pi; ++i) input[i] = (rng() & 1) != 0;
            attack.record(input, oracle.query(input));
        }
        // ...then draw a candidate key and estimate its error.
        Solver::Status cand = attack.solver.solve({});
        if (cand == Solver::Status::Budget) return finish(AttackResult::Outcome::Budget);
        if (cand != Solver::Status::Sat) return finish(AttackResult::Outcome::Inconsistent);
        std::string candidate = attack.extract_key(attack.key_a);
        result.stitched_key = candidate;
        double err = estimate_error(c, candidate, oracle, params.estimation_samples, rng);
        result.estimated_error = err;
        if (err <= params.error_threshold) {
            result.key = candidate;
            result.replay_ok = attack.replay_check(candidate);
            return finish(AttackResult::Outcome::KeyFound);
        }
    }
    return finish(AttackResult::Outcome::Budget);
}

MetricReport evaluate_recovered_key(const CamoNetlist& c, const std::string& key,
                                    const Netlist& reference, size_t patterns, uint64_t seed) {
    HdOerOptions opts;
    opts.patterns = patterns;
    opts.seed = seed;
    return hd_oer(apply_key(c, key), reference, opts);
}

}  // namespace polycamo
