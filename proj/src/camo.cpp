#include "polycamo/camo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "polycamo/bench.hpp"

namespace polycamo {

namespace {

using G = GateFunction;

std::vector<GateFunction> lifted(std::initializer_list<GateFunction> fns) {
    std::vector<GateFunction> out;
    for (auto f : fns) out.push_back(f.lifted());
    return out;
}

}  // namespace

CamoScheme scheme_from_name(const std::string& name) {
    if (name == "nandnor") return CamoScheme::NandNor;
    if (name == "nandnorxor") return CamoScheme::NandNorXor;
    if (name == "meso3") return CamoScheme::Meso3;
    if (name == "meso4") return CamoScheme::Meso4;
    if (name == "meso6") return CamoScheme::Meso6;
    if (name == "meso8") return CamoScheme::Meso8;
    if (name == "meso16") return CamoScheme::Meso16;
    throw std::invalid_argument("unknown camouflaging scheme: " + name);
}

std::string scheme_name(CamoScheme s) {
    switch (s) {
        case CamoScheme::NandNor: return "nandnor";
        case CamoScheme::NandNorXor: return "nandnorxor";
        case CamoScheme::Meso3: return "meso3";
        case CamoScheme::Meso4: return "meso4";
        case CamoScheme::Meso6: return "meso6";
        case CamoScheme::Meso8: return "meso8";
        case CamoScheme::Meso16: return "meso16";
    }
    throw std::logic_error("bad scheme");
}

std::vector<GateFunction> scheme_candidates(CamoScheme s) {
    switch (s) {
        case CamoScheme::NandNor: return lifted({G::nand2(), G::nor2()});
        case CamoScheme::NandNorXor:
        case CamoScheme::Meso3: return lifted({G::nand2(), G::nor2(), G::xor2()});
        case CamoScheme::Meso4: return lifted({G::and2(), G::or2(), G::nand2(), G::nor2()});
        case CamoScheme::Meso6:
            return lifted({G::and2(), G::or2(), G::nand2(), G::nor2(), G::xor2(), G::xnor2()});
        case CamoScheme::Meso8:
            return lifted({G::inv(), G::buf(), G::and2(), G::or2(), G::nand2(), G::nor2(),
                           G::xor2(), G::xnor2()});
        case CamoScheme::Meso16: {
            std::vector<GateFunction> out;
            for (uint8_t tt = 0; tt < 16; ++tt) out.push_back(G::from_table(tt));
            return out;
        }
    }
    throw std::logic_error("bad scheme");
}

std::string CamoNetlist::true_key() const {
    std::string key(key_len, '0');
    for (const auto& cell : cells)
        for (size_t j = 0; j < cell.key_width; ++j)
            key[cell.key_offset + j] =
                ((cell.true_index >> (cell.key_width - 1 - j)) & 1u) ? '1' : '0';
    return key;
}

double CamoNetlist::solution_space() const {
    double space = 1.0;
    for (const auto& cell : cells) space *= double(cell.candidates.size());
    return space;
}

std::vector<GateId> select_gates(const Netlist& n, size_t how_many, uint64_t seed) {
    if (how_many > n.gate_count())
        throw std::invalid_argument("cannot select " + std::to_string(how_many) + " of " +
                                    std::to_string(n.gate_count()) + " gates");
    std::vector<GateId> ids(n.gate_count());
    std::iota(ids.begin(), ids.end(), 0);
    std::mt19937_64 rng(seed);
    // Fisher-Yates prefix; sorted afterwards so selections are stable sets.
    for (size_t i = 0; i < how_many; ++i) {
        std::uniform_int_distribution<size_t> dist(i, ids.size() - 1);
        std::swap(ids[i], ids[dist(rng)]);
    }
    ids.resize(how_many);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<GateId> select_gates_fraction(const Netlist& n, double fraction, uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0) throw std::invalid_argument("fraction outside [0,1]");
    return select_gates(n, static_cast<size_t>(fraction * double(n.gate_count())), seed);
}

CamoResult camouflage(const Netlist& n, const std::vector<GateId>& gates, CamoScheme scheme) {
    auto candidates = scheme_candidates(scheme);
    CamoResult result;
    result.camo.base = n;
    result.camo.scheme = scheme_name(scheme);

    size_t key_width = 0;
    while ((size_t{1} << key_width) < candidates.size()) key_width++;

    size_t offset = 0;
    for (GateId g : gates) {
        if (g >= n.gate_count()) throw std::invalid_argument("gate id out of range");
        uint8_t true_tt = n.gate(g).fn.lifted().tt;
        auto it = std::find_if(candidates.begin(), candidates.end(),
                               [&](GateFunction f) { return f.tt == true_tt; });
        if (it == candidates.end()) {
            result.skipped.push_back(
                {"policy-miss", "gate '" + n.net_name(n.gate(g).out) + "' implements " +
                                    n.gate(g).fn.name() + " which is outside scheme " +
                                    scheme_name(scheme)});
            continue;
        }
        CamoCell cell;
        cell.gate_id = g;
        cell.candidates = candidates;
        cell.true_index = static_cast<size_t>(it - candidates.begin());
        cell.key_offset = offset;
        cell.key_width = key_width;
        offset += key_width;
        result.camo.cells.push_back(std::move(cell));
    }
    result.camo.key_len = offset;
    if (!gates.empty() && result.camo.cells.empty())
        throw std::invalid_argument("no selected gate fits scheme " + scheme_name(scheme));
    return result;
}

namespace {

size_t cell_index_from_key(const CamoCell& cell, const std::string& key) {
    size_t idx = 0;
    for (size_t j = 0; j < cell.key_width; ++j) {
        char c = key[cell.key_offset + j];
        if (c != '0' && c != '1') throw std::invalid_argument("key must be a 0/1 string");
        idx = (idx << 1) | static_cast<size_t>(c - '0');
    }
    return idx;
}

}  // namespace

Netlist apply_key(const CamoNetlist& c, const std::string& key) {
    if (key.size() != c.key_len)
        throw std::invalid_argument("key length " + std::to_string(key.size()) +
                                    " does not match key_len " + std::to_string(c.key_len));
    const Netlist& base = c.base;
    std::vector<GateFunction> override_fn(base.gate_count(), GateFunction{0, 0});
    std::vector<bool> overridden(base.gate_count(), false);
    for (const auto& cell : c.cells) {
        size_t idx = cell_index_from_key(cell, key);
        if (idx >= cell.candidates.size())
            throw std::out_of_range("key selects candidate " + std::to_string(idx) +
                                    " of a " + std::to_string(cell.candidates.size()) +
                                    "-candidate cell");
        override_fn[cell.gate_id] = cell.candidates[idx];
        overridden[cell.gate_id] = true;
    }

    NetlistBuilder b;
    for (NetId pi : base.inputs()) b.add_input(base.net_name(pi));
    for (size_t gi = 0; gi < base.gate_count(); ++gi) {
        const Gate& g = base.gate(static_cast<GateId>(gi));
        std::string a = base.net_name(g.in[0]);
        // A camouflaged one-input gate keeps its own input as the dummy
        // second terminal.
        std::string bn = g.fn.arity == 2 ? base.net_name(g.in[1]) : a;
        if (overridden[gi])
            b.add_gate(base.net_name(g.out), override_fn[gi], a, bn);
        else if (g.fn.arity == 2)
            b.add_gate(base.net_name(g.out), g.fn, a, bn);
        else
            b.add_gate(base.net_name(g.out), g.fn, a);
    }
    for (NetId po : base.outputs()) b.add_output(base.net_name(po));
    return b.build();
}

Netlist expand_to_keyed(const CamoNetlist& c) {
    const Netlist& base = c.base;
    std::vector<const CamoCell*> cell_of(base.gate_count(), nullptr);
    for (const auto& cell : c.cells) cell_of[cell.gate_id] = &cell;

    NetlistBuilder b;
    for (NetId pi : base.inputs()) b.add_input(base.net_name(pi));
    for (size_t i = 0; i < c.key_len; ++i) b.add_input("keyinput" + std::to_string(i));

    for (size_t gi = 0; gi < base.gate_count(); ++gi) {
        const Gate& g = base.gate(static_cast<GateId>(gi));
        const std::string out = base.net_name(g.out);
        const std::string a = base.net_name(g.in[0]);
        const std::string bn = g.fn.arity == 2 ? base.net_name(g.in[1]) : a;
        const CamoCell* cell = cell_of[gi];
        if (!cell) {
            if (g.fn.arity == 2)
                b.add_gate(out, g.fn, a, bn);
            else
                b.add_gate(out, g.fn, a);
            continue;
        }

        // Candidate instances share the cell fanins.
        size_t leaves = size_t{1} << cell->key_width;
        std::vector<std::string> leaf_net(leaves);
        for (size_t k = 0; k < cell->candidates.size(); ++k) {
            std::string cand = b.fresh_net(out + "_cand");
            emit_gate_in_alphabet(b, cand, cell->candidates[k], a, bn);
            leaf_net[k] = cand;
        }
        for (size_t k = cell->candidates.size(); k < leaves; ++k) leaf_net[k] = leaf_net[0];

        // MUX tree: level j consumes select bit keyinput(offset + j), most
        // significant first.
        std::vector<std::string> sel_inv(cell->key_width);
        for (size_t j = 0; j < cell->key_width; ++j) {
            std::string s = "keyinput" + std::to_string(cell->key_offset + j);
            sel_inv[j] = b.fresh_net(out + "_nsel");
            b.add_gate(sel_inv[j], GateFunction::inv(), s);
        }
        std::function<std::string(size_t, size_t, size_t)> mux =
            [&](size_t level, size_t lo, size_t hi) -> std::string {
            if (hi - lo == 1) return leaf_net[lo];
            size_t mid = lo + (hi - lo) / 2;
            std::string low = mux(level + 1, lo, mid);
            std::string high = mux(level + 1, mid, hi);
            std::string s = "keyinput" + std::to_string(cell->key_offset + level);
            std::string t0 = b.fresh_net(out + "_m0");
            std::string t1 = b.fresh_net(out + "_m1");
            b.add_gate(t0, GateFunction::and2(), sel_inv[level], low);
            b.add_gate(t1, GateFunction::and2(), s, high);
            if (level == 0) {
                b.add_gate(out, GateFunction::or2(), t0, t1);
                return out;
            }
            std::string m = b.fresh_net(out + "_mux");
            b.add_gate(m, GateFunction::or2(), t0, t1);
            return m;
        };
        mux(0, 0, leaves);
    }
    for (NetId po : base.outputs()) b.add_output(base.net_name(po));
    return b.build();
}

FoundryAttackReport emulate_foundry_attack(const CamoNetlist& c, double accuracy, uint64_t seed,
                                           size_t patterns) {
    if (accuracy < 0.0 || accuracy > 1.0) throw std::invalid_argument("accuracy outside [0,1]");
    std::mt19937_64 rng(seed);
    const size_t n_cells = c.cells.size();
    const size_t n_correct = static_cast<size_t>(std::llround(accuracy * double(n_cells)));

    std::vector<size_t> order(n_cells);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<bool> correct(n_cells, false);
    for (size_t i = 0; i < n_correct; ++i) correct[order[i]] = true;

    std::string key(c.key_len, '0');
    size_t correct_cells = 0;
    for (size_t i = 0; i < n_cells; ++i) {
        const CamoCell& cell = c.cells[i];
        size_t idx;
        if (correct[i]) {
            idx = cell.true_index;
            correct_cells++;
        } else {
            // Uniform over the wrong candidates, so `accuracy` is exact.
            std::uniform_int_distribution<size_t> dist(0, cell.candidates.size() - 2);
            idx = dist(rng);
            if (idx >= cell.true_index) idx++;
        }
        for (size_t j = 0; j < cell.key_width; ++j)
            key[cell.key_offset + j] = ((idx >> (cell.key_width - 1 - j)) & 1u) ? '1' : '0';
    }

    FoundryAttackReport report;
    report.reconstructed_key = key;
    report.correct_cells = correct_cells;
    HdOerOptions opts;
    opts.patterns = patterns;
    opts.seed = rng();  // pattern seed derived from the trial seed
    report.metrics = hd_oer(apply_key(c, key), c.base, opts);
    return report;
}

std::string CamoNetlist::to_json() const {
    nlohmann::json j;
    j["scheme"] = scheme;
    j["key_len"] = key_len;
    j["base_bench"] = write_bench(base);
    auto& cells_j = j["cells"];
    cells_j = nlohmann::json::array();
    for (const auto& cell : cells) {
        nlohmann::json cj;
        cj["gate"] = cell.gate_id;
        cj["net"] = base.net_name(base.gate(cell.gate_id).out);
        cj["true_index"] = cell.true_index;
        cj["key_offset"] = cell.key_offset;
        cj["key_width"] = cell.key_width;
        std::vector<int> tts;
        for (auto f : cell.candidates) tts.push_back(f.tt);
        cj["candidates"] = tts;
        cells_j.push_back(std::move(cj));
    }
    return j.dump(2);
}

CamoNetlist CamoNetlist::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CamoNetlist c;
    c.scheme = j.at("scheme").get<std::string>();
    c.key_len = j.at("key_len").get<size_t>();
    c.base = parse_bench(j.at("base_bench").get<std::string>());
    for (const auto& cj : j.at("cells")) {
        CamoCell cell;
        cell.gate_id = cj.at("gate").get<GateId>();
        cell.true_index = cj.at("true_index").get<size_t>();
        cell.key_offset = cj.at("key_offset").get<size_t>();
        cell.key_width = cj.at("key_width").get<size_t>();
        for (int tt : cj.at("candidates").get<std::vector<int>>())
            cell.candidates.push_back(GateFunction::from_table(static_cast<uint8_t>(tt)));
        c.cells.push_back(std::move(cell));
    }
    return c;
}

}  // namespace polycamo
