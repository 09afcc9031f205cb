#include <algorithm>
#include <set>

#include "pcpa/transforms.hpp"

namespace pcpa {

PcpaSystem normalize_bottom_preserving(const PcpaSystem& sys) {
    require_valid(sys);
    PcpaSystem out = sys;
    for (auto& comp : out.components) {
        for (auto& tr : comp.transitions) {
            if (tr.pop == comp.initial_stack && tr.push.empty()) tr.push = {comp.initial_stack};
        }
    }
    return out;
}

std::string duplicate_bottom_name(const PcpaSystem& sys, std::size_t i) {
    std::string name = sys.stack_alphabet.at(sys.components.at(i).initial_stack) + "'";
    auto taken = [&](const std::string& s) {
        if (sys.find_stack(s)) return true;
        for (std::size_t k = 0; k < i; ++k) {
            if (duplicate_bottom_name(sys, k) == s) return true;
        }
        return false;
    };
    while (taken(name)) name += "'";
    return name;
}

namespace {

// Per-component state layout of the transformed automaton.
constexpr StateId kInit = 0;
constexpr StateId kPrimed1 = 1;
constexpr StateId kPrimed2 = 2;

StateId sim_state(StateId base, int phase, bool switch_on) {
    return 3 + 4 * base + (phase == 1 ? 0 : 2) + (switch_on ? 1 : 0);
}

}  // namespace

PcpaSystem to_known_communication(const PcpaSystem& input) {
    if (input.mode != Mode::returning) {
        throw Error(ErrorCode::unsupported_mode,
                    "known-communication transform needs a returning system");
    }
    const PcpaSystem sys = normalize_bottom_preserving(input);
    const auto n = sys.degree();
    {
        std::set<SymbolId> bottoms;
        for (const auto& c : sys.components) bottoms.insert(c.initial_stack);
        if (bottoms.size() != n) {
            throw Error(ErrorCode::invalid_system,
                        "known-communication transform needs pairwise distinct initial stack symbols");
        }
    }
    const auto graph = query_graph(sys);

    PcpaSystem out;
    out.input_alphabet = sys.input_alphabet;
    out.stack_alphabet = sys.stack_alphabet;
    out.query_map = sys.query_map;
    out.mode = sys.mode;

    // σ: every initial stack symbol Z_k is represented by its duplicate Z'_k
    std::vector<SymbolId> sigma(sys.stack_alphabet.size());
    for (SymbolId s = 0; s < sigma.size(); ++s) sigma[s] = s;
    std::vector<SymbolId> dup(n);
    for (std::size_t k = 0; k < n; ++k) {
        dup[k] = static_cast<SymbolId>(out.stack_alphabet.size());
        out.stack_alphabet.push_back(duplicate_bottom_name(sys, k));
        sigma[sys.components[k].initial_stack] = dup[k];
    }
    auto rename = [&](const std::vector<SymbolId>& word) {
        std::vector<SymbolId> r;
        r.reserve(word.size());
        for (auto s : word) r.push_back(sigma[s]);
        return r;
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto& src = sys.components[i];
        const auto z = src.initial_stack;
        const auto zd = dup[i];
        const auto k = static_cast<StateId>(src.states.size());

        PdaComponent comp;
        comp.initial = kInit;
        comp.initial_stack = z;
        const auto& q0 = src.states[src.initial];
        comp.states = {q0 + "@init", q0 + "@pre1", q0 + "@pre2"};
        comp.kc = {{q0, KcPhase::initial, false},
                   {q0, KcPhase::primed1, false},
                   {q0, KcPhase::primed2, false}};
        for (StateId p = 0; p < k; ++p) {
            const auto& b = src.states[p];
            comp.states.insert(comp.states.end(),
                               {b + "@s1:0", b + "@s1:1", b + "@s2:0", b + "@s2:1"});
            comp.kc.insert(comp.kc.end(), {{b, KcPhase::sim1, false},
                                           {b, KcPhase::sim1, true},
                                           {b, KcPhase::sim2, false},
                                           {b, KcPhase::sim2, true}});
        }
        auto& f = comp.transitions;

        // 1-2: lay the duplicate bottom, two ε-steps for every component
        f.push_back({kInit, std::nullopt, z, kPrimed1, {zd}});
        f.push_back({kPrimed1, std::nullopt, zd, kPrimed2, {zd}});
        // 3: first simulated move out of the initial state
        for (const auto& tr : src.transitions) {
            if (tr.from != src.initial || tr.pop != z) continue;
            f.push_back({kPrimed2, tr.read, zd, sim_state(tr.to, 1, false), rename(tr.push)});
        }
        // 4: ε half-step, any non-query top except the bare Z_i
        for (StateId p = 0; p < k; ++p) {
            for (SymbolId x = 0; x < out.stack_alphabet.size(); ++x) {
                if (x == z || sys.is_query(x)) continue;
                f.push_back({sim_state(p, 1, false), std::nullopt, x, sim_state(p, 2, false), {x}});
            }
        }
        // 5: simulating half-step
        for (const auto& tr : src.transitions) {
            f.push_back({sim_state(tr.from, 2, false), tr.read, sigma[tr.pop],
                         sim_state(tr.to, 1, false), rename(tr.push)});
        }
        // 6: a bare Z_i on top means the stack was just communicated and reset
        for (StateId p = 0; p < k; ++p) {
            f.push_back({sim_state(p, 1, false), std::nullopt, z, sim_state(p, 2, true), {zd}});
        }
        // 7: continue from the switched state
        for (const auto& tr : src.transitions) {
            f.push_back({sim_state(tr.from, 2, true), tr.read, sigma[tr.pop],
                         sim_state(tr.to, 1, false), rename(tr.push)});
        }
        // 8: a querier drops duplicate bottoms that arrived with communicated stacks
        for (auto j : graph.in_sets[i]) {
            if (j == i) continue;
            for (StateId p = 0; p < k; ++p) {
                f.push_back({sim_state(p, 1, false), std::nullopt, dup[j], sim_state(p, 2, false), {}});
            }
        }

        for (auto fin : src.finals) {
            for (int phase : {1, 2}) {
                for (bool sw : {false, true}) comp.finals.push_back(sim_state(fin, phase, sw));
            }
        }
        if (src.is_final(src.initial)) {
            comp.finals.insert(comp.finals.end(), {kInit, kPrimed1, kPrimed2});
        }
        std::sort(comp.finals.begin(), comp.finals.end());
        out.components.push_back(std::move(comp));
    }
    require_valid(out);
    return out;
}

}  // namespace pcpa
