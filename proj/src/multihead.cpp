#include "pcpa/multihead.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pcpa/step.hpp"

namespace pcpa {

bool MhpdaMachine::is_final(StateId state) const noexcept {
    return std::binary_search(finals.begin(), finals.end(), state);
}

std::optional<StateId> MhpdaMachine::find_state(std::string_view name) const noexcept {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) return std::nullopt;
    return static_cast<StateId>(it - states.begin());
}

std::size_t MhConfigurationHash::operator()(const MhConfiguration& c) const noexcept {
    std::size_t h = c.state;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    for (auto p : c.positions) mix(p);
    mix(c.stack.size());
    for (auto s : c.stack) mix(s);
    return h;
}

ValidationReport validate_mhpda(const MhpdaMachine& m) {
    ValidationReport report;
    auto& out = report.violations;
    const auto q = m.states.size();
    const auto v = m.input_alphabet.size();
    const auto delta = m.stack_alphabet.size();

    if (m.heads == 0) out.push_back({"no-heads", "machine", "a machine needs at least one head"});
    if (q == 0) out.push_back({"no-states", "machine", "machine has no states"});
    for (const auto* alphabet : {&m.input_alphabet, &m.stack_alphabet}) {
        std::set<std::string_view> seen;
        for (const auto& s : *alphabet) {
            if (!is_valid_symbol_name(s)) out.push_back({"bad-symbol", "alphabet", "invalid symbol name '" + s + "'"});
            if (!seen.insert(s).second) out.push_back({"duplicate-symbol", "alphabet", "symbol '" + s + "' declared twice"});
        }
    }
    if (m.endmarker.empty()) out.push_back({"bad-endmarker", "machine", "end marker must be non-empty"});
    if (std::find(m.input_alphabet.begin(), m.input_alphabet.end(), m.endmarker) !=
        m.input_alphabet.end()) {
        out.push_back({"endmarker-in-input-alphabet", "input_alphabet", "end marker listed in the input alphabet"});
    }
    std::set<std::string_view> seen_states;
    for (const auto& s : m.states) {
        if (!is_valid_state_name(s)) out.push_back({"bad-state", "states", "invalid state name '" + s + "'"});
        if (!seen_states.insert(s).second) out.push_back({"duplicate-state", "states", "state '" + s + "' declared twice"});
    }
    if (m.initial >= q) out.push_back({"initial-undeclared", "machine", "initial state out of range"});
    if (m.initial_stack >= delta) out.push_back({"initial-stack-undeclared", "machine", "initial stack symbol not in stack alphabet"});
    for (auto f : m.finals) {
        if (f >= q) out.push_back({"final-undeclared", "finals", "final state out of range"});
    }
    if (!std::is_sorted(m.finals.begin(), m.finals.end()) ||
        std::adjacent_find(m.finals.begin(), m.finals.end()) != m.finals.end()) {
        out.push_back({"finals-not-canonical", "finals", "finals must be sorted and unique"});
    }

    for (std::size_t t = 0; t < m.transitions.size(); ++t) {
        const auto& tr = m.transitions[t];
        const std::string at = "transitions[" + std::to_string(t) + "]";
        if (tr.from >= q || tr.to >= q) out.push_back({"transition-state-undeclared", at, "state out of range"});
        if (tr.pop >= delta) out.push_back({"transition-pop-undeclared", at, "pop symbol not in stack alphabet"});
        for (auto s : tr.push) {
            if (s >= delta) out.push_back({"transition-push-undeclared", at, "push symbol not in stack alphabet"});
        }
        if (tr.reads.size() != m.heads || tr.advances.size() != m.heads) {
            out.push_back({"head-count-mismatch", at, "reads/advances must have one entry per head"});
            continue;
        }
        for (std::size_t h = 0; h < m.heads; ++h) {
            const auto& r = tr.reads[h];
            if (r.kind == HeadRead::Kind::letter && r.letter >= v) {
                out.push_back({"transition-read-undeclared", at, "read symbol not in input alphabet"});
            }
            if (!tr.advances[h]) continue;
            if (r.kind == HeadRead::Kind::endmarker) {
                out.push_back({"advance-past-endmarker", at,
                               "head " + std::to_string(h + 1) + " advances past the end marker"});
            } else if (r.kind == HeadRead::Kind::skip) {
                out.push_back({"advance-without-read", at,
                               "head " + std::to_string(h + 1) + " advances without reading"});
            }
        }
    }
    return report;
}

void require_valid(const MhpdaMachine& m) {
    const auto report = validate_mhpda(m);
    if (report.ok()) return;
    std::ostringstream msg;
    msg << "invalid machine:";
    for (const auto& v : report.violations) msg << ' ' << v.location << ": " << v.message << ';';
    throw Error(ErrorCode::invalid_system, msg.str());
}

MhStepper::MhStepper(const MhpdaMachine& m) : m_(m) {
    const auto delta = m.stack_alphabet.size();
    buckets_.resize(m.states.size() * delta);
    for (std::size_t t = 0; t < m.transitions.size(); ++t) {
        const auto& tr = m.transitions[t];
        buckets_[tr.from * delta + tr.pop].push_back(t);
    }
}

void MhStepper::successors(const MhConfiguration& c, std::span<const SymbolId> word,
                           std::vector<std::pair<StepKind, MhConfiguration>>& out) const {
    if (c.stack.empty()) return;
    const auto end = word.size();
    for (auto t : buckets_[c.state * m_.stack_alphabet.size() + c.stack.front()]) {
        const auto& tr = m_.transitions[t];
        bool applies = true;
        for (std::size_t h = 0; h < m_.heads && applies; ++h) {
            const auto pos = c.positions[h];
            switch (tr.reads[h].kind) {
                case HeadRead::Kind::skip: break;
                case HeadRead::Kind::letter: applies = pos < end && word[pos] == tr.reads[h].letter; break;
                case HeadRead::Kind::endmarker: applies = pos == end; break;
            }
        }
        if (!applies) continue;
        MhConfiguration next;
        next.state = tr.to;
        next.positions = c.positions;
        for (std::size_t h = 0; h < m_.heads; ++h) {
            if (!tr.advances[h]) continue;
            if (next.positions[h] >= end) throw std::logic_error("head moved past the end marker");
            ++next.positions[h];
        }
        next.stack.reserve(tr.push.size() + c.stack.size() - 1);
        next.stack.insert(next.stack.end(), tr.push.begin(), tr.push.end());
        next.stack.insert(next.stack.end(), c.stack.begin() + 1, c.stack.end());
        out.emplace_back(StepKind::usual, std::move(next));
    }
}

bool MhStepper::accepting(const MhConfiguration& c, std::size_t word_length) const noexcept {
    return m_.is_final(c.state) &&
           std::all_of(c.positions.begin(), c.positions.end(),
                       [&](auto p) { return p == word_length; });
}

MhConfiguration mh_initial_configuration(const MhpdaMachine& m) {
    return {m.initial, std::vector<std::uint32_t>(m.heads, 0), {m.initial_stack}};
}

std::vector<MhConfiguration> mh_step_successors(const MhpdaMachine& m, const MhConfiguration& c,
                                                const Word& word) {
    const auto ids = encode_word(m.input_alphabet, word);
    std::vector<std::pair<StepKind, MhConfiguration>> raw;
    MhStepper(m).successors(c, ids, raw);
    std::vector<MhConfiguration> out;
    out.reserve(raw.size());
    for (auto& [kind, next] : raw) out.push_back(std::move(next));
    return out;
}

MhVerdict mh_run_bounded(const MhpdaMachine& m, const Word& word, const SearchLimits& limits) {
    require_valid(m);
    const auto ids = encode_word(m.input_alphabet, word);
    const MhStepper stepper(m);
    return breadth_first<MhConfiguration, MhConfigurationHash>(
        mh_initial_configuration(m),
        [&](const MhConfiguration& c, auto& out) { stepper.successors(c, ids, out); },
        [&](const MhConfiguration& c) { return stepper.accepting(c, ids.size()); }, limits);
}

}  // namespace pcpa
