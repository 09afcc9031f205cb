#include "pcpa/step.hpp"

#include <algorithm>

namespace pcpa {

std::string_view to_string(Outcome outcome) noexcept {
    switch (outcome) {
        case Outcome::accepted: return "accepted";
        case Outcome::rejected: return "rejected";
        case Outcome::unknown: return "unknown";
    }
    return "unknown";
}

std::string_view to_string(StepKind kind) noexcept {
    switch (kind) {
        case StepKind::initial: return "initial";
        case StepKind::usual: return "usual";
        case StepKind::communication: return "communication";
    }
    return "usual";
}

void require_valid(const SearchLimits& limits) {
    if (limits.max_steps < 1 || limits.max_configs < 1) {
        throw Error(ErrorCode::precondition_violated, "search limits must both be at least 1");
    }
}

namespace {

inline void mix(std::size_t& h, std::size_t v) noexcept {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

}  // namespace

std::size_t SystemConfigurationHash::operator()(const SystemConfiguration& c) const noexcept {
    std::size_t h = c.parts.size();
    for (const auto& p : c.parts) {
        mix(h, p.state);
        mix(h, p.consumed);
        mix(h, p.stack.size());
        for (auto s : p.stack) mix(h, s);
    }
    return h;
}

Stepper::Stepper(const PcpaSystem& sys) : sys_(sys) {
    const auto delta = sys.stack_alphabet.size();
    buckets_.resize(sys.degree());
    for (std::size_t i = 0; i < sys.degree(); ++i) {
        const auto& comp = sys.components[i];
        buckets_[i].resize(comp.states.size() * delta);
        for (std::size_t t = 0; t < comp.transitions.size(); ++t) {
            const auto& tr = comp.transitions[t];
            buckets_[i][tr.from * delta + tr.pop].push_back(t);
        }
    }
    query_target_.resize(delta);
    for (const auto& q : sys.query_map) query_target_[q.symbol] = q.target;
}

const std::vector<std::size_t>& Stepper::bucket(std::size_t component, StateId state,
                                                SymbolId symbol) const noexcept {
    const auto index = state * sys_.stack_alphabet.size() + symbol;
    const auto& table = buckets_[component];
    return index < table.size() ? table[index] : empty_;
}

bool Stepper::has_query_top(const SystemConfiguration& c) const noexcept {
    return std::any_of(c.parts.begin(), c.parts.end(), [&](const auto& p) {
        return !p.stack.empty() && query_target_[p.stack.front()].has_value();
    });
}

bool Stepper::accepting(const SystemConfiguration& c, std::size_t word_length) const noexcept {
    for (std::size_t i = 0; i < c.parts.size(); ++i) {
        const auto& p = c.parts[i];
        if (p.consumed != word_length || !sys_.components[i].is_final(p.state)) return false;
    }
    return true;
}

std::optional<Communication> Stepper::communicate(const SystemConfiguration& c) const {
    if (!has_query_top(c)) {
        throw Error(ErrorCode::precondition_violated, "communication step without a query top");
    }
    const auto n = c.parts.size();
    Communication result{c, {}};
    std::vector<bool> is_source(n, false);
    bool satisfied = false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& stack = c.parts[i].stack;
        if (stack.empty()) continue;
        const auto target = query_target_[stack.front()];
        if (!target) continue;
        const auto& source = c.parts[*target].stack;
        // the queried top must be a non-query symbol (covers self and circular queries)
        if (source.empty() || query_target_[source.front()]) continue;
        auto& next = result.next.parts[i].stack;
        next.clear();
        next.reserve(source.size() + stack.size() - 1);
        next.insert(next.end(), source.begin(), source.end());
        next.insert(next.end(), stack.begin() + 1, stack.end());
        is_source[*target] = true;
        satisfied = true;
    }
    if (!satisfied) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_source[j]) continue;
        result.sources.push_back(j);
        if (sys_.mode == Mode::returning) {
            result.next.parts[j].stack.assign(1, sys_.components[j].initial_stack);
        }
    }
    return result;
}

std::vector<SystemConfiguration> Stepper::usual_successors(const SystemConfiguration& c,
                                                           std::span<const SymbolId> word) const {
    if (has_query_top(c)) {
        throw Error(ErrorCode::precondition_violated, "usual step with a query symbol on top");
    }
    const auto n = c.parts.size();
    std::vector<std::vector<std::size_t>> choices(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = c.parts[i];
        if (p.stack.empty()) return {};
        const auto& comp = sys_.components[i];
        for (auto t : bucket(i, p.state, p.stack.front())) {
            const auto& read = comp.transitions[t].read;
            if (!read || (p.consumed < word.size() && word[p.consumed] == *read)) {
                choices[i].push_back(t);
            }
        }
        if (choices[i].empty()) return {};
    }

    std::size_t total = 1;
    for (const auto& ch : choices) total *= ch.size();
    std::vector<SystemConfiguration> out;
    out.reserve(total);
    std::vector<std::size_t> pick(n, 0);
    for (std::size_t k = 0; k < total; ++k) {
        SystemConfiguration next;
        next.parts.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = c.parts[i];
            const auto& tr = sys_.components[i].transitions[choices[i][pick[i]]];
            auto& q = next.parts[i];
            q.state = tr.to;
            q.consumed = p.consumed + (tr.read ? 1 : 0);
            q.stack.reserve(tr.push.size() + p.stack.size() - 1);
            q.stack.insert(q.stack.end(), tr.push.begin(), tr.push.end());
            q.stack.insert(q.stack.end(), p.stack.begin() + 1, p.stack.end());
        }
        out.push_back(std::move(next));
        // odometer: last component varies fastest
        for (std::size_t i = n; i-- > 0;) {
            if (++pick[i] < choices[i].size()) break;
            pick[i] = 0;
        }
    }
    return out;
}

void Stepper::successors(const SystemConfiguration& c, std::span<const SymbolId> word,
                         std::vector<std::pair<StepKind, SystemConfiguration>>& out) const {
    if (has_query_top(c)) {
        if (auto comm = communicate(c)) out.emplace_back(StepKind::communication, std::move(comm->next));
        return;
    }
    for (auto& next : usual_successors(c, word)) out.emplace_back(StepKind::usual, std::move(next));
}

std::vector<SymbolId> encode_word(const std::vector<std::string>& alphabet, const Word& word) {
    std::vector<SymbolId> ids;
    ids.reserve(word.size());
    for (const auto& sym : word) {
        auto it = std::find(alphabet.begin(), alphabet.end(), sym);
        if (it == alphabet.end()) {
            throw Error(ErrorCode::alphabet_error, "symbol '" + sym + "' is not in the input alphabet");
        }
        ids.push_back(static_cast<SymbolId>(it - alphabet.begin()));
    }
    return ids;
}

SystemConfiguration initial_configuration(const PcpaSystem& sys, const Word& word) {
    encode_word(sys.input_alphabet, word);
    SystemConfiguration c;
    c.parts.reserve(sys.degree());
    for (const auto& comp : sys.components) {
        c.parts.push_back({comp.initial, 0, {comp.initial_stack}});
    }
    return c;
}

std::optional<SystemConfiguration> communication_step(const PcpaSystem& sys,
                                                      const SystemConfiguration& c) {
    auto comm = Stepper(sys).communicate(c);
    if (!comm) return std::nullopt;
    return std::move(comm->next);
}

std::vector<SystemConfiguration> usual_step_successors(const PcpaSystem& sys,
                                                       const SystemConfiguration& c,
                                                       const Word& word) {
    const auto ids = encode_word(sys.input_alphabet, word);
    return Stepper(sys).usual_successors(c, ids);
}

std::vector<Step> step_successors(const PcpaSystem& sys, const SystemConfiguration& c,
                                  const Word& word) {
    const auto ids = encode_word(sys.input_alphabet, word);
    std::vector<std::pair<StepKind, SystemConfiguration>> raw;
    Stepper(sys).successors(c, ids, raw);
    std::vector<Step> out;
    out.reserve(raw.size());
    for (auto& [kind, next] : raw) out.push_back({kind, std::move(next)});
    return out;
}

PcpaVerdict run_bounded(const PcpaSystem& sys, const Word& word, const SearchLimits& limits) {
    require_valid(sys);
    auto initial = initial_configuration(sys, word);
    const auto ids = encode_word(sys.input_alphabet, word);
    const Stepper stepper(sys);
    return breadth_first<SystemConfiguration, SystemConfigurationHash>(
        std::move(initial),
        [&](const SystemConfiguration& c, auto& out) { stepper.successors(c, ids, out); },
        [&](const SystemConfiguration& c) { return stepper.accepting(c, ids.size()); }, limits);
}

}  // namespace pcpa
