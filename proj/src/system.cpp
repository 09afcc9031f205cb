#include "pcpa/system.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace pcpa {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_system: return "InvalidSystem";
        case ErrorCode::alphabet_error: return "AlphabetError";
        case ErrorCode::precondition_violated: return "PreconditionViolated";
        case ErrorCode::unsupported_mode: return "UnsupportedMode";
        case ErrorCode::not_centralized: return "NotCentralized";
        case ErrorCode::missing_known_communication: return "MissingKnownCommunication";
        case ErrorCode::not_simple: return "NotSimple";
        case ErrorCode::no_queriers: return "NoQueriers";
        case ErrorCode::alphabet_mismatch: return "AlphabetMismatch";
        case ErrorCode::not_known_comm_shaped: return "NotKnownCommShaped";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::validation_error: return "ValidationError";
    }
    return "Error";
}

bool is_valid_symbol_name(std::string_view name) noexcept {
    return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

bool is_valid_state_name(std::string_view name) noexcept {
    return !name.empty() && std::none_of(name.begin(), name.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '|' ||
               c == '(' || c == ')';
    });
}

std::string_view to_string(Mode mode) noexcept {
    return mode == Mode::returning ? "returning" : "non_returning";
}

std::string_view to_string(KcPhase phase) noexcept {
    switch (phase) {
        case KcPhase::initial: return "initial";
        case KcPhase::primed1: return "primed1";
        case KcPhase::primed2: return "primed2";
        case KcPhase::sim1: return "sim1";
        case KcPhase::sim2: return "sim2";
    }
    return "initial";
}

std::optional<KcPhase> kc_phase_from_string(std::string_view text) noexcept {
    for (auto phase : {KcPhase::initial, KcPhase::primed1, KcPhase::primed2, KcPhase::sim1,
                       KcPhase::sim2}) {
        if (to_string(phase) == text) return phase;
    }
    return std::nullopt;
}

bool PdaComponent::is_final(StateId state) const noexcept {
    return std::binary_search(finals.begin(), finals.end(), state);
}

std::optional<StateId> PdaComponent::find_state(std::string_view name) const noexcept {
    auto it = std::find(states.begin(), states.end(), name);
    if (it == states.end()) return std::nullopt;
    return static_cast<StateId>(it - states.begin());
}

namespace {

std::optional<SymbolId> find_in(const std::vector<std::string>& alphabet,
                                std::string_view name) noexcept {
    auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) return std::nullopt;
    return static_cast<SymbolId>(it - alphabet.begin());
}

void check_alphabet(const std::vector<std::string>& alphabet, std::string_view which,
                    std::vector<Violation>& out) {
    std::set<std::string_view> seen;
    for (const auto& name : alphabet) {
        if (!is_valid_symbol_name(name)) {
            out.push_back({"bad-symbol", std::string(which), "invalid symbol name '" + name + "'"});
        }
        if (!seen.insert(name).second) {
            out.push_back({"duplicate-symbol", std::string(which), "symbol '" + name + "' declared twice"});
        }
    }
}

}  // namespace

std::optional<SymbolId> PcpaSystem::find_input(std::string_view name) const noexcept {
    return find_in(input_alphabet, name);
}

std::optional<SymbolId> PcpaSystem::find_stack(std::string_view name) const noexcept {
    return find_in(stack_alphabet, name);
}

std::optional<std::size_t> PcpaSystem::query_target(SymbolId symbol) const noexcept {
    for (const auto& q : query_map) {
        if (q.symbol == symbol) return q.target;
    }
    return std::nullopt;
}

ValidationReport validate_system(const PcpaSystem& sys) {
    ValidationReport report;
    auto& out = report.violations;
    const auto n = sys.degree();
    const auto delta = sys.stack_alphabet.size();
    const auto v = sys.input_alphabet.size();

    if (n == 0) out.push_back({"no-components", "system", "a system needs at least one component"});
    check_alphabet(sys.input_alphabet, "input_alphabet", out);
    check_alphabet(sys.stack_alphabet, "stack_alphabet", out);

    std::set<SymbolId> query_symbols;
    std::set<std::size_t> query_targets;
    for (std::size_t k = 0; k < sys.query_map.size(); ++k) {
        const auto& q = sys.query_map[k];
        const std::string where = "query_map[" + std::to_string(k) + "]";
        if (q.symbol >= delta) {
            out.push_back({"query-symbol-undeclared", where, "query symbol is not in the stack alphabet"});
            continue;
        }
        const auto& name = sys.stack_alphabet[q.symbol];
        if (q.target >= n) {
            out.push_back({"query-target-out-of-range", where,
                           "'" + name + "' names component " + std::to_string(q.target + 1)});
        }
        if (!query_symbols.insert(q.symbol).second || !query_targets.insert(q.target).second) {
            out.push_back({"query-map-not-injective", where,
                           "query map not injective at '" + name + "'"});
        }
        if (find_in(sys.input_alphabet, name)) {
            out.push_back({"query-symbol-in-input-alphabet", where,
                           "query symbol in input alphabet: '" + name + "'"});
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        const auto& comp = sys.components[i];
        const std::string where = "components[" + std::to_string(i + 1) + "]";
        const auto q = comp.states.size();
        if (q == 0) out.push_back({"no-states", where, "component has no states"});
        std::set<std::string_view> seen;
        for (const auto& s : comp.states) {
            if (!is_valid_state_name(s)) out.push_back({"bad-state", where, "invalid state name '" + s + "'"});
            if (!seen.insert(s).second) out.push_back({"duplicate-state", where, "state '" + s + "' declared twice"});
        }
        if (comp.initial >= q) out.push_back({"initial-undeclared", where, "initial state out of range"});
        if (comp.initial_stack >= delta) {
            out.push_back({"initial-stack-undeclared", where, "initial stack symbol not in stack alphabet"});
        } else if (query_symbols.contains(comp.initial_stack)) {
            out.push_back({"initial-stack-is-query", where, "initial stack symbol is a query symbol"});
        }
        for (auto f : comp.finals) {
            if (f >= q) out.push_back({"final-undeclared", where, "final state out of range"});
        }
        if (!std::is_sorted(comp.finals.begin(), comp.finals.end()) ||
            std::adjacent_find(comp.finals.begin(), comp.finals.end()) != comp.finals.end()) {
            out.push_back({"finals-not-canonical", where, "finals must be sorted and unique"});
        }
        if (!comp.kc.empty() && comp.kc.size() != q) {
            out.push_back({"kc-annotation-size", where, "known-communication annotation size mismatch"});
        }
        bool queries = false;
        for (std::size_t t = 0; t < comp.transitions.size(); ++t) {
            const auto& tr = comp.transitions[t];
            const std::string at = where + ".transitions[" + std::to_string(t) + "]";
            if (tr.from >= q || tr.to >= q) out.push_back({"transition-state-undeclared", at, "state out of range"});
            if (tr.read && *tr.read >= v) out.push_back({"transition-read-undeclared", at, "read symbol not in input alphabet"});
            if (tr.pop >= delta) {
                out.push_back({"transition-pop-undeclared", at, "pop symbol not in stack alphabet"});
            } else if (query_symbols.contains(tr.pop)) {
                out.push_back({"query-symbol-popped", at,
                               "query symbol '" + sys.stack_alphabet[tr.pop] + "' used as pop symbol"});
            }
            for (auto s : tr.push) {
                if (s >= delta) {
                    out.push_back({"transition-push-undeclared", at, "push symbol not in stack alphabet"});
                } else if (query_symbols.contains(s)) {
                    queries = true;
                }
            }
        }
        if (queries) report.querying_components.push_back(i);
    }
    return report;
}

void require_valid(const PcpaSystem& sys) {
    const auto report = validate_system(sys);
    if (report.ok()) return;
    std::ostringstream msg;
    msg << "invalid system:";
    for (const auto& v : report.violations) msg << ' ' << v.location << ": " << v.message << ';';
    throw Error(ErrorCode::invalid_system, msg.str());
}

Classification classify(const PcpaSystem& sys) {
    const auto report = validate_system(sys);
    if (!report.ok()) throw Error(ErrorCode::invalid_system, "classify: system is not valid");
    Classification c;
    c.mode = sys.mode;
    c.centralized = report.querying_components.size() <= 1;
    if (report.querying_components.size() == 1) c.master = report.querying_components.front();
    return c;
}

}  // namespace pcpa
