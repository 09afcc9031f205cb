#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcpa/error.hpp"

namespace pcpa {

using SymbolId = std::uint32_t;  // index into an alphabet
using StateId = std::uint32_t;   // index into a component's state list

/// A word is a sequence of input-symbol names.
using Word = std::vector<std::string>;

/// Symbols are non-empty tokens over [A-Za-z0-9_'].
bool is_valid_symbol_name(std::string_view name) noexcept;

/// States may be any non-empty token without whitespace or the trace
/// delimiters `,` `|` `(` `)`.
bool is_valid_state_name(std::string_view name) noexcept;

enum class Mode { returning, non_returning };

std::string_view to_string(Mode mode) noexcept;

struct Transition {
    StateId from = 0;
    std::optional<SymbolId> read;  // input symbol, nullopt = ε
    SymbolId pop = 0;
    StateId to = 0;
    std::vector<SymbolId> push;  // front is the new top

    bool operator==(const Transition&) const = default;
};

/// Phase of a state produced by the known-communication transform.
enum class KcPhase { initial, primed1, primed2, sim1, sim2 };

std::string_view to_string(KcPhase phase) noexcept;
std::optional<KcPhase> kc_phase_from_string(std::string_view text) noexcept;

struct KcState {
    std::string base;
    KcPhase phase = KcPhase::initial;
    bool switch_on = false;

    bool operator==(const KcState&) const = default;
};

struct PdaComponent {
    std::vector<std::string> states;
    StateId initial = 0;
    SymbolId initial_stack = 0;
    std::vector<StateId> finals;  // sorted, unique
    std::vector<Transition> transitions;
    // Either empty or one annotation per state (known-communication systems).
    std::vector<KcState> kc;

    bool is_final(StateId state) const noexcept;
    bool kc_annotated() const noexcept { return !kc.empty() && kc.size() == states.size(); }
    std::optional<StateId> find_state(std::string_view name) const noexcept;

    bool operator==(const PdaComponent&) const = default;
};

/// K_j binding; `target` is the 0-based index of component j.
struct QueryBinding {
    SymbolId symbol = 0;
    std::size_t target = 0;

    bool operator==(const QueryBinding&) const = default;
};

struct PcpaSystem {
    std::vector<std::string> input_alphabet;
    std::vector<std::string> stack_alphabet;
    std::vector<PdaComponent> components;
    std::vector<QueryBinding> query_map;
    Mode mode = Mode::returning;

    std::size_t degree() const noexcept { return components.size(); }
    std::optional<SymbolId> find_input(std::string_view name) const noexcept;
    std::optional<SymbolId> find_stack(std::string_view name) const noexcept;
    /// Component queried by `symbol`, if it is a query symbol.
    std::optional<std::size_t> query_target(SymbolId symbol) const noexcept;
    bool is_query(SymbolId symbol) const noexcept { return query_target(symbol).has_value(); }

    bool operator==(const PcpaSystem&) const = default;
};

struct Violation {
    std::string code;
    std::string location;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    // Informational: 0-based indices of components whose pushes contain a query symbol.
    std::vector<std::size_t> querying_components;

    bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate_system(const PcpaSystem& sys);

/// Throws Error(invalid_system) listing the first violations.
void require_valid(const PcpaSystem& sys);

struct Classification {
    bool centralized = true;
    std::optional<std::size_t> master;  // 0-based
    Mode mode = Mode::returning;
};

Classification classify(const PcpaSystem& sys);

}  // namespace pcpa
