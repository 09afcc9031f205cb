#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pcpa/search.hpp"
#include "pcpa/system.hpp"

namespace pcpa {

struct ComponentConfiguration {
    StateId state = 0;
    std::size_t consumed = 0;        // unread input is word[consumed..]
    std::vector<SymbolId> stack;     // front is the top

    bool operator==(const ComponentConfiguration&) const = default;
};

/// The 3n-tuple (s_i, x_i, α_i). Inputs are stored as read positions into the
/// shared word.
struct SystemConfiguration {
    std::vector<ComponentConfiguration> parts;

    bool operator==(const SystemConfiguration&) const = default;
};

struct SystemConfigurationHash {
    std::size_t operator()(const SystemConfiguration& c) const noexcept;
};

struct Step {
    StepKind kind = StepKind::usual;
    SystemConfiguration next;
};

struct Communication {
    SystemConfiguration next;
    std::vector<std::size_t> sources;  // 0-based, ascending
};

/// Transition lookup for one system, built once and reused across steps.
/// Holds a reference to the system; the system must outlive it.
class Stepper {
public:
    explicit Stepper(const PcpaSystem& sys);

    const PcpaSystem& system() const noexcept { return sys_; }

    /// nullopt = Blocked. Precondition: some top is a query symbol.
    std::optional<Communication> communicate(const SystemConfiguration& c) const;

    /// Lock-step product of per-component choices, lexicographic by transition index.
    std::vector<SystemConfiguration> usual_successors(const SystemConfiguration& c,
                                                      std::span<const SymbolId> word) const;

    void successors(const SystemConfiguration& c, std::span<const SymbolId> word,
                    std::vector<std::pair<StepKind, SystemConfiguration>>& out) const;

    bool has_query_top(const SystemConfiguration& c) const noexcept;
    bool accepting(const SystemConfiguration& c, std::size_t word_length) const noexcept;

private:
    // transitions of component i from `state` popping `symbol`, in declaration order
    const std::vector<std::size_t>& bucket(std::size_t component, StateId state,
                                          SymbolId symbol) const noexcept;

    const PcpaSystem& sys_;
    std::vector<std::vector<std::vector<std::size_t>>> buckets_;  // [component][state*|Δ|+symbol]
    std::vector<std::optional<std::size_t>> query_target_;       // by stack symbol
    std::vector<std::size_t> empty_;
};

/// Maps symbol names to ids; throws Error(alphabet_error) on unknown symbols.
std::vector<SymbolId> encode_word(const std::vector<std::string>& alphabet, const Word& word);

SystemConfiguration initial_configuration(const PcpaSystem& sys, const Word& word);

std::optional<SystemConfiguration> communication_step(const PcpaSystem& sys,
                                                      const SystemConfiguration& c);

std::vector<SystemConfiguration> usual_step_successors(const PcpaSystem& sys,
                                                       const SystemConfiguration& c,
                                                       const Word& word);

std::vector<Step> step_successors(const PcpaSystem& sys, const SystemConfiguration& c,
                                  const Word& word);

using PcpaVerdict = Verdict<SystemConfiguration>;

PcpaVerdict run_bounded(const PcpaSystem& sys, const Word& word, const SearchLimits& limits);

}  // namespace pcpa
