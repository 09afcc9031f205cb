#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcpa/search.hpp"
#include "pcpa/system.hpp"

namespace pcpa {

/// What one head inspects: nothing (ε), an input letter, or the end marker.
struct HeadRead {
    enum class Kind : std::uint8_t { skip, letter, endmarker };

    Kind kind = Kind::skip;
    SymbolId letter = 0;

    static HeadRead skip() noexcept { return {}; }
    static HeadRead of(SymbolId s) noexcept { return {Kind::letter, s}; }
    static HeadRead end() noexcept { return {Kind::endmarker, 0}; }

    bool operator==(const HeadRead&) const = default;
};

struct MhTransition {
    StateId from = 0;
    std::vector<HeadRead> reads;  // one per head
    SymbolId pop = 0;
    StateId to = 0;
    std::vector<bool> advances;   // one per head
    std::vector<SymbolId> push;   // front is the new top

    bool operator==(const MhTransition&) const = default;
};

struct MhpdaMachine {
    std::size_t heads = 1;
    std::vector<std::string> states;
    std::vector<std::string> input_alphabet;
    std::vector<std::string> stack_alphabet;
    StateId initial = 0;
    SymbolId initial_stack = 0;
    std::vector<StateId> finals;  // sorted, unique
    std::vector<MhTransition> transitions;
    std::string endmarker = "$";

    bool is_final(StateId state) const noexcept;
    std::optional<StateId> find_state(std::string_view name) const noexcept;

    bool operator==(const MhpdaMachine&) const = default;
};

/// Position |w| means the head is on the end marker.
struct MhConfiguration {
    StateId state = 0;
    std::vector<std::uint32_t> positions;
    std::vector<SymbolId> stack;  // front is the top

    bool operator==(const MhConfiguration&) const = default;
};

struct MhConfigurationHash {
    std::size_t operator()(const MhConfiguration& c) const noexcept;
};

ValidationReport validate_mhpda(const MhpdaMachine& m);
void require_valid(const MhpdaMachine& m);

class MhStepper {
public:
    explicit MhStepper(const MhpdaMachine& m);

    void successors(const MhConfiguration& c, std::span<const SymbolId> word,
                    std::vector<std::pair<StepKind, MhConfiguration>>& out) const;
    bool accepting(const MhConfiguration& c, std::size_t word_length) const noexcept;

private:
    const MhpdaMachine& m_;
    std::vector<std::vector<std::size_t>> buckets_;  // [state*|Δ|+symbol]
};

std::vector<MhConfiguration> mh_step_successors(const MhpdaMachine& m, const MhConfiguration& c,
                                                const Word& word);

MhConfiguration mh_initial_configuration(const MhpdaMachine& m);

using MhVerdict = Verdict<MhConfiguration>;

MhVerdict mh_run_bounded(const MhpdaMachine& m, const Word& word, const SearchLimits& limits);

}  // namespace pcpa
