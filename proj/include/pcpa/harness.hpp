#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcpa/multihead.hpp"
#include "pcpa/step.hpp"
#include "pcpa/system.hpp"

namespace pcpa {

using Machine = std::variant<PcpaSystem, MhpdaMachine>;

const std::vector<std::string>& input_alphabet(const Machine& machine) noexcept;

/// Runs the bounded engine that matches the machine kind.
Outcome decide(const Machine& machine, const Word& word, const SearchLimits& limits);

/// All words of length 0..max_len, shortest first, then lexicographic in the
/// declared alphabet order.
std::vector<Word> enumerate_words(const std::vector<std::string>& alphabet, std::size_t max_len);

struct LanguageSample {
    std::vector<std::string> alphabet;
    std::size_t max_len = 0;
    SearchLimits limits;
    std::vector<Word> words;          // canonical order
    std::vector<Outcome> verdicts;    // parallel to `words`
    std::vector<Word> accepted;
    std::vector<Word> rejected;
    std::vector<Word> unknown;
};

/// `jobs` > 1 spreads words over worker threads; the result does not depend on it.
LanguageSample language_sample(const Machine& machine, std::size_t max_len,
                               const SearchLimits& limits, unsigned jobs = 1);

struct Disagreement {
    Word word;
    Outcome left = Outcome::unknown;
    Outcome right = Outcome::unknown;
};

struct ComparisonReport {
    std::size_t agree_count = 0;
    std::vector<Disagreement> disagreements;  // never involves an unknown verdict
    std::vector<Word> unknown_words;
};

ComparisonReport compare_languages(const Machine& left, const Machine& right, std::size_t max_len,
                                   const SearchLimits& limits, unsigned jobs = 1);

/// Left = source sample, right = intersection of the parts' samples.
ComparisonReport intersection_check(const Machine& source, const std::vector<Machine>& parts,
                                    std::size_t max_len, const SearchLimits& limits,
                                    unsigned jobs = 1);

struct PropertyReport {
    bool holds = true;
    bool complete = true;  // every trace was explored within the limits
    std::optional<Trace<SystemConfiguration>> counterexample;
    std::string message;
    SearchStats stats;
};

/// Explores every trace of a known-communication system and checks that a
/// component is in a switch=1 state after a usual step exactly when it was a
/// communication source in the step before (or, when communication steps
/// chain, in any of the communication steps since its last usual step).
PropertyReport check_switch_property(const PcpaSystem& sys_kc, const Word& word,
                                     const SearchLimits& limits);

}  // namespace pcpa
