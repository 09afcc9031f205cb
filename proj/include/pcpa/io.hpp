#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcpa/harness.hpp"

namespace pcpa {

inline constexpr int kFormatVersion = 1;

/// Parses a machine document and validates it. Malformed documents raise
/// Error(parse_error) with a line or field location; well-formed documents
/// that break an invariant raise Error(validation_error).
Machine parse_machine(std::string_view text);

/// Canonical document text; parse_machine(serialize_machine(m)) == m.
std::string serialize_machine(const Machine& machine);

std::string serialize_machines(const std::vector<Machine>& machines);

/// Words are written by concatenation when every symbol is one character,
/// otherwise dot-separated; the empty word is "ε".
std::string format_word(const std::vector<std::string>& alphabet, const Word& word);

/// Accepts "", "ε" or "-" for the empty word, dot-separated tokens, or plain
/// concatenation over a single-character alphabet.
Word parse_word(const std::vector<std::string>& alphabet, std::string_view text);

/// One `STEP k KIND (...)` line per configuration, stacks written top-first.
std::string format_trace(const PcpaSystem& sys, const Word& word,
                         const Trace<SystemConfiguration>& trace);
std::string format_trace(const MhpdaMachine& m, const Word& word, const Trace<MhConfiguration>& trace);

}  // namespace pcpa
