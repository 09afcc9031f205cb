#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcpa {

enum class ErrorCode {
    invalid_system,
    alphabet_error,
    precondition_violated,
    unsupported_mode,
    not_centralized,
    missing_known_communication,
    not_simple,
    no_queriers,
    alphabet_mismatch,
    not_known_comm_shaped,
    parse_error,
    validation_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every library failure is reported through this one exception type; the code
/// tells callers (and the CLI's exit-code mapping) which contract was broken.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pcpa
