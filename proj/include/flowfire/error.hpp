// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace flowfire {

enum class ErrorCode {
    invalid_argument,
    invalid_move,
    illegal_fire,
    out_of_path,
    out_of_scope,
    violation,
    nothing_to_flood,
    budget_exhausted,
    parse,
};

const char* to_string(ErrorCode code) noexcept;

// Domain failures surface as this type; the non-throwing probes
// (is_legal, try_apply, ...) exist for hot paths.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    // Position of the offending element when the failure came from a sequence.
    std::optional<std::size_t> index() const noexcept { return index_; }
    Error& at_index(std::size_t i) {
        index_ = i;
        return *this;
    }

private:
    ErrorCode code_;
    std::optional<std::size_t> index_;
};

}  // namespace flowfire
