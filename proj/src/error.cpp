// SPDX-License-Identifier: Apache-2.0
#include "flowfire/error.hpp"

namespace flowfire {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid-argument";
        case ErrorCode::invalid_move: return "invalid-move";
        case ErrorCode::illegal_fire: return "illegal-fire";
        case ErrorCode::out_of_path: return "out-of-path";
        case ErrorCode::out_of_scope: return "out-of-scope";
        case ErrorCode::violation: return "violation";
        case ErrorCode::nothing_to_flood: return "nothing-to-flood";
        case ErrorCode::budget_exhausted: return "budget-exhausted";
        case ErrorCode::parse: return "parse";
    }
    return "unknown";
}

}  // namespace flowfire
