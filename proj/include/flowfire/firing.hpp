// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flowfire/grid.hpp"

namespace flowfire {

struct FireMove {
    FaceCoord from;
    FaceCoord to;
    friend auto operator<=>(const FireMove&, const FireMove&) = default;
};

enum class FireRule : std::uint8_t { ordinary, from_marked, into_marked };

const char* to_string(FireRule rule) noexcept;
std::string describe(const FireMove& m);

// Throws invalid_move unless the faces are adjacent and not both marked.
void validate_move(const FireMove& m);
bool is_well_formed(const FireMove& m) noexcept;

FireRule rule_of(const FireMove& m) noexcept;

bool is_legal(const MarkedConfig& c, const FireMove& m);
// Throws illegal_fire naming the violated rule.
MarkedConfig apply(const MarkedConfig& c, const FireMove& m);
void apply_in_place(MarkedConfig& c, const FireMove& m);
std::optional<MarkedConfig> try_apply(const MarkedConfig& c, const FireMove& m);

// Sorted by source face, then by direction E,N,W,S.
std::vector<FireMove> legal_moves(const MarkedConfig& c);
std::optional<FireMove> first_legal_move(const MarkedConfig& c);
bool is_stable(const MarkedConfig& c);

// Applies moves in order; a failure carries the offending index.
MarkedConfig replay(const MarkedConfig& c, std::span<const FireMove> trace);

}  // namespace flowfire
