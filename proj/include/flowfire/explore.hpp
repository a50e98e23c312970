// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "flowfire/firing.hpp"
#include "flowfire/grid.hpp"

namespace flowfire {

struct ExploreBounds {
    int radius_cap = 0;  // moves into faces beyond this distance are excluded
    std::uint64_t max_states = UINT64_MAX;
    std::uint32_t max_depth = UINT32_MAX;
};

// Radius cap n + support_radius + 2, no state or depth limit.
ExploreBounds default_bounds(const MarkedConfig& c0);

struct ExploreProgress {
    std::int64_t potential = 0;  // potential level being expanded
    std::uint64_t level_orbits = 0;
    std::uint64_t states_visited = 0;
    std::uint64_t live_orbits = 0;
};

struct ExploreOptions {
    unsigned threads = 0;  // 0 picks the hardware concurrency
    bool use_symmetry = true;
    std::function<void(const ExploreProgress&)> progress;
};

struct TerminalWitness {
    MarkedConfig terminal;
    std::vector<FireMove> trace;  // from the initial configuration
};

struct ExploreResult {
    std::vector<TerminalWitness> terminals;  // sorted by configuration
    std::uint64_t states_visited = 0;
    bool truncated = false;
    // Reasons behind truncation.
    bool cap_exceeded = false;
    bool state_limit_hit = false;
    bool depth_limit_hit = false;
};

// Closure of the legal-move relation inside the radius cap. Requires
// support_radius(c0) < radius_cap. Never throws on limits; sets truncated.
ExploreResult explore(const MarkedConfig& c0, const ExploreBounds& b,
                      const ExploreOptions& opt = {});

enum class Confluence : std::uint8_t { no, yes, unknown };
const char* to_string(Confluence c) noexcept;

Confluence is_confluent(const ExploreResult& r) noexcept;
Confluence is_confluent(const MarkedConfig& c0, const ExploreBounds& b,
                        const ExploreOptions& opt = {});

}  // namespace flowfire
