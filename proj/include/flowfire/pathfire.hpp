// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "flowfire/firing.hpp"
#include "flowfire/grid.hpp"

namespace flowfire {

// Successive faces, each adjacent to the previous, never the marked face.
struct PathSpec {
    std::vector<FaceCoord> faces;
};

void validate_path(const PathSpec& p);

using PathWeights = std::vector<int>;

struct CanonicalRowInput {
    int n = 1;
    int ell = 1;
};

constexpr int ceil_half(int n) noexcept { return (n + 1) / 2; }

// R(ell): ell copies of n then n - ceil(n/2) zeros.
PathWeights canonical_row(const CanonicalRowInput& in);

bool can_fire_forward(const PathWeights& r, std::size_t i) noexcept;
// Forward fire from index i to i+1.
PathWeights path_fire_step(const PathWeights& r, std::size_t i);
bool is_path_stable(const PathWeights& r) noexcept;
bool is_weakly_decreasing(const PathWeights& r) noexcept;
PathWeights trim_trailing_zeros(PathWeights r);

// Unique path-stable outcome of R(ell), trailing zeros trimmed.
PathWeights closed_form_stable(const CanonicalRowInput& in);

// Exhaustive search over all forward firing orders; input must be weakly
// decreasing. Terminals keep the input length.
std::set<PathWeights> simulate_all_orders(const PathWeights& r0);

enum class LemmaPattern : std::uint8_t {
    not_decreasing,        // weak decrease broken
    fired_triple,          // three consecutive equal values, one of them fired
    unit_descent_repeats,  // a, a, a-1, ..., b, b over fired faces
};

const char* to_string(LemmaPattern p) noexcept;

struct LemmaViolation {
    LemmaPattern pattern;
    std::size_t step = 0;      // index into the trace
    std::size_t position = 0;  // first face of the pattern
};

struct LemmaReport {
    std::size_t configurations_checked = 0;
    std::vector<LemmaViolation> violations;
    // Fired masks of the path-stable states; filled by check_all_traces.
    std::set<std::vector<bool>> terminal_fired;
    bool clean() const noexcept { return violations.empty(); }
};

// A face counts as fired once its weight has differed from the previous
// configuration of the trace.
LemmaReport check_trace_lemmas(std::span<const PathWeights> trace);

// Same checks for one configuration with its fired mask.
void check_lemma_state(const PathWeights& w, const std::vector<bool>& fired,
                       std::size_t step, std::vector<LemmaViolation>& out);

// Checks every (configuration, fired mask) pair reachable by forward path
// firing from r0. Every trace passes through only such pairs, so a clean
// report covers all traces.
LemmaReport check_all_traces(const PathWeights& r0);

struct SupportBounds {
    int length = 0;  // nonzero entries of the stable outcome
    int m = 0;
    bool repeated = false;
    int m_lower_bound = 0;
    bool bound_holds = false;
};

// Requires 1 <= ell <= ceil(n/2).
SupportBounds support_length_bounds(const CanonicalRowInput& in);

// Reads the path's current weights from a configuration.
PathWeights read_path(const MarkedConfig& c, const PathSpec& p);

// Fires forward along p, always at the first legal index, until no forward
// move is legal. Returns the number of moves; appends them to trace if given.
std::size_t fire_path_to_stable(MarkedConfig& c, const PathSpec& p,
                                std::vector<FireMove>* trace);

}  // namespace flowfire
