// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "flowfire/firing.hpp"
#include "flowfire/grid.hpp"

namespace flowfire {

struct Schedule {
    MarkedConfig result;
    std::vector<FireMove> trace;
};

// Requires marked weight n and no face above az(n). Ends exactly at az(n).
Schedule complete_to_aztec(const MarkedConfig& c, int n);

// Requires marked weight n and at least one face above az(n). Ends with a
// positive face beyond distance n.
Schedule flood_escape(const MarkedConfig& c, int n);

inline constexpr std::size_t kDefaultStepBudget = 10'000'000;

// Fires the first legal move in canonical order until stable.
Schedule stabilize_any(const MarkedConfig& c, std::size_t budget = kDefaultStepBudget);

struct Regime2Run {
    MarkedConfig intermediate;  // after the per-quadrant row firing
    std::size_t row_moves = 0;  // prefix of trace spent on row firing
    MarkedConfig result;
    std::vector<FireMove> trace;
};

// Requires 2 <= r <= ceil(n/2). Trace runs from K(n,r) to az(n).
Regime2Run regime2_reach_aztec(int n, int r);

enum class Decomposition : std::uint8_t { d1, d2 };
enum class Quadrant : std::uint8_t { north, west, south, east };

inline constexpr std::array<Quadrant, 4> kQuadrants{Quadrant::north, Quadrant::west,
                                                    Quadrant::south, Quadrant::east};

const char* to_string(Decomposition d) noexcept;
const char* to_string(Quadrant q) noexcept;

// Every face except the marked one lies in exactly one quadrant.
std::optional<Quadrant> quadrant_of(FaceCoord f, Decomposition d) noexcept;

struct QuadrantRun {
    MarkedConfig result;
    std::vector<FireMove> trace;
    std::size_t rounds = 0;
    // False when the sweeps settled on a configuration that still had legal
    // moves and stabilize_any finished the job.
    bool sweeps_stable = true;
};

// Alternates row and column sweeps away from the marked face inside each
// quadrant of d until a round makes no move.
QuadrantRun quadrant_stabilize(const MarkedConfig& c, Decomposition d);
// Same, starting from K(n,r).
QuadrantRun quadrant_stabilize(int n, int r, Decomposition d);

std::int64_t aztec_weight(int n);
std::int64_t pulse_weight(int n, int r);

// Least r with pulse_weight(n, r) > aztec_weight(n). Requires n >= 1.
int min_r_exceeding(int n);
// ceil(n / sqrt(3)), computed exactly.
int ceil_n_over_sqrt3(int n);
// Radius from which K(n,r) outweighs az(n): ceil(n/sqrt(3)) + 1.
inline int weight_threshold(int n) { return ceil_n_over_sqrt3(n) + 1; }

enum class Regime : std::uint8_t { r1, r2, gap, r3 };
const char* to_string(Regime g) noexcept;

struct RegimeReport {
    int n = 0;
    int r = 0;
    Regime regime = Regime::r1;
    std::int64_t pulse_weight = 0;
    std::int64_t aztec_weight = 0;
    std::optional<int> min_r_exceeding;  // absent for n = 0
    // r >= ceil(n/sqrt(3)) + 1 with n >= 1: az(n) is out of reach by weight.
    bool weight_excludes_aztec = false;  // pulse outweighs az(n), so az(n) is unreachable
};

RegimeReport classify(int n, int r);

struct TableRow {
    int n = 0;
    int ceil_half = 0;
    int min_r = 0;
    int threshold = 0;
    // Published values, known for 3 <= n <= 24.
    std::optional<int> reference_min_r;
    std::optional<int> reference_ceil_half;
    std::optional<int> reference_threshold;
    bool matches_reference() const noexcept;
};

std::vector<TableRow> regime_table(int n_min, int n_max);

}  // namespace flowfire
