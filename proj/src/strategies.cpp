// SPDX-License-Identifier: Apache-2.0
#include "flowfire/strategies.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "flowfire/error.hpp"
#include "flowfire/pathfire.hpp"

namespace flowfire {

namespace {

std::string face_str(FaceCoord f) {
    return "(" + std::to_string(f.x) + "," + std::to_string(f.y) + ")";
}

void require_marked(const MarkedConfig& c, int n) {
    if (n < 0 || c.marked_weight() != n) {
        throw Error(ErrorCode::invalid_argument,
                    "marked weight " + std::to_string(c.marked_weight()) +
                        " does not match n=" + std::to_string(n));
    }
}

struct Recorder {
    Schedule& s;
    void fire(const FireMove& m) {
        apply_in_place(s.result, m);
        s.trace.push_back(m);
    }
};

int sign(int v) noexcept { return (v > 0) - (v < 0); }

}  // namespace

Schedule complete_to_aztec(const MarkedConfig& c, int n) {
    require_marked(c, n);
    if (const auto v = violates_aztec(c, n); !v.empty()) {
        std::string list;
        for (FaceCoord f : v) list += " " + face_str(f);
        throw Error(ErrorCode::violation, "configuration violates az(" +
                                              std::to_string(n) + ") at" + list);
    }
    Schedule s{c, {}};
    Recorder rec{s};
    // Faces of the diamond ordered by distance, then lexicographically.
    const MarkedConfig target = make_aztec(n);
    std::vector<FaceCoord> order;
    for (const auto& [f, w] : target.faces()) order.push_back(f);
    std::stable_sort(order.begin(), order.end(),
                     [](FaceCoord a, FaceCoord b) { return norm(a) < norm(b); });

    std::size_t first = 0;  // faces before this index all match az(n)
    while (first < order.size()) {
        const FaceCoord g = order[first];
        if (s.result.weight(g) == aztec_value(n, g)) {
            ++first;
            continue;
        }
        if (norm(g) == 1) {
            rec.fire({kMarkedFace, g});
            continue;
        }
        for (Direction d : kDirections) {
            const FaceCoord h = step(g, d);
            if (norm(h) == norm(g) - 1) {
                rec.fire({h, g});
                break;
            }
        }
        // The source may now be short; restart from its distance band.
        first = 0;
        while (first < order.size() && norm(order[first]) < norm(g) - 1) ++first;
    }
    return s;
}

namespace {

// Monotone path from the marked face to g (marked face excluded), bending
// once; x_first chooses which axis is walked first.
std::vector<FaceCoord> l_path(FaceCoord g, bool x_first) {
    std::vector<FaceCoord> p;
    FaceCoord cur = kMarkedFace;
    auto walk_x = [&] {
        while (cur.x != g.x) {
            cur.x += sign(g.x - cur.x);
            p.push_back(cur);
        }
    };
    auto walk_y = [&] {
        while (cur.y != g.y) {
            cur.y += sign(g.y - cur.y);
            p.push_back(cur);
        }
    };
    if (x_first) {
        walk_x();
        walk_y();
    } else {
        walk_y();
        walk_x();
    }
    return p;
}

bool avoids(const std::vector<FaceCoord>& p, FaceCoord f) {
    return std::find(p.begin(), p.end(), f) == p.end();
}

bool has_face_beyond(const MarkedConfig& c, int n) {
    return support_radius(c) > n;
}

}  // namespace

Schedule flood_escape(const MarkedConfig& c, int n) {
    require_marked(c, n);
    if (violates_aztec(c, n).empty()) {
        throw Error(ErrorCode::nothing_to_flood,
                    "configuration does not violate az(" + std::to_string(n) + ")");
    }
    Schedule s{c, {}};
    Recorder rec{s};
    auto violating = [&](FaceCoord h) { return s.result.weight(h) > aztec_value(n, h); };

    while (!has_face_beyond(s.result, n)) {
        const auto v = violates_aztec(s.result, n);
        if (v.empty()) {
            throw Error(ErrorCode::violation, "flooding lost its violation");
        }
        FaceCoord f = *v.begin();
        for (FaceCoord h : v) {
            if (norm(h) > norm(f)) f = h;
        }

        FaceCoord g{};
        std::vector<FaceCoord> path;
        for (Direction d : kDirections) {
            const FaceCoord cand = step(f, d);
            if (norm(cand) != norm(f) + 1) continue;
            for (bool x_first : {true, false}) {
                auto p = l_path(cand, x_first);
                if (avoids(p, f)) {
                    g = cand;
                    path = std::move(p);
                    break;
                }
            }
            if (!path.empty()) break;
        }

        // Push the farthest on-path violation outward until g violates or
        // the path is clean.
        while (!violating(g)) {
            std::size_t i = path.size();
            for (std::size_t k = path.size() - 1; k-- > 0;) {
                if (violating(path[k])) {
                    i = k;
                    break;
                }
            }
            if (i == path.size()) break;
            rec.fire({path[i], path[i + 1]});
        }
        if (violating(g)) continue;

        // Standardize the clean path, then fire f into g.
        for (;;) {
            std::size_t i = 0;
            while (i < path.size() && s.result.weight(path[i]) == aztec_value(n, path[i])) ++i;
            if (i == path.size()) break;
            rec.fire({i == 0 ? kMarkedFace : path[i - 1], path[i]});
        }
        rec.fire({f, g});
    }
    return s;
}

Schedule stabilize_any(const MarkedConfig& c, std::size_t budget) {
    Schedule s{c, {}};
    while (auto m = first_legal_move(s.result)) {
        if (s.trace.size() >= budget) {
            throw Error(ErrorCode::budget_exhausted,
                        "no stable configuration within " + std::to_string(budget) +
                            " moves");
        }
        apply_in_place(s.result, *m);
        s.trace.push_back(*m);
    }
    return s;
}

namespace {

// A quadrant is {sx*x >= ax, sy*y >= ay}; rows run along sx, columns along sy.
struct QuadrantShape {
    int sx, ax, sy, ay;
    bool contains(FaceCoord f) const noexcept { return sx * f.x >= ax && sy * f.y >= ay; }
};

QuadrantShape shape_of(Quadrant q, Decomposition d) noexcept {
    if (d == Decomposition::d1) {
        switch (q) {
            case Quadrant::north: return {1, 0, 1, 1};
            case Quadrant::west: return {-1, 1, 1, 0};
            case Quadrant::south: return {-1, 0, -1, 1};
            case Quadrant::east: return {1, 1, -1, 0};
        }
    }
    switch (q) {
        case Quadrant::north: return {-1, 0, 1, 1};
        case Quadrant::east: return {1, 1, 1, 0};
        case Quadrant::south: return {1, 0, -1, 1};
        case Quadrant::west: return {-1, 1, -1, 0};
    }
    return {1, 0, 1, 1};
}

// Fires every line of the quadrant away from the marked face. Lines are rows
// when horizontal is set, columns otherwise; processed nearest first.
std::size_t sweep(MarkedConfig& c, const QuadrantShape& q, bool horizontal,
                  std::vector<FireMove>& trace) {
    // line index -> (farthest nonzero offset, line weight)
    std::map<int, std::pair<int, int>> lines;
    for (const auto& [f, w] : c.faces()) {
        if (!q.contains(f)) continue;
        const int line = horizontal ? q.sy * f.y : q.sx * f.x;
        const int offset = horizontal ? q.sx * f.x - q.ax : q.sy * f.y - q.ay;
        auto& [far, weight] = lines[line];
        far = std::max(far, offset);
        weight += w;
    }
    std::size_t moves = 0;
    for (const auto& [line, info] : lines) {
        // Nonzero faces stay contiguous past the old support, so the path
        // never needs more than `weight` extra faces.
        const int length = info.first + info.second + 2;
        PathSpec p;
        p.faces.reserve(static_cast<std::size_t>(length));
        for (int k = 0; k < length; ++k) {
            p.faces.push_back(horizontal ? FaceCoord{q.sx * (q.ax + k), q.sy * line}
                                         : FaceCoord{q.sx * line, q.sy * (q.ay + k)});
        }
        moves += fire_path_to_stable(c, p, &trace);
    }
    return moves;
}

}  // namespace

const char* to_string(Decomposition d) noexcept { return d == Decomposition::d1 ? "d1" : "d2"; }

const char* to_string(Quadrant q) noexcept {
    switch (q) {
        case Quadrant::north: return "N";
        case Quadrant::west: return "W";
        case Quadrant::south: return "S";
        case Quadrant::east: return "E";
    }
    return "?";
}

std::optional<Quadrant> quadrant_of(FaceCoord f, Decomposition d) noexcept {
    for (Quadrant q : kQuadrants) {
        if (shape_of(q, d).contains(f)) return q;
    }
    return std::nullopt;
}

QuadrantRun quadrant_stabilize(int n, int r, Decomposition d) {
    if (n < 1 || r < 0) {
        throw Error(ErrorCode::invalid_argument, "quadrant algorithm needs n >= 1 and r >= 0");
    }
    return quadrant_stabilize(make_pulse(n, r), d);
}

QuadrantRun quadrant_stabilize(const MarkedConfig& c, Decomposition d) {
    QuadrantRun run;
    run.result = c;
    for (;;) {
        std::size_t moves = 0;
        for (bool horizontal : {true, false}) {
            for (Quadrant q : kQuadrants) {
                moves += sweep(run.result, shape_of(q, d), horizontal, run.trace);
            }
        }
        ++run.rounds;
        if (moves == 0) break;
    }
    if (!is_stable(run.result)) {
        run.sweeps_stable = false;
        Schedule rest = stabilize_any(run.result);
        run.result = std::move(rest.result);
        run.trace.insert(run.trace.end(), rest.trace.begin(), rest.trace.end());
    }
    return run;
}

Regime2Run regime2_reach_aztec(int n, int r) {
    if (r < 2 || r > ceil_half(n)) {
        throw Error(ErrorCode::out_of_scope,
                    "row schedule needs 2 <= r <= ceil(n/2), got n=" + std::to_string(n) +
                        " r=" + std::to_string(r));
    }
    Regime2Run run;
    MarkedConfig c = make_pulse(n, r);
    const int tail = n - ceil_half(n);
    // Row ell of the north quadrant holds ell faces starting at x = 0; the
    // other quadrants are its images under (x,y) -> (-x-1, y-1) and negation.
    for (Quadrant q : kQuadrants) {
        for (int ell = 1; ell <= r; ++ell) {
            PathSpec p;
            for (int k = 0; k < ell + tail; ++k) {
                const FaceCoord north{k, r - ell + 1};
                const FaceCoord west{-north.x - 1, north.y - 1};
                switch (q) {
                    case Quadrant::north: p.faces.push_back(north); break;
                    case Quadrant::west: p.faces.push_back(west); break;
                    case Quadrant::south: p.faces.push_back({-north.x, -north.y}); break;
                    case Quadrant::east: p.faces.push_back({-west.x, -west.y}); break;
                }
            }
            run.row_moves += fire_path_to_stable(c, p, &run.trace);
        }
    }
    run.intermediate = c;
    if (const auto v = violates_aztec(c, n); !v.empty()) {
        throw Error(ErrorCode::violation, "row firing left a face above az(" +
                                              std::to_string(n) + ") at " +
                                              face_str(*v.begin()));
    }
    Schedule rest = complete_to_aztec(c, n);
    run.result = std::move(rest.result);
    run.trace.insert(run.trace.end(), rest.trace.begin(), rest.trace.end());
    return run;
}

std::int64_t aztec_weight(int n) {
    const std::int64_t m = n;
    return m + 2 * m * (m + 1) * (m + 2) / 3;
}

std::int64_t pulse_weight(int n, int r) {
    const std::int64_t m = n;
    const std::int64_t q = r;
    return m + 2 * m * q * (q + 1);
}

int min_r_exceeding(int n) {
    if (n < 1) {
        throw Error(ErrorCode::invalid_argument, "min_r_exceeding needs n >= 1");
    }
    const std::int64_t rhs = static_cast<std::int64_t>(n + 1) * (n + 2);
    int r = 0;
    while (3 * static_cast<std::int64_t>(r) * (r + 1) <= rhs) ++r;
    return r;
}

int ceil_n_over_sqrt3(int n) {
    const std::int64_t n2 = static_cast<std::int64_t>(n) * n;
    int k = 0;
    while (3 * static_cast<std::int64_t>(k) * k < n2) ++k;
    return k;
}

const char* to_string(Regime g) noexcept {
    switch (g) {
        case Regime::r1: return "R1";
        case Regime::r2: return "R2";
        case Regime::gap: return "GAP";
        case Regime::r3: return "R3";
    }
    return "?";
}

RegimeReport classify(int n, int r) {
    if (n < 0 || r < 0) {
        throw Error(ErrorCode::invalid_argument, "classify needs n >= 0 and r >= 0");
    }
    RegimeReport rep;
    rep.n = n;
    rep.r = r;
    rep.pulse_weight = pulse_weight(n, r);
    rep.aztec_weight = aztec_weight(n);
    if (n >= 1) rep.min_r_exceeding = min_r_exceeding(n);
    const int threshold = weight_threshold(n);
    if (r <= 1) {
        rep.regime = Regime::r1;
    } else if (r <= ceil_half(n)) {
        rep.regime = Regime::r2;
    } else if (r >= threshold) {
        rep.regime = Regime::r3;
    } else {
        rep.regime = Regime::gap;
    }
    rep.weight_excludes_aztec = rep.pulse_weight > rep.aztec_weight;
    return rep;
}

namespace {

constexpr int kReferenceFirstN = 3;
constexpr std::array<int, 22> kReferenceCeilHalf{2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7,
                                                 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12};
constexpr std::array<int, 22> kReferenceMinR{2, 3, 4, 4, 5, 6, 6, 7, 7, 8, 8,
                                             9, 10, 10, 11, 11, 12, 12, 13, 14, 14, 15};
constexpr std::array<int, 22> kReferenceThreshold{3, 4, 4, 5, 6, 6, 7, 7, 8, 8, 9,
                                                  10, 10, 11, 11, 12, 12, 13, 14, 14, 15, 15};

}  // namespace

bool TableRow::matches_reference() const noexcept {
    return (!reference_min_r || *reference_min_r == min_r) &&
           (!reference_ceil_half || *reference_ceil_half == ceil_half) &&
           (!reference_threshold || *reference_threshold == threshold);
}

std::vector<TableRow> regime_table(int n_min, int n_max) {
    if (n_min < 1 || n_max < n_min) {
        throw Error(ErrorCode::invalid_argument, "table needs 1 <= n-min <= n-max");
    }
    std::vector<TableRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        TableRow row{n, ceil_half(n), min_r_exceeding(n), weight_threshold(n), {}, {}, {}};
        const int i = n - kReferenceFirstN;
        if (i >= 0 && i < static_cast<int>(kReferenceMinR.size())) {
            row.reference_min_r = kReferenceMinR[static_cast<std::size_t>(i)];
            row.reference_ceil_half = kReferenceCeilHalf[static_cast<std::size_t>(i)];
            row.reference_threshold = kReferenceThreshold[static_cast<std::size_t>(i)];
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace flowfire
