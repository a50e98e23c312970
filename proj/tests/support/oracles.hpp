// SPDX-License-Identifier: Apache-2.0
// Independent reference implementations used only by tests.
#pragma once

#include <cstdint>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flowfire/firing.hpp"
#include "flowfire/grid.hpp"
#include "flowfire/io.hpp"
#include "flowfire/pathfire.hpp"

namespace oracle {

using flowfire::FaceCoord;
using flowfire::MarkedConfig;

inline MarkedConfig load_fixture(const std::string& name) {
    std::ifstream in(std::string(FLOWFIRE_FIXTURE_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return flowfire::config_from_json(flowfire::parse_json_text(ss.str()));
}

// Sum of max(n - |x| - |y| + 1, 0) over a box, the marked face counted as n.
inline std::int64_t aztec_sum(int n) {
    std::int64_t s = n;
    for (int x = -n - 2; x <= n + 2; ++x) {
        for (int y = -n - 2; y <= n + 2; ++y) {
            if (x == 0 && y == 0) continue;
            const int v = n - (x < 0 ? -x : x) - (y < 0 ? -y : y) + 1;
            if (v > 0) s += v;
        }
    }
    return s;
}

inline std::int64_t pulse_sum(int n, int r) {
    std::int64_t s = n;
    for (int x = -r; x <= r; ++x) {
        for (int y = -r; y <= r; ++y) {
            if ((x != 0 || y != 0) && (x < 0 ? -x : x) + (y < 0 ? -y : y) <= r) s += n;
        }
    }
    return s;
}

// Stability straight from the definition: every ordinary adjacent pair
// differs by at most one and every neighbour of the marked face equals n.
inline bool stable_by_definition(const MarkedConfig& c) {
    const int n = c.marked_weight();
    const FaceCoord nb[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (const FaceCoord& g : nb) {
        if (c.weight(g) != n) return false;
    }
    std::set<FaceCoord> faces;
    for (const auto& [f, w] : c.faces()) {
        faces.insert(f);
        for (const FaceCoord& d : nb) faces.insert({f.x + d.x, f.y + d.y});
    }
    for (const FaceCoord& f : faces) {
        if (f.x == 0 && f.y == 0) continue;
        for (const FaceCoord& d : nb) {
            const FaceCoord g{f.x + d.x, f.y + d.y};
            if (g.x == 0 && g.y == 0) continue;
            const int diff = c.weight(f) - c.weight(g);
            if (diff > 1 || diff < -1) return false;
        }
    }
    return true;
}

struct NaiveExploreResult {
    std::set<MarkedConfig> terminals;
    std::uint64_t states = 0;
    bool cap_exceeded = false;
};

// Breadth-first closure over whole configurations, no symmetry, no packing.
inline NaiveExploreResult naive_explore(const MarkedConfig& c0, int cap) {
    NaiveExploreResult out;
    std::set<MarkedConfig> seen{c0};
    std::deque<MarkedConfig> queue{c0};
    while (!queue.empty()) {
        MarkedConfig c = std::move(queue.front());
        queue.pop_front();
        const auto moves = flowfire::legal_moves(c);
        if (moves.empty()) out.terminals.insert(c);
        for (const auto& m : moves) {
            if (flowfire::norm(m.to) > cap) {
                out.cap_exceeded = true;
                continue;
            }
            MarkedConfig next = flowfire::apply(c, m);
            if (seen.insert(next).second) queue.push_back(std::move(next));
        }
    }
    out.states = seen.size();
    return out;
}

// Every maximal forward path-firing trace from r0, as explicit sequences.
inline void all_traces(std::vector<flowfire::PathWeights>& prefix,
                       std::vector<std::vector<flowfire::PathWeights>>& out) {
    const flowfire::PathWeights r = prefix.back();
    bool moved = false;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        if (r[i] < r[i + 1] + 2) continue;
        moved = true;
        auto next = r;
        --next[i];
        ++next[i + 1];
        prefix.push_back(next);
        all_traces(prefix, out);
        prefix.pop_back();
    }
    if (!moved) out.push_back(prefix);
}

}  // namespace oracle
