// SPDX-License-Identifier: Apache-2.0
#include "flowfire/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "flowfire/error.hpp"

namespace flowfire {

namespace {

std::string face_str(FaceCoord f) {
    return "(" + std::to_string(f.x) + "," + std::to_string(f.y) + ")";
}

void require_non_negative_n(int n) {
    if (n < 0) {
        throw Error(ErrorCode::invalid_argument,
                    "marked weight must be non-negative, got " + std::to_string(n));
    }
}

}  // namespace

MarkedConfig::MarkedConfig(int n) : n_(n) { require_non_negative_n(n); }

MarkedConfig::MarkedConfig(int n, const FaceMap& weights) : n_(n) {
    require_non_negative_n(n);
    for (const auto& [f, w] : weights) set(f, w);
}

int MarkedConfig::weight(FaceCoord f) const noexcept {
    if (f == kMarkedFace) return n_;
    const auto it = faces_.find(f);
    return it == faces_.end() ? 0 : it->second;
}

void MarkedConfig::set(FaceCoord f, int w) {
    if (f == kMarkedFace) {
        throw Error(ErrorCode::invalid_argument,
                    "the marked face is carried by n, not the face map");
    }
    if (w < 0) {
        throw Error(ErrorCode::invalid_argument,
                    "negative weight " + std::to_string(w) + " at " + face_str(f));
    }
    if (w == 0) {
        faces_.erase(f);
    } else {
        faces_[f] = w;
    }
}

void MarkedConfig::add(FaceCoord f, int delta) { set(f, weight(f) + delta); }

MarkedConfig make_aztec(int n) {
    MarkedConfig c(n);
    for (int x = -n; x <= n; ++x) {
        const int span = n - std::abs(x);
        for (int y = -span; y <= span; ++y) {
            const FaceCoord f{x, y};
            if (f != kMarkedFace) c.set(f, aztec_value(n, f));
        }
    }
    return c;
}

MarkedConfig make_pulse(int n, int r) {
    if (r < 0) {
        throw Error(ErrorCode::invalid_argument,
                    "pulse radius must be non-negative, got " + std::to_string(r));
    }
    MarkedConfig c(n);
    for (int x = -r; x <= r; ++x) {
        const int span = r - std::abs(x);
        for (int y = -span; y <= span; ++y) {
            const FaceCoord f{x, y};
            if (f != kMarkedFace) c.set(f, n);
        }
    }
    return c;
}

std::int64_t total_weight(const MarkedConfig& c) noexcept {
    std::int64_t sum = c.marked_weight();
    for (const auto& [f, w] : c.faces()) sum += w;
    return sum;
}

int support_radius(const MarkedConfig& c) noexcept {
    int r = 0;
    for (const auto& [f, w] : c.faces()) r = std::max(r, norm(f));
    return r;
}

std::set<FaceCoord> violates_aztec(const MarkedConfig& c, int n) {
    std::set<FaceCoord> out;
    for (const auto& [f, w] : c.faces()) {
        if (w > aztec_value(n, f)) out.insert(f);
    }
    return out;
}

void EdgeFlow::add(Edge e, std::int64_t delta) {
    if (delta == 0) return;
    const auto v = (flows[e] += delta);
    if (v == 0) flows.erase(e);
}

namespace {

void circulate(EdgeFlow& e, FaceCoord f, std::int64_t w) {
    e.add({{f.x, f.y + 1}, Axis::right}, w);
    e.add({{f.x + 1, f.y}, Axis::up}, -w);
    e.add({{f.x, f.y}, Axis::right}, -w);
    e.add({{f.x, f.y}, Axis::up}, w);
}

}  // namespace

EdgeFlow to_edge_representation(const MarkedConfig& c) {
    EdgeFlow e;
    circulate(e, kMarkedFace, c.marked_weight());
    for (const auto& [f, w] : c.faces()) circulate(e, f, w);
    return e;
}

ConservationReport check_conservation(const EdgeFlow& e) {
    std::map<Vertex, std::int64_t> net;
    for (const auto& [edge, flow] : e.flows) {
        const Vertex head = edge.axis == Axis::right
                                ? Vertex{edge.tail.x + 1, edge.tail.y}
                                : Vertex{edge.tail.x, edge.tail.y + 1};
        net[head] += flow;
        net[edge.tail] -= flow;
    }
    ConservationReport report;
    for (const auto& [v, imbalance] : net) {
        if (imbalance == 0) continue;
        report.conservative = false;
        report.imbalances.push_back(
            {v, imbalance, std::abs(imbalance) > kImbalanceThreshold});
    }
    return report;
}

bool is_conservative(const EdgeFlow& e) { return check_conservation(e).conservative; }

}  // namespace flowfire
