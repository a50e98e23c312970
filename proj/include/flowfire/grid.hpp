// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace flowfire {

struct FaceCoord {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const FaceCoord&, const FaceCoord&) = default;
};

inline constexpr FaceCoord kMarkedFace{0, 0};

enum class Direction : std::uint8_t { east, north, west, south };

inline constexpr std::array<Direction, 4> kDirections{
    Direction::east, Direction::north, Direction::west, Direction::south};

constexpr FaceCoord step(FaceCoord f, Direction d) noexcept {
    switch (d) {
        case Direction::east: return {f.x + 1, f.y};
        case Direction::north: return {f.x, f.y + 1};
        case Direction::west: return {f.x - 1, f.y};
        case Direction::south: return {f.x, f.y - 1};
    }
    return f;
}

constexpr int dist(FaceCoord a, FaceCoord b) noexcept {
    const int dx = a.x > b.x ? a.x - b.x : b.x - a.x;
    const int dy = a.y > b.y ? a.y - b.y : b.y - a.y;
    return dx + dy;
}

constexpr int norm(FaceCoord f) noexcept { return dist(f, kMarkedFace); }

constexpr int aztec_value(int n, FaceCoord f) noexcept {
    if (f == kMarkedFace) return n;
    const int v = n - norm(f) + 1;
    return v > 0 ? v : 0;
}

// Face representation around the marked face. Stored weights are positive;
// the marked face is carried by n and never appears in the map.
class MarkedConfig {
public:
    using FaceMap = std::map<FaceCoord, int>;

    MarkedConfig() = default;
    explicit MarkedConfig(int n);
    // Drops zeros; rejects negative n, negative weights and a (0,0) key.
    MarkedConfig(int n, const FaceMap& weights);

    int marked_weight() const noexcept { return n_; }
    // Returns n at the marked face and 0 off the support.
    int weight(FaceCoord f) const noexcept;
    const FaceMap& faces() const noexcept { return faces_; }

    // Sets an ordinary face; zero erases it.
    void set(FaceCoord f, int w);
    // Adds delta to an ordinary face; throws if the result would be negative.
    void add(FaceCoord f, int delta);

    friend bool operator==(const MarkedConfig&, const MarkedConfig&) = default;
    friend auto operator<=>(const MarkedConfig& a, const MarkedConfig& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.faces_ <=> b.faces_;
    }

private:
    int n_ = 0;
    FaceMap faces_;
};

MarkedConfig make_aztec(int n);
MarkedConfig make_pulse(int n, int r);

std::int64_t total_weight(const MarkedConfig& c) noexcept;
int support_radius(const MarkedConfig& c) noexcept;
std::set<FaceCoord> violates_aztec(const MarkedConfig& c, int n);

// Lattice vertex (x,y) is the lower-left corner of face (x,y).
struct Vertex {
    int x = 0;
    int y = 0;
    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

enum class Axis : std::uint8_t { right, up };

// Directed lattice edge leaving `tail` along `axis`; positive flow runs
// right or up.
struct Edge {
    Vertex tail;
    Axis axis = Axis::right;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeFlow {
    std::map<Edge, std::int64_t> flows;  // never stores a zero
    void add(Edge e, std::int64_t delta);
    friend bool operator==(const EdgeFlow&, const EdgeFlow&) = default;
};

// Positive face weight w circulates w units clockwise around the face.
EdgeFlow to_edge_representation(const MarkedConfig& c);

struct VertexImbalance {
    Vertex v;
    std::int64_t imbalance = 0;  // inflow minus outflow
    bool exceeds_threshold = false;
};

struct ConservationReport {
    bool conservative = true;
    std::vector<VertexImbalance> imbalances;  // nonzero entries, sorted by vertex
};

inline constexpr std::int64_t kImbalanceThreshold = 4;

ConservationReport check_conservation(const EdgeFlow& e);
bool is_conservative(const EdgeFlow& e);

}  // namespace flowfire
