// SPDX-License-Identifier: Apache-2.0
#include "flowfire/explore.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <utility>

#include "flowfire/error.hpp"

namespace flowfire {

namespace {

// Integer orthogonal map of the face lattice fixing the marked face.
struct Transform {
    int a, b, c, d;
    FaceCoord operator()(FaceCoord f) const noexcept {
        return {a * f.x + b * f.y, c * f.x + d * f.y};
    }
    Transform inverse() const noexcept { return {a, c, b, d}; }
    Transform then(const Transform& u) const noexcept {  // u after *this
        return {u.a * a + u.b * c, u.a * b + u.b * d, u.c * a + u.d * c, u.c * b + u.d * d};
    }
    FireMove operator()(const FireMove& m) const noexcept { return {(*this)(m.from), (*this)(m.to)}; }
};

constexpr std::array<Transform, 8> kDihedral{{{1, 0, 0, 1},
                                              {0, -1, 1, 0},
                                              {-1, 0, 0, -1},
                                              {0, 1, -1, 0},
                                              {-1, 0, 0, 1},
                                              {1, 0, 0, -1},
                                              {0, 1, 1, 0},
                                              {0, -1, -1, 0}}};

constexpr std::int32_t kOutside = -1;
constexpr std::int32_t kMarked = -2;
constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();

std::int64_t potential_term(int w, int n) noexcept {
    return static_cast<std::int64_t>(w) * w - 2 * static_cast<std::int64_t>(n) * w;
}

// Cells are the faces within the cap except the marked face, in
// lexicographic order. Each cell takes `bits` bits; cells never straddle a
// word.
struct Geometry {
    int n = 0;
    int cap = 0;
    int bits = 1;
    int per_word = 64;
    std::uint64_t mask = 1;
    std::size_t words = 1;
    std::vector<FaceCoord> cells;
    std::map<FaceCoord, std::int32_t> index;
    std::vector<std::array<std::int32_t, 4>> nbr;
    std::array<std::int32_t, 4> marked_nbr{};
    std::vector<std::int32_t> sources;  // canonical source order, kMarked in place
    std::vector<Transform> group;       // group[0] is the identity
    std::vector<std::vector<std::int32_t>> perm;
    std::vector<std::uint16_t> word_of;
    std::vector<std::uint8_t> shift_of;

    std::int32_t locate(FaceCoord f) const {
        if (f == kMarkedFace) return kMarked;
        if (norm(f) > cap) return kOutside;
        return index.at(f);
    }
};

Geometry make_geometry(const MarkedConfig& c0, int cap, bool use_symmetry) {
    Geometry g;
    g.n = c0.marked_weight();
    g.cap = cap;
    int top = g.n;
    for (const auto& [f, w] : c0.faces()) top = std::max(top, w);
    g.bits = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(top))));
    g.per_word = 64 / g.bits;
    g.mask = g.bits == 64 ? ~0ULL : ((1ULL << g.bits) - 1);
    for (int x = -cap; x <= cap; ++x) {
        const int span = cap - std::abs(x);
        for (int y = -span; y <= span; ++y) {
            if (x == 0 && y == 0) continue;
            g.index[{x, y}] = static_cast<std::int32_t>(g.cells.size());
            g.cells.push_back({x, y});
        }
    }
    g.words = (g.cells.size() + static_cast<std::size_t>(g.per_word) - 1) /
              static_cast<std::size_t>(g.per_word);
    for (std::size_t i = 0; i < g.cells.size(); ++i) {
        g.word_of.push_back(static_cast<std::uint16_t>(i / static_cast<std::size_t>(g.per_word)));
        g.shift_of.push_back(static_cast<std::uint8_t>((i % static_cast<std::size_t>(g.per_word)) *
                                                       static_cast<std::size_t>(g.bits)));
        std::array<std::int32_t, 4> nb{};
        for (std::size_t d = 0; d < 4; ++d) nb[d] = g.locate(step(g.cells[i], kDirections[d]));
        g.nbr.push_back(nb);
    }
    for (std::size_t d = 0; d < 4; ++d) g.marked_nbr[d] = g.locate(step(kMarkedFace, kDirections[d]));
    bool marked_done = false;
    for (std::size_t i = 0; i < g.cells.size(); ++i) {
        if (!marked_done && kMarkedFace < g.cells[i]) {
            g.sources.push_back(kMarked);
            marked_done = true;
        }
        g.sources.push_back(static_cast<std::int32_t>(i));
    }
    for (const Transform& t : kDihedral) {
        if (!use_symmetry && g.group.size() == 1) break;
        bool fixes = true;
        for (const auto& [f, w] : c0.faces()) {
            if (c0.weight(t(f)) != w) {
                fixes = false;
                break;
            }
        }
        if (!fixes) continue;
        g.group.push_back(t);
        std::vector<std::int32_t> p(g.cells.size());
        for (std::size_t i = 0; i < g.cells.size(); ++i) p[i] = g.index.at(t(g.cells[i]));
        g.perm.push_back(std::move(p));
    }
    return g;
}

template <std::size_t W>
using Key = std::array<std::uint64_t, W>;

template <std::size_t W>
std::uint64_t hash_key(const Key<W>& k) noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL;
    for (std::uint64_t w : k) {
        h ^= w;
        h *= 0xBF58476D1CE4E5B9ULL;
        h ^= h >> 29;
    }
    h *= 0x94D049BB133111EBULL;
    return h ^ (h >> 32);
}

struct Node {
    std::uint32_t parent;
    std::uint32_t refs;
    std::uint16_t move;  // source * 4 + direction; source == cells.size() is the marked face
    std::uint8_t transform;
};

// Ref-counted trie of witness traces; each live state owns one reference.
class NodeStore {
public:
    std::uint32_t make(std::uint32_t parent, std::uint16_t move, std::uint8_t transform) {
        if (parent != kNoNode) ++nodes_[parent].refs;
        const Node node{parent, 1, move, transform};
        if (!free_.empty()) {
            const std::uint32_t id = free_.back();
            free_.pop_back();
            nodes_[id] = node;
            return id;
        }
        nodes_.push_back(node);
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }
    void release(std::uint32_t id) {
        while (id != kNoNode && --nodes_[id].refs == 0) {
            free_.push_back(id);
            id = nodes_[id].parent;
        }
    }
    const Node& operator[](std::uint32_t id) const { return nodes_[id]; }

private:
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> free_;
};

template <std::size_t W>
struct Entry {
    Key<W> key;
    std::uint32_t node;
    std::uint32_t depth;
    std::uint8_t stab;  // transforms fixing the state
};

// States of one potential level, deduplicated by open addressing.
template <std::size_t W>
class Level {
public:
    std::vector<Entry<W>> entries;

    // Returns the entry index and whether the key was new.
    std::pair<std::uint32_t, bool> insert(const Key<W>& key) {
        if ((entries.size() + 1) * 2 > slots_.size()) grow();
        std::uint64_t pos = hash_key<W>(key) & mask_;
        for (;;) {
            const std::uint32_t s = slots_[pos];
            if (s == 0) {
                entries.push_back({key, kNoNode, 0, 0});
                slots_[pos] = static_cast<std::uint32_t>(entries.size());
                return {static_cast<std::uint32_t>(entries.size() - 1), true};
            }
            if (entries[s - 1].key == key) return {s - 1, false};
            pos = (pos + 1) & mask_;
        }
    }

    void seal() {
        std::vector<std::uint32_t>().swap(slots_);
        std::sort(entries.begin(), entries.end(),
                  [](const Entry<W>& a, const Entry<W>& b) { return a.key < b.key; });
    }

private:
    void grow() {
        const std::size_t size = slots_.empty() ? 1024 : slots_.size() * 2;
        slots_.assign(size, 0);
        mask_ = size - 1;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            std::uint64_t pos = hash_key<W>(entries[i].key) & mask_;
            while (slots_[pos] != 0) pos = (pos + 1) & mask_;
            slots_[pos] = static_cast<std::uint32_t>(i + 1);
        }
    }

    std::vector<std::uint32_t> slots_;
    std::uint64_t mask_ = 0;
};

template <std::size_t W>
struct Child {
    Key<W> key;
    std::int64_t potential;
    std::uint32_t parent;  // index within the block
    std::uint16_t move;
    std::uint8_t transform;
    std::uint8_t stab;
};

struct WorkerFlags {
    bool cap_exceeded = false;
    bool depth_limited = false;
};

template <std::size_t W>
class Explorer {
public:
    Explorer(const Geometry& geo, const ExploreBounds& b, const ExploreOptions& opt)
        : geo_(geo), bounds_(b), opt_(opt) {}

    ExploreResult run(const MarkedConfig& c0);

private:
    static constexpr std::size_t kBlock = 1 << 15;

    int get(const Key<W>& k, std::int32_t i) const noexcept {
        return static_cast<int>((k[geo_.word_of[static_cast<std::size_t>(i)]] >>
                                 geo_.shift_of[static_cast<std::size_t>(i)]) &
                                geo_.mask);
    }
    void put(Key<W>& k, std::int32_t i, int v) const noexcept {
        const auto w = geo_.word_of[static_cast<std::size_t>(i)];
        const auto s = geo_.shift_of[static_cast<std::size_t>(i)];
        k[w] = (k[w] & ~(geo_.mask << s)) | (static_cast<std::uint64_t>(v) << s);
    }

    Key<W> encode(const MarkedConfig& c) const {
        Key<W> k{};
        for (const auto& [f, w] : c.faces()) put(k, geo_.index.at(f), w);
        return k;
    }

    MarkedConfig decode(const Key<W>& k) const {
        MarkedConfig c(geo_.n);
        for (std::size_t i = 0; i < geo_.cells.size(); ++i) {
            const int w = get(k, static_cast<std::int32_t>(i));
            if (w != 0) c.set(geo_.cells[i], w);
        }
        return c;
    }

    void expand_range(const std::vector<Entry<W>>& entries, std::size_t begin, std::size_t end,
                      std::size_t block_begin, std::int64_t potential,
                      std::vector<Child<W>>& out, std::vector<std::uint32_t>& terminals,
                      WorkerFlags& flags) const;

    const Geometry& geo_;
    ExploreBounds bounds_;
    ExploreOptions opt_;
};

template <std::size_t W>
void Explorer<W>::expand_range(const std::vector<Entry<W>>& entries, std::size_t begin,
                               std::size_t end, std::size_t block_begin, std::int64_t potential,
                               std::vector<Child<W>>& out, std::vector<std::uint32_t>& terminals,
                               WorkerFlags& flags) const {
    const std::size_t ncells = geo_.cells.size();
    const std::size_t gsize = geo_.group.size();
    const int n = geo_.n;
    std::vector<int> w(ncells);
    std::vector<Key<W>> images(gsize);
    for (std::size_t e = begin; e < end; ++e) {
        const Entry<W>& entry = entries[e];
        for (std::size_t i = 0; i < ncells; ++i) w[i] = get(entry.key, static_cast<std::int32_t>(i));
        for (std::size_t t = 0; t < gsize; ++t) {
            if (t == 0) {
                images[0] = entry.key;
                continue;
            }
            Key<W> img{};
            const auto& p = geo_.perm[t];
            for (std::size_t i = 0; i < ncells; ++i) {
                if (w[i] != 0) put(img, p[i], w[i]);
            }
            images[t] = img;
        }
        const bool at_depth_limit = entry.depth >= bounds_.max_depth;
        bool any_move = false;
        const auto local = static_cast<std::uint32_t>(e - block_begin);

        // a -> b with new values wa, wb; a may be kMarked.
        auto emit = [&](std::int32_t a, int wa, std::int32_t b, int wb, std::uint16_t move,
                        std::int64_t delta) {
            any_move = true;
            if (at_depth_limit) return;
            Child<W> child{};
            std::uint8_t stab = 0;
            for (std::size_t t = 0; t < gsize; ++t) {
                Key<W> img = images[t];
                if (a != kMarked) put(img, geo_.perm[t][static_cast<std::size_t>(a)], wa);
                put(img, geo_.perm[t][static_cast<std::size_t>(b)], wb);
                if (t == 0 || img < child.key) {
                    child.key = img;
                    child.transform = static_cast<std::uint8_t>(t);
                    stab = 1;
                } else if (img == child.key) {
                    ++stab;
                }
            }
            child.potential = potential + delta;
            child.parent = local;
            child.move = move;
            child.stab = stab;
            out.push_back(child);
        };

        for (std::int32_t s : geo_.sources) {
            if (s == kMarked) {
                for (std::size_t d = 0; d < 4; ++d) {
                    const std::int32_t b = geo_.marked_nbr[d];
                    const int wb = w[static_cast<std::size_t>(b)];
                    if (wb < n) {
                        emit(kMarked, 0, b, wb + 1, static_cast<std::uint16_t>(ncells * 4 + d),
                             2 * static_cast<std::int64_t>(wb) + 1 - 2 * static_cast<std::int64_t>(n));
                    }
                }
                continue;
            }
            const int wa = w[static_cast<std::size_t>(s)];
            if (wa == 0) continue;
            for (std::size_t d = 0; d < 4; ++d) {
                const std::int32_t b = geo_.nbr[static_cast<std::size_t>(s)][d];
                const auto move = static_cast<std::uint16_t>(static_cast<std::size_t>(s) * 4 + d);
                if (b == kOutside) {
                    if (wa >= 2) {
                        any_move = true;
                        flags.cap_exceeded = true;
                    }
                } else if (b == kMarked) {
                    if (wa > n) {
                        // The marked face absorbs the unit; only the source changes.
                        any_move = true;
                        if (at_depth_limit) continue;
                        Child<W> child{};
                        std::uint8_t stab = 0;
                        for (std::size_t t = 0; t < gsize; ++t) {
                            Key<W> img = images[t];
                            put(img, geo_.perm[t][static_cast<std::size_t>(s)], wa - 1);
                            if (t == 0 || img < child.key) {
                                child.key = img;
                                child.transform = static_cast<std::uint8_t>(t);
                                stab = 1;
                            } else if (img == child.key) {
                                ++stab;
                            }
                        }
                        child.potential = potential - 2 * static_cast<std::int64_t>(wa) + 1 +
                                          2 * static_cast<std::int64_t>(n);
                        child.parent = local;
                        child.move = move;
                        child.stab = stab;
                        out.push_back(child);
                    }
                } else {
                    const int wb = w[static_cast<std::size_t>(b)];
                    if (wa >= wb + 2) {
                        emit(s, wa - 1, b, wb + 1, move,
                             2 * static_cast<std::int64_t>(wb - wa) + 2);
                    }
                }
            }
        }
        if (!any_move) {
            terminals.push_back(local);
        } else if (at_depth_limit) {
            flags.depth_limited = true;
        }
    }
}

template <std::size_t W>
ExploreResult Explorer<W>::run(const MarkedConfig& c0) {
    ExploreResult result;
    const std::size_t gsize = geo_.group.size();
    const std::size_t ncells = geo_.cells.size();
    unsigned threads = opt_.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : opt_.threads;

    NodeStore nodes;
    std::map<std::int64_t, Level<W>, std::greater<>> levels;

    std::int64_t phi0 = 0;
    for (const auto& [f, w] : c0.faces()) phi0 += potential_term(w, geo_.n);
    {
        auto& level = levels[phi0];
        auto [idx, fresh] = level.insert(encode(c0));
        level.entries[idx].node = nodes.make(kNoNode, 0, 0);
        level.entries[idx].stab = static_cast<std::uint8_t>(gsize);
        result.states_visited = 1;
    }

    struct Terminal {
        Key<W> key;
        std::uint32_t node;
    };
    std::vector<Terminal> terminals;
    std::uint64_t live = 1;

    while (!levels.empty() && !result.state_limit_hit) {
        auto it = levels.begin();
        const std::int64_t potential = it->first;
        Level<W> current = std::move(it->second);
        levels.erase(it);
        current.seal();
        const auto& entries = current.entries;
        if (opt_.progress) {
            opt_.progress({potential, entries.size(), result.states_visited, live});
        }

        for (std::size_t block = 0; block < entries.size(); block += kBlock) {
            const std::size_t block_end = std::min(entries.size(), block + kBlock);
            const std::size_t count = block_end - block;
            const unsigned used = static_cast<unsigned>(
                std::min<std::size_t>(threads, (count + 255) / 256));
            std::vector<std::vector<Child<W>>> outs(std::max(1u, used));
            std::vector<std::vector<std::uint32_t>> terms(outs.size());
            std::vector<WorkerFlags> flags(outs.size());
            auto work = [&](std::size_t t) {
                const std::size_t lo = block + count * t / outs.size();
                const std::size_t hi = block + count * (t + 1) / outs.size();
                expand_range(entries, lo, hi, block, potential, outs[t], terms[t], flags[t]);
            };
            if (outs.size() == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (std::size_t t = 1; t < outs.size(); ++t) pool.emplace_back(work, t);
                work(0);
                for (auto& th : pool) th.join();
            }

            // Merge in state order so the outcome is independent of threads.
            std::int64_t cached_potential = std::numeric_limits<std::int64_t>::max();
            Level<W>* cached = nullptr;
            for (std::size_t t = 0; t < outs.size(); ++t) {
                result.cap_exceeded |= flags[t].cap_exceeded;
                result.depth_limit_hit |= flags[t].depth_limited;
                for (const Child<W>& child : outs[t]) {
                    if (child.potential != cached_potential) {
                        cached_potential = child.potential;
                        cached = &levels[child.potential];
                    }
                    const Entry<W>& parent = entries[block + child.parent];
                    const std::uint32_t depth = parent.depth + 1;
                    auto [idx, fresh] = cached->insert(child.key);
                    Entry<W>& e = cached->entries[idx];
                    if (fresh) {
                        e.node = nodes.make(parent.node, child.move, child.transform);
                        e.depth = depth;
                        e.stab = child.stab;
                        result.states_visited += gsize / child.stab;
                        ++live;
                    } else if (depth < e.depth) {
                        nodes.release(e.node);
                        e.node = nodes.make(parent.node, child.move, child.transform);
                        e.depth = depth;
                    }
                }
                for (std::uint32_t local : terms[t]) {
                    const Entry<W>& e = entries[block + local];
                    terminals.push_back({e.key, e.node});
                }
            }
            std::vector<bool> kept(count, false);
            for (const auto& tv : terms) {
                for (std::uint32_t local : tv) kept[local] = true;
            }
            for (std::size_t i = 0; i < count; ++i) {
                if (!kept[i]) nodes.release(entries[block + i].node);
            }
            live -= count;
            if (result.states_visited > bounds_.max_states) {
                result.state_limit_hit = true;
                break;
            }
        }
    }
    result.truncated = result.cap_exceeded || result.state_limit_hit || result.depth_limit_hit;

    // Rebuild witnesses in the original frame and expand each orbit.
    std::map<MarkedConfig, std::vector<FireMove>> found;
    for (const Terminal& term : terminals) {
        std::vector<std::pair<std::uint16_t, std::uint8_t>> steps;
        for (std::uint32_t id = term.node; nodes[id].parent != kNoNode; id = nodes[id].parent) {
            steps.emplace_back(nodes[id].move, nodes[id].transform);
        }
        std::reverse(steps.begin(), steps.end());
        Transform frame = geo_.group[0];
        std::vector<FireMove> trace;
        trace.reserve(steps.size());
        for (const auto& [move, t] : steps) {
            const std::size_t src = move / 4;
            const FaceCoord from = src == ncells ? kMarkedFace : geo_.cells[src];
            const FaceCoord to = step(from, kDirections[move % 4]);
            trace.push_back(frame(FireMove{from, to}));
            frame = geo_.group[t].inverse().then(frame);
        }
        const MarkedConfig rep = decode(term.key);
        MarkedConfig actual(geo_.n);
        for (const auto& [f, w] : rep.faces()) actual.set(frame(f), w);
        for (const Transform& u : geo_.group) {
            MarkedConfig image(geo_.n);
            for (const auto& [f, w] : actual.faces()) image.set(u(f), w);
            if (found.count(image)) continue;
            std::vector<FireMove> moved;
            moved.reserve(trace.size());
            for (const FireMove& m : trace) moved.push_back(u(m));
            found.emplace(std::move(image), std::move(moved));
        }
    }
    for (auto& [config, trace] : found) {
        result.terminals.push_back({config, std::move(trace)});
    }
    return result;
}

template <std::size_t W>
ExploreResult run_with(const Geometry& geo, const MarkedConfig& c0, const ExploreBounds& b,
                       const ExploreOptions& opt) {
    return Explorer<W>(geo, b, opt).run(c0);
}

}  // namespace

ExploreBounds default_bounds(const MarkedConfig& c0) {
    ExploreBounds b;
    b.radius_cap = c0.marked_weight() + support_radius(c0) + 2;
    return b;
}

ExploreResult explore(const MarkedConfig& c0, const ExploreBounds& b, const ExploreOptions& opt) {
    if (b.radius_cap < 1 || support_radius(c0) >= b.radius_cap) {
        throw Error(ErrorCode::out_of_scope,
                    "radius cap " + std::to_string(b.radius_cap) +
                        " must exceed the initial support radius " +
                        std::to_string(support_radius(c0)));
    }
    const Geometry geo = make_geometry(c0, b.radius_cap, opt.use_symmetry);
    switch (geo.words) {
        case 1: return run_with<1>(geo, c0, b, opt);
        case 2: return run_with<2>(geo, c0, b, opt);
        case 3: return run_with<3>(geo, c0, b, opt);
        case 4: return run_with<4>(geo, c0, b, opt);
        case 5: return run_with<5>(geo, c0, b, opt);
        case 6: return run_with<6>(geo, c0, b, opt);
        case 7: case 8: return run_with<8>(geo, c0, b, opt);
        case 9: case 10: case 11: case 12: return run_with<12>(geo, c0, b, opt);
        case 13: case 14: case 15: case 16: return run_with<16>(geo, c0, b, opt);
        default: break;
    }
    throw Error(ErrorCode::out_of_scope,
                "state encoding needs " + std::to_string(geo.words) +
                    " words; reduce the radius cap or the weights");
}

const char* to_string(Confluence c) noexcept {
    switch (c) {
        case Confluence::no: return "no";
        case Confluence::yes: return "yes";
        case Confluence::unknown: return "unknown";
    }
    return "?";
}

Confluence is_confluent(const ExploreResult& r) noexcept {
    if (r.truncated) return Confluence::unknown;
    return r.terminals.size() == 1 ? Confluence::yes : Confluence::no;
}

Confluence is_confluent(const MarkedConfig& c0, const ExploreBounds& b, const ExploreOptions& opt) {
    return is_confluent(explore(c0, b, opt));
}

}  // namespace flowfire
