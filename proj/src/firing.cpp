// SPDX-License-Identifier: Apache-2.0
#include "flowfire/firing.hpp"

#include "flowfire/error.hpp"

namespace flowfire {

namespace {

std::string face_str(FaceCoord f) {
    return "(" + std::to_string(f.x) + "," + std::to_string(f.y) + ")";
}

bool legal_unchecked(const MarkedConfig& c, const FireMove& m) noexcept {
    const int n = c.marked_weight();
    if (m.from == kMarkedFace) return c.weight(m.to) < n;
    if (m.to == kMarkedFace) return c.weight(m.from) > n;
    return c.weight(m.from) >= c.weight(m.to) + 2;
}

void apply_unchecked(MarkedConfig& c, const FireMove& m) {
    if (m.from != kMarkedFace) c.add(m.from, -1);
    if (m.to != kMarkedFace) c.add(m.to, 1);
}

}  // namespace

const char* to_string(FireRule rule) noexcept {
    switch (rule) {
        case FireRule::ordinary: return "ordinary: source must exceed target by at least 2";
        case FireRule::from_marked: return "from marked face: target must be below n";
        case FireRule::into_marked: return "into marked face: source must exceed n";
    }
    return "unknown";
}

std::string describe(const FireMove& m) { return face_str(m.from) + "->" + face_str(m.to); }

bool is_well_formed(const FireMove& m) noexcept { return dist(m.from, m.to) == 1; }

void validate_move(const FireMove& m) {
    if (!is_well_formed(m)) {
        throw Error(ErrorCode::invalid_move, "faces are not adjacent: " + describe(m));
    }
}

FireRule rule_of(const FireMove& m) noexcept {
    if (m.from == kMarkedFace) return FireRule::from_marked;
    if (m.to == kMarkedFace) return FireRule::into_marked;
    return FireRule::ordinary;
}

bool is_legal(const MarkedConfig& c, const FireMove& m) {
    validate_move(m);
    return legal_unchecked(c, m);
}

void apply_in_place(MarkedConfig& c, const FireMove& m) {
    if (!is_legal(c, m)) {
        throw Error(ErrorCode::illegal_fire,
                    "illegal fire " + describe(m) + " (" + to_string(rule_of(m)) + ")");
    }
    apply_unchecked(c, m);
}

MarkedConfig apply(const MarkedConfig& c, const FireMove& m) {
    MarkedConfig out = c;
    apply_in_place(out, m);
    return out;
}

std::optional<MarkedConfig> try_apply(const MarkedConfig& c, const FireMove& m) {
    if (!is_well_formed(m) || !legal_unchecked(c, m)) return std::nullopt;
    MarkedConfig out = c;
    apply_unchecked(out, m);
    return out;
}

std::vector<FireMove> legal_moves(const MarkedConfig& c) {
    // Only the marked face and faces of weight >= 1 can fire; iterate sources
    // in lexicographic order with the marked face slotted in place.
    std::vector<FireMove> out;
    auto emit = [&](FaceCoord f) {
        for (Direction d : kDirections) {
            const FireMove m{f, step(f, d)};
            if (legal_unchecked(c, m)) out.push_back(m);
        }
    };
    bool marked_done = false;
    for (const auto& [f, w] : c.faces()) {
        if (!marked_done && kMarkedFace < f) {
            emit(kMarkedFace);
            marked_done = true;
        }
        emit(f);
    }
    if (!marked_done) emit(kMarkedFace);
    return out;
}

std::optional<FireMove> first_legal_move(const MarkedConfig& c) {
    auto try_source = [&](FaceCoord f) -> std::optional<FireMove> {
        for (Direction d : kDirections) {
            const FireMove m{f, step(f, d)};
            if (legal_unchecked(c, m)) return m;
        }
        return std::nullopt;
    };
    bool marked_done = false;
    for (const auto& [f, w] : c.faces()) {
        if (!marked_done && kMarkedFace < f) {
            if (auto m = try_source(kMarkedFace)) return m;
            marked_done = true;
        }
        if (auto m = try_source(f)) return m;
    }
    if (!marked_done) return try_source(kMarkedFace);
    return std::nullopt;
}

bool is_stable(const MarkedConfig& c) { return !first_legal_move(c).has_value(); }

MarkedConfig replay(const MarkedConfig& c, std::span<const FireMove> trace) {
    MarkedConfig out = c;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        try {
            apply_in_place(out, trace[i]);
        } catch (Error& e) {
            e.at_index(i);
            throw;
        }
    }
    return out;
}

}  // namespace flowfire
