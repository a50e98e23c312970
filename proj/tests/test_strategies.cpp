// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "flowfire/error.hpp"
#include "flowfire/strategies.hpp"
#include "support/oracles.hpp"

using namespace flowfire;

namespace {

void check_replay(const MarkedConfig& start, const std::vector<FireMove>& trace,
                  const MarkedConfig& expected) {
    MarkedConfig c = start;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        CAPTURE(i);
        REQUIRE(is_legal(c, trace[i]));
        apply_in_place(c, trace[i]);
    }
    CHECK(c == expected);
}

bool has_face_beyond(const MarkedConfig& c, int n) {
    for (const auto& [f, w] : c.faces()) {
        if (w > 0 && norm(f) > n) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("complete_to_aztec") {
    const Schedule s0 = complete_to_aztec(make_aztec(3), 3);
    CHECK(s0.trace.empty());
    CHECK(s0.result == make_aztec(3));

    const MarkedConfig row_fired = oracle::load_fixture("k42_row_fired.json");
    const Schedule s1 = complete_to_aztec(row_fired, 4);
    CHECK(s1.result == make_aztec(4));
    check_replay(row_fired, s1.trace, make_aztec(4));

    const Schedule s2 = complete_to_aztec(make_pulse(3, 1), 3);
    CHECK(s2.result == make_aztec(3));
    check_replay(make_pulse(3, 1), s2.trace, make_aztec(3));

    try {
        (void)complete_to_aztec(make_pulse(3, 2), 3);
        FAIL("expected violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::violation);
    }
}

TEST_CASE("regime2_reach_aztec") {
    const Regime2Run k42 = regime2_reach_aztec(4, 2);
    CHECK(k42.intermediate == oracle::load_fixture("k42_row_fired.json"));
    CHECK(violates_aztec(k42.intermediate, 4).empty());
    CHECK(k42.result == make_aztec(4));

    for (const auto [n, r] : {std::pair{3, 2}, {4, 2}, {5, 3}, {6, 3}, {7, 4}, {8, 3}}) {
        CAPTURE(n);
        CAPTURE(r);
        const Regime2Run run = regime2_reach_aztec(n, r);
        CHECK(run.result == make_aztec(n));
        CHECK(violates_aztec(run.intermediate, n).empty());
        check_replay(make_pulse(n, r), run.trace, make_aztec(n));
        const std::vector<FireMove> rows(run.trace.begin(),
                                         run.trace.begin() + static_cast<std::ptrdiff_t>(run.row_moves));
        CHECK(replay(make_pulse(n, r), rows) == run.intermediate);
    }
    CHECK_THROWS_AS(regime2_reach_aztec(4, 3), Error);
    CHECK_THROWS_AS(regime2_reach_aztec(4, 1), Error);
}

TEST_CASE("flood_escape") {
    for (const auto [n, r] : {std::pair{3, 2}, {4, 2}, {5, 3}, {6, 3}}) {
        CAPTURE(n);
        CAPTURE(r);
        const Schedule s = flood_escape(make_pulse(n, r), n);
        CHECK(support_radius(s.result) > n);
        check_replay(make_pulse(n, r), s.trace, s.result);

        const Schedule t = stabilize_any(s.result);
        CHECK(is_stable(t.result));
        CHECK(t.result != make_aztec(n));
        CHECK(has_face_beyond(t.result, n));
        check_replay(s.result, t.trace, t.result);
    }
    try {
        (void)flood_escape(make_aztec(3), 3);
        FAIL("expected nothing to flood");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::nothing_to_flood);
    }
}

TEST_CASE("escaped terminal fixture") {
    const MarkedConfig c = oracle::load_fixture("k32_escaped_terminal.json");
    CHECK(is_stable(c));
    CHECK(support_radius(c) == 4);
    const auto v = violates_aztec(c, 3);
    REQUIRE(v.size() == 1);
    CHECK(norm(*v.begin()) == 4);
}

TEST_CASE("stabilize_any") {
    const Schedule s = stabilize_any(make_pulse(3, 0));
    CHECK(s.result == make_aztec(3));
    check_replay(make_pulse(3, 0), s.trace, make_aztec(3));
    CHECK(stabilize_any(make_aztec(5)).trace.empty());
    try {
        (void)stabilize_any(make_pulse(3, 0), 5);
        FAIL("expected budget exhaustion");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::budget_exhausted);
    }
}

TEST_CASE("quadrant decompositions partition the plane") {
    for (const Decomposition d : {Decomposition::d1, Decomposition::d2}) {
        CHECK_FALSE(quadrant_of(kMarkedFace, d).has_value());
        for (int x = -6; x <= 6; ++x) {
            for (int y = -6; y <= 6; ++y) {
                if (x == 0 && y == 0) continue;
                const auto q = quadrant_of({x, y}, d);
                REQUIRE(q.has_value());
                // a quarter turn (x,y) -> (-y,x) maps each quadrant onto the next
                const auto r = quadrant_of({-y, x}, d);
                CHECK(static_cast<int>(*r) == (static_cast<int>(*q) + 1) % 4);
            }
        }
    }
}

TEST_CASE("quadrant_stabilize reproduces both K(3,3) terminals") {
    const QuadrantRun d1 = quadrant_stabilize(3, 3, Decomposition::d1);
    const QuadrantRun d2 = quadrant_stabilize(3, 3, Decomposition::d2);
    CHECK(d1.result == oracle::load_fixture("k33_d1.json"));
    CHECK(d2.result == oracle::load_fixture("k33_d2.json"));
    CHECK(d1.result != d2.result);
    for (const QuadrantRun* run : {&d1, &d2}) {
        CHECK(run->sweeps_stable);
        CHECK(is_stable(run->result));
        CHECK(legal_moves(run->result).empty());
        check_replay(make_pulse(3, 3), run->trace, run->result);
        CHECK(total_weight(run->result) == 75);
    }
    for (const auto [run, d] : {std::pair{&d1, Decomposition::d1}, {&d2, Decomposition::d2}}) {
        std::array<int, 4> per{};
        for (const auto& [f, w] : run->result.faces()) per[static_cast<std::size_t>(*quadrant_of(f, d))] += w;
        CHECK(per == std::array<int, 4>{18, 18, 18, 18});
    }
}

TEST_CASE("quadrant_stabilize always ends stable") {
    for (int n = 1; n <= 5; ++n) {
        for (int r = 0; r <= 5; ++r) {
            for (const Decomposition d : {Decomposition::d1, Decomposition::d2}) {
                const QuadrantRun run = quadrant_stabilize(n, r, d);
                CHECK(is_stable(run.result));
                check_replay(make_pulse(n, r), run.trace, run.result);
            }
        }
    }
}

TEST_CASE("weight formulas") {
    CHECK(aztec_weight(4) == 84);
    CHECK(pulse_weight(8, 5) == 488);
    CHECK(aztec_weight(8) == 488);
    CHECK(pulse_weight(5, 0) == 5);
    for (int n = 0; n <= 30; ++n) {
        CHECK(aztec_weight(n) == oracle::aztec_sum(n));
        CHECK(total_weight(make_aztec(n)) == aztec_weight(n));
        for (int r = 0; r <= 30; ++r) {
            CHECK(pulse_weight(n, r) == oracle::pulse_sum(n, r));
            CHECK(total_weight(make_pulse(n, r)) == pulse_weight(n, r));
        }
    }
}

TEST_CASE("min_r_exceeding and the weight threshold") {
    CHECK(min_r_exceeding(4) == 3);
    CHECK(min_r_exceeding(8) == 6);
    CHECK(min_r_exceeding(24) == 15);
    CHECK(min_r_exceeding(3) == 3);
    for (int n = 1; n <= 60; ++n) {
        const int m = min_r_exceeding(n);
        CHECK(pulse_weight(n, m) > aztec_weight(n));
        CHECK(pulse_weight(n, m - 1) <= aztec_weight(n));
        const int k = ceil_n_over_sqrt3(n);
        CHECK(k >= static_cast<double>(n) / std::sqrt(3.0) - 1e-9);
        CHECK(k - 1 < static_cast<double>(n) / std::sqrt(3.0));
    }
    for (int n = 1; n <= 50; ++n) {
        for (int r = weight_threshold(n); r <= n; ++r) CHECK(pulse_weight(n, r) > aztec_weight(n));
    }
    CHECK_THROWS_AS(min_r_exceeding(0), Error);
}

TEST_CASE("classify") {
    CHECK(classify(3, 1).regime == Regime::r1);
    CHECK(classify(3, 0).regime == Regime::r1);
    const RegimeReport r32 = classify(3, 2);
    CHECK(r32.regime == Regime::r2);
    CHECK(r32.aztec_weight == 43);
    CHECK(r32.pulse_weight == 39);
    CHECK_FALSE(r32.weight_excludes_aztec);

    const RegimeReport r43 = classify(4, 3);
    CHECK(r43.regime == Regime::gap);
    CHECK(r43.weight_excludes_aztec);
    CHECK(r43.pulse_weight > r43.aztec_weight);

    const RegimeReport r85 = classify(8, 5);
    CHECK(r85.regime == Regime::gap);
    CHECK_FALSE(r85.weight_excludes_aztec);

    CHECK(classify(4, 4).regime == Regime::r3);
    CHECK_FALSE(classify(0, 3).min_r_exceeding.has_value());
    CHECK_THROWS_AS(classify(-1, 0), Error);
}

TEST_CASE("regime table") {
    const auto rows = regime_table(3, 24);
    REQUIRE(rows.size() == 22);
    CHECK_FALSE(rows[0].matches_reference());
    CHECK(rows[0].min_r == 3);
    CHECK(rows[0].reference_min_r == 2);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CAPTURE(rows[i].n);
        CHECK(rows[i].matches_reference());
        CHECK(rows[i].min_r == *rows[i].reference_min_r);
    }
    const auto beyond = regime_table(25, 26);
    CHECK_FALSE(beyond[0].reference_min_r.has_value());
    CHECK(beyond[0].matches_reference());
}

TEST_CASE("closing-example fixtures") {
    const MarkedConfig k3 = oracle::load_fixture("sec63_item3.json");
    const MarkedConfig k4 = oracle::load_fixture("sec63_item4.json");
    CHECK(total_weight(k3) == aztec_weight(4));
    CHECK(total_weight(k4) == aztec_weight(4));
    const MarkedConfig ball = make_pulse(4, 3);
    for (const MarkedConfig* c : {&k3, &k4}) {
        CHECK(c->marked_weight() == 4);
        for (const auto& [f, w] : c->faces()) CHECK(ball.weight(f) == w);
    }
    CHECK(k3 != k4);
}
