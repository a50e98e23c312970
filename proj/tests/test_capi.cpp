// SPDX-License-Identifier: Apache-2.0
// Exercises the shared library through its C interface only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "flowfire/flowfire.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    ff_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("constructors and queries") {
    ff_config* pulse = nullptr;
    REQUIRE(ff_config_pulse(4, 2, &pulse) == FF_OK);
    long long w = 0;
    CHECK(ff_config_total_weight(pulse, &w) == FF_OK);
    CHECK(w == 52);
    int radius = -1;
    CHECK(ff_config_support_radius(pulse, &radius) == FF_OK);
    CHECK(radius == 2);
    int stable = 1;
    CHECK(ff_config_is_stable(pulse, &stable) == FF_OK);
    CHECK(stable == 0);

    ff_config* copy = nullptr;
    REQUIRE(ff_config_clone(pulse, &copy) == FF_OK);
    int eq = 0;
    CHECK(ff_config_equal(pulse, copy, &eq) == FF_OK);
    CHECK(eq == 1);

    char* json = nullptr;
    REQUIRE(ff_config_to_json(pulse, &json) == FF_OK);
    ff_config* parsed = nullptr;
    REQUIRE(ff_config_from_json(json, &parsed) == FF_OK);
    ff_string_free(json);
    CHECK(ff_config_equal(pulse, parsed, &eq) == FF_OK);
    CHECK(eq == 1);

    ff_config_free(parsed);
    ff_config_free(copy);
    ff_config_free(pulse);
    ff_config_free(nullptr);
}

TEST_CASE("errors carry status, message, and index") {
    ff_config* c = nullptr;
    CHECK(ff_config_from_json("{\"n\": 2, \"faces\": [[0,0,1]]}", &c) == FF_ERR_PARSE);
    CHECK(c == nullptr);
    CHECK(std::string(ff_last_error()).size() > 0);
    CHECK(ff_config_pulse(-1, 0, &c) == FF_ERR_INVALID_ARGUMENT);
    CHECK(ff_config_pulse(1, 0, nullptr) == FF_ERR_INVALID_ARGUMENT);
    CHECK(std::string(ff_status_name(FF_ERR_ILLEGAL_FIRE)) == "illegal-fire");

    REQUIRE(ff_config_pulse(2, 0, &c) == FF_OK);
    ff_config* out = nullptr;
    const char* trace = R"([{"from":[0,0],"to":[1,0]},{"from":[0,0],"to":[1,0]},{"from":[0,0],"to":[1,0]}])";
    CHECK(ff_fire_trace(c, trace, &out) == FF_ERR_ILLEGAL_FIRE);
    CHECK(ff_last_error_index() == 2);
    CHECK(ff_fire_trace(c, R"([{"from":[0,0],"to":[1,0]}])", &out) == FF_OK);
    CHECK(ff_last_error_index() == -1);
    ff_config_free(out);
    ff_config_free(c);
}

TEST_CASE("stabilize policies") {
    ff_config* c = nullptr;
    REQUIRE(ff_config_pulse(3, 3, &c) == FF_OK);
    ff_config* d1 = nullptr;
    ff_config* d2 = nullptr;
    char* trace = nullptr;
    REQUIRE(ff_stabilize(c, "quadrant:d1", &d1, &trace) == FF_OK);
    REQUIRE(ff_stabilize(c, "quadrant:d2", &d2, nullptr) == FF_OK);
    int eq = 1;
    CHECK(ff_config_equal(d1, d2, &eq) == FF_OK);
    CHECK(eq == 0);

    ff_config* replayed = nullptr;
    REQUIRE(ff_fire_trace(c, trace, &replayed) == FF_OK);
    ff_string_free(trace);
    CHECK(ff_config_equal(replayed, d1, &eq) == FF_OK);
    CHECK(eq == 1);

    ff_config* bad = nullptr;
    CHECK(ff_stabilize(c, "sideways", &bad, nullptr) == FF_ERR_INVALID_ARGUMENT);

    ff_config* aztec = nullptr;
    ff_config* k42 = nullptr;
    REQUIRE(ff_config_pulse(4, 2, &k42) == FF_OK);
    CHECK(ff_stabilize(k42, "to-aztec", &aztec, nullptr) == FF_ERR_VIOLATION);
    ff_config* k31 = nullptr;
    REQUIRE(ff_config_pulse(3, 1, &k31) == FF_OK);
    CHECK(ff_stabilize(k31, "to-aztec", &aztec, nullptr) == FF_OK);
    ff_config* expected = nullptr;
    REQUIRE(ff_config_aztec(3, &expected) == FF_OK);
    CHECK(ff_config_equal(aztec, expected, &eq) == FF_OK);
    CHECK(eq == 1);

    for (ff_config* p : {c, d1, d2, replayed, aztec, k42, k31, expected}) ff_config_free(p);
}

TEST_CASE("explore, classify, table") {
    ff_config* c = nullptr;
    REQUIRE(ff_config_pulse(2, 0, &c) == FF_OK);
    char* json = nullptr;
    REQUIRE(ff_explore(c, 5, 0, 0, 1, &json) == FF_OK);
    const std::string result = take(json);
    CHECK(result.find("\"terminal_count\":1") != std::string::npos);
    CHECK(result.find("\"truncated\":false") != std::string::npos);
    ff_config_free(c);

    REQUIRE(ff_classify(3, 2, &json) == FF_OK);
    CHECK(take(json).find("\"R2\"") != std::string::npos);
    REQUIRE(ff_table(3, 5, &json) == FF_OK);
    CHECK(take(json).find("\"matches_reference\":false") != std::string::npos);
    CHECK(ff_table(5, 3, &json) == FF_ERR_INVALID_ARGUMENT);
}
