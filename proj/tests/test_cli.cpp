// SPDX-License-Identifier: Apache-2.0
// Drives the built command-line binary through a shell.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(FLOWFIRE_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
    const int raw = pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / "flowfire_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

void write(const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

std::string fixture(const std::string& name) {
    return std::string(FLOWFIRE_FIXTURE_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("pulse and aztec print json when piped") {
    const Run p = run("pulse --n 4 --r 2");
    REQUIRE(p.status == 0);
    const auto j = nlohmann::json::parse(p.out);
    CHECK(j["n"] == 4);
    CHECK(j["faces"].size() == 12);

    const Run a = run("aztec --n 2 --style ascii");
    REQUIRE(a.status == 0);
    CHECK(a.out.find("[2]") != std::string::npos);
}

TEST_CASE("classify and table") {
    const Run c = run("classify --n 3 --r 2 --style json");
    REQUIRE(c.status == 0);
    const auto j = nlohmann::json::parse(c.out);
    CHECK(j["regime"] == "R2");
    CHECK(j["pulse_weight"] == 39);
    CHECK(j["aztec_weight"] == 43);

    const Run t = run("table --n-min 4 --n-max 24 --style json");
    REQUIRE(t.status == 0);
    const auto rows = nlohmann::json::parse(t.out);
    REQUIRE(rows.size() == 21);
    for (const auto& row : rows) CHECK(row["matches_reference"] == true);

    const Run flagged = run("table --n-min 3 --n-max 3 --style ascii");
    REQUIRE(flagged.status == 0);
    CHECK(flagged.out.find("differs") != std::string::npos);
}

TEST_CASE("quadrant policies give the two fixtures") {
    const auto dir = scratch();
    write(dir / "k33.json", run("pulse --n 3 --r 3").out);
    for (const auto& [policy, name] :
         {std::pair{"quadrant:d1", "k33_d1.json"}, {"quadrant:d2", "k33_d2.json"}}) {
        const Run s = run("stabilize --config " + (dir / "k33.json").string() + " --policy " + policy +
                          " --trace-out " + (dir / "trace.json").string());
        REQUIRE(s.status == 0);
        const Run expected = run("render --config " + fixture(name) + " --style json");
        CHECK(nlohmann::json::parse(s.out) == nlohmann::json::parse(expected.out));

        const Run replay = run("fire --config " + (dir / "k33.json").string() + " --trace " +
                               (dir / "trace.json").string());
        REQUIRE(replay.status == 0);
        CHECK(nlohmann::json::parse(replay.out) == nlohmann::json::parse(s.out));
    }
}

TEST_CASE("exit codes") {
    CHECK(run("pulse --n 3").status == 2);
    CHECK(run("no-such-command").status == 2);
    CHECK(run("stabilize --config x --policy sideways").status == 2);

    const auto dir = scratch();
    write(dir / "bad.json", "{\"n\": 2, \"faces\": [[0, 0, 5]]}");
    CHECK(run("render --config " + (dir / "bad.json").string()).status == 2);

    write(dir / "k20.json", run("pulse --n 2 --r 0").out);
    write(dir / "illegal.json",
          R"([{"from":[0,0],"to":[1,0]},{"from":[0,0],"to":[1,0]},{"from":[0,0],"to":[1,0]}])");
    const std::string cmd = std::string(FLOWFIRE_CLI) + " fire --config " + (dir / "k20.json").string() +
                            " --trace " + (dir / "illegal.json").string() + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string err;
    std::array<char, 512> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) err.append(buf.data(), got);
    const int raw = pclose(p);
    CHECK(WEXITSTATUS(raw) == 1);
    CHECK(err.find("move index 2") != std::string::npos);
}

TEST_CASE("explore prints a result document") {
    const auto dir = scratch();
    write(dir / "k10.json", run("pulse --n 1 --r 0").out);
    const Run e = run("explore --config " + (dir / "k10.json").string() + " --radius-cap 4 --threads 1");
    REQUIRE(e.status == 0);
    const auto j = nlohmann::json::parse(e.out);
    CHECK(j["terminal_count"] == 1);
    CHECK(j["truncated"] == false);
    CHECK(j["confluent"] == "yes");
}
