// SPDX-License-Identifier: Apache-2.0
// Command-line front end; talks to the library only through the C API.
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "flowfire/flowfire.h"

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

struct DomainFailure {
    ff_status status;
};

struct ConfigDeleter {
    void operator()(ff_config* c) const noexcept { ff_config_free(c); }
};
using ConfigPtr = std::unique_ptr<ff_config, ConfigDeleter>;

struct StringDeleter {
    void operator()(char* s) const noexcept { ff_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

void check(ff_status s) {
    if (s != FF_OK) throw DomainFailure{s};
}

std::string read_file(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ConfigPtr load_config(const std::string& path) {
    ff_config* raw = nullptr;
    check(ff_config_from_json(read_file(path).c_str(), &raw));
    return ConfigPtr(raw);
}

std::string take(char* s) {
    OwnedString owned(s);
    return owned ? std::string(owned.get()) : std::string();
}

std::string pick_style(const std::string& requested) {
    if (!requested.empty()) return requested;
    return isatty(STDOUT_FILENO) ? "ascii" : "json";
}

void print_config(const ff_config* c, const std::string& style) {
    char* out = nullptr;
    check(ff_config_render(c, style.c_str(), &out));
    std::string text = take(out);
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
}

void print_classify(const std::string& json, const std::string& style) {
    if (style == "json") {
        std::cout << json << '\n';
        return;
    }
    const auto j = nlohmann::json::parse(json);
    std::cout << "K(" << j["n"] << "," << j["r"] << "): regime " << j["regime"].get<std::string>()
              << ", pulse weight " << j["pulse_weight"] << " vs aztec weight "
              << j["aztec_weight"];
    if (!j["min_r_exceeding"].is_null()) {
        std::cout << ", minimum exceeding r " << j["min_r_exceeding"];
    }
    if (j["weight_excludes_aztec"].get<bool>()) std::cout << ", aztec excluded by weight";
    std::cout << '\n';
}

void print_table(const std::string& json, const std::string& style) {
    if (style == "json") {
        std::cout << json << '\n';
        return;
    }
    const auto rows = nlohmann::json::parse(json);
    std::printf("%4s %10s %10s %18s\n", "n", "ceil(n/2)", "minimum r", "ceil(n/sqrt3)+1");
    for (const auto& row : rows) {
        std::printf("%4d %10d %10d %18d", row["n"].get<int>(), row["ceil_half"].get<int>(),
                    row["min_r"].get<int>(), row["ceil_n_over_sqrt3_plus_1"].get<int>());
        if (!row["matches_reference"].get<bool>()) {
            std::printf("  differs from published minimum r = %d",
                        row["reference_min_r"].get<int>());
        }
        std::printf("\n");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flow-firing on the grid with a marked face"};
    app.require_subcommand(1);
    long long seed = 0;
    app.add_option("--seed", seed, "Accepted for script compatibility; runs are deterministic");

    std::string style;
    auto add_style = [&](CLI::App* sub) {
        sub->add_option("--style", style, "Output style")
            ->check(CLI::IsMember({"ascii", "svg", "json"}));
    };

    int n = 0;
    int r = 0;
    auto* pulse = app.add_subcommand("pulse", "Print the pulse K(n,r)");
    pulse->add_option("--n", n, "Marked weight")->required()->check(CLI::NonNegativeNumber);
    pulse->add_option("--r", r, "Radius")->required()->check(CLI::NonNegativeNumber);
    add_style(pulse);

    auto* aztec = app.add_subcommand("aztec", "Print the Aztec diamond az(n)");
    aztec->add_option("--n", n, "Marked weight")->required()->check(CLI::NonNegativeNumber);
    add_style(aztec);

    std::string config_path;
    std::string trace_path;
    auto* fire = app.add_subcommand("fire", "Replay a move trace on a configuration");
    fire->add_option("--config", config_path, "Configuration JSON file, - for stdin")->required();
    fire->add_option("--trace", trace_path, "Trace JSON file")->required();
    add_style(fire);

    std::string policy = "first";
    std::string trace_out;
    auto* stabilize = app.add_subcommand("stabilize", "Fire until stable under a policy");
    stabilize->add_option("--config", config_path, "Configuration JSON file, - for stdin")
        ->required();
    stabilize->add_option("--policy", policy, "Firing policy")
        ->check(CLI::IsMember({"first", "flood", "quadrant:d1", "quadrant:d2", "to-aztec"}));
    stabilize->add_option("--trace-out", trace_out, "Write the fired moves to this file");
    add_style(stabilize);

    int radius_cap = 0;
    unsigned long long max_states = 0;
    unsigned max_depth = 0;
    unsigned threads = 0;
    auto* explore = app.add_subcommand("explore", "Enumerate reachable terminal configurations");
    explore->add_option("--config", config_path, "Configuration JSON file, - for stdin")
        ->required();
    explore->add_option("--radius-cap", radius_cap, "Faces beyond this distance stay empty")
        ->check(CLI::PositiveNumber);
    explore->add_option("--max-states", max_states, "Stop after this many states")
        ->check(CLI::PositiveNumber);
    explore->add_option("--max-depth", max_depth, "Do not expand past this many moves")
        ->check(CLI::PositiveNumber);
    explore->add_option("--threads", threads, "Worker threads, 0 for all cores");

    auto* classify = app.add_subcommand("classify", "Classify the pulse K(n,r) by regime");
    classify->add_option("--n", n, "Marked weight")->required()->check(CLI::NonNegativeNumber);
    classify->add_option("--r", r, "Radius")->required()->check(CLI::NonNegativeNumber);
    add_style(classify);

    int n_min = 3;
    int n_max = 24;
    auto* table = app.add_subcommand("table", "Regime thresholds for a range of n");
    table->add_option("--n-min", n_min, "First n")->check(CLI::PositiveNumber);
    table->add_option("--n-max", n_max, "Last n")->check(CLI::PositiveNumber);
    add_style(table);

    auto* render = app.add_subcommand("render", "Render a configuration");
    render->add_option("--config", config_path, "Configuration JSON file, - for stdin")
        ->required();
    add_style(render);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const std::string out_style = pick_style(style);
        if (pulse->parsed() || aztec->parsed()) {
            ff_config* raw = nullptr;
            check(pulse->parsed() ? ff_config_pulse(n, r, &raw) : ff_config_aztec(n, &raw));
            ConfigPtr c(raw);
            print_config(c.get(), out_style);
        } else if (fire->parsed()) {
            ConfigPtr c = load_config(config_path);
            ff_config* raw = nullptr;
            check(ff_fire_trace(c.get(), read_file(trace_path).c_str(), &raw));
            ConfigPtr result(raw);
            print_config(result.get(), out_style);
        } else if (stabilize->parsed()) {
            ConfigPtr c = load_config(config_path);
            ff_config* raw = nullptr;
            char* trace = nullptr;
            check(ff_stabilize(c.get(), policy.c_str(), &raw, trace_out.empty() ? nullptr : &trace));
            ConfigPtr result(raw);
            if (!trace_out.empty()) {
                std::ofstream out(trace_out, std::ios::binary);
                if (!out) throw CLI::ValidationError("cannot write '" + trace_out + "'");
                out << take(trace) << '\n';
            }
            print_config(result.get(), out_style);
        } else if (explore->parsed()) {
            ConfigPtr c = load_config(config_path);
            char* json = nullptr;
            check(ff_explore(c.get(), radius_cap, max_states, max_depth, threads, &json));
            std::cout << take(json) << '\n';
        } else if (classify->parsed()) {
            char* json = nullptr;
            check(ff_classify(n, r, &json));
            print_classify(take(json), out_style);
        } else if (table->parsed()) {
            char* json = nullptr;
            check(ff_table(n_min, n_max, &json));
            print_table(take(json), out_style);
        } else if (render->parsed()) {
            ConfigPtr c = load_config(config_path);
            print_config(c.get(), out_style);
        }
    } catch (const DomainFailure& f) {
        std::cerr << "error: " << ff_status_name(f.status) << ": " << ff_last_error();
        if (ff_last_error_index() >= 0) std::cerr << " (move index " << ff_last_error_index() << ")";
        std::cerr << '\n';
        return f.status == FF_ERR_PARSE ? kExitUsage : kExitDomain;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    std::cout.flush();
    return 0;
}
