// SPDX-License-Identifier: Apache-2.0
#include "flowfire/flowfire.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "flowfire/error.hpp"
#include "flowfire/explore.hpp"
#include "flowfire/firing.hpp"
#include "flowfire/io.hpp"
#include "flowfire/strategies.hpp"

struct ff_config {
    flowfire::MarkedConfig value;
};

namespace {

thread_local std::string g_message;
thread_local long long g_index = -1;

ff_status status_of(flowfire::ErrorCode code) noexcept {
    using flowfire::ErrorCode;
    switch (code) {
        case ErrorCode::invalid_argument: return FF_ERR_INVALID_ARGUMENT;
        case ErrorCode::invalid_move: return FF_ERR_INVALID_MOVE;
        case ErrorCode::illegal_fire: return FF_ERR_ILLEGAL_FIRE;
        case ErrorCode::out_of_path: return FF_ERR_OUT_OF_PATH;
        case ErrorCode::out_of_scope: return FF_ERR_OUT_OF_SCOPE;
        case ErrorCode::violation: return FF_ERR_VIOLATION;
        case ErrorCode::nothing_to_flood: return FF_ERR_NOTHING_TO_FLOOD;
        case ErrorCode::budget_exhausted: return FF_ERR_BUDGET_EXHAUSTED;
        case ErrorCode::parse: return FF_ERR_PARSE;
    }
    return FF_ERR_INTERNAL;
}

// Runs body, translating exceptions into status codes and the thread-local
// error slot.
template <typename F>
ff_status guard(F&& body) noexcept {
    g_message.clear();
    g_index = -1;
    try {
        body();
        return FF_OK;
    } catch (const flowfire::Error& e) {
        g_message = e.what();
        if (e.index()) g_index = static_cast<long long>(*e.index());
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        g_message = "out of memory";
    } catch (const std::exception& e) {
        g_message = e.what();
    } catch (...) {
        g_message = "unknown failure";
    }
    return FF_ERR_INTERNAL;
}

void require(const void* p, const char* what) {
    if (p == nullptr) {
        throw flowfire::Error(flowfire::ErrorCode::invalid_argument,
                              std::string(what) + " must not be null");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit_config(flowfire::MarkedConfig c, ff_config** out) {
    require(out, "out");
    *out = new ff_config{std::move(c)};
}

}  // namespace

extern "C" {

const char* ff_last_error(void) { return g_message.c_str(); }

long long ff_last_error_index(void) { return g_index; }

const char* ff_status_name(ff_status status) {
    switch (status) {
        case FF_OK: return "ok";
        case FF_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case FF_ERR_INVALID_MOVE: return "invalid-move";
        case FF_ERR_ILLEGAL_FIRE: return "illegal-fire";
        case FF_ERR_OUT_OF_PATH: return "out-of-path";
        case FF_ERR_OUT_OF_SCOPE: return "out-of-scope";
        case FF_ERR_VIOLATION: return "violation";
        case FF_ERR_NOTHING_TO_FLOOD: return "nothing-to-flood";
        case FF_ERR_BUDGET_EXHAUSTED: return "budget-exhausted";
        case FF_ERR_PARSE: return "parse";
        case FF_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void ff_string_free(char* s) { std::free(s); }

ff_status ff_config_from_json(const char* json, ff_config** out) {
    return guard([&] {
        require(json, "json");
        emit_config(flowfire::config_from_json(flowfire::parse_json_text(json)), out);
    });
}

ff_status ff_config_pulse(int n, int r, ff_config** out) {
    return guard([&] { emit_config(flowfire::make_pulse(n, r), out); });
}

ff_status ff_config_aztec(int n, ff_config** out) {
    return guard([&] { emit_config(flowfire::make_aztec(n), out); });
}

ff_status ff_config_clone(const ff_config* c, ff_config** out) {
    return guard([&] {
        require(c, "config");
        emit_config(c->value, out);
    });
}

void ff_config_free(ff_config* c) { delete c; }

ff_status ff_config_to_json(const ff_config* c, char** out) {
    return guard([&] {
        require(c, "config");
        require(out, "out");
        *out = dup_string(flowfire::to_json(c->value).dump());
    });
}

ff_status ff_config_render(const ff_config* c, const char* style, char** out) {
    return guard([&] {
        require(c, "config");
        require(style, "style");
        require(out, "out");
        *out = dup_string(flowfire::render(c->value, flowfire::render_style_from_string(style)));
    });
}

ff_status ff_config_equal(const ff_config* a, const ff_config* b, int* out) {
    return guard([&] {
        require(a, "a");
        require(b, "b");
        require(out, "out");
        *out = a->value == b->value ? 1 : 0;
    });
}

ff_status ff_config_is_stable(const ff_config* c, int* out) {
    return guard([&] {
        require(c, "config");
        require(out, "out");
        *out = flowfire::is_stable(c->value) ? 1 : 0;
    });
}

ff_status ff_config_total_weight(const ff_config* c, long long* out) {
    return guard([&] {
        require(c, "config");
        require(out, "out");
        *out = flowfire::total_weight(c->value);
    });
}

ff_status ff_config_support_radius(const ff_config* c, int* out) {
    return guard([&] {
        require(c, "config");
        require(out, "out");
        *out = flowfire::support_radius(c->value);
    });
}

ff_status ff_fire_trace(const ff_config* c, const char* trace_json, ff_config** out) {
    return guard([&] {
        require(c, "config");
        require(trace_json, "trace");
        const auto trace = flowfire::trace_from_json(flowfire::parse_json_text(trace_json));
        emit_config(flowfire::replay(c->value, trace), out);
    });
}

ff_status ff_stabilize(const ff_config* c, const char* policy, ff_config** out,
                       char** trace_json) {
    return guard([&] {
        using namespace flowfire;
        require(c, "config");
        require(policy, "policy");
        require(out, "out");
        const std::string p = policy;
        const int n = c->value.marked_weight();
        Schedule s;
        if (p == "first") {
            s = stabilize_any(c->value);
        } else if (p == "flood") {
            s = flood_escape(c->value, n);
            Schedule rest = stabilize_any(s.result);
            s.result = std::move(rest.result);
            s.trace.insert(s.trace.end(), rest.trace.begin(), rest.trace.end());
        } else if (p == "quadrant:d1" || p == "quadrant:d2") {
            QuadrantRun q = quadrant_stabilize(
                c->value, p == "quadrant:d1" ? Decomposition::d1 : Decomposition::d2);
            s.result = std::move(q.result);
            s.trace = std::move(q.trace);
        } else if (p == "to-aztec") {
            s = complete_to_aztec(c->value, n);
        } else {
            throw Error(ErrorCode::invalid_argument, "unknown policy '" + p + "'");
        }
        char* trace = trace_json ? dup_string(to_json(s.trace).dump()) : nullptr;
        try {
            emit_config(std::move(s.result), out);
        } catch (...) {
            std::free(trace);
            throw;
        }
        if (trace_json) *trace_json = trace;
    });
}

ff_status ff_explore(const ff_config* c, int radius_cap, unsigned long long max_states,
                     unsigned max_depth, unsigned threads, char** result_json) {
    return guard([&] {
        using namespace flowfire;
        require(c, "config");
        require(result_json, "result_json");
        ExploreBounds b = default_bounds(c->value);
        if (radius_cap > 0) b.radius_cap = radius_cap;
        if (max_states > 0) b.max_states = max_states;
        if (max_depth > 0) b.max_depth = max_depth;
        ExploreOptions opt;
        opt.threads = threads;
        *result_json = dup_string(to_json(explore(c->value, b, opt)).dump());
    });
}

ff_status ff_classify(int n, int r, char** report_json) {
    return guard([&] {
        require(report_json, "report_json");
        *report_json = dup_string(flowfire::to_json(flowfire::classify(n, r)).dump());
    });
}

ff_status ff_table(int n_min, int n_max, char** rows_json) {
    return guard([&] {
        require(rows_json, "rows_json");
        *rows_json = dup_string(flowfire::to_json(flowfire::regime_table(n_min, n_max)).dump());
    });
}

}  // extern "C"
