/* SPDX-License-Identifier: Apache-2.0 */
#ifndef FLOWFIRE_FLOWFIRE_H
#define FLOWFIRE_FLOWFIRE_H

#include <stddef.h>

#if defined(_WIN32)
#define FF_API __declspec(dllexport)
#else
#define FF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ff_status {
    FF_OK = 0,
    FF_ERR_INVALID_ARGUMENT = 1,
    FF_ERR_INVALID_MOVE = 2,
    FF_ERR_ILLEGAL_FIRE = 3,
    FF_ERR_OUT_OF_PATH = 4,
    FF_ERR_OUT_OF_SCOPE = 5,
    FF_ERR_VIOLATION = 6,
    FF_ERR_NOTHING_TO_FLOOD = 7,
    FF_ERR_BUDGET_EXHAUSTED = 8,
    FF_ERR_PARSE = 9,
    FF_ERR_INTERNAL = 10
} ff_status;

/* Opaque configuration handle: marked weight plus face weights. */
typedef struct ff_config ff_config;

/* Message and sequence index of the last failure on this thread. The index
 * is -1 when the failure was not tied to a sequence element. */
FF_API const char* ff_last_error(void);
FF_API long long ff_last_error_index(void);
FF_API const char* ff_status_name(ff_status status);

/* Strings returned through char** are owned by the caller. */
FF_API void ff_string_free(char* s);

FF_API ff_status ff_config_from_json(const char* json, ff_config** out);
FF_API ff_status ff_config_pulse(int n, int r, ff_config** out);
FF_API ff_status ff_config_aztec(int n, ff_config** out);
FF_API ff_status ff_config_clone(const ff_config* c, ff_config** out);
FF_API void ff_config_free(ff_config* c);

FF_API ff_status ff_config_to_json(const ff_config* c, char** out);
/* style: "ascii", "svg" or "json". */
FF_API ff_status ff_config_render(const ff_config* c, const char* style, char** out);
FF_API ff_status ff_config_equal(const ff_config* a, const ff_config* b, int* out);
FF_API ff_status ff_config_is_stable(const ff_config* c, int* out);
FF_API ff_status ff_config_total_weight(const ff_config* c, long long* out);
FF_API ff_status ff_config_support_radius(const ff_config* c, int* out);

/* Replays a JSON move array. On failure ff_last_error_index names the move. */
FF_API ff_status ff_fire_trace(const ff_config* c, const char* trace_json, ff_config** out);

/* policy: "first", "flood", "quadrant:d1", "quadrant:d2" or "to-aztec".
 * trace_json may be NULL. */
FF_API ff_status ff_stabilize(const ff_config* c, const char* policy, ff_config** out,
                              char** trace_json);

/* Exhaustive reachability inside radius_cap. radius_cap <= 0 selects
 * n + support radius + 2; 0 for max_states or max_depth means unlimited;
 * 0 threads means hardware concurrency. */
FF_API ff_status ff_explore(const ff_config* c, int radius_cap, unsigned long long max_states,
                            unsigned max_depth, unsigned threads, char** result_json);

FF_API ff_status ff_classify(int n, int r, char** report_json);
FF_API ff_status ff_table(int n_min, int n_max, char** rows_json);

#ifdef __cplusplus
}
#endif

#endif
