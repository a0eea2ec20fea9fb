/*
 * belgauge: Schmidt-coefficient bounds on Bell violation of bipartite states.
 *
 * C interface. All objects are opaque handles created and destroyed through
 * this API. Every fallible call returns a bg_status; on failure a
 * human-readable message is available from bg_last_error() on the calling
 * thread until the next API call on that thread.
 *
 * Strings returned through char** out-parameters are allocated by the
 * library and must be released with bg_string_free().
 *
 * Calls on distinct handles are thread-safe. A bg_config must not be
 * modified while another thread passes it to a computation.
 */
#ifndef BELGAUGE_BELGAUGE_H_
#define BELGAUGE_BELGAUGE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(BELGAUGE_BUILDING)
#define BELGAUGE_API __declspec(dllexport)
#else
#define BELGAUGE_API __declspec(dllimport)
#endif
#else
#define BELGAUGE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bg_status {
  BG_OK = 0,
  BG_ERR_PARSE = 1,
  BG_ERR_IO = 2,
  BG_ERR_INVALID_ARGUMENT = 3,
  BG_ERR_NOT_SQUARE = 4,
  BG_ERR_NOT_HERMITIAN = 5,
  BG_ERR_SHAPE_MISMATCH = 6,
  BG_ERR_NOT_NORMALIZED = 7,
  BG_ERR_INVALID_STATE = 8,
  BG_ERR_NOT_PURE = 9,
  BG_ERR_INDEX_OUT_OF_RANGE = 10,
  BG_ERR_DIMENSION_CAP = 11,
  BG_ERR_SETTINGS_TOO_SMALL = 12,
  BG_ERR_DIMENSION_TOO_SMALL = 13,
  BG_ERR_RANK_TOO_SMALL = 14,
  BG_ERR_INVALID_LOWER_BOUND = 15,
  BG_ERR_CUTOFF_TOO_SMALL = 16,
  BG_ERR_NOT_TWO_QUBIT = 17,
  BG_ERR_INTERNAL = 99
} bg_status;

/* A bipartite state, pure or mixed, with its local dimensions. */
typedef struct bg_state bg_state;

/* Run parameters: seed, setting counts, tolerances, caps. */
typedef struct bg_config bg_config;

/* Receives one line (no trailing newline) of streamed output. */
typedef void (*bg_line_callback)(const char* line, void* user_data);

BELGAUGE_API const char* bg_version(void);
BELGAUGE_API const char* bg_status_name(bg_status status);
BELGAUGE_API const char* bg_last_error(void);
BELGAUGE_API void bg_string_free(char* s);

/* ---- configuration ---- */

BELGAUGE_API bg_status bg_config_create(bg_config** out);
BELGAUGE_API void bg_config_destroy(bg_config* config);
BELGAUGE_API bg_status bg_config_set_seed(bg_config* config, uint64_t seed);
/* s1 = s2 = 0 selects "any number of settings" (the default). */
BELGAUGE_API bg_status bg_config_set_settings(bg_config* config, size_t s1, size_t s2);
/* Named tolerance override; "all" sets every tolerance. */
BELGAUGE_API bg_status bg_config_set_tolerance(bg_config* config, const char* name,
                                               double value);
/* Cap on the side length of dilated source operators (default 4096). */
BELGAUGE_API bg_status bg_config_set_dilation_cap(bg_config* config, size_t cap);
/* Random operator pairs used by source-operator verification (default 100). */
BELGAUGE_API bg_status bg_config_set_trials(bg_config* config, size_t trials);

/* ---- states ---- */

/* Parses the JSON state format:
 *   {"d1": D1, "d2": D2, "kind": "pure"|"density", "data": [[[re, im], ...], ...]}
 */
BELGAUGE_API bg_status bg_state_parse(const char* json, bg_state** out);
BELGAUGE_API bg_status bg_state_load(const char* path, bg_state** out);
/* Pure state from interleaved (re, im) amplitudes, row-major d1 x d2. */
BELGAUGE_API bg_status bg_state_from_amplitudes(size_t d1, size_t d2,
                                                const double* re_im, bg_state** out);
BELGAUGE_API void bg_state_destroy(bg_state* state);
BELGAUGE_API bg_status bg_state_dims(const bg_state* state, size_t* d1, size_t* d2);
BELGAUGE_API bg_status bg_state_to_json(const bg_state* state, char** out_json);
/* Writes up to `capacity` Schmidt coefficients (descending) and the rank. */
BELGAUGE_API bg_status bg_schmidt_coefficients(const bg_state* state, double* out,
                                               size_t capacity, size_t* rank);

/* ---- commands ---- */

/* Nonlocality bounds, CHSH bracket and entanglement relations as one JSON
 * document. *out_ok is 1 when every relation check holds. */
BELGAUGE_API bg_status bg_analyze(const bg_state* state, const bg_config* config,
                                  char** out_json, int* out_ok);

/* Builds the source operator with `s` slots on the left (dilate_left != 0) or
 * right site, verifies the dilation identity and reports trace norm and
 * bound as JSON. *out_pass is 1 when verification and bound hold. */
BELGAUGE_API bg_status bg_source_op(const bg_state* state, const bg_config* config,
                                    int dilate_left, size_t s, char** out_json,
                                    int* out_pass);

/* CHSH see-saw result as JSON, observables included. */
BELGAUGE_API bg_status bg_chsh(const bg_state* state, const bg_config* config,
                               char** out_json);

/* Entangled coherent-state scan as CSV (header plus one row per alpha,
 * ascending). With a callback the lines are streamed and *out_csv may be
 * NULL; otherwise the full text is returned. *out_ok is 1 when every row's
 * numeric bound matches the closed form. */
BELGAUGE_API bg_status bg_coherent_scan(const double* alphas, size_t count, int family,
                                        size_t fock_cutoff, const bg_config* config,
                                        bg_line_callback on_line, void* user_data,
                                        char** out_csv, int* out_ok);

/* Runs the invariant suite; text or JSON report. */
BELGAUGE_API bg_status bg_selftest(const bg_config* config, int as_json,
                                   char** out_report, int* out_all_pass);

/* Writes `count` >= 2 evenly spaced points from start to stop inclusive. */
BELGAUGE_API bg_status bg_linspace(double start, double stop, size_t count, double* out);

/* Closed-form violation bound for entangled coherent states. */
BELGAUGE_API bg_status bg_coherent_bound(double alpha, double* out);

#ifdef __cplusplus
}
#endif

#endif /* BELGAUGE_BELGAUGE_H_ */
