#ifndef DELTAHALL_H
#define DELTAHALL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum DhStatus {
  DH_STATUS_OK = 0,
  /**
   * An identity check found a counterexample.
   */
  DH_STATUS_CHECK_FAILED = 1,
  /**
   * Bad configuration, non-prime q, exceeded cap or too small a bound.
   */
  DH_STATUS_CONFIG = 2,
  DH_STATUS_NULL_POINTER = 3,
  DH_STATUS_INVALID_UTF8 = 4,
  DH_STATUS_OUT_OF_RANGE = 5,
  DH_STATUS_INTERNAL = 6,
  DH_STATUS_PANIC = 7,
} DhStatus;

/**
 * Opaque engine: catalog, Hall tables and Delta-Hall structure constants.
 */
typedef struct DhEngine DhEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds an engine for the quiver JSON `{"vertices": n, "arrows": [[s, t], ...]}`.
 *
 * # Safety
 * `quiver_json` must be a NUL-terminated string, `out` a writable pointer.
 */
enum DhStatus dh_engine_new(const char *quiver_json,
                            uint64_t q,
                            uint32_t max_dim,
                            struct DhEngine **out);

/**
 * # Safety
 * `engine` must come from [`dh_engine_new`] or be null.
 */
void dh_engine_free(struct DhEngine *engine);

/**
 * Number of isoclasses in the catalog.
 *
 * # Safety
 * `engine` must be live, `out` writable.
 */
enum DhStatus dh_engine_class_count(const struct DhEngine *engine, size_t *out);

/**
 * Catalog as JSON.
 *
 * # Safety
 * `engine` must be live, `out` writable. Free the result with [`dh_string_free`].
 */
enum DhStatus dh_engine_catalog_json(const struct DhEngine *engine, char **out);

/**
 * Structure-constant table (`hall`, `delta`, `derived`, `ext`, `twisted`) as a JSON array.
 *
 * # Safety
 * `engine` must be live, `which` NUL-terminated, `out` writable.
 */
enum DhStatus dh_engine_table_json(const struct DhEngine *engine, const char *which, char **out);

/**
 * Hall number F^m_{a,b}: submodules of m isomorphic to b with quotient a.
 *
 * # Safety
 * `engine` must be live, `out` writable.
 */
enum DhStatus dh_engine_hall_number(const struct DhEngine *engine,
                                    size_t a,
                                    size_t b,
                                    size_t m,
                                    uint64_t *out);

/**
 * Delta-Hall number as JSON `{"a": "p/q", "b": "p/q"}` meaning a + b*sqrt(q).
 *
 * # Safety
 * `engine` must be live, `out` writable. Free the result with [`dh_string_free`].
 */
enum DhStatus dh_engine_delta_hall_number(const struct DhEngine *engine,
                                          size_t a,
                                          size_t b,
                                          size_t m,
                                          char **out);

/**
 * Runs a check suite. Returns [`DhStatus::CheckFailed`] when a counterexample exists;
 * the report is written to `out` in both cases.
 *
 * # Safety
 * `engine` must be live, `suite` NUL-terminated, `out` writable.
 */
enum DhStatus dh_engine_run_check(const struct DhEngine *engine, const char *suite, char **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void dh_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *dh_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DELTAHALL_H */
