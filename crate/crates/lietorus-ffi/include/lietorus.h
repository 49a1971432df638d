#ifndef LIETORUS_H
#define LIETORUS_H

/* Generated by cbindgen from the lietorus-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the CLI exit codes.
 */
typedef enum LtStatus {
  /**
   * All requested checks passed.
   */
  LtOk = 0,
  /**
   * The run completed but a check failed.
   */
  LtCheckFailed = 1,
  /**
   * Malformed input or an unsupported request.
   */
  LtInvalidInput = 2,
  /**
   * The working cyclotomic field is too small for the request.
   */
  LtFieldTooSmall = 3,
  /**
   * Internal failure (a panic was caught at the boundary).
   */
  LtInternal = 4,
} LtStatus;

/**
 * A finished scenario run: the deterministic JSON report and its verdict.
 */
typedef struct LtReport LtReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty when the last
 * call succeeded.  The pointer is valid until the next failing call.
 */
const char *lt_last_error(void);

/**
 * Library version as a static string.
 */
const char *lt_version(void);

/**
 * Run a scenario given as a JSON document (the same schema the CLI's
 * `run` subcommand accepts).  On success `*out` receives a report handle.
 *
 * # Safety
 * `spec_json` must be a valid NUL-terminated UTF-8 string and `out` a
 * valid pointer.
 */
enum LtStatus lt_run_scenario_json(const char *spec_json, struct LtReport **out);

/**
 * The canonical JSON text of a report; owned by the report handle.
 *
 * # Safety
 * `report` must be a live handle from `lt_run_scenario_json`.
 */
const char *lt_report_json(const struct LtReport *report);

/**
 * Did every requested check pass?
 *
 * # Safety
 * `report` must be a live handle from `lt_run_scenario_json`.
 */
bool lt_report_pass(const struct LtReport *report);

/**
 * Release a report handle.
 *
 * # Safety
 * `report` must be a handle from `lt_run_scenario_json`, freed once.
 */
void lt_report_free(struct LtReport *report);

/**
 * Normalize an n x n integer matrix modulo the right ideal of the
 * divisibility chain `moduli` (m[i+1] | m[i]).  `matrix` is row-major
 * n*n; `witness` may be null, in which case one is solved from the
 * congruence.  On success `*out_p` receives the orbit invariant and
 * `out_transform` (row-major n*n, caller-allocated) the unimodular
 * column transform.
 *
 * # Safety
 * All pointers must be valid for the documented lengths.
 */
enum LtStatus lt_normalize_mod_ideal(uintptr_t n,
                                     const int64_t *moduli,
                                     const int64_t *matrix,
                                     const int64_t *witness,
                                     int64_t *out_p,
                                     int64_t *out_transform);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIETORUS_H */
