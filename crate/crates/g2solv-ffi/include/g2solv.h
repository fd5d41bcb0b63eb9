/* C interface for the g2solv exact-arithmetic toolkit. */

#ifndef G2SOLV_H
#define G2SOLV_H

/* Generated by cbindgen from crates/g2solv-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status of an FFI call.
 */
typedef enum g2solv_status {
  /**
   * The command ran and every check passed.
   */
  G2SOLV_STATUS_OK = 0,
  /**
   * The command ran but at least one check failed.
   */
  G2SOLV_STATUS_CHECK_FAILED = 1,
  /**
   * Bad arguments: null/invalid pointers, malformed UTF-8, unknown
   * fixtures, or values the command rejects.
   */
  G2SOLV_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A panic was caught behind the boundary; the report is not produced.
   */
  G2SOLV_STATUS_INTERNAL_ERROR = 3,
} g2solv_status;

/**
 * Opaque result of a run. Free with [`g2solv_report_free`].
 */
typedef struct g2solv_report g2solv_report;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Validates a fixture id/path or an inline bracket tuple.
 *
 * # Safety
 * `target` must be a valid NUL-terminated string; `out` a valid pointer.
 */
enum g2solv_status g2solv_validate(const char *target, struct g2solv_report **out);

/**
 * Torsion-component report for a 3-form on a fixture.
 *
 * `phi` follows the CLI grammar: "base", "family:r,s", or a form literal.
 * `metric` is "g", "gtilde", or null for the per-φ default. `m` is a
 * rational literal such as "1" or "3/7".
 *
 * # Safety
 * `target`, `phi`, `m` must be valid NUL-terminated strings; `metric` may
 * be null; `out` must be a valid pointer.
 */
enum g2solv_status g2solv_tau(const char *target,
                              const char *phi,
                              const char *metric,
                              const char *m,
                              struct g2solv_report **out);

/**
 * Runs the exact verification battery. `section` is "all" or "2".."6".
 *
 * # Safety
 * `section` must be a valid NUL-terminated string; `out` a valid pointer.
 */
enum g2solv_status g2solv_verify_paper(const char *section, struct g2solv_report **out);

/**
 * Numeric parallel-spinor search on a fixture with `starts` random starts
 * and the given seed; thresholds are the library defaults.
 *
 * # Safety
 * `target` must be a valid NUL-terminated string; `out` a valid pointer.
 */
enum g2solv_status g2solv_search(const char *target,
                                 size_t starts,
                                 uint64_t seed,
                                 struct g2solv_report **out);

/**
 * Borrowed pointer to the report's JSON document (NUL-terminated, UTF-8,
 * byte-identical to the `--json` CLI output). Valid until the report is
 * freed; do not free the string itself.
 *
 * # Safety
 * `report` must be a live pointer from this library, or null.
 */
const char *g2solv_report_json(const struct g2solv_report *report);

/**
 * Copy of the report's JSON document that outlives the report. Free with
 * [`g2solv_string_free`].
 *
 * # Safety
 * `report` must be a live pointer from this library, or null.
 */
char *g2solv_report_json_copy(const struct g2solv_report *report);

/**
 * 1 when every check in the report passed, 0 otherwise (or when null).
 *
 * # Safety
 * `report` must be a live pointer from this library, or null.
 */
int32_t g2solv_report_pass(const struct g2solv_report *report);

/**
 * Number of checks carried by the report (0 for null).
 *
 * # Safety
 * `report` must be a live pointer from this library, or null.
 */
size_t g2solv_report_check_count(const struct g2solv_report *report);

/**
 * Releases a report. Null is a no-op.
 *
 * # Safety
 * `report` must be a pointer produced by this library, not yet freed.
 */
void g2solv_report_free(struct g2solv_report *report);

/**
 * Releases a string returned by [`g2solv_report_json_copy`]. Null is a
 * no-op.
 *
 * # Safety
 * `s` must be a pointer produced by this library, not yet freed.
 */
void g2solv_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* G2SOLV_H */
