#ifndef DARBOUXKIT_H
#define DARBOUXKIT_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum DkStatus {
  DK_STATUS_OK = 0,
  DK_STATUS_NULL_POINTER = 1,
  DK_STATUS_INVALID_UTF8 = 2,
  DK_STATUS_PARSE_ERROR = 3,
  DK_STATUS_INVALID_INPUT = 4,
  DK_STATUS_NO_SOLUTION = 5,
  DK_STATUS_RESOURCE_LIMIT = 6,
  DK_STATUS_VERIFICATION_FAILED = 7,
  DK_STATUS_INTERNAL = 8,
} DkStatus;

/**
 * Opaque handle to a planar polynomial vector field.
 */
typedef struct DkField DkField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `P` and `Q` (in `x`, `y`) into a new field handle written to `out`.
 *
 * # Safety
 * `p` and `q` must be nul-terminated strings; `out` must be writable.
 */
enum DkStatus dk_field_new(const char *p, const char *q, struct DkField **out);

/**
 * Releases a field handle; null is ignored.
 *
 * # Safety
 * `field` must come from [`dk_field_new`] and not be used afterwards.
 */
void dk_field_free(struct DkField *field);

/**
 * Canonical `(P, Q)` text of the field.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_field_describe(const struct DkField *field, char **out);

/**
 * Hex SHA-256 fingerprint of the field, as used in reports.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_field_fingerprint(const struct DkField *field, char **out);

/**
 * Invariant curves up to `max_degree` as a JSON array of cert-v1 objects.
 * `complete` (if non-null) receives 1 when the search was exhaustive.
 *
 * # Safety
 * `field` must be a live handle; `out` must be writable.
 */
enum DkStatus dk_find_curves(const struct DkField *field,
                             uint32_t max_degree,
                             char **out,
                             int *complete);

/**
 * Re-checks every cert-v1 object in `json`. `all_ok` receives 1 when all pass;
 * `checks` (if non-null) receives the per-certificate results as JSON.
 * Returns `VerificationFailed` when some certificate does not verify.
 *
 * # Safety
 * `json` must be a nul-terminated string; `all_ok` must be writable.
 */
enum DkStatus dk_verify_certificate(const char *json, int *all_ok, char **checks);

/**
 * Runs a command line (arguments without the program name). The JSON report
 * goes to `report` (possibly empty), the process-style exit code to `exit_code`.
 *
 * # Safety
 * `argv` must point to `argc` nul-terminated strings; outputs must be writable.
 */
enum DkStatus dk_run(size_t argc, const char *const *argv, char **report, int *exit_code);

/**
 * Frees a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void dk_string_free(char *s);

/**
 * Message of the last failure on this thread (empty if none). Valid until the
 * next call into the library from the same thread; do not free.
 */
const char *dk_last_error_message(void);

/**
 * Library version, static; do not free.
 */
const char *dk_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DARBOUXKIT_H */
