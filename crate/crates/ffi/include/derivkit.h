#ifndef DERIVKIT_H
#define DERIVKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `DK_STATUS_OK` and `DK_STATUS_IDENTITY_FAILED` mirror the
 * CLI's exit codes 0 and 1; the rest report misuse or an internal fault.
 */
typedef enum {
  DK_STATUS_OK = 0,
  DK_STATUS_IDENTITY_FAILED = 1,
  DK_STATUS_INVALID_CONFIG = 2,
  DK_STATUS_NULL_ARGUMENT = 3,
  DK_STATUS_INVALID_UTF8 = 4,
  DK_STATUS_NOT_RUN = 5,
  DK_STATUS_PANIC = 6,
} DkStatus;

/**
 * Opaque suite handle.
 */
typedef struct DkSuite DkSuite;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates `config_json`; on success stores a new handle in `*out`.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string and `out` a valid pointer.
 */
DkStatus dk_suite_new(const char *config_json, DkSuite **out);

/**
 * Runs every selected check. Returns `DK_STATUS_OK` when none failed
 * (skips do not fail) and `DK_STATUS_IDENTITY_FAILED` otherwise.
 *
 * # Safety
 * `suite` must come from [`dk_suite_new`] and not have been freed.
 */
DkStatus dk_suite_run(DkSuite *suite);

/**
 * Copies the JSON report of the last run into `*out` (free it with
 * [`dk_string_free`]). `DK_STATUS_NOT_RUN` before the first run.
 *
 * # Safety
 * `suite` must be a live handle and `out` a valid pointer.
 */
DkStatus dk_suite_report_json(const DkSuite *suite, char **out);

/**
 * Counts from the last run; any pointer may be null.
 *
 * # Safety
 * `suite` must be a live handle; non-null outputs must be valid.
 */
DkStatus dk_suite_summary(const DkSuite *suite, uintptr_t *pass, uintptr_t *fail, uintptr_t *skip);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `suite` must be null or a handle not yet freed.
 */
void dk_suite_free(DkSuite *suite);

/**
 * Newline-separated registry ids, owned by the caller.
 */
char *dk_list_ids(void);

/**
 * Message for the most recent error on this thread, or null. Borrowed:
 * valid until the next call into this library on the same thread.
 */
const char *dk_last_error(void);

/**
 * Library version, static.
 */
const char *dk_version(void);

/**
 * Frees a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void dk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DERIVKIT_H */
