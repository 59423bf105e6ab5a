#ifndef QRING_H
#define QRING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum QrStatus {
  QR_STATUS_OK = 0,
  /**
   * The relation fails an axiom; the report is still returned.
   */
  QR_STATUS_AXIOM_FAILURE = 1,
  QR_STATUS_INVALID_INPUT = 2,
  QR_STATUS_NULL_POINTER = 3,
  QR_STATUS_UNSUPPORTED = 4,
  QR_STATUS_INTERNAL = 5,
} QrStatus;

/**
 * A ring, a relation on it and a window.
 */
typedef struct QrStructure QrStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a structure document (ring, relation, optional window).
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is valid for writes.
 */
enum QrStatus qr_structure_from_json(const char *json, struct QrStructure **out);

/**
 * Looks up a builtin structure by name.
 *
 * # Safety
 * `name` is a NUL-terminated string; `out` is valid for writes.
 */
enum QrStatus qr_structure_builtin(const char *name, struct QrStructure **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `s` is null or a handle from this library not yet freed.
 */
void qr_structure_free(struct QrStructure *s);

/**
 * Compares two elements given as JSON (`"3"`, `"\"X^2\""`, ...).
 *
 * # Safety
 * `s` is a live handle; `x`, `y` are NUL-terminated; `out` is writable.
 */
enum QrStatus qr_leq(const struct QrStructure *s, const char *x, const char *y, bool *out);

/**
 * Checks the axioms on the structure's window. Writes the report as JSON
 * and returns `AxiomFailure` when an axiom fails.
 *
 * # Safety
 * `s` is a live handle; `report` is writable.
 */
enum QrStatus qr_check_axioms(const struct QrStructure *s, char **report);

/**
 * Classifies the structure and runs the round trip. Writes
 * `{"classification": ..., "roundtrip": ...}`; a relation failing the
 * axioms gives `AxiomFailure` and writes nothing.
 *
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum QrStatus qr_classify(const struct QrStructure *s, char **out);

/**
 * Enumerates the quasi-orders on `Z/n` and cross-checks them against the
 * prime ideals. `count` receives the number found.
 *
 * # Safety
 * `count` and `out` are writable.
 */
enum QrStatus qr_enumerate_zmod(uint64_t n, size_t *count, char **out);

/**
 * Message for the last failing call on this thread, or an empty string.
 * Valid until the next call into the library on the same thread.
 */
const char *qr_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library not yet freed.
 */
void qr_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *qr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QRING_H */
