#ifndef MTF_H
#define MTF_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum MtfStatus {
  MTF_STATUS_OK = 0,
  MTF_STATUS_NULL_POINTER = 1,
  MTF_STATUS_INVALID_UTF8 = 2,
  MTF_STATUS_PARSE = 3,
  MTF_STATUS_INVALID_INPUT = 4,
  MTF_STATUS_RESOURCE_LIMIT = 5,
  MTF_STATUS_INTERNAL = 6,
  MTF_STATUS_PANIC = 7,
} MtfStatus;

/**
 * Opaque handle to a computed fan.
 */
typedef struct MtfFan MtfFan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the fan of a built-in module (`a2-P1`, `a2-S1`, `nakayama2-121`,
 * `square-lambda`).
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer. On
 * success `*out` owns a handle to be released with `mtf_fan_free`.
 */
enum MtfStatus mtf_fan_from_preset(const char *name, struct MtfFan **out);

/**
 * Builds the fan of a module given as a JSON document.
 *
 * # Safety
 * Same contract as `mtf_fan_from_preset`.
 */
enum MtfStatus mtf_fan_from_json(const char *json, struct MtfFan **out);

/**
 * Releases a fan handle. Null is ignored.
 *
 * # Safety
 * `fan` must come from this library and not be used afterwards.
 */
void mtf_fan_free(struct MtfFan *fan);

/**
 * Number of cones of the fan.
 *
 * # Safety
 * `fan` must be a live handle and `out` a valid pointer.
 */
enum MtfStatus mtf_fan_cone_count(const struct MtfFan *fan, size_t *out);

/**
 * Number of vertices of the underlying quiver, i.e. the ambient dimension.
 *
 * # Safety
 * `fan` must be a live handle and `out` a valid pointer.
 */
enum MtfStatus mtf_fan_dimension(const struct MtfFan *fan, size_t *out);

/**
 * The fan as JSON, in the same format as `mtf fan`.
 *
 * # Safety
 * `fan` must be a live handle and `out` a valid pointer. On success `*out`
 * must be released with `mtf_string_free`.
 */
enum MtfStatus mtf_fan_to_json(const struct MtfFan *fan, char **out);

/**
 * Locates a stability vector given as comma-separated rationals and writes
 * the cone id. If `out_json` is not null, it receives the classification
 * report as JSON.
 *
 * # Safety
 * `fan` must be a live handle, `theta` a NUL-terminated string and
 * `out_cone` a valid pointer. A string written to `out_json` must be
 * released with `mtf_string_free`.
 */
enum MtfStatus mtf_fan_classify(const struct MtfFan *fan,
                                const char *theta,
                                size_t *out_cone,
                                char **out_json);

/**
 * Runs the sampling oracle and the structural checks; writes the number
 * of violations.
 *
 * # Safety
 * `fan` must be a live handle and `out_violations` a valid pointer.
 */
enum MtfStatus mtf_fan_verify(const struct MtfFan *fan,
                              int64_t bound,
                              uint64_t seed,
                              size_t *out_violations);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void mtf_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *mtf_last_error(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MTF_H */
