#ifndef OCTALAB_H
#define OCTALAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OctalabStatus {
  OCTALAB_STATUS_OK = 0,
  OCTALAB_STATUS_NULL_POINTER = 1,
  OCTALAB_STATUS_INVALID_ARGUMENT = 2,
  OCTALAB_STATUS_BUFFER_TOO_SMALL = 3,
  /**
   * The suite ran but at least one claim failed.
   */
  OCTALAB_STATUS_CHECK_FAILED = 4,
  OCTALAB_STATUS_INTERNAL = 5,
  OCTALAB_STATUS_PANIC = 6,
} OctalabStatus;

/**
 * Opaque handle owning the lazily built objects.
 */
typedef struct OctalabWorkbench OctalabWorkbench;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a workbench. `cache_dir` may be null to disable the group cache;
 * `budget` 0 selects the default element budget.
 *
 * # Safety
 * `cache_dir` must be null or a NUL-terminated string; `out` must be valid
 * for writes.
 */
enum OctalabStatus octalab_workbench_new(const char *cache_dir,
                                         size_t budget,
                                         uint64_t seed,
                                         struct OctalabWorkbench **out);

/**
 * # Safety
 * `wb` must be null or a handle from [`octalab_workbench_new`] not yet freed.
 */
void octalab_workbench_free(struct OctalabWorkbench *wb);

/**
 * Order of the group acting on the plane (80640).
 *
 * # Safety
 * `wb` must be a live handle and `out` valid for writes.
 */
enum OctalabStatus octalab_group_order(const struct OctalabWorkbench *wb, uint64_t *out);

/**
 * # Safety
 * `wb` must be a live handle; `points` and `lines` valid for writes.
 */
enum OctalabStatus octalab_octagon_size(const struct OctalabWorkbench *wb,
                                        size_t *points,
                                        size_t *lines);

/**
 * Writes the three points of line `index`.
 *
 * # Safety
 * `wb` must be a live handle and `out` valid for three writes.
 */
enum OctalabStatus octalab_octagon_line(const struct OctalabWorkbench *wb,
                                        size_t index,
                                        uint32_t *out);

/**
 * Distance between two points in the collinearity graph.
 *
 * # Safety
 * `wb` must be a live handle and `out` valid for writes.
 */
enum OctalabStatus octalab_octagon_distance(const struct OctalabWorkbench *wb,
                                            size_t a,
                                            size_t b,
                                            uint32_t *out);

/**
 * Runs a suite and returns its reports as a JSON array in `json_out`, to be
 * released with [`octalab_string_free`]. Suite names are those of the
 * command-line tool, plus `family:o2` and `family:product`. Returns
 * `CHECK_FAILED` with the JSON still set when a claim fails.
 *
 * # Safety
 * `wb` must be a live handle, `suite` a NUL-terminated string and
 * `json_out` valid for writes.
 */
enum OctalabStatus octalab_run_suite(const struct OctalabWorkbench *wb,
                                     const char *suite,
                                     char **json_out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void octalab_string_free(char *s);

/**
 * Copies the last error of the calling thread, NUL-terminated, into `buf`.
 * `needed` receives the required size including the terminator (1 when
 * there is no error). Returns `BUFFER_TOO_SMALL` if `cap` is less.
 *
 * # Safety
 * `buf` must be valid for `cap` writes (or null with `cap` 0) and `needed`
 * valid for writes.
 */
enum OctalabStatus octalab_last_error(char *buf, size_t cap, size_t *needed);

/**
 * Library version as a static NUL-terminated string.
 */
const char *octalab_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OCTALAB_H */
