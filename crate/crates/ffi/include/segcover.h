#ifndef SEGCOVER_H
#define SEGCOVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SegcoverMode {
  SEGCOVER_MODE_ALL = 0,
  SEGCOVER_MODE_RECT = 1,
} SegcoverMode;

typedef enum SegcoverStatus {
  SEGCOVER_STATUS_OK = 0,
  SEGCOVER_STATUS_NULL_POINTER = 1,
  SEGCOVER_STATUS_INVALID_UTF8 = 2,
  SEGCOVER_STATUS_PARSE = 3,
  SEGCOVER_STATUS_GEOMETRY = 4,
  // Exhaustive search needs a budget `k` for an instance this large.
  SEGCOVER_STATUS_BUDGET_REQUIRED = 5,
  // No cover of size at most `k`; the JSON result says which stage failed.
  SEGCOVER_STATUS_NO_COVER = 6,
  SEGCOVER_STATUS_TREE = 7,
  SEGCOVER_STATUS_REDUCTION = 8,
  SEGCOVER_STATUS_PANIC = 9,
} SegcoverStatus;

// Opaque arrangement handle.
typedef struct SegcoverArrangement SegcoverArrangement;

// Opaque split-tree handle.
typedef struct SegcoverTree SegcoverTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds the arrangement of an instance document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum SegcoverStatus segcover_arrangement_from_json(const char *json,
                                                   struct SegcoverArrangement **out);

// # Safety
// `arr` must come from [`segcover_arrangement_from_json`] or be null.
void segcover_arrangement_free(struct SegcoverArrangement *arr);

// # Safety
// `arr` must be a live handle and `out` a valid pointer.
enum SegcoverStatus segcover_arrangement_cell_count(const struct SegcoverArrangement *arr,
                                                    uintptr_t *out);

// Cells report as JSON.
//
// # Safety
// `arr` must be a live handle and `out` a valid pointer.
enum SegcoverStatus segcover_arrangement_cells_json(const struct SegcoverArrangement *arr,
                                                    char **out);

// Sets `*out` to whether the `len` ids at `ids` cover every cell `mode` requires.
//
// # Safety
// `ids` must point to `len` readable values (or be null with `len == 0`).
enum SegcoverStatus segcover_is_cover(const struct SegcoverArrangement *arr,
                                      const uint32_t *ids,
                                      uintptr_t len,
                                      enum SegcoverMode mode,
                                      bool *out);

// Minimum cover as JSON. A negative `k` means unbounded. Returns
// `NoCover` (with a JSON result naming the failed stage) when no cover of
// size at most `k` exists.
//
// # Safety
// `arr` must be a live handle and `out` a valid pointer.
enum SegcoverStatus segcover_min_cover(const struct SegcoverArrangement *arr,
                                       enum SegcoverMode mode,
                                       int64_t k,
                                       uintptr_t guard,
                                       char **out);

// Kernel dump for budget `k`; returns `NoCover` when the kernel is infeasible.
//
// # Safety
// `arr` must be a live handle and `out` a valid pointer.
enum SegcoverStatus segcover_kernel_json(const struct SegcoverArrangement *arr,
                                         uintptr_t k,
                                         char **out);

// Parses and validates a split-tree document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum SegcoverStatus segcover_tree_from_json(const char *json, struct SegcoverTree **out);

// # Safety
// `tree` must come from [`segcover_tree_from_json`] or be null.
void segcover_tree_free(struct SegcoverTree *tree);

// Minimum cover of the subdivision, outer face included, as JSON.
//
// # Safety
// `tree` must be a live handle and `out` a valid pointer.
enum SegcoverStatus segcover_tree_dp_cover(const struct SegcoverTree *tree, char **out);

// Compiles a formula document into an instance document with budget and layout.
//
// # Safety
// `cnf_json` must be a NUL-terminated string and `out` a valid pointer.
enum SegcoverStatus segcover_compile_3sat(const char *cnf_json,
                                          enum SegcoverMode variant,
                                          char **out);

// # Safety
// `s` must be a string returned by this library or null.
void segcover_string_free(char *s);

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *segcover_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SEGCOVER_H */
