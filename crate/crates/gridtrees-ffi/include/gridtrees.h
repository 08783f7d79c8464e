/* C ABI for the gridtrees engine. */

#ifndef GRIDTREES_H
#define GRIDTREES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes mirrored into the generated header.
 */
typedef enum GtStatus {
  /**
   * Success.
   */
  GT_STATUS_OK = 0,
  /**
   * A caller-supplied argument violates a precondition.
   */
  GT_STATUS_INVALID_ARGUMENT = 1,
  /**
   * A configured resource cap was exceeded.
   */
  GT_STATUS_RESOURCE_LIMIT = 2,
  /**
   * An internal exactness invariant failed.
   */
  GT_STATUS_COMPUTATION = 3,
  /**
   * A required pointer argument was null.
   */
  GT_STATUS_NULL_POINTER = 4,
} GtStatus;

/**
 * Column-count parity selector for the limit constants.
 */
typedef enum GtParity {
  GT_PARITY_ODD = 0,
  GT_PARITY_EVEN = 1,
} GtParity;

/**
 * Method selector for exact MST probabilities.
 */
typedef enum GtMstMethod {
  GT_MST_METHOD_EXTENSIONS = 0,
  GT_MST_METHOD_BRUTEFORCE = 1,
} GtMstMethod;

/**
 * Spanning-tree distribution selector.
 */
typedef enum GtDistribution {
  GT_DISTRIBUTION_UST = 0,
  GT_DISTRIBUTION_MST = 1,
} GtDistribution;

/**
 * Binomial tail selector.
 */
typedef enum GtTail {
  GT_TAIL_GREATER = 0,
  GT_TAIL_LESS = 1,
} GtTail;

/**
 * Opaque grid handle.
 */
typedef struct GtGrid GtGrid;

/**
 * Monte Carlo estimate, mirrored from the core summary type.
 */
typedef struct GtMonteCarloSummary {
  uint32_t n;
  enum GtDistribution distribution;
  uint64_t samples;
  uint64_t successes;
  double estimate;
  double std_error;
  double ci95_low;
  double ci95_high;
  uint64_t seed;
} GtMonteCarloSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a 2-by-`columns` grid. On success writes a handle that must be
 * released with `gt_grid_free`.
 *
 * # Safety
 * `out` must be a valid pointer to a `GtGrid*` slot.
 */
enum GtStatus gt_grid_new(uint32_t columns, struct GtGrid **out);

/**
 * Releases a grid handle. Null is a no-op.
 *
 * # Safety
 * `grid` must be null or a pointer previously returned by `gt_grid_new`
 * that has not been freed yet.
 */
void gt_grid_free(struct GtGrid *grid);

/**
 * Number of vertices of the grid (2n). Returns 0 for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle from `gt_grid_new`.
 */
uint32_t gt_grid_vertex_count(const struct GtGrid *grid);

/**
 * Number of edges of the grid (3n-2). Returns 0 for a null handle.
 *
 * # Safety
 * `grid` must be null or a live handle from `gt_grid_new`.
 */
uint32_t gt_grid_edge_count(const struct GtGrid *grid);

/**
 * Releases a string allocated by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a string pointer previously produced by one of the
 * `gt_*` functions, not yet freed.
 */
void gt_string_free(char *s);

/**
 * Writes the spanning-tree count of the 2-by-n grid as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer to a `char*` slot.
 */
enum GtStatus gt_tree_count(uint32_t n, char **out);

/**
 * Writes the balanced spanning-tree count as a decimal string.
 * Fails with `GT_STATUS_INVALID_ARGUMENT` when `n` is zero.
 *
 * # Safety
 * `out` must be a valid pointer to a `char*` slot.
 */
enum GtStatus gt_balanced_count(uint32_t n, char **out);

/**
 * Writes the exact UST balance probability as reduced numerator and
 * denominator strings plus a six-decimal rendering.
 *
 * # Safety
 * `out_num`, `out_den`, and `out_6dp` must be valid pointers to `char*`
 * slots.
 */
enum GtStatus gt_ust_probability(uint32_t n, char **out_num, char **out_den, char **out_6dp);

/**
 * Writes one limit constant rendered to `places` decimals (at most 64).
 *
 * # Safety
 * `out` must be a valid pointer to a `char*` slot.
 */
enum GtStatus gt_limit_constant(enum GtParity parity, uint32_t places, char **out);

/**
 * Writes the exact MST balance probability of the grid as reduced
 * numerator and denominator strings. `GT_STATUS_RESOURCE_LIMIT` signals
 * that the grid exceeds the chosen method's cap.
 *
 * # Safety
 * `grid` must be a live handle; `out_num` and `out_den` must be valid
 * pointers to `char*` slots.
 */
enum GtStatus gt_mst_probability_exact(const struct GtGrid *grid,
                                       enum GtMstMethod method,
                                       char **out_num,
                                       char **out_den);

/**
 * Runs the Monte Carlo balance-probability estimator.
 *
 * # Safety
 * `grid` must be a live handle; `out` must point to writable summary
 * storage.
 */
enum GtStatus gt_estimate_balance_probability(const struct GtGrid *grid,
                                              enum GtDistribution distribution,
                                              uint64_t samples,
                                              uint64_t seed,
                                              struct GtMonteCarloSummary *out);

/**
 * Draws the spanning tree with the given sample index and writes its
 * sorted edge ids. `edge_ids` must hold at least `vertex_count - 1` slots
 * (`capacity` says how many are available).
 *
 * # Safety
 * `grid` must be a live handle; `edge_ids` must point to at least
 * `capacity` writable `uint32_t` slots; `written` must be valid.
 */
enum GtStatus gt_sample_tree(const struct GtGrid *grid,
                             enum GtDistribution distribution,
                             uint64_t seed,
                             uint64_t sample_index,
                             uint32_t *edge_ids,
                             uintptr_t capacity,
                             uintptr_t *written);

/**
 * Reports whether the given edge set is a balanced spanning tree of the
 * grid. Fails when the edges do not form a spanning tree.
 *
 * # Safety
 * `grid` must be a live handle; `edge_ids` must point to `count` readable
 * `uint32_t` values; `out` must be valid.
 */
enum GtStatus gt_tree_is_balanced(const struct GtGrid *grid,
                                  const uint32_t *edge_ids,
                                  uintptr_t count,
                                  bool *out);

/**
 * log10 of the one-sided exact binomial tail probability. `p0_num` and
 * `p0_den` are decimal strings for the null success probability.
 *
 * # Safety
 * `p0_num` and `p0_den` must be NUL-terminated strings; `out` must be
 * valid.
 */
enum GtStatus gt_binomial_log10_pvalue(uint64_t successes,
                                       uint64_t samples,
                                       const char *p0_num,
                                       const char *p0_den,
                                       enum GtTail tail,
                                       double *out);

/**
 * Library version as a static string; do not free.
 */
const char *gt_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRIDTREES_H */
