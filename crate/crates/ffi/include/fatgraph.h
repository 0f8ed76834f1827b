#ifndef FATGRAPH_H
#define FATGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every function.
 */
typedef enum FgStatus {
  FG_STATUS_OK = 0,
  FG_STATUS_NULL_POINTER = 1,
  FG_STATUS_INVALID_ARGUMENT = 2,
  FG_STATUS_MALFORMED_INPUT = 3,
  FG_STATUS_RESOURCE_CAP = 4,
  FG_STATUS_IDENTITY_FAILED = 5,
  FG_STATUS_INTERNAL = 6,
} FgStatus;

/**
 * An oriented ribbon graph.
 */
typedef struct FgGraph FgGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread. Valid until the next call
 * that fails on the same thread; never NULL.
 */
const char *fg_last_error(void);

/**
 * Parses a graph from JSON `{"rotation": .., "pairing": .., "vertex_order"?: .., "tails"?: ..}`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum FgStatus fg_graph_from_json(const char *json, struct FgGraph **out);

/**
 * The graph `X_k` with its reference orientation.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FgStatus fg_graph_build_xk(size_t k, struct FgGraph **out);

/**
 * Releases a graph. NULL is ignored.
 *
 * # Safety
 * `graph` must come from this library and not be used afterwards.
 */
void fg_graph_free(struct FgGraph *graph);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void fg_string_free(char *s);

/**
 * Vertex, edge and face counts.
 *
 * # Safety
 * All pointers must be valid.
 */
enum FgStatus fg_graph_counts(const struct FgGraph *graph,
                              size_t *vertices,
                              size_t *edges,
                              size_t *faces);

/**
 * Genus and number of punctures of the thickened surface.
 *
 * # Safety
 * All pointers must be valid.
 */
enum FgStatus fg_graph_genus(const struct FgGraph *graph, size_t *genus, size_t *punctures);

/**
 * Whether the oriented graph equals its own negative.
 *
 * # Safety
 * All pointers must be valid.
 */
enum FgStatus fg_graph_is_zero(const struct FgGraph *graph, bool *out);

/**
 * Canonical form as JSON: `{"zero": bool, "sign": ±1, "graph": ..}`; the
 * input equals `sign` times `graph`.
 *
 * # Safety
 * All pointers must be valid; free the string with `fg_string_free`.
 */
enum FgStatus fg_graph_canonical_json(const struct FgGraph *graph, char **out);

/**
 * Boundary chain as JSON `{"grade": [g, m, k], "terms": [..]}`.
 *
 * # Safety
 * All pointers must be valid; free the string with `fg_string_free`.
 */
enum FgStatus fg_graph_boundary_json(const struct FgGraph *graph, char **out);

/**
 * Chain-level certificate for `Z_k` as JSON. For `k = 5, 9, 13, ..` this
 * includes the pairing with `Θ_k`; for other odd `k ≥ 3` only the cycle
 * check runs. Returns `IdentityFailed` when a check fails; the report is
 * written either way.
 *
 * # Safety
 * `out` must be a valid pointer; free the string with `fg_string_free`.
 */
enum FgStatus fg_verify(size_t k, char **out);

/**
 * Euler characteristic of the genus `genus`, `punctures`-puncture complex.
 * `max_darts = 0` selects the default cap.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FgStatus fg_euler_characteristic(size_t genus,
                                      size_t punctures,
                                      size_t max_darts,
                                      int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FATGRAPH_H */
