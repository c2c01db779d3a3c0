#ifndef SCHEME_FORGE_H
#define SCHEME_FORGE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum SfStatus {
  SF_OK = 0,
  SF_NULL_POINTER = 1,
  SF_INVALID_ARGUMENT = 2,
  SF_CONSTRUCTION = 3,
  SF_TOO_LARGE = 4,
  SF_BUFFER_TOO_SMALL = 5,
  SF_PARSE = 6,
  SF_INTERNAL = 7,
} SfStatus;

/**
 * Graph serialization formats.
 */
typedef enum SfFormat {
  SF_GRAPH6 = 0,
  SF_DIGRAPH6 = 1,
  SF_EDGE_LIST = 2,
  SF_ADJACENCY_JSON = 3,
} SfFormat;

/**
 * A digraph, optionally with a vertex partition.
 */
typedef struct SfGraph SfGraph;

/**
 * Point set of a Tatra scheme.
 */
typedef struct SfOmega SfOmega;

/**
 * (v, k, t, lambda, mu)
 */
typedef struct SfDsrgParams {
  uint64_t v;
  uint64_t k;
  uint64_t t;
  uint64_t lambda;
  uint64_t mu;
} SfDsrgParams;

/**
 * (v, k, lambda1, lambda2, m, n)
 */
typedef struct SfDdgParams {
  uint64_t v;
  uint64_t k;
  uint64_t lambda1;
  uint64_t lambda2;
  uint64_t m;
  uint64_t n;
  bool proper;
} SfDdgParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *sf_version(void);

/**
 * Copies the last error message of this thread (empty after a success).
 *
 * # Safety
 * `buf` must be writable for `cap` bytes and `needed` must be valid.
 */
enum SfStatus sf_last_error(char *buf, uintptr_t cap, uintptr_t *needed);

/**
 * Builds Omega for GF(q) and the index-n subgroup K.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SfStatus sf_omega_new(uint64_t q, uint32_t n, struct SfOmega **out);

/**
 * # Safety
 * `omega` must come from `sf_omega_new` and not be freed twice. Null is ignored.
 */
void sf_omega_free(struct SfOmega *omega);

/**
 * Number of points, or 0 for null.
 *
 * # Safety
 * `omega` must be null or a live handle.
 */
uintptr_t sf_omega_len(const struct SfOmega *omega);

/**
 * Field modulus such as `x^3+x+1`.
 *
 * # Safety
 * `omega` must be a live handle; buffer rules as in the crate docs.
 */
enum SfStatus sf_omega_modulus(const struct SfOmega *omega,
                               char *buf,
                               uintptr_t cap,
                               uintptr_t *needed);

/**
 * Builds the digraph Gamma(i, g) with i in {1, 2}.
 *
 * # Safety
 * `omega` must be a live handle and `out` valid.
 */
enum SfStatus sf_dsrg_build(const struct SfOmega *omega,
                            uint8_t i,
                            uint32_t g,
                            struct SfGraph **out);

/**
 * Builds Delta(D) for the difference set `elements[0..len]` in Z_n.
 *
 * # Safety
 * `omega` must be a live handle, `elements` readable for `len` entries, `out` valid.
 */
enum SfStatus sf_ddg_build(const struct SfOmega *omega,
                           const uint32_t *elements,
                           uintptr_t len,
                           struct SfGraph **out);

/**
 * Reads a graph in the given format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` valid.
 */
enum SfStatus sf_graph_import(const char *text, enum SfFormat format, struct SfGraph **out);

/**
 * # Safety
 * `graph` must come from this library and not be freed twice. Null is ignored.
 */
void sf_graph_free(struct SfGraph *graph);

/**
 * Vertex count, or 0 for null.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
uintptr_t sf_graph_vertex_count(const struct SfGraph *graph);

/**
 * Arc count (each undirected edge counts twice), or 0 for null.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
uint64_t sf_graph_arc_count(const struct SfGraph *graph);

/**
 * Whether x -> y is an arc. Out-of-range vertices give false.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
bool sf_graph_has_arc(const struct SfGraph *graph, uintptr_t x, uintptr_t y);

/**
 * Serializes the graph. The written string is NUL-terminated.
 *
 * # Safety
 * `graph` must be a live handle; buffer rules as in the crate docs.
 */
enum SfStatus sf_graph_export(const struct SfGraph *graph,
                              enum SfFormat format,
                              char *buf,
                              uintptr_t cap,
                              uintptr_t *needed);

/**
 * Exhaustive DSRG check. On success `*is_dsrg` tells the verdict and
 * `*params` holds the parameters when it is true.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SfStatus sf_graph_verify_dsrg(const struct SfGraph *graph,
                                   bool *is_dsrg,
                                   struct SfDsrgParams *params);

/**
 * Exhaustive DDG check against the graph's own partition, or consecutive
 * blocks of `class_size` vertices when `class_size > 0`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SfStatus sf_graph_verify_ddg(const struct SfGraph *graph,
                                  uintptr_t class_size,
                                  bool *is_ddg,
                                  struct SfDdgParams *params);

/**
 * Automorphism group order as a decimal string.
 *
 * # Safety
 * `graph` must be a live handle; buffer rules as in the crate docs.
 */
enum SfStatus sf_graph_automorphism_order(const struct SfGraph *graph,
                                          char *buf,
                                          uintptr_t cap,
                                          uintptr_t *needed);

/**
 * SHA-256 of the canonical form, as 64 hex digits.
 *
 * # Safety
 * `graph` must be a live handle; buffer rules as in the crate docs.
 */
enum SfStatus sf_graph_canonical_hash(const struct SfGraph *graph,
                                      char *buf,
                                      uintptr_t cap,
                                      uintptr_t *needed);

/**
 * Decides isomorphism of two graphs.
 *
 * # Safety
 * All pointers must be valid.
 */
enum SfStatus sf_graph_isomorphic(const struct SfGraph *a, const struct SfGraph *b, bool *result);

/**
 * Number of admissible (p, q) pairs with q <= max_q.
 *
 * # Safety
 * `count` must be valid.
 */
enum SfStatus sf_search_count_pairs(uint64_t max_q, bool prime_q_only, uint64_t *count);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHEME_FORGE_H */
