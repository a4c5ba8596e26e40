#ifndef EDGESPLIT_H
#define EDGESPLIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EsFilter {
  ES_FILTER_ALL = 0,
  ES_FILTER_SPECIAL1 = 1,
  ES_FILTER_SPECIAL2 = 2,
  ES_FILTER_SPECIAL = 3,
} EsFilter;

typedef enum EsStatus {
  ES_STATUS_OK = 0,
  ES_STATUS_NULL_POINTER = 1,
  ES_STATUS_INVALID_UTF8 = 2,
  ES_STATUS_PARSE = 3,
  ES_STATUS_CAP_EXCEEDED = 4,
  ES_STATUS_INVALID_INPUT = 5,
  ES_STATUS_INVARIANT_BREACH = 6,
  ES_STATUS_PANIC = 7,
} EsStatus;

/**
 * Opaque graph handle.
 */
typedef struct EsGraph EsGraph;

/**
 * Invariants of `S/I(G)` and `I(G)`.
 */
typedef struct EsInvariants {
  int64_t n;
  int64_t pd_quotient;
  int64_t pd_ideal;
  int64_t reg_ideal;
  int64_t reg_quotient;
  int64_t depth;
  int64_t dim;
  int64_t bight;
  int64_t nu;
} EsInvariants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a graph from an edge list (`n m` header, one edge per line) or
 * graph JSON.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EsStatus es_graph_parse(const char *text, struct EsGraph **out);

/**
 * Builds a graph on `1..=n` from `m` edges given as `2m` flat endpoints.
 *
 * # Safety
 * `edges` must point to `2 * m` readable values (or be null when `m == 0`)
 * and `out` must be a valid pointer.
 */
enum EsStatus es_graph_new(uint32_t n, const uint32_t *edges, size_t m, struct EsGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void es_graph_free(struct EsGraph *g);

/**
 * Number of vertices, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
uint32_t es_graph_vertex_count(const struct EsGraph *g);

/**
 * Number of edges, 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
uint32_t es_graph_edge_count(const struct EsGraph *g);

/**
 * `field` is `"gf2"`, `"q"` or `"gfp:<p>"`; null means GF(2).
 *
 * # Safety
 * `g` must be a live handle, `field` null or NUL-terminated, `out` valid.
 */
enum EsStatus es_invariants(const struct EsGraph *g, const char *field, struct EsInvariants *out);

/**
 * Graded Betti table of `S/I(G)` as JSON `{"convention","field","entries":[[i,j,b]]}`.
 *
 * # Safety
 * As for `es_invariants`; `*out_json` receives a string to free with `es_string_free`.
 */
enum EsStatus es_betti_json(const struct EsGraph *g, const char *field, char **out_json);

/**
 * The σ-stable splitting as splitting JSON, and its stabilization index.
 *
 * # Safety
 * `g` must be a live handle; `out_json` and `out_t0` valid pointers.
 */
enum EsStatus es_sigma_stable_json(const struct EsGraph *g, char **out_json, uint32_t *out_t0);

/**
 * Counts the splittings selected by `filter` (an `EsFilter` value),
 * refusing above `cap` raw choices.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum EsStatus es_splitting_count(const struct EsGraph *g,
                                 uint32_t filter,
                                 uint64_t cap,
                                 uint64_t *out);

/**
 * Compares a splitting (splitting JSON) with its target; returns the
 * comparison record JSON including verdicts.
 *
 * # Safety
 * String arguments NUL-terminated (`field` may be null); `out_json` valid.
 */
enum EsStatus es_compare_json(const char *splitting_json, const char *field, char **out_json);

/**
 * Applies the `t`-fold stretch to an ideal written as `(x1x2, x2x3)`.
 *
 * # Safety
 * `ideal` NUL-terminated; `out_text` valid.
 */
enum EsStatus es_stretch_ideal(const char *ideal, uint32_t t, char **out_text);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void es_string_free(char *s);

/**
 * Message for the last failure on this thread; valid until the next call
 * that fails. Never null.
 */
const char *es_last_error(void);

/**
 * Library version, a static string.
 */
const char *es_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EDGESPLIT_H */
