#ifndef TURAN_H
#define TURAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 `p(F)` of a non-bipartite graph.
 */
#define TURAN_P_INFINITE UINT64_MAX

typedef enum TuranConnectivity {
  TURAN_CONNECTIVITY_ANY = 0,
  TURAN_CONNECTIVITY_CONNECTED = 1,
  TURAN_CONNECTIVITY_TWO_CONNECTED = 2,
} TuranConnectivity;

typedef enum TuranStatus {
  TURAN_STATUS_OK = 0,
  TURAN_STATUS_NULL_POINTER = 1,
  TURAN_STATUS_INVALID_ARGUMENT = 2,
  TURAN_STATUS_INVALID_GRAPH6 = 3,
  TURAN_STATUS_CAPACITY_EXCEEDED = 4,
  TURAN_STATUS_BUDGET_EXCEEDED = 5,
  TURAN_STATUS_HYPOTHESIS_VIOLATED = 6,
  TURAN_STATUS_UNKNOWN_GRAPH = 7,
  TURAN_STATUS_IO = 8,
  TURAN_STATUS_PANIC = 9,
} TuranStatus;

/*
 A forbidden family: graphs plus an optional long-cycle threshold.
 */
typedef struct TuranFamily TuranFamily;

/*
 An undirected simple graph on at most 64 vertices.
 */
typedef struct TuranGraph TuranGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after success.
 Valid until the next call on the same thread.
 */
const char *turan_last_error(void);

/*
 # Safety
 `code` is a NUL-terminated string and `out_graph` is writable.
 */
enum TuranStatus turan_graph_from_graph6(const char *code, struct TuranGraph **out_graph);

/*
 Builtin names such as `K4`, `K33`, `C5`, `W5`, `petersen`, or `g6:<code>`.

 # Safety
 `name` is a NUL-terminated string and `out_graph` is writable.
 */
enum TuranStatus turan_graph_named(const char *name, struct TuranGraph **out_graph);

/*
 # Safety
 `g` is null or a handle from this library not yet freed.
 */
void turan_graph_free(struct TuranGraph *g);

/*
 Number of vertices, 0 for a null handle.

 # Safety
 `g` is null or a live handle.
 */
size_t turan_graph_order(const struct TuranGraph *g);

/*
 Number of edges, 0 for a null handle.

 # Safety
 `g` is null or a live handle.
 */
size_t turan_graph_edge_count(const struct TuranGraph *g);

/*
 # Safety
 `g` is a live handle and `out_code` is writable.
 */
enum TuranStatus turan_graph_to_graph6(const struct TuranGraph *g, char **out_code);

/*
 # Safety
 `s` is null or a string returned by this library not yet freed.
 */
void turan_string_free(char *s);

/*
 # Safety
 `a` and `b` are live handles and `result` is writable.
 */
enum TuranStatus turan_is_isomorphic(const struct TuranGraph *a,
                                     const struct TuranGraph *b,
                                     bool *result);

/*
 Length of a longest cycle, 0 for forests.

 # Safety
 `g` is a live handle and `result` is writable.
 */
enum TuranStatus turan_circumference(const struct TuranGraph *g, size_t *result);

/*
 Whether `host` has a (not necessarily induced) subgraph isomorphic to
 `pattern`.

 # Safety
 `host` and `pattern` are live handles and `result` is writable.
 */
enum TuranStatus turan_contains(const struct TuranGraph *host,
                                const struct TuranGraph *pattern,
                                bool *result);

/*
 Smallest colour class over proper 2-colourings, or
 [`TURAN_P_INFINITE`] for non-bipartite graphs.

 # Safety
 `g` is a live handle and `result` is writable.
 */
enum TuranStatus turan_p_value(const struct TuranGraph *g, uint64_t *result);

/*
 A family forbidding every cycle of length at least `cycle_threshold`
 (0 for none) and, after [`turan_family_add`], the added graphs.

 # Safety
 `out_family` is writable.
 */
enum TuranStatus turan_family_new(size_t cycle_threshold, struct TuranFamily **out_family);

/*
 Adds a copy of `g`; the family does not keep the handle.

 # Safety
 `family` and `g` are live handles.
 */
enum TuranStatus turan_family_add(struct TuranFamily *family, const struct TuranGraph *g);

/*
 # Safety
 `family` is null or a live handle.
 */
void turan_family_free(struct TuranFamily *family);

/*
 `ex(n, family)` under the connectivity constraint. `node_budget` 0 means
 the default. `*has_value` is false when no graph on `n` vertices
 qualifies, and then `*value` is left untouched.

 # Safety
 `family` is a live handle; `value` and `has_value` are writable.
 */
enum TuranStatus turan_ex_exact(size_t n,
                                const struct TuranFamily *family,
                                enum TuranConnectivity connectivity,
                                uint64_t node_budget,
                                uint64_t *value,
                                bool *has_value);

/*
 The extremal graphs as newline-separated graph6 codes in canonical
 order, at most 1000 of them.

 # Safety
 `family` is a live handle and `out_codes` is writable.
 */
enum TuranStatus turan_extremal_graph6(size_t n,
                                       const struct TuranFamily *family,
                                       enum TuranConnectivity connectivity,
                                       uint64_t node_budget,
                                       char **out_codes);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TURAN_H */
