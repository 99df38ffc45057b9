#ifndef REPEXT_H
#define REPEXT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by all fallible functions.
 */
typedef enum RxStatus {
  RX_STATUS_OK = 0,
  RX_STATUS_NOT_INTERVAL = 1,
  RX_STATUS_NOT_EXTENDIBLE = 2,
  RX_STATUS_INVALID_PARTIAL = 3,
  RX_STATUS_PARSE_ERROR = 4,
  RX_STATUS_NULL_POINTER = 5,
  RX_STATUS_OUT_OF_RANGE = 6,
  RX_STATUS_INTERNAL = 7,
} RxStatus;

/**
 * A parsed graph.
 */
typedef struct RxGraph RxGraph;

/**
 * Pre-drawn intervals validated against one graph.
 */
typedef struct RxPartial RxPartial;

/**
 * A full interval representation, one interval per vertex.
 */
typedef struct RxRepresentation RxRepresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *rx_status_message(enum RxStatus status);

/**
 * Detail message for the last non-OK status on this thread. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *rx_last_error(void);

/**
 * Parses a graph in the `n m` + edge-list format.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a writable pointer.
 */
enum RxStatus rx_graph_parse(const char *text, struct RxGraph **out);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle from [`rx_graph_parse`].
 */
size_t rx_graph_vertex_count(const struct RxGraph *graph);

/**
 * # Safety
 * `graph` must be null or a live handle from [`rx_graph_parse`]; it is
 * invalid afterwards.
 */
void rx_graph_free(struct RxGraph *graph);

/**
 * Parses `v L R` lines of pre-drawn intervals for `graph`. With
 * `assume_sorted`, lines must be in non-decreasing order of left endpoint.
 *
 * # Safety
 * `graph` must be a live handle, `text` a nul-terminated string and `out` a
 * writable pointer.
 */
enum RxStatus rx_partial_parse(const struct RxGraph *graph,
                               const char *text,
                               bool assume_sorted,
                               struct RxPartial **out);

/**
 * # Safety
 * `partial` must be null or a live handle from [`rx_partial_parse`]; it is
 * invalid afterwards.
 */
void rx_partial_free(struct RxPartial *partial);

/**
 * Extends `partial` (null means nothing pre-drawn) to a representation of
 * `graph`. The result is verified before it is returned.
 *
 * # Safety
 * `graph` must be a live handle, `partial` null or a live handle parsed for
 * the same graph, and `out` a writable pointer.
 */
enum RxStatus rx_extend(const struct RxGraph *graph,
                        const struct RxPartial *partial,
                        struct RxRepresentation **out);

/**
 * Same as [`rx_extend`] with nothing pre-drawn.
 *
 * # Safety
 * As for [`rx_extend`].
 */
enum RxStatus rx_recognize(const struct RxGraph *graph, struct RxRepresentation **out);

/**
 * Number of intervals, or 0 for a null handle.
 *
 * # Safety
 * `rep` must be null or a live handle.
 */
size_t rx_rep_len(const struct RxRepresentation *rep);

/**
 * Endpoints of vertex `v` as newly allocated strings, each released with
 * [`rx_string_free`].
 *
 * # Safety
 * `rep` must be a live handle; `left` and `right` writable pointers.
 */
enum RxStatus rx_rep_interval(const struct RxRepresentation *rep,
                              size_t v,
                              char **left,
                              char **right);

/**
 * The representation as `v L R` lines, newly allocated; null on a null
 * handle. Release with [`rx_string_free`].
 *
 * # Safety
 * `rep` must be null or a live handle.
 */
char *rx_rep_to_string(const struct RxRepresentation *rep);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void rx_string_free(char *s);

/**
 * # Safety
 * `rep` must be null or a live handle; it is invalid afterwards.
 */
void rx_rep_free(struct RxRepresentation *rep);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REPEXT_H */
