#ifndef MLGRAPH_H
#define MLGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MlgStatus {
  MLG_STATUS_OK = 0,
  MLG_STATUS_NULL_POINTER = 1,
  MLG_STATUS_INVALID_UTF8 = 2,
  MLG_STATUS_PARSE = 3,
  MLG_STATUS_INVALID_GRAPH = 4,
  MLG_STATUS_OUT_OF_RANGE = 5,
  MLG_STATUS_UNKNOWN_NODE = 6,
  MLG_STATUS_CONFIG = 7,
  MLG_STATUS_PANIC = 8,
} MlgStatus;

// Opaque decontractible graph.
typedef struct MlgGraph MlgGraph;

// Opaque multilevel hierarchy.
typedef struct MlgHierarchy MlgHierarchy;

// Message for the last failed call on this thread, or null after a
// successful call. Valid until the next call on this thread.
const char *mlg_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void mlg_string_free(char *s);

// Parses a graph from its JSON form.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum MlgStatus mlg_graph_from_json(const char *json, struct MlgGraph **out);

// Parses a graph from DOT produced by [`mlg_graph_to_dot`].
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum MlgStatus mlg_graph_from_dot(const char *text, struct MlgGraph **out);

// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum MlgStatus mlg_graph_to_json(const struct MlgGraph *g, char **out);

// # Safety
// `g` must be a live graph handle; `out` must be writable.
enum MlgStatus mlg_graph_to_dot(const struct MlgGraph *g, char **out);

// # Safety
// `g` must be a live graph handle; both outputs must be writable.
enum MlgStatus mlg_graph_size(const struct MlgGraph *g, size_t *nodes, size_t *edges);

// # Safety
// `g` must be null or a handle from this library, not yet freed.
void mlg_graph_free(struct MlgGraph *g);

// Builds a hierarchy over a plain graph given as
// `{"nodes": [{"label", "weight"}], "edges": [{"source", "target", "weight"}]}`
// with node indices as endpoints. `gamma` may be null for the default
// schedule.
//
// # Safety
// String arguments must be null (where allowed) or nul-terminated; `out`
// must be writable.
enum MlgStatus mlg_hierarchy_new(const char *base_json,
                                 const char *gamma,
                                 struct MlgHierarchy **out);

// Runs the text pipeline with the built-in resources and builds a
// hierarchy over the resulting word-sequence graph.
//
// # Safety
// `text` must be nul-terminated, `gamma` null or nul-terminated; `out`
// must be writable.
enum MlgStatus mlg_hierarchy_from_text(const char *text,
                                       const char *gamma,
                                       struct MlgHierarchy **out);

// Loads a hierarchy saved with [`mlg_hierarchy_to_json`].
//
// # Safety
// `json` must be nul-terminated; `out` must be writable.
enum MlgStatus mlg_hierarchy_from_json(const char *json, struct MlgHierarchy **out);

// # Safety
// `h` must be a live hierarchy handle; `out` must be writable.
enum MlgStatus mlg_hierarchy_to_json(const struct MlgHierarchy *h, char **out);

// Number of contraction steps; levels run from 0 to the height.
//
// # Safety
// `h` must be a live hierarchy handle; `out` must be writable.
enum MlgStatus mlg_hierarchy_height(const struct MlgHierarchy *h, size_t *out);

// Copies level `level` into a new graph handle.
//
// # Safety
// `h` must be a live hierarchy handle; `out` must be writable.
enum MlgStatus mlg_hierarchy_level(const struct MlgHierarchy *h,
                                   size_t level,
                                   struct MlgGraph **out);

// Base node ids behind `node` at `level`, as a sorted JSON array.
//
// # Safety
// `h` must be a live hierarchy handle; `out` must be writable.
enum MlgStatus mlg_hierarchy_trace_json(const struct MlgHierarchy *h,
                                        size_t level,
                                        uint64_t node,
                                        char **out);

// Per-level metrics as a JSON array, normalized by the base graph's total
// node weight.
//
// # Safety
// `h` must be a live hierarchy handle; `out` must be writable.
enum MlgStatus mlg_hierarchy_metrics_json(const struct MlgHierarchy *h, char **out);

// # Safety
// `h` must be null or a handle from this library, not yet freed.
void mlg_hierarchy_free(struct MlgHierarchy *h);

#endif  /* MLGRAPH_H */
