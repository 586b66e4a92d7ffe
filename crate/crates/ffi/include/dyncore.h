#ifndef DYNCORE_H
#define DYNCORE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_INVALID_ARGUMENT = 2,
  DC_STATUS_UNKNOWN_VERTEX = 3,
  DC_STATUS_ALREADY_PRESENT = 4,
  DC_STATUS_NOT_PRESENT = 5,
  DC_STATUS_SELF_LOOP = 6,
  DC_STATUS_PARSE = 7,
  // The circuit refused a wire (degree cap or cycle).
  DC_STATUS_CIRCUIT_REJECTED = 8,
  DC_STATUS_BUFFER_TOO_SMALL = 9,
  DC_STATUS_PANIC = 10,
} DcStatus;

// Graph target of a reduction.
typedef enum DcTarget {
  DC_TARGET_KCORE = 0,
  DC_TARGET_APPROX_KCORE = 1,
  DC_TARGET_TRUSS = 2,
  DC_TARGET_KLCORE = 3,
} DcTarget;

// Monotone circuit with a designated output.
typedef struct DcCircuit DcCircuit;

// Undirected simple graph.
typedef struct DcGraph DcGraph;

// A compiled reduction together with the circuit it tracks.
typedef struct DcReduction DcReduction;

// Fully dynamic 2-core membership index.
typedef struct DcTwoCore DcTwoCore;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` as a
// NUL-terminated string, truncating to `len`. Returns the full message
// length without the terminator.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t dc_last_error(char *buf, size_t len);

// # Safety
// `out` must be a valid pointer.
enum DcStatus dc_graph_new(size_t n, struct DcGraph **out);

// # Safety
// `g` must be null or a handle from `dc_graph_new` not yet freed.
void dc_graph_free(struct DcGraph *g);

// Adds edge `{u, v}`, growing the vertex set as needed.
//
// # Safety
// `g` must be a live handle.
enum DcStatus dc_graph_insert_edge(struct DcGraph *g, size_t u, size_t v);

// # Safety
// `g` must be a live handle.
enum DcStatus dc_graph_delete_edge(struct DcGraph *g, size_t u, size_t v);

// # Safety
// `g` must be a live handle and `n`, `m` valid pointers.
enum DcStatus dc_graph_size(const struct DcGraph *g, size_t *n, size_t *m);

// Writes the core value of vertex `i` to `out[i]`. `out` needs room for
// one entry per vertex; otherwise nothing is written and the status is
// `DC_STATUS_BUFFER_TOO_SMALL`.
//
// # Safety
// `g` must be a live handle and `out` point to `len` writable entries.
enum DcStatus dc_graph_core_values(const struct DcGraph *g, size_t *out, size_t len);

// Writes every edge with its truss value, in increasing `(u, v)` order
// with `u < v`. Each buffer needs one entry per edge.
//
// # Safety
// `g` must be a live handle and each buffer point to `len` writable
// entries.
enum DcStatus dc_graph_truss_values(const struct DcGraph *g,
                                    size_t *us,
                                    size_t *vs,
                                    size_t *values,
                                    size_t len);

// Index over `n` isolated vertices.
//
// # Safety
// `out` must be a valid pointer.
enum DcStatus dc_twocore_new(size_t n, struct DcTwoCore **out);

// Index over a snapshot of `g`; later changes to `g` are not tracked.
//
// # Safety
// `g` must be a live graph handle and `out` a valid pointer.
enum DcStatus dc_twocore_from_graph(const struct DcGraph *g, struct DcTwoCore **out);

// # Safety
// `t` must be null or a live handle.
void dc_twocore_free(struct DcTwoCore *t);

// # Safety
// `t` must be a live handle.
enum DcStatus dc_twocore_insert_edge(struct DcTwoCore *t, size_t u, size_t v);

// # Safety
// `t` must be a live handle.
enum DcStatus dc_twocore_delete_edge(struct DcTwoCore *t, size_t u, size_t v);

// Sets `*in_core` to whether `u` lies in the 2-core.
//
// # Safety
// `t` must be a live handle and `in_core` a valid pointer.
enum DcStatus dc_twocore_query(struct DcTwoCore *t, size_t u, bool *in_core);

// Parses the line-oriented circuit format (`gate <id> <KIND>`,
// `wire <a> <b>`, `output <id>`).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum DcStatus dc_circuit_parse(const char *text, struct DcCircuit **out);

// # Safety
// `c` must be null or a live handle.
void dc_circuit_free(struct DcCircuit *c);

// # Safety
// `c` must be a live handle.
enum DcStatus dc_circuit_insert_wire(struct DcCircuit *c, size_t from, size_t to);

// # Safety
// `c` must be a live handle.
enum DcStatus dc_circuit_delete_wire(struct DcCircuit *c, size_t from, size_t to);

// # Safety
// `c` must be a live handle and `value` a valid pointer.
enum DcStatus dc_circuit_value(const struct DcCircuit *c, bool *value);

// Compiles `c` into a graph whose membership question answers the circuit
// value. `l` is only read for `DC_TARGET_KLCORE`. The circuit is copied.
//
// # Safety
// `c` must be a live circuit handle and `out` a valid pointer.
enum DcStatus dc_reduction_new(const struct DcCircuit *c,
                               enum DcTarget target,
                               size_t k,
                               size_t l,
                               struct DcReduction **out);

// # Safety
// `r` must be null or a live handle.
void dc_reduction_free(struct DcReduction *r);

// Inserts wire `(from, to)` in the tracked circuit and the matching edges
// in the graph.
//
// # Safety
// `r` must be a live handle.
enum DcStatus dc_reduction_insert_wire(struct DcReduction *r, size_t from, size_t to);

// # Safety
// `r` must be a live handle.
enum DcStatus dc_reduction_delete_wire(struct DcReduction *r, size_t from, size_t to);

// Reads the circuit value off the graph.
//
// # Safety
// `r` must be a live handle and `value` a valid pointer.
enum DcStatus dc_reduction_query(const struct DcReduction *r, bool *value);

// # Safety
// `r` must be a live handle and `n`, `m` valid pointers.
enum DcStatus dc_reduction_size(const struct DcReduction *r, size_t *n, size_t *m);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* DYNCORE_H */
