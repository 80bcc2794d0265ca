#ifndef NISQSYNTH_H
#define NISQSYNTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum NsqStatus {
  NSQ_STATUS_OK = 0,
  NSQ_STATUS_NULL_POINTER = 1,
  NSQ_STATUS_INVALID_UTF8 = 2,
  NSQ_STATUS_PARSE = 3,
  NSQ_STATUS_INVALID_ARGUMENT = 4,
  NSQ_STATUS_SINGULAR = 5,
  NSQ_STATUS_UNSUPPORTED_GATE = 6,
  NSQ_STATUS_TOO_LARGE = 7,
  NSQ_STATUS_PANIC = 99,
} NsqStatus;

// Values for the `mode` argument of [`nsq_verify`].
typedef enum NsqVerifyMode {
  NSQ_VERIFY_MODE_GF2 = 0,
  NSQ_VERIFY_MODE_UNITARY = 1,
} NsqVerifyMode;

// A circuit over CNOT, Rz and H.
typedef struct NsqCircuit NsqCircuit;

// A coupling graph.
typedef struct NsqGraph NsqGraph;

// An invertible binary matrix.
typedef struct NsqMatrix NsqMatrix;

// Gate counts of a circuit.
typedef struct NsqCounts {
  size_t cnot;
  size_t rz;
  size_t h;
  size_t total;
} NsqCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until the
// next failing call on the same thread.
const char *nsq_last_error(void);

// Parses a matrix: `n`, then `n` rows of '0'/'1'.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum NsqStatus nsq_matrix_parse(const char *text, struct NsqMatrix **out);

// Uniformly random invertible `n x n` matrix.
//
// # Safety
// `out` must be writable.
enum NsqStatus nsq_matrix_random(size_t n, uint64_t seed, struct NsqMatrix **out);

// # Safety
// `m` must be a live matrix handle.
size_t nsq_matrix_dim(const struct NsqMatrix *m);

// # Safety
// `m` must be NULL or a handle not yet freed.
void nsq_matrix_free(struct NsqMatrix *m);

// Parses a graph: `n m`, then `m` lines `u v`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum NsqStatus nsq_graph_parse(const char *text, struct NsqGraph **out);

// A built-in device such as `tokyo20`, `line5` or `grid3x4`.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum NsqStatus nsq_graph_builtin(const char *name, struct NsqGraph **out);

// Random connected graph; each edge is present with probability `sparseness`.
//
// # Safety
// `out` must be writable.
enum NsqStatus nsq_graph_random(size_t n, double sparseness, uint64_t seed, struct NsqGraph **out);

// # Safety
// `g` must be a live graph handle.
size_t nsq_graph_node_count(const struct NsqGraph *g);

// # Safety
// `g` must be NULL or a handle not yet freed.
void nsq_graph_free(struct NsqGraph *g);

// Parses the line-based circuit format (`qubits n`, `cnot c t`, ...).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum NsqStatus nsq_circuit_parse(const char *text, struct NsqCircuit **out);

// Writes the circuit text to `*out`; release it with [`nsq_string_free`].
//
// # Safety
// `c` must be a live circuit handle; `out` must be writable.
enum NsqStatus nsq_circuit_emit(const struct NsqCircuit *c, char **out);

// # Safety
// `c` must be a live circuit handle.
size_t nsq_circuit_num_qubits(const struct NsqCircuit *c);

// Gate counts; all zero for NULL.
//
// # Safety
// `c` must be NULL or a live circuit handle.
struct NsqCounts nsq_circuit_counts(const struct NsqCircuit *c);

// # Safety
// `c` must be NULL or a handle not yet freed.
void nsq_circuit_free(struct NsqCircuit *c);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void nsq_string_free(char *s);

// CNOT circuit implementing `m` with every CNOT on an edge of `g`.
//
// # Safety
// Handles must be live; `out` must be writable.
enum NsqStatus nsq_synthesize_cnot(const struct NsqMatrix *m,
                                   const struct NsqGraph *g,
                                   struct NsqCircuit **out);

// Re-synthesizes a CNOT+Rz circuit onto `g`, keeping its phase polynomial
// and linear part.
//
// # Safety
// Handles must be live; `out` must be writable.
enum NsqStatus nsq_synthesize_phase(const struct NsqCircuit *c,
                                    const struct NsqGraph *g,
                                    struct NsqCircuit **out);

// Routes a circuit with Hadamards onto `g`, equal up to global phase.
//
// # Safety
// Handles must be live; `out` must be writable.
enum NsqStatus nsq_route(const struct NsqCircuit *c,
                         const struct NsqGraph *g,
                         struct NsqCircuit **out);

// Cancels and merges gates by commutation.
//
// # Safety
// `c` must be live; `out` must be writable.
enum NsqStatus nsq_cancel_pass(const struct NsqCircuit *c, struct NsqCircuit **out);

// Compares two circuits; `mode` is an [`NsqVerifyMode`] value. Writes
// whether they match and the deviation.
//
// # Safety
// Handles must be live; `equal` and `deviation` must be writable.
enum NsqStatus nsq_verify(const struct NsqCircuit *a,
                          const struct NsqCircuit *b,
                          uint32_t mode,
                          bool *equal,
                          double *deviation);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NISQSYNTH_H */
