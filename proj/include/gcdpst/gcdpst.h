#ifndef GCDPST_H
#define GCDPST_H

/*
 * C interface to the gcd-graph engine.
 *
 * Rings and graphs are opaque handles. Every function that can fail returns a
 * gcdpst_status; on failure gcdpst_last_error() describes the problem (the
 * message is thread-local and valid until the next call on the same thread).
 * Strings returned through char** out-parameters are owned by the caller and
 * must be released with gcdpst_string_free.
 */

#include <stdint.h>

#if defined(_WIN32)
#define GCDPST_API __declspec(dllexport)
#else
#define GCDPST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gcdpst_status {
  GCDPST_OK = 0,
  GCDPST_PARSE_ERROR = 1,
  GCDPST_INVALID_ARGUMENT = 2,
  GCDPST_PRECONDITION = 3,
  GCDPST_RESOURCE_CAP = 4,
  GCDPST_INTERNAL = 5
} gcdpst_status;

typedef struct gcdpst_ring gcdpst_ring;
typedef struct gcdpst_graph gcdpst_graph;

GCDPST_API const char* gcdpst_version(void);
GCDPST_API const char* gcdpst_status_string(gcdpst_status status);
GCDPST_API const char* gcdpst_last_error(void);
GCDPST_API void gcdpst_string_free(char* s);

/* order_cap = 0 selects the default cap of 65536 elements. */
GCDPST_API gcdpst_status gcdpst_ring_new(const char* text, uint32_t order_cap, gcdpst_ring** out);
GCDPST_API void gcdpst_ring_free(gcdpst_ring* ring);
GCDPST_API uint32_t gcdpst_ring_order(const gcdpst_ring* ring);
/* Ring structure: encoding, psi, units, ideals, local factors. */
GCDPST_API gcdpst_status gcdpst_ring_describe(const gcdpst_ring* ring, char** json_out);
/* Unitary-graph classification from the local factor structure, checked against the solver. */
GCDPST_API gcdpst_status gcdpst_ring_unitary(const gcdpst_ring* ring, char** json_out);
/* Every divisor set of 1..max_divisors ideals; one JSON object per line, then a summary line. */
GCDPST_API gcdpst_status gcdpst_ring_scan(const gcdpst_ring* ring, uint32_t max_divisors, uint64_t subset_cap,
                                          uint32_t jobs, char** jsonl_out);

/* divisors: comma-separated generators, "R" for the unit ideal. Computes the spectrum. */
GCDPST_API gcdpst_status gcdpst_graph_new(const gcdpst_ring* ring, const char* divisors, gcdpst_graph** out);
GCDPST_API void gcdpst_graph_free(gcdpst_graph* graph);
GCDPST_API gcdpst_status gcdpst_graph_describe(const gcdpst_graph* graph, char** json_out);
GCDPST_API gcdpst_status gcdpst_graph_spectrum(const gcdpst_graph* graph, char** json_out);
/* Plain-text eigenvalue table grouped by eigenvalue, plus the characteristic polynomial. */
GCDPST_API gcdpst_status gcdpst_graph_spectrum_table(const gcdpst_graph* graph, char** text_out);
/* target = NULL searches all candidate partners of 0. verify != 0 adds the numeric amplitude check. */
GCDPST_API gcdpst_status gcdpst_graph_pst(const gcdpst_graph* graph, const char* target, int verify, char** json_out);
/* CSV with columns t,re,im,modulus for t = k*step, k = 0..steps. */
GCDPST_API gcdpst_status gcdpst_graph_amplitude_csv(const gcdpst_graph* graph, const char* target, double step,
                                                    uint32_t steps, char** csv_out);
GCDPST_API gcdpst_status gcdpst_graph_edges_csv(const gcdpst_graph* graph, char** csv_out);

/* Unitary graph of F_q[x]/(f); f uses the variable x with integer coefficients. */
GCDPST_API gcdpst_status gcdpst_unitary_poly(uint64_t q, const char* f, char** json_out);

/* Built-in reference checks. trivial_ring_moebius overrides mu of the zero ring
 * (pass 1 for the correct value); *all_passed receives 1 or 0. */
GCDPST_API gcdpst_status gcdpst_verify_golden(int trivial_ring_moebius, int* all_passed, char** json_out,
                                              char** text_out);

#ifdef __cplusplus
}
#endif

#endif
