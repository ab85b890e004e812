/* graphdyn — simulation and verification engine for exchangeable graph
 * dynamics: iterated-rewiring chains, Poissonian jump processes, and their
 * projections to subgraph-density vectors.
 *
 * C API over the C++ core. All handles are opaque; every function that can
 * fail returns a gd_status, and gd_last_error() describes the most recent
 * failure on the calling thread. Strings returned through char** are owned
 * by the caller and must be released with gd_string_free().
 *
 * Determinism contract: all sampling is driven by explicit 64-bit seeds;
 * equal inputs and seeds produce bit-identical results on every platform.
 */

#ifndef GRAPHDYN_H
#define GRAPHDYN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gd_status {
  GD_OK = 0,
  GD_ERR_INVALID_ARGUMENT = 1, /* domain error: bad sizes, ranges, rates */
  GD_ERR_PARSE = 2,            /* malformed JSON / edge list / config */
  GD_ERR_NULL = 3,             /* required pointer argument was NULL */
  GD_ERR_INTERNAL = 4
} gd_status;

const char* gd_version(void);
const char* gd_last_error(void);
void gd_string_free(char* s);

/* Derives an independent child seed; used to split replica streams. */
uint64_t gd_seed_derive(uint64_t seed, uint64_t key);

/* ------------------------------------------------------------------ */
/* Graphs                                                              */
/* ------------------------------------------------------------------ */

typedef struct gd_graph gd_graph;

/* `edges` is a flat [i1,j1,i2,j2,...] list of 1-based endpoint pairs. */
gd_status gd_graph_create(int n, const int* edges, size_t edge_count, gd_graph** out);
gd_status gd_graph_complete(int n, gd_graph** out);
gd_status gd_graph_from_json(const char* json_text, gd_graph** out);
gd_status gd_graph_to_json(const gd_graph* g, char** out_json);
gd_status gd_graph_from_edgelist(const char* text, gd_graph** out);
gd_status gd_graph_to_edgelist(const gd_graph* g, char** out_text);
void gd_graph_free(gd_graph* g);

/* Vertex count, or -1 on NULL. */
int gd_graph_order(const gd_graph* g);
/* Edge indicator, or -1 on bad arguments. */
int gd_graph_edge(const gd_graph* g, int i, int j);
gd_status gd_graph_edge_count(const gd_graph* g, size_t* out);

gd_status gd_graph_restrict(const gd_graph* g, int m, gd_graph** out);
/* `perm` is a 1-based permutation of [n], length n. */
gd_status gd_graph_relabel(const gd_graph* g, const int* perm, size_t len, gd_graph** out);

/* Exact motif density of `motif` in `host` (motif order <= 5). */
gd_status gd_graph_density(const gd_graph* motif, const gd_graph* host, double* value);
/* 1/max{m : the graphs agree on [m]}, 0 when identical. */
gd_status gd_graph_metric(const gd_graph* a, const gd_graph* b, double* out);

/* Densities of all motifs up to max_level (<= 4) as a JSON document, or a
 * delimited table when as_csv is nonzero. */
gd_status gd_graph_density_vector(const gd_graph* g, int max_level, int as_csv, char** out);

/* Graphon sampling; `graphon_json` is {"grid": [[..]]} or {"constant": p}. */
gd_status gd_sample_graphon(const char* graphon_json, int n, uint64_t seed, gd_graph** out);

/* ------------------------------------------------------------------ */
/* Discrete-time rewiring chains                                       */
/* ------------------------------------------------------------------ */

typedef struct gd_dtraj gd_dtraj;

/* Config JSON: {"n", "steps", "seed", "kernel_mixture", "retain_maps"?,
 * "initial"?}; see README for the kernel forms. */
gd_status gd_discrete_run(const char* config_json, gd_dtraj** out);
void gd_dtraj_free(gd_dtraj* t);

int gd_dtraj_steps(const gd_dtraj* t);
gd_status gd_dtraj_state(const gd_dtraj* t, int step, gd_graph** out);
/* One JSON record {"step", "graph"} per line. */
gd_status gd_dtraj_states_jsonl(const gd_dtraj* t, char** out);
/* Motif-density time series for levels <= max_level. */
gd_status gd_dtraj_density_table(const gd_dtraj* t, int max_level, int as_csv, char** out);
/* Per-step discrepancy between empirical densities and the matrix-product
 * prediction (requires retain_maps; levels 2..max_level, max_level <= 3). */
gd_status gd_dtraj_limit_report(const gd_dtraj* t, int max_level, int samples, uint64_t seed,
                                char** out_json);

/* ------------------------------------------------------------------ */
/* Continuous-time jump processes                                      */
/* ------------------------------------------------------------------ */

typedef struct gd_ctraj gd_ctraj;

/* Config JSON: {"n", "horizon", "seed", "intensity", "initial"?}. */
gd_status gd_continuous_run(const char* config_json, gd_ctraj** out);
void gd_ctraj_free(gd_ctraj* t);

gd_status gd_ctraj_event_count(const gd_ctraj* t, size_t* out);
gd_status gd_ctraj_non_silent_count(const gd_ctraj* t, size_t* out);
/* One JSON record {"time","kind","payload","silent"} per line. */
gd_status gd_ctraj_events_jsonl(const gd_ctraj* t, char** out);
gd_status gd_ctraj_state_at(const gd_ctraj* t, double time, gd_graph** out);
gd_status gd_ctraj_restrict(const gd_ctraj* t, int m, gd_ctraj** out);
/* Motif densities sampled on a time grid. */
gd_status gd_ctraj_density_table(const gd_ctraj* t, const double* times, size_t n_times,
                                 int max_level, int as_csv, char** out);

/* ------------------------------------------------------------------ */
/* Verification suites                                                 */
/* ------------------------------------------------------------------ */

/* Suites: "reversible", "consistency", "exchangeability", "er-stationarity",
 * "sampler-laws", "all". Parameters (alpha, beta, p0, p1, n, steps,
 * replicates, samples, seed) are read from params_json with per-suite
 * defaults. Writes a JSON report array plus a human-readable table and sets
 * *all_passed. */
gd_status gd_verify(const char* suite, const char* params_json, char** out_report_json,
                    char** out_table, int* all_passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GRAPHDYN_H */
