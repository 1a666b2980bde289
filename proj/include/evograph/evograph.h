/* SPDX-License-Identifier: Apache-2.0 */
/* C interface to libevograph. Every call returns an evg_status; on failure
 * evg_last_error() describes the problem for the calling thread. Strings
 * returned through char** are owned by the caller and released with
 * evg_string_free. */
#ifndef EVOGRAPH_H
#define EVOGRAPH_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(EVOGRAPH_BUILDING)
#define EVG_API __attribute__((visibility("default")))
#else
#define EVG_API
#endif

typedef enum evg_status {
    EVG_OK = 0,
    EVG_ERR_LOOP_EDGE = 1,
    EVG_ERR_DUPLICATE_EDGE = 2,
    EVG_ERR_DISCONNECTED = 3,
    EVG_ERR_OUT_OF_RANGE = 4,
    EVG_ERR_INVALID_PARAMETER = 5,
    EVG_ERR_PARSE = 6,
    EVG_ERR_DIMENSION_MISMATCH = 7,
    EVG_ERR_ISOLATED_VERTEX = 8,
    EVG_ERR_INVALID_STEP = 9,
    EVG_ERR_INVALID_RANGE = 10,
    EVG_ERR_IO = 11,
    EVG_ERR_INTERNAL = 12,
    EVG_ERR_NULL_ARGUMENT = 100,
    EVG_ERR_UNKNOWN = 101
} evg_status;

typedef enum evg_verdict { EVG_NULL_ONLY = 0, EVG_UNKNOWN = 1, EVG_FOUND_STRUCTURE = 2 } evg_verdict;

typedef enum evg_outcome { EVG_NONE_FOUND = 0, EVG_CANDIDATE = 1, EVG_VERIFIED_HOM = 2 } evg_outcome;

typedef struct evg_graph evg_graph;
typedef struct evg_proof evg_proof;

typedef struct evg_budget {
    int max_depth;
    unsigned long long step_limit;
    int root_width;
    int inner_width;
} evg_budget;

typedef struct evg_search_config {
    int restarts;
    int max_iterations;
    double tau_res;
    double tau_null;
    double init_scale;
    unsigned long long seed;
    int threads;
} evg_search_config;

typedef struct evg_analyze_options {
    evg_budget budget;
    evg_search_config search;
    int fast;               /* nonzero: skip the numeric search */
    const char* proof_path; /* NULL or a file for the proof log */
} evg_analyze_options;

EVG_API const char* evg_version(void);
EVG_API const char* evg_last_error(void);
EVG_API const char* evg_status_name(evg_status status);
EVG_API void evg_string_free(char* s);

EVG_API void evg_budget_default(evg_budget* out);
EVG_API void evg_search_config_default(evg_search_config* out);
EVG_API void evg_analyze_options_default(evg_analyze_options* out);

/* edges holds edge_count pairs (u, v), 1-indexed. */
EVG_API evg_status evg_graph_from_edges(int n, const int* edges, int edge_count, evg_graph** out);
EVG_API evg_status evg_graph_from_family(const char* descriptor, evg_graph** out);
/* Family descriptor or edge-list file path. */
EVG_API evg_status evg_graph_load(const char* input, evg_graph** out);
EVG_API void evg_graph_free(evg_graph* g);
EVG_API int evg_graph_order(const evg_graph* g);
EVG_API evg_status evg_graph_edge_list(const evg_graph* g, char** out);
EVG_API evg_status evg_graph_singular(const evg_graph* g, int* singular, char** determinant);

/* random_walk: 0 for the adjacency algebra, 1 for the random-walk algebra. */
EVG_API evg_status evg_algebra_json(const evg_graph* g, int random_walk, char** out);
EVG_API evg_status evg_system_json(const evg_graph* g, char** out);

/* budget may be NULL for defaults. */
EVG_API evg_status evg_prove(const evg_graph* g, const evg_budget* budget, evg_proof** out);
EVG_API evg_verdict evg_proof_verdict(const evg_proof* p);
/* Verdict, facts and proof log. */
EVG_API evg_status evg_proof_json(const evg_proof* p, char** out);
EVG_API evg_status evg_proof_log_json(const evg_proof* p, char** out);
EVG_API evg_status evg_proof_text(const evg_proof* p, char** out);
EVG_API void evg_proof_free(evg_proof* p);
/* *ok is 1 when the log certifies the null map; reason may be NULL. */
EVG_API evg_status evg_replay(const evg_graph* g, const char* log_json, int* ok, char** reason);

EVG_API evg_status evg_search(const evg_graph* g, const evg_search_config* cfg, evg_outcome* kind, char** json);
/* *found is 0 for graphs that are neither regular nor biregular. */
EVG_API evg_status evg_closed_form(const evg_graph* g, int* found, char** json);

/* EVG_ERR_INTERNAL signals a soundness tripwire. */
EVG_API evg_status evg_analyze(const evg_graph* g, const char* label, const evg_analyze_options* opts, int as_json,
                               char** out);
EVG_API evg_status evg_corpus(const evg_analyze_options* opts, int as_json, int* all_pass, char** out);
/* as_json: 0 gives CSV. tripwires (may be NULL) counts rows whose verdict
 * contradicted the prediction or the numeric evidence. */
EVG_API evg_status evg_sweep(const char* spec, const evg_analyze_options* opts, int as_json, int* tripwires,
                             char** out);

#ifdef __cplusplus
}
#endif

#endif
