#ifndef TC8_H
#define TC8_H

#include <stdint.h>

#if defined(TC8_BUILDING_LIBRARY)
#define TC8_API __attribute__((visibility("default")))
#else
#define TC8_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Nonzero values 1..19 mirror the library's error kinds. */
typedef enum tc8_status {
    TC8_OK = 0,
    TC8_ASYMMETRIC_ADJACENCY = 1,
    TC8_LOOP_OR_MULTI_EDGE,
    TC8_DISCONNECTED,
    TC8_NON_PLANAR_EMBEDDING,
    TC8_UNKNOWN_VERTEX,
    TC8_PARSE_ERROR,
    TC8_COLOR_OUT_OF_RANGE,
    TC8_INSTANCE_TOO_LARGE,
    TC8_ELEMENT_ALREADY_COLORED,
    TC8_INAPPLICABLE_MOVE,
    TC8_NO_AVAILABLE_COLOR,
    TC8_PRECONDITION_VIOLATED,
    TC8_REDUCED_GRAPH_NOT_COLORABLE,
    TC8_SCRIPT_CASE_MISS,
    TC8_LOG_MISMATCH,
    TC8_DELTA_EXCEEDED,
    TC8_GENERATION_STALLED,
    TC8_UNKNOWN_PATTERN,
    TC8_INVALID_ARGUMENT,
    TC8_IO_ERROR = 100,
    TC8_INTERNAL = 101
} tc8_status;

typedef struct tc8_graph tc8_graph;       /* plane embedding */
typedef struct tc8_coloring tc8_coloring; /* partial total coloring tied to a graph's element ids */

TC8_API const char* tc8_status_name(tc8_status s);
/* Message of the last failing call on this thread; "" when none. */
TC8_API const char* tc8_last_error(void);
/* 1-based input line of the last parse failure on this thread, else 0. */
TC8_API int tc8_last_error_line(void);
/* Strings returned through char** parameters are owned by the caller. */
TC8_API void tc8_string_free(char* s);

/* Graphs */
TC8_API tc8_status tc8_graph_parse(const char* text, tc8_graph** out);
TC8_API tc8_status tc8_graph_load(const char* path, tc8_graph** out);
TC8_API tc8_status tc8_graph_fixture(const char* name, tc8_graph** out);
TC8_API tc8_status tc8_graph_generate(int n, int max_degree, int forbid_four_fan, double deletion_probability,
                                      uint64_t seed, tc8_graph** out);
TC8_API void tc8_graph_free(tc8_graph* g);
TC8_API int tc8_graph_vertex_count(const tc8_graph* g);
TC8_API int tc8_graph_edge_count(const tc8_graph* g);
TC8_API int tc8_graph_face_count(const tc8_graph* g);
TC8_API int tc8_graph_max_degree(const tc8_graph* g);
TC8_API tc8_status tc8_graph_serialize(const tc8_graph* g, char** out);
TC8_API tc8_status tc8_fixture_names(char** out); /* one per line */

/* Colorings: text lines "v <id> <c>" and "e <a> <b> <c>" */
TC8_API tc8_status tc8_coloring_parse(const tc8_graph* g, const char* text, tc8_coloring** out);
TC8_API tc8_status tc8_coloring_format(const tc8_graph* g, const tc8_coloring* c, char** out);
TC8_API void tc8_coloring_free(tc8_coloring* c);
/* *violations receives the count; *report lists them one per line. */
TC8_API tc8_status tc8_verify(const tc8_graph* g, const tc8_coloring* c, int k, int partial, int* violations,
                              char** report);
/* *out is NULL when no total k-coloring exists. seed 0 = deterministic order. */
TC8_API tc8_status tc8_solve(const tc8_graph* g, int k, uint64_t seed, tc8_coloring** out);
TC8_API tc8_status tc8_total_chromatic_number(const tc8_graph* g, int* out);

/* Patterns */
TC8_API tc8_status tc8_pattern_list(char** out);
TC8_API tc8_status tc8_four_fan(const tc8_graph* g, int* found, char** witness);
TC8_API tc8_status tc8_match(const tc8_graph* g, const char* pattern_id, int* count, char** report);
TC8_API tc8_status tc8_violations(const tc8_graph* g, int* count, char** report);

/* Discharging: report as text (json = 0) or JSON (json = 1); log may be NULL. */
TC8_API tc8_status tc8_discharge(const tc8_graph* g, int json, char** report, char** log);

/* Extension: witness_index picks among the lemma's matches in g. reduced
   is an optional coloring text for the reduced graph (NULL = solve it). */
TC8_API tc8_status tc8_extend(const tc8_graph* g, const char* lemma, int witness_index, const char* reduced,
                              uint64_t seed, char** moves, tc8_coloring** out, char** branch);

/* Acceptance suites. criteria: e.g. "123456"; NULL = all six. */
TC8_API tc8_status tc8_corpus_run(uint64_t seed, int quick, const char* criteria, int* all_pass, char** report);

#ifdef __cplusplus
}
#endif

#endif
