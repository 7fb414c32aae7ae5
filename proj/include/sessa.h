#ifndef SESSA_H
#define SESSA_H

/*
 * C interface to the session automata toolkit.
 *
 * Every call returns a sessa_status; on failure sessa_last_error() holds a message for
 * the calling thread. Strings handed out through `char**` parameters are owned by the
 * caller and released with sessa_string_free. Automaton handles are released with
 * sessa_automaton_free.
 *
 * Words use the textual syntax `a:8 b:4` (data) and `a:*1 b:^1 c:o2` (symbolic);
 * the empty word is the empty string or `-`.
 */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SESSA_BUILDING)
#    define SESSA_API __declspec(dllexport)
#  else
#    define SESSA_API __declspec(dllimport)
#  endif
#else
#  define SESSA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sessa_automaton sessa_automaton;

typedef enum sessa_status {
    SESSA_OK = 0,
    SESSA_ERR_VALUE_ABSENT,
    SESSA_ERR_UNSUPPORTED_OP,
    SESSA_ERR_NOT_WELL_FORMED,
    SESSA_ERR_INVALID,
    SESSA_ERR_NOT_SESSION,
    SESSA_ERR_UNKNOWN_LABEL,
    SESSA_ERR_NOT_CLOSED,
    SESSA_ERR_NO_BREAKPOINT,
    SESSA_ERR_TEACHER_INCONSISTENT,
    SESSA_ERR_QUERY_BUDGET,
    SESSA_ERR_SCRIPT_EXHAUSTED,
    SESSA_ERR_SYNTAX,
    SESSA_ERR_IO,
    SESSA_ERR_NULL_ARGUMENT,
    SESSA_ERR_INTERNAL
} sessa_status;

typedef enum sessa_class {
    SESSA_CLASS_FRESH_REGISTER = 0,
    SESSA_CLASS_REGISTER,
    SESSA_CLASS_SESSION
} sessa_class;

SESSA_API const char* sessa_last_error(void);
SESSA_API const char* sessa_status_name(sessa_status status);
SESSA_API const char* sessa_class_name(sessa_class c);
SESSA_API void sessa_string_free(char* s);

/* ---- automata ---- */

SESSA_API sessa_status sessa_automaton_parse(const char* text, sessa_automaton** out);
SESSA_API sessa_status sessa_automaton_load(const char* path, sessa_automaton** out);
SESSA_API void sessa_automaton_free(sessa_automaton* a);

SESSA_API sessa_status sessa_automaton_serialize(const sessa_automaton* a, char** out);
SESSA_API sessa_status sessa_automaton_save(const sessa_automaton* a, const char* path);
SESSA_API sessa_status sessa_automaton_dot(const sessa_automaton* a, char** out);
SESSA_API sessa_status sessa_automaton_registers(const sessa_automaton* a, unsigned* out);
SESSA_API sessa_status sessa_automaton_state_count(const sessa_automaton* a, size_t* out);

/* *valid = 1 when there is nothing to report; diagnostics are one per line, `Kind: message`. */
SESSA_API sessa_status sessa_automaton_validate(const sessa_automaton* a, int* valid, char** diagnostics);
SESSA_API sessa_status sessa_automaton_classify(const sessa_automaton* a, sessa_class* out);
SESSA_API sessa_status sessa_automaton_is_symbolically_deterministic(const sessa_automaton* a, int* out);
SESSA_API sessa_status sessa_automaton_is_data_deterministic(const sessa_automaton* a, int* out);

/* ---- words ---- */

SESSA_API sessa_status sessa_snf(const char* data_word, char** out);
SESSA_API sessa_status sessa_bound(const char* data_word, size_t* out);
SESSA_API sessa_status sessa_concretize(const char* symbolic_word, char** out);

SESSA_API sessa_status sessa_member(const sessa_automaton* a, const char* data_word, int* accepted);
SESSA_API sessa_status sessa_symbolic_member(const sessa_automaton* a, const char* symbolic_word, int* accepted);

/* ---- constructions (session automata only) ---- */

SESSA_API sessa_status sessa_canonicalize(const sessa_automaton* a, sessa_automaton** out);
SESSA_API sessa_status sessa_union(const sessa_automaton* a, const sessa_automaton* b, sessa_automaton** out);
SESSA_API sessa_status sessa_intersect(const sessa_automaton* a, const sessa_automaton* b, sessa_automaton** out);
SESSA_API sessa_status sessa_complement_bounded(const sessa_automaton* a, sessa_automaton** out);

/* ---- decisions ----
 * *holds = 1 when the property holds; otherwise *holds = 0 and, if `witness` is not
 * NULL, *witness receives a data word showing the failure. */

SESSA_API sessa_status sessa_includes(const sessa_automaton* a, const sessa_automaton* b, int* holds, char** witness);
SESSA_API sessa_status sessa_equivalent(const sessa_automaton* a, const sessa_automaton* b, int* holds, char** witness);
SESSA_API sessa_status sessa_is_empty(const sessa_automaton* a, int* holds, char** witness);
SESSA_API sessa_status sessa_is_universal(const sessa_automaton* a, unsigned k, int* holds, char** witness);

/* ---- learning ---- */

typedef struct sessa_learn_options {
    size_t max_queries;        /* 0 = unlimited */
    const char* script;        /* newline-separated data-word counterexamples, or NULL */
    int trace_membership;      /* include membership queries in the trace */
} sessa_learn_options;

typedef struct sessa_learn_stats {
    size_t membership_queries;
    size_t equivalence_queries;
    size_t nf_violations;
    size_t longest_counterexample;
    size_t upper_rows;
    size_t columns;
    unsigned registers;
} sessa_learn_stats;

/* Learns `target` through a reference teacher, or through the scripted teacher when
 * options->script is set. `trace` (optional) receives JSON lines, `stats` is optional. */
SESSA_API sessa_status sessa_learn(const sessa_automaton* target, const sessa_learn_options* options,
                                   sessa_automaton** hypothesis, char** trace, sessa_learn_stats* stats);

#ifdef __cplusplus
}
#endif

#endif
