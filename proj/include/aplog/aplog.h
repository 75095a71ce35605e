#ifndef APLOG_H
#define APLOG_H

#include <stddef.h>

#if defined(_WIN32)
#define APLOG_API __declspec(dllexport)
#else
#define APLOG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct aplog_session aplog_session;
typedef struct aplog_query aplog_query;

typedef enum aplog_status {
    APLOG_OK = 0,
    APLOG_NO_MORE = 1,      /* query stream exhausted */
    APLOG_ERR_DEPTH = 2,    /* exhausted, but some branch hit the step limit */
    APLOG_ERR_LOAD = 3,     /* parse, kind or type error in a program */
    APLOG_ERR_QUERY = 4,    /* parse or type error in a query */
    APLOG_ERR_ARG = 5,      /* null handle or bad argument */
    APLOG_ERR_ORACLE = 6,   /* universe too small, non-convergence, ... */
    APLOG_ERR_INTERNAL = 7
} aplog_status;

typedef void (*aplog_trace_fn)(const char* line, void* user);

APLOG_API aplog_session* aplog_session_new(void);
APLOG_API void aplog_session_free(aplog_session* s);

/* Transitions allowed per search branch; must be >= 1. */
APLOG_API aplog_status aplog_set_depth(aplog_session* s, size_t steps);
/* One call per transition while set; pass NULL to disable. */
APLOG_API aplog_status aplog_set_trace(aplog_session* s, aplog_trace_fn fn, void* user);
/* Nonzero: backchain the closed clauses as written instead of their normal forms. */
APLOG_API aplog_status aplog_set_raw(aplog_session* s, int raw);

APLOG_API aplog_status aplog_load_file(aplog_session* s, const char* path);
APLOG_API aplog_status aplog_load_string(aplog_session* s, const char* text, const char* name);
/* Message of the last failing call on s, "" if none. Owned by s. */
APLOG_API const char* aplog_last_error(const aplog_session* s);

/* Strings returned through char** are owned by the caller; release them
   with aplog_string_free. */
APLOG_API aplog_status aplog_nu_goal_report(aplog_session* s, char** out, size_t* count);
APLOG_API aplog_status aplog_show_elaborated(aplog_session* s, char** out);
APLOG_API aplog_status aplog_oracle(aplog_session* s, size_t depth, size_t pool, char** out);

/* Queries written inside loaded files ("?- G."), in load order. */
APLOG_API size_t aplog_file_query_count(const aplog_session* s);
APLOG_API const char* aplog_file_query(const aplog_session* s, size_t i);

APLOG_API aplog_status aplog_query_open(aplog_session* s, const char* goal, aplog_query** out);
/* APLOG_OK with *answer set, APLOG_NO_MORE, or APLOG_ERR_DEPTH. The answer
   text is "Yes." for an answer without bindings. */
APLOG_API aplog_status aplog_query_next(aplog_query* q, char** answer);
APLOG_API void aplog_query_free(aplog_query* q);

APLOG_API void aplog_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif
