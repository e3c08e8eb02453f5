#ifndef GORCALC_H
#define GORCALC_H

/* C interface to the module calculus engine. One gc_session owns an ambient
 * ring, named modules, and an accumulating verification report; every entry
 * point is a command line in the same grammar the REPL speaks. Strings
 * returned through out-parameters are heap copies; release them with
 * gc_string_free. Sessions are not thread-safe; use one per thread. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct gc_session gc_session;

typedef enum gc_status {
    GC_OK = 0,
    GC_PARSE_ERROR = 1,   /* malformed descriptor, command, or literal */
    GC_DOMAIN_ERROR = 2,  /* mixed rings, illegal atom, undefined name */
    GC_PRECONDITION = 3,  /* operation called outside its contract */
    GC_ORACLE_BUDGET = 4, /* resolution or tower truncation too short */
    GC_IO_ERROR = 5,      /* unwritable report path */
    GC_USAGE_ERROR = 6,   /* no active ring, bad arity, bad flags */
    GC_INTERNAL = 7       /* engine invariant broke; please report */
} gc_status;

const char* gc_version(void);

gc_session* gc_session_new(void);
void gc_session_free(gc_session* s);

/* Executes one command line ('ring Z', 'tor 1 Pr(2) Pr(2)', 'sweep ...').
 * On GC_OK and non-NULL out, *out holds the rendered result (may be empty
 * for blank/comment lines). On failure *out is untouched and gc_last_error
 * describes what went wrong. */
gc_status gc_execute_line(gc_session* s, const char* line, char** out);

/* Message from the most recent failing call on this session. */
const char* gc_last_error(const gc_session* s);

/* Report counters, as in the report summary. */
long gc_case_count(const gc_session* s);
long gc_failure_count(const gc_session* s);
long gc_mismatch_count(const gc_session* s);

/* Accumulated report, rendered as JSON (as_json != 0) or text. */
gc_status gc_render_report(gc_session* s, int as_json, char** out);
gc_status gc_write_report(gc_session* s, const char* path, int as_json);

void gc_string_free(char* p);

#ifdef __cplusplus
}
#endif

#endif /* GORCALC_H */
