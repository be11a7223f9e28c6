/* shaq - Cassels-Tate quotients for diagonal isogenies of products of
 * elliptic curves.  C API: opaque handles + status codes; all heavy lifting
 * lives in the C++ core behind this boundary.
 */
#ifndef SHAQ_H
#define SHAQ_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct shaq_report shaq_report;

typedef enum shaq_status {
    SHAQ_OK = 0,
    SHAQ_ERROR = 1,           /* internal/unexpected failure */
    SHAQ_UNDETERMINED = 2,    /* a local case the theory leaves open */
    SHAQ_UNSUPPORTED = 3,     /* bad or unsupported input */
} shaq_status;

/* Analyze a family pair: family in {5,6,7,10}, d1/d2 as "u/v" strings,
 * mw_json per the documented Mordell-Weil schema.  On success *out owns a
 * report handle (free with shaq_report_free). */
shaq_status shaq_analyze_family(int family, const char* d1, const char* d2,
                                const char* mw_json, shaq_report** out);

/* Generic odd-prime-degree pipeline.  curves_json schema:
 * {"ell":13,
 *  "E1":{"a":["a1","a2","a3","a4","a6"]}, "E2":{...},
 *  "E1prime":{...}, "E2prime":{...},
 *  "kernel1":{"coeffs":["c0","c1",...]}, "kernel2":{...}}  (coeffs ascending)
 */
shaq_status shaq_analyze_generic(const char* curves_json, const char* mw_json,
                                 shaq_report** out);

/* Accessors; returned strings are owned by the report handle. */
const char* shaq_report_json(const shaq_report* rep);
const char* shaq_report_table(const shaq_report* rep);
int shaq_report_k(const shaq_report* rep);
void shaq_report_free(shaq_report* rep);

/* Verification harness.  Returns SHAQ_OK when the suite passes; *log_out
 * (optional) receives a malloc'd summary, free with shaq_string_free. */
shaq_status shaq_verify(const char* suite, long n, uint64_t seed, char** log_out);
void shaq_string_free(char* s);

/* Last error message for the calling thread. */
const char* shaq_last_error(void);

const char* shaq_version(void);

/* Budget for the factorization stage (also: SHAQ_FACTOR_BUDGET env var). */
void shaq_set_factor_budget(uint64_t budget);

#ifdef __cplusplus
}
#endif

#endif /* SHAQ_H */
