/* fibdes: Fibonacci-design toolkit, C API.
 *
 * Every function returns a fibdes_status; results come back through out
 * parameters. Strings returned through char** are heap-allocated and must be
 * released with fibdes_free(). Structured results are JSON documents with a
 * stable layout (sorted keys, big integers as decimal strings), suitable for
 * archiving; identical calls produce byte-identical JSON.
 *
 * On FIBDES_ERR_* the thread-local message from fibdes_last_error() explains
 * what went wrong.
 */

#ifndef FIBDES_H
#define FIBDES_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fibdes_status {
    FIBDES_OK = 0,
    FIBDES_ERR_DOMAIN = 1, /* precondition violated / unusable input value */
    FIBDES_ERR_PARSE = 2,  /* malformed file or string input */
    FIBDES_ERR_INTERNAL = 3
} fibdes_status;

const char* fibdes_version(void);

/* last error message for the calling thread; never NULL */
const char* fibdes_last_error(void);

void fibdes_free(char* s);

/* ---- Fibonacci / Lucas arithmetic ---- */

/* decimal string of F_t resp. L_t */
fibdes_status fibdes_fib(uint64_t t, char** out_decimal);
fibdes_status fibdes_lucas(uint64_t t, char** out_decimal);

/* F_t mod modulus; modulus a decimal string >= 2 */
fibdes_status fibdes_fib_mod(uint64_t t, const char* modulus, char** out_decimal);

fibdes_status fibdes_pisano_period(uint64_t modulus, uint64_t* out_period);

/* ---- parameters and Bruck-Ryser-Chowla ---- */

/* JSON with the symmetric (F_m^2, F_{m-1}^2, F_{m-1}F_{m-3}) parameters and
 * the quasi-residual five-tuple; m odd >= 3 */
fibdes_status fibdes_params(uint64_t m, char** out_json);

/* BRC verdict for a symmetric (v,k,lambda), decimal string inputs */
fibdes_status fibdes_brc(const char* v, const char* k, const char* lam, char** out_json);

/* Brouwer family parameters and their BRC analysis (q must be a power of 2
 * for the analysis; parameters alone work for any prime power) */
fibdes_status fibdes_brouwer(const char* q, uint32_t t, char** out_json);

/* ---- factor tables ---- */

typedef struct fibdes_table fibdes_table;

fibdes_status fibdes_table_load(const char* path, fibdes_table** out_table);
uint64_t fibdes_table_size(const fibdes_table* table);
void fibdes_table_free(fibdes_table* table);

/* ---- development gate and scan ---- */

/* verdict for one odd m; table may be NULL; effort scales the deterministic
 * factoring budget (0 picks the default, 10) */
fibdes_status fibdes_gate(uint64_t m, const fibdes_table* table, uint32_t effort,
                          char** out_json);

/* one verdict per odd m in [3, max_m]; jobs 0 = single worker */
fibdes_status fibdes_scan(uint64_t max_m, const fibdes_table* table, uint32_t effort,
                          uint32_t jobs, char** out_json);

/* re-derives every claim of a certificate JSON document from scratch;
 * *out_ok = 1 when sound, else 0 with the failing claim in *out_json */
fibdes_status fibdes_verify_certificate(const char* certificate_json, int* out_ok,
                                        char** out_json);

/* ---- designs ---- */

typedef struct fibdes_design fibdes_design;

/* load and validate a symmetric design file ("v k lambda" header, one block
 * of ascending 0-based point indices per line) */
fibdes_status fibdes_design_load(const char* path, fibdes_design** out_design);
void fibdes_design_free(fibdes_design* design);

/* v, k, lambda of a loaded design */
fibdes_status fibdes_design_params(const fibdes_design* design, uint32_t* out_v,
                                   uint32_t* out_k, uint32_t* out_lam);

/* verify an automorphism file against the design and report the three-block
 * bound (and the equality-case analysis when the bound is met);
 * auto_path may be NULL for a validation-only report */
fibdes_status fibdes_design_verify(const fibdes_design* design, const char* auto_path,
                                   char** out_json);

/* Sylvester/Kronecker construction: design of sylvester(d) (x) sylvester(h)
 * with the induced GL automorphism; kind is "order3" (d=2) or "order4" (d=3),
 * h the partner order (power of 2, 1 allowed) */
fibdes_status fibdes_hadamard_design(uint32_t h, const char* kind, char** out_json);

/* ---- the design variety ---- */

/* all lines of the variety through (v,b,r,k,lambda); rational inputs as
 * "p" or "p/q" strings; the point must be nondegenerate and on the variety */
fibdes_status fibdes_variety_lines(const char* v, const char* b, const char* r,
                                   const char* k, const char* lam, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* FIBDES_H */
