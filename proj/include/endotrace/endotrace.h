#ifndef ENDOTRACE_H
#define ENDOTRACE_H

/* C interface to the endotrace library. Objects are opaque handles owned by
 * the caller and released with the matching *_free function; strings
 * returned through char** are released with et_string_free. Every call that
 * can fail returns an et_status and leaves a message for et_last_error()
 * (per thread). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum et_status {
  ET_OK = 0,
  ET_E_ZERO_INVERSE,
  ET_E_BOTH_ZERO,
  ET_E_NOT_INVERTIBLE,
  ET_E_SINGULAR_CURVE,
  ET_E_FIELD_MISMATCH,
  ET_E_UNDECIDED,
  ET_E_J_INVARIANT_MISMATCH,
  ET_E_INVALID_KERNEL,
  ET_E_COEFFICIENT_LEAK,
  ET_E_BROKEN_CHAIN,
  ET_E_NOT_ENDOMORPHISM,
  ET_E_RING_MISMATCH,
  ET_E_NON_UNIT_SLOPE,
  ET_E_NON_UNIT_DENOMINATOR,
  ET_E_NO_MATCH,
  ET_E_WRONG_ORDER_STRUCTURE,
  ET_E_DLOG_FAILURE,
  ET_E_INCONSISTENT_RESIDUES,
  ET_E_UNSUPPORTED_PRIME,
  ET_E_GIVE_UP,
  ET_E_INVALID_ARGUMENT,
  ET_E_PARSE,
  ET_E_VERIFY_FAILED,
  ET_E_INTERNAL
} et_status;

typedef struct et_curve et_curve;
typedef struct et_chain et_chain;
typedef struct et_trace_result et_trace_result;

const char* et_status_name(et_status status);
const char* et_last_error(void);
void et_string_free(char* s);

/* Supersingular curve over Fp2 for a random prime p = 3 mod 4 of p_bits bits. */
et_status et_curve_generate(unsigned p_bits, uint64_t seed, et_curve** out);
et_status et_curve_from_json(const char* text, et_curve** out);
et_status et_curve_to_json(const et_curve* curve, char** out);
/* {"p", "j", "group_order", "supersingular"} as JSON. */
et_status et_curve_describe(const et_curve* curve, uint64_t seed, char** out);
void et_curve_free(et_curve* curve);

/* Closed walk of 2-isogenies of at least `length` steps; 0 selects
 * 4 * ceil(log2 p). */
et_status et_chain_generate(const et_curve* curve, unsigned length, uint64_t seed, et_chain** out);
/* The identity endomorphism (no steps). */
et_status et_chain_identity(const et_curve* curve, et_chain** out);
et_status et_chain_from_json(const char* text, et_chain** out);
et_status et_chain_to_json(const et_chain* chain, char** out);
size_t et_chain_length(const et_chain* chain);
/* Bit length of the degree. */
size_t et_chain_degree_bits(const et_chain* chain);
void et_chain_free(et_chain* chain);

/* method: "schoof", "sea", "sea+p" or "sea+p+points". */
et_status et_trace(const et_chain* chain, const char* method, uint64_t seed, et_trace_result** out);
et_status et_trace_result_value(const et_trace_result* result, char** out);
double et_trace_result_time_ms(const et_trace_result* result);
et_status et_trace_result_to_json(const et_trace_result* result, char** out);
void et_trace_result_free(et_trace_result* result);

/* Runs the named checks; *report receives a JSON array of
 * {"name", "ok", "detail"}. Returns ET_E_VERIFY_FAILED if any check fails. */
et_status et_verify(const et_chain* chain, uint64_t seed, char** report);

#ifdef __cplusplus
}
#endif

#endif
