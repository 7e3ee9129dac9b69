#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "endotrace/endotrace.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static char* trace_of(const et_chain* ch, const char* method) {
  et_trace_result* r = NULL;
  char* v = NULL;
  if (et_trace(ch, method, 3, &r) != ET_OK) {
    fprintf(stderr, "trace failed: %s\n", et_last_error());
    return NULL;
  }
  et_trace_result_value(r, &v);
  et_trace_result_free(r);
  return v;
}

int main(void) {
  et_curve* curve = NULL;
  EXPECT(et_curve_generate(16, 1, &curve) == ET_OK);

  char* text = NULL;
  EXPECT(et_curve_to_json(curve, &text) == ET_OK);
  et_curve* again = NULL;
  EXPECT(et_curve_from_json(text, &again) == ET_OK);
  char* text2 = NULL;
  EXPECT(et_curve_to_json(again, &text2) == ET_OK);
  EXPECT(strcmp(text, text2) == 0);
  et_string_free(text);
  et_string_free(text2);
  et_curve_free(again);

  /* identity has trace 2 */
  et_chain* id = NULL;
  EXPECT(et_chain_identity(curve, &id) == ET_OK);
  char* t = trace_of(id, "sea");
  EXPECT(t && strcmp(t, "2") == 0);
  et_string_free(t);
  et_chain_free(id);

  /* default length 4 * ceil(log2 p) = 64 for a 16-bit p */
  et_chain* ch = NULL;
  EXPECT(et_chain_generate(curve, 0, 5, &ch) == ET_OK);
  EXPECT(et_chain_length(ch) >= 64);
  EXPECT(et_chain_degree_bits(ch) == et_chain_length(ch) + 1);

  char* ref = trace_of(ch, "sea+p");
  const char* methods[] = {"schoof", "sea", "sea+p+points"};
  for (int i = 0; i < 3; ++i) {
    char* other = trace_of(ch, methods[i]);
    EXPECT(ref && other && strcmp(ref, other) == 0);
    et_string_free(other);
  }
  et_string_free(ref);

  char* report = NULL;
  EXPECT(et_verify(ch, 0, &report) == ET_OK);
  EXPECT(report && strstr(report, "characteristic_equation"));
  et_string_free(report);

  /* errors */
  et_trace_result* r = NULL;
  EXPECT(et_trace(ch, "bogus", 0, &r) == ET_E_INVALID_ARGUMENT);
  EXPECT(strlen(et_last_error()) > 0);
  et_chain* bad = NULL;
  EXPECT(et_chain_from_json("{\"curve\": 1}", &bad) == ET_E_PARSE);
  EXPECT(strcmp(et_status_name(ET_E_NOT_ENDOMORPHISM), "NotEndomorphism") == 0);
  EXPECT(strcmp(et_status_name(ET_E_PARSE), "Parse") == 0);
  EXPECT(et_curve_generate(16, 0, NULL) == ET_E_INVALID_ARGUMENT);

  et_chain_free(ch);
  et_curve_free(curve);
  if (failures) return 1;
  printf("c api: all checks passed\n");
  return 0;
}
