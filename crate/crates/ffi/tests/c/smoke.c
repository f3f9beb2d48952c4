#include <stdio.h>
#include <string.h>

#include "qfib.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      const char *e = qfib_last_error_message();                    \
      fprintf(stderr, "line %d: %s (%s)\n", __LINE__, #cond,         \
              e ? e : "no error");                                   \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  QfibPoly *f3 = NULL, *want = NULL, *prod = NULL, *back = NULL, *m = NULL;
  char *s = NULL;
  bool eq = false;

  CHECK(qfib_family_poly("F", 3, 0, 0, QFIB_VIA_RECURSION, &f3) == QFIB_STATUS_OK);
  CHECK(qfib_poly_to_string(f3, &s) == QFIB_STATUS_OK);
  CHECK(strcmp(s, "q^3 + q^2 + q") == 0);
  qfib_string_free(s);

  CHECK(qfib_poly_parse("q + q^2 + q^3", &want) == QFIB_STATUS_OK);
  CHECK(qfib_poly_equal(f3, want, &eq) == QFIB_STATUS_OK && eq);

  CHECK(qfib_poly_mul(f3, want, &prod) == QFIB_STATUS_OK);
  CHECK(qfib_poly_exact_div(prod, f3, &back) == QFIB_STATUS_OK);
  CHECK(qfib_poly_equal(back, want, &eq) == QFIB_STATUS_OK && eq);

  size_t rows[] = {0, 1}, cols[] = {4, 6};
  CHECK(qfib_minor(rows, cols, 2, QFIB_MINOR_METHOD_NONCROSSING_TUPLES, &m) == QFIB_STATUS_OK);
  CHECK(qfib_poly_to_string(m, &s) == QFIB_STATUS_OK);
  CHECK(strcmp(s, "x*y^4*q^11") == 0);
  qfib_string_free(s);

  uint64_t count = 0;
  CHECK(qfib_count_avoiders(10, "13/2,123", &count) == QFIB_STATUS_OK && count == 89);

  QfibStats st;
  CHECK(qfib_partition_stats("12/3/45", &st) == QFIB_STATUS_OK && st.doubletons == 2 && st.blocks == 3);

  QfibPoly *bad = NULL;
  CHECK(qfib_poly_parse("x^", &bad) == QFIB_STATUS_PARSE && bad == NULL);
  CHECK(qfib_last_error_message() != NULL);

  s = NULL;
  CHECK(qfib_verify_identity("pq-8-no-p-factor", QFIB_PROFILE_QUICK, &s) == QFIB_STATUS_IDENTITY_FAILED);
  CHECK(s != NULL && strstr(s, "\"counterexample\"") != NULL);
  qfib_string_free(s);

  qfib_poly_free(f3);
  qfib_poly_free(want);
  qfib_poly_free(prod);
  qfib_poly_free(back);
  qfib_poly_free(m);
  printf("ok %s\n", qfib_version());
  return 0;
}
