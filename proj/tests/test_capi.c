/* Exercises the C API from C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "motkit/motkit.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static const char* kDirac = "{\"dim\":1,\"atoms\":[[0]],\"weights\":[1]}";
static const char* kPair = "{\"dim\":1,\"atoms\":[[-1],[1]],\"weights\":[0.5,0.5]}";

static void test_order(void) {
  motkit_measure *mu = NULL, *nu = NULL;
  EXPECT(motkit_measure_parse(kDirac, NULL, &mu) == MOTKIT_OK);
  EXPECT(motkit_measure_parse(kPair, NULL, &nu) == MOTKIT_OK);
  EXPECT(motkit_measure_size(nu) == 2);
  EXPECT(motkit_measure_dim(nu) == 1);
  EXPECT(strcmp(motkit_measure_warning(nu), "") == 0);
  int in_order = -1;
  char* verdict = NULL;
  EXPECT(motkit_check_order(mu, nu, NULL, &in_order, &verdict) == MOTKIT_OK);
  EXPECT(in_order == 1);
  EXPECT(verdict && strstr(verdict, "\"coupling\""));
  motkit_string_free(verdict);
  verdict = NULL;
  EXPECT(motkit_check_order(nu, mu, NULL, &in_order, &verdict) == MOTKIT_OK);
  EXPECT(in_order == 0);
  EXPECT(verdict && strstr(verdict, "\"witness\""));
  motkit_string_free(verdict);
  motkit_measure_free(mu);
  motkit_measure_free(nu);

  motkit_measure* heavy = NULL;
  EXPECT(motkit_measure_parse("{\"dim\":1,\"atoms\":[[0],[1]],\"weights\":[2,2]}", NULL, &heavy) == MOTKIT_OK);
  EXPECT(strlen(motkit_measure_warning(heavy)) > 0);
  motkit_measure_free(heavy);
}

static void test_errors(void) {
  motkit_measure* m = NULL;
  EXPECT(motkit_measure_parse("{\"dim\":1,", NULL, &m) == MOTKIT_E_INPUT);
  EXPECT(m == NULL);
  EXPECT(strstr(motkit_last_error(), "malformed") != NULL);
  EXPECT(motkit_measure_parse(NULL, NULL, &m) == MOTKIT_E_INPUT);
  EXPECT(motkit_measure_parse("{\"dim\":1,\"atoms\":[[0]],\"weights\":[-1]}", NULL, &m) == MOTKIT_E_INPUT);

  motkit_options o;
  motkit_options_init(&o);
  o.tol_feas = 0.0;
  EXPECT(motkit_measure_parse(kDirac, &o, &m) == MOTKIT_E_INPUT);

  int passed = 0;
  EXPECT(motkit_verify_property("nope", "{}", NULL, &passed, NULL) == MOTKIT_E_INPUT);
  motkit_bundle* b = NULL;
  EXPECT(motkit_generate("nope", 0, NULL, &b) == MOTKIT_E_INPUT);
  EXPECT(b == NULL);
  /* handles tolerate NULL */
  motkit_measure_free(NULL);
  motkit_bundle_free(NULL);
  motkit_string_free(NULL);
}

static motkit_instance* generated_instance(const char* name, const char* params, const motkit_options* o) {
  motkit_bundle* b = NULL;
  motkit_instance* in = NULL;
  if (motkit_generate(name, 0, params, &b) != MOTKIT_OK) return NULL;
  if (motkit_instance_parse(motkit_bundle_text(b, 0), o, &in) != MOTKIT_OK) in = NULL;
  motkit_bundle_free(b);
  return in;
}

static void test_solve(void) {
  motkit_instance* in = generated_instance("three-point", NULL, NULL);
  EXPECT(in != NULL);
  motkit_solution* s = NULL;
  EXPECT(motkit_solve(in, NULL, &s) == MOTKIT_OK);
  EXPECT(fabs(motkit_solution_value(s) - 0.5) <= 1e-9);
  EXPECT(motkit_solution_verified(s) == 1);
  char *coupling = NULL, *dual = NULL, *report = NULL;
  EXPECT(motkit_solution_coupling_json(s, &coupling) == MOTKIT_OK);
  EXPECT(motkit_solution_dual_json(s, &dual) == MOTKIT_OK);
  EXPECT(motkit_solution_report_json(s, &report) == MOTKIT_OK);
  EXPECT(strstr(coupling, "\"entries\"") && strstr(dual, "\"alpha\"") && strstr(report, "\"contact\""));

  /* the plan feeds the support parser and the paving */
  motkit_support* sup = NULL;
  EXPECT(motkit_support_parse(coupling, NULL, &sup) == MOTKIT_OK);
  motkit_paving* p = NULL;
  EXPECT(motkit_paving_build(sup, NULL, 1, &p) == MOTKIT_OK);
  EXPECT(motkit_paving_verified(p) == 1);
  EXPECT(motkit_paving_class_count(p) >= 1);
  char* svg = NULL;
  EXPECT(motkit_paving_svg(p, &svg) == MOTKIT_E_PRECONDITION);
  motkit_paving_free(p);
  motkit_support_free(sup);
  motkit_string_free(coupling);
  motkit_string_free(dual);
  motkit_string_free(report);
  motkit_solution_free(s);
  motkit_instance_free(in);

  /* mu = nu with minimization: identity plan, value 0 */
  motkit_options o;
  motkit_options_init(&o);
  o.sense = MOTKIT_SENSE_MIN;
  in = generated_instance("identity-grid", "{\"n\":5}", &o);
  EXPECT(in != NULL);
  s = NULL;
  EXPECT(motkit_solve(in, &o, &s) == MOTKIT_OK);
  EXPECT(fabs(motkit_solution_value(s)) <= 1e-12);
  motkit_solution_free(s);
  motkit_instance_free(in);

  /* swapped marginals: order violation */
  motkit_instance* bad = NULL;
  EXPECT(motkit_instance_parse("{\"mu\":{\"dim\":1,\"atoms\":[[-1],[1]],\"weights\":[0.5,0.5]},"
                               "\"nu\":{\"dim\":1,\"atoms\":[[0]],\"weights\":[1]}}",
                               NULL, &bad) == MOTKIT_OK);
  s = NULL;
  EXPECT(motkit_solve(bad, NULL, &s) == MOTKIT_E_PRECONDITION);
  EXPECT(s == NULL);
  EXPECT(strstr(motkit_last_error(), "witness") != NULL);
  motkit_instance_free(bad);
}

static void test_properties(void) {
  int passed = -1;
  char* report = NULL;
  EXPECT(motkit_verify_property("gamma-growth", "{\"n\":11}", NULL, &passed, &report) == MOTKIT_OK);
  EXPECT(passed == 1);
  motkit_string_free(report);

  motkit_bundle* b = NULL;
  EXPECT(motkit_generate("extremal-fiber", 0, NULL, &b) == MOTKIT_OK);
  EXPECT(motkit_bundle_size(b) == 1);
  EXPECT(strcmp(motkit_bundle_name(b, 0), "extremal-fiber.json") == 0);
  EXPECT(motkit_bundle_name(b, 1) == NULL);
  EXPECT(motkit_verify_property("extremal", motkit_bundle_text(b, 0), NULL, &passed, NULL) == MOTKIT_OK);
  EXPECT(passed == 0);
  /* three targets are within the minimization bound */
  EXPECT(motkit_verify_property("one-d", motkit_bundle_text(b, 0), NULL, &passed, NULL) == MOTKIT_OK);
  EXPECT(passed == 1);
  motkit_bundle_free(b);

  EXPECT(motkit_verify_property("laplacian", "{\"d\":2,\"a\":[1,0,0,-1],\"r\":1}", NULL, &passed, NULL) ==
         MOTKIT_E_INPUT);
  EXPECT(motkit_verify_property("one-d", "{\"mu\":{\"dim\":2,\"atoms\":[[0,0]],\"weights\":[1]},"
                                         "\"nu\":{\"dim\":2,\"atoms\":[[0,0]],\"weights\":[1]},"
                                         "\"entries\":[{\"i\":0,\"j\":0,\"mass\":1}]}",
                                NULL, &passed, NULL) == MOTKIT_E_PRECONDITION);
}

static void test_radial4(void) {
  motkit_bundle* b = NULL;
  EXPECT(motkit_generate("radial4", 0, NULL, &b) == MOTKIT_OK);
  EXPECT(motkit_bundle_size(b) == 3);
  for (size_t k = 1; k < 3; ++k) {
    const char* v = strstr(motkit_bundle_text(b, k), "\"value\": ");
    EXPECT(v != NULL);
    if (v) EXPECT(fabs(atof(v + 9) - 1.0) <= 1e-12);
  }
  motkit_bundle_free(b);
}

int main(void) {
  EXPECT(strlen(motkit_version()) > 0);
  test_order();
  test_errors();
  test_solve();
  test_properties();
  test_radial4();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("C API: all checks passed\n");
  return 0;
}
