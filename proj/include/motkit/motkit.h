/* motkit C API. Objects are opaque handles released with the matching *_free.
 * Strings returned through char** are owned by the caller and released with
 * motkit_string_free. On failure the calls return a nonzero status and
 * motkit_last_error() describes it (per thread). */
#ifndef MOTKIT_H
#define MOTKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(MOTKIT_BUILDING_LIBRARY)
#define MOTKIT_API __attribute__((visibility("default")))
#else
#define MOTKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int motkit_status;

#define MOTKIT_OK 0
#define MOTKIT_E_INTERNAL 1     /* unexpected failure */
#define MOTKIT_E_INPUT 2        /* malformed or inconsistent input */
#define MOTKIT_E_PRECONDITION 3 /* order violation, precondition or dimension error */
#define MOTKIT_E_VERIFICATION 4 /* an internal postcondition check failed */
#define MOTKIT_E_PROPERTY 5     /* a verified property does not hold */

#define MOTKIT_KEEP (-1)
#define MOTKIT_SENSE_MIN 0
#define MOTKIT_SENSE_MAX 1
#define MOTKIT_COST_EUCLIDEAN 0
#define MOTKIT_COST_POWER 1
#define MOTKIT_COST_ZERO 2

typedef struct motkit_options {
  double tol_feas;   /* LP and coupling residuals */
  double tol_geom;   /* point coincidence */
  unsigned threads;  /* 0 is read as 1 */
  int sense;         /* MOTKIT_KEEP or MOTKIT_SENSE_* : overrides the file */
  int cost_kind;     /* MOTKIT_KEEP or MOTKIT_COST_* : overrides the file */
  double p;          /* exponent for MOTKIT_COST_POWER */
  double threshold;  /* mass fraction required by statistical properties */
} motkit_options;

typedef struct motkit_measure motkit_measure;
typedef struct motkit_instance motkit_instance;
typedef struct motkit_solution motkit_solution;
typedef struct motkit_support motkit_support;
typedef struct motkit_paving motkit_paving;
typedef struct motkit_bundle motkit_bundle;

MOTKIT_API void motkit_options_init(motkit_options* opts);
MOTKIT_API const char* motkit_version(void);
MOTKIT_API const char* motkit_last_error(void);
MOTKIT_API void motkit_string_free(char* s);

/* Measures: {"dim", "atoms", "weights"}; weights are renormalized on load. */
MOTKIT_API motkit_status motkit_measure_parse(const char* json, const motkit_options* opts, motkit_measure** out);
MOTKIT_API size_t motkit_measure_size(const motkit_measure* m);
MOTKIT_API size_t motkit_measure_dim(const motkit_measure* m);
/* Empty string unless the weights had to be renormalized. */
MOTKIT_API const char* motkit_measure_warning(const motkit_measure* m);
MOTKIT_API motkit_status motkit_measure_to_json(const motkit_measure* m, char** out);
MOTKIT_API void motkit_measure_free(motkit_measure* m);

/* Convex order. *in_order is 1 with a martingale coupling in the verdict, or 0
 * with a convex witness. Both outcomes return MOTKIT_OK. */
MOTKIT_API motkit_status motkit_check_order(const motkit_measure* mu, const motkit_measure* nu,
                                            const motkit_options* opts, int* in_order, char** verdict_json);

/* Instances: {"mu", "nu", "cost"}; cost and sense overrides in opts apply. */
MOTKIT_API motkit_status motkit_instance_parse(const char* json, const motkit_options* opts, motkit_instance** out);
MOTKIT_API const char* motkit_instance_warning(const motkit_instance* in);
MOTKIT_API void motkit_instance_free(motkit_instance* in);

/* Basic optimal coupling plus recovered dual triple. Order violations return
 * MOTKIT_E_PRECONDITION. */
MOTKIT_API motkit_status motkit_solve(const motkit_instance* in, const motkit_options* opts, motkit_solution** out);
MOTKIT_API double motkit_solution_value(const motkit_solution* s);
/* 1 when the dual triple passes the contact check on the support of the plan. */
MOTKIT_API int motkit_solution_verified(const motkit_solution* s);
MOTKIT_API motkit_status motkit_solution_coupling_json(const motkit_solution* s, char** out);
MOTKIT_API motkit_status motkit_solution_dual_json(const motkit_solution* s, char** out);
MOTKIT_API motkit_status motkit_solution_report_json(const motkit_solution* s, char** out);
MOTKIT_API void motkit_solution_free(motkit_solution* s);

/* Supports: {"dim", "fibers": [{"x", "ys"}]} or a coupling document. */
MOTKIT_API motkit_status motkit_support_parse(const char* json, const motkit_options* opts, motkit_support** out);
MOTKIT_API void motkit_support_free(motkit_support* s);

/* Irreducible convex paving. A support that is not martingale-supporting
 * returns MOTKIT_E_PRECONDITION naming the offending x. With with_duals set,
 * per-class contact triples are computed for the cost in opts. */
MOTKIT_API motkit_status motkit_paving_build(const motkit_support* s, const motkit_options* opts, int with_duals,
                                             motkit_paving** out);
/* 1 when the paving passes its own verification. */
MOTKIT_API int motkit_paving_verified(const motkit_paving* p);
MOTKIT_API size_t motkit_paving_class_count(const motkit_paving* p);
MOTKIT_API motkit_status motkit_paving_json(const motkit_paving* p, char** out);
MOTKIT_API motkit_status motkit_paving_csv(const motkit_paving* p, char** out);
/* 2D only. */
MOTKIT_API motkit_status motkit_paving_svg(const motkit_paving* p, char** out);
MOTKIT_API void motkit_paving_free(motkit_paving* p);

/* Property checks: extremal, one-d, polytope, gamma-growth, sandwich,
 * idempotent, laplacian, flatten. Returns MOTKIT_OK with *passed set; the
 * report is written either way. */
MOTKIT_API motkit_status motkit_verify_property(const char* property, const char* input_json,
                                                const motkit_options* opts, int* passed, char** report_json);

/* Named fixtures as a bundle of (file name, JSON text) pairs. params_json may
 * be NULL. */
MOTKIT_API motkit_status motkit_generate(const char* name, uint64_t seed, const char* params_json,
                                         motkit_bundle** out);
MOTKIT_API size_t motkit_bundle_size(const motkit_bundle* b);
MOTKIT_API const char* motkit_bundle_name(const motkit_bundle* b, size_t i);
MOTKIT_API const char* motkit_bundle_text(const motkit_bundle* b, size_t i);
MOTKIT_API void motkit_bundle_free(motkit_bundle* b);

#ifdef __cplusplus
}
#endif

#endif
