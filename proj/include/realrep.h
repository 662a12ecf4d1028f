#ifndef REALREP_H
#define REALREP_H

/* C API for the realrep shared library.
 *
 * All computations on Real (C2-graded) representations are reached through
 * opaque handles and report strings. Report strings are owned by the library
 * and must be released with rr_string_free. Error details for the last
 * failing call on the current thread are available via rr_last_error.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rr_status {
  RR_OK = 0,
  RR_ERR_VALIDATION = 1,
  RR_ERR_NUMERIC = 2,
  RR_ERR_IO = 3,
  RR_ERR_ARGUMENT = 4
} rr_status;

typedef struct rr_group rr_group;
typedef struct rr_structure rr_structure;

typedef struct rr_options {
  int32_t grading;      /* grading index, default 0 */
  char theory;          /* 'A', 'L' or 'H'; 0 means the command default */
  uint64_t seed;        /* randomized algorithms are deterministic per seed */
  double tol_residual;  /* <= 0 selects the default 1e-10 */
  double tol_rank;      /* <= 0 selects the default 1e-8 */
  int32_t json_format;  /* 0 = text report, 1 = JSON report */
} rr_options;

const char* rr_version(void);
const char* rr_last_error(void);
void rr_options_init(rr_options* opt);
void rr_string_free(char* s);

/* Groups: built-in names ("q8", "d4", "c2xc4", "s4", ...) or JSON text in
 * the group file format. */
rr_status rr_group_create_named(const char* name, rr_group** out);
rr_status rr_group_create_from_json(const char* json_text, rr_group** out);
void rr_group_destroy(rr_group* g);
int32_t rr_group_order(const rr_group* g);
int32_t rr_group_grading_count(const rr_group* g);
rr_status rr_group_to_json(const rr_group* g, char** json_out);

/* Structures (A/L/H) in the structure file format. */
rr_status rr_structure_create_from_json(const char* json_text,
                                        rr_structure** out);
void rr_structure_destroy(rr_structure* s);
int32_t rr_structure_dim(const rr_structure* s);
char rr_structure_theory(const rr_structure* s);

/* Commands. Each returns a report string (text or JSON per options). The
 * status is RR_OK when the report's internal checks pass; RR_ERR_VALIDATION
 * is returned with the report still filled when they do not. */
rr_status rr_run_catalog(const rr_group* g, const rr_options* opt,
                         char** report_out);
rr_status rr_run_classify(const rr_group* g, const rr_options* opt,
                          char** report_out);
rr_status rr_run_irreps(const rr_group* g, const rr_options* opt,
                        char** report_out);
rr_status rr_run_census(const rr_group* g, const rr_options* opt,
                        char** report_out);
rr_status rr_run_tables(const rr_group* g, const rr_options* opt,
                        char** report_out);
rr_status rr_run_verify(const rr_structure* s, const rr_options* opt,
                        char** report_out);
rr_status rr_run_decompose(const rr_structure* s, const rr_options* opt,
                           char** report_out);

#ifdef __cplusplus
}
#endif

#endif /* REALREP_H */
