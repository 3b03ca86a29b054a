#ifndef CONEKIT_H_
#define CONEKIT_H_

/* C interface of the conekit geometry and classification library.
 *
 * Handles are opaque; every function returns a ck_status, and the message
 * for the most recent failure on the calling thread is available from
 * ck_last_error(). Strings produced through char** outputs are released
 * with ck_string_free().
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ck_status {
  CK_OK = 0,
  CK_EINVAL = 1,       /* invalid argument or failed precondition */
  CK_EPARSE = 2,       /* malformed JSON text */
  CK_ESPEC = 3,        /* schema-valid JSON with an invalid spec payload */
  CK_EDOMAIN = 4,      /* input outside a table map's domain */
  CK_ENOCONV = 5,      /* iterative procedure did not converge */
  CK_ECOLLAPSE = 6,    /* map is constant on the probed coherent line */
  CK_EUNSUPPORTED = 7, /* dimension outside the supported range */
  CK_EFAIL = 8         /* any other failure */
} ck_status;

typedef enum ck_verdict {
  CK_VERDICT_SIMILARITY = 0,
  CK_VERDICT_DEGENERATE = 1,
  CK_VERDICT_VIOLATOR = 2,
  CK_VERDICT_INCONCLUSIVE = 3
} ck_verdict;

/* A loaded map spec: affine, similarity, degenerate, or table. */
typedef struct ck_map ck_map;

const char* ck_version(void);

/* Message of the last failed call on this thread; empty when none. */
const char* ck_last_error(void);

void ck_string_free(char* s);

ck_status ck_map_load_json(const char* json_text, ck_map** out_map);
void ck_map_free(ck_map* map);
int ck_map_dimension(const ck_map* map);
const char* ck_map_kind(const ck_map* map); /* owned by the handle */
ck_status ck_map_eval(const ck_map* map, const double* in, size_t len, double* out);

/* Generators. Output JSON is allocated for the caller. */
ck_status ck_gen_similarity(int dimension, uint64_t seed, char** out_json);
ck_status ck_gen_degenerate(int patches, double epsilon, const double* vertex /* or NULL */,
                            int dimension, uint64_t seed, char** out_json);
ck_status ck_gen_squaring_table(int pairs, double scale, uint64_t seed, char** out_json);

/* Separation validator for degenerate specs; other kinds validate by schema
 * alone. *valid is 1 or 0; the report explains failures. */
ck_status ck_validate(const ck_map* map, uint64_t seed, int* valid, char** report_json);

/* Coherency-preservation check over seeded pairs (table maps: row pairs). */
ck_status ck_check(const ck_map* map, uint64_t seed, int pairs, double tau_rel, int* passed,
                   char** report_json);

/* Classifier pipeline. Counts below one tenth of the defaults (100000 and
 * 512) are rejected. */
ck_status ck_classify(const ck_map* map, uint64_t seed, int check_pairs, int fit_samples,
                      ck_verdict* verdict, char** report_json);

/* Topological degree of the induced sphere map at a 4-dimensional base
 * point. *quality is 1 when the computation is trustworthy. */
ck_status ck_degree(const ck_map* map, const double* base, size_t base_len, int subdivision,
                    int* degree, int* quality, char** report_json);

/* Dimension-4 hermitian bridge: event (x, y, z, t) <-> matrix entries
 * (d1, d2, off_re, off_im). */
ck_status ck_event_to_herm(const double event[4], double herm[4]);
ck_status ck_herm_to_event(const double herm[4], double event[4]);
ck_status ck_herm_det(const double herm[4], double* out);

/* Quadratic form of an event with 3 to 6 coordinates. */
ck_status ck_quadratic_form(const double* coords, size_t len, double* out);

#ifdef __cplusplus
}
#endif

#endif /* CONEKIT_H_ */
