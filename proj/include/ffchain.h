/* C surface of the ffchain shared library. All composite inputs and outputs
 * are JSON strings; output strings are heap-allocated and must be released
 * with ffc_string_free. Failures return a nonzero status and leave a
 * description in ffc_last_error() (thread local). */
#ifndef FFCHAIN_H
#define FFCHAIN_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ffc_status {
  FFC_OK = 0,
  FFC_ERR_INVALID = 1,  /* malformed or out-of-contract input */
  FFC_ERR_COMPUTE = 2,  /* numerical failure: no convergence, conditioning */
  FFC_ERR_INTERNAL = 3
} ffc_status;

const char* ffc_version(void);
const char* ffc_last_error(void);
void ffc_string_free(char* s);

/* Phase class of a two-qubit state literal {"a00":[re,im], ...}. */
ffc_status ffc_state_classify(const char* state_json, char** out_json);

/* Opaque chain handle built from a chain description
 * {"n":int, "boundary":"open"|"periodic", "state":{...} | "states":[...],
 *  "projector": 4x4 matrix (optional)}. */
typedef struct ffc_chain ffc_chain;

ffc_status ffc_chain_create(const char* chain_json, ffc_chain** out);
void ffc_chain_destroy(ffc_chain* chain);

/* method: "automatic" | "dense" | "deflated" (NULL = automatic); tol <= 0
 * picks the default 1e-8. */
ffc_status ffc_chain_gap(const ffc_chain* chain, const char* method, double tol,
                         char** out_json);
ffc_status ffc_chain_degeneracy(const ffc_chain* chain, char** out_json);
/* method: "automatic" | "analytic" | "numeric" (NULL = automatic). */
ffc_status ffc_chain_kernel(const ffc_chain* chain, const char* method, char** out_json);

/* Continued-fraction approximations of theta. */
ffc_status ffc_convergents(double theta, int count, char** out_json);

/* Classify a 4x4 Hermitian projector (rank 1..3). With reduce nonzero, a PSD
 * matrix is first replaced by the projector onto its range. */
ffc_status ffc_rank_classify(const char* matrix_json, int reduce, char** out_json);

/* Grid sweep. Config:
 * {"kind":"phase"|"degeneracy-curves", "family":"real-plus"|"real-minus",
 *  "p":{"lo","hi","steps"}, "dtheta":{"lo","hi","steps"}, "n_list":[...],
 *  "csv":path, "manifest":path?, "workers":int?, "seed":int?,
 *  "plot_stub":bool?}. Writes the CSV, manifest and optional plot stub;
 * returns the manifest text. */
ffc_status ffc_sweep_run(const char* config_json, char** out_json);

/* Verification suite. Config:
 * {"suite":name, "trials":int?, "seed":int?, "n_lo":int?, "n_hi":int?,
 *  "workers":int?}. Returns the report; all_pass=false is still FFC_OK. */
ffc_status ffc_verify_run(const char* config_json, char** out_json);

/* Newline-separated suite names. */
ffc_status ffc_verify_suites(char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* FFCHAIN_H */
