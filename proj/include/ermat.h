/* ermat — spectra of Euclidean random matrices.
 *
 * C interface to the ermat core: Marchenko-Pastur laws and their affine
 * pushforwards, distance-matrix kernels, and the experiment harness.
 * Every function returns ERMAT_OK (0) or an error code; the per-thread
 * detail message is available through ermat_last_error(). Objects are
 * opaque handles released with the matching *_destroy call. Strings
 * returned through char** are owned by the caller and released with
 * ermat_string_free.
 */
#ifndef ERMAT_H
#define ERMAT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef ERMAT_API
#if defined(_WIN32)
#define ERMAT_API __declspec(dllexport)
#else
#define ERMAT_API __attribute__((visibility("default")))
#endif
#endif

enum {
  ERMAT_OK = 0,
  ERMAT_E_INVALID = 1,     /* invalid argument or configuration */
  ERMAT_E_DOMAIN = 2,      /* evaluation outside a kernel's domain */
  ERMAT_E_CAPACITY = 3,    /* size cap exceeded */
  ERMAT_E_SOLVER = 4,      /* eigensolver failure */
  ERMAT_E_IO = 5,          /* file system failure */
  ERMAT_E_PARSE = 6,       /* malformed JSON / CSV */
  ERMAT_E_UNSUPPORTED = 7, /* operation needs data the object lacks */
  ERMAT_E_INTERNAL = 8
};

typedef struct ermat_mp ermat_mp;         /* MP law, possibly affine-mapped */
typedef struct ermat_kernel ermat_kernel; /* kernel f of squared distances */

ERMAT_API const char* ermat_version(void);
ERMAT_API const char* ermat_status_name(int status);
ERMAT_API const char* ermat_last_error(void);
ERMAT_API void ermat_string_free(char* s);

/* --- Marchenko-Pastur laws ------------------------------------------- */

/* Law with ratio parameter y = lim p/n (> 0). */
ERMAT_API int ermat_mp_create(double y, ermat_mp** out);

/* Law of shift + scale * S, S ~ MP(y); scale may be zero or negative. */
ERMAT_API int ermat_mp_create_affine(double y, double shift, double scale,
                                     ermat_mp** out);
ERMAT_API void ermat_mp_destroy(ermat_mp* law);

ERMAT_API int ermat_mp_density(const ermat_mp* law, double x, double* out);
ERMAT_API int ermat_mp_cdf(const ermat_mp* law, double x, double* out);
/* q in (0, 1]. */
ERMAT_API int ermat_mp_quantile(const ermat_mp* law, double q, double* out);
/* Any output pointer may be NULL. */
ERMAT_API int ermat_mp_info(const ermat_mp* law, double* support_lo,
                            double* support_hi, double* atom_mass,
                            double* atom_location);
/* count i.i.d. draws into out[0..count-1]; atom draws are exact. */
ERMAT_API int ermat_mp_sample(const ermat_mp* law, uint64_t seed, size_t count,
                              double* out);

/* --- kernels ---------------------------------------------------------- */

/* spec_json: a name ("identity", "constant", "exp", "sqrt") or an object
 * {"name": ..., ...} with "value" for constant, "coeffs" for poly, and
 * {f0, f2, df2[, d2f2, d3f2], samples: [[x, f(x)], ...]} for custom. */
ERMAT_API int ermat_kernel_create(const char* spec_json, ermat_kernel** out);
ERMAT_API void ermat_kernel_destroy(ermat_kernel* kernel);

ERMAT_API int ermat_kernel_eval(const ermat_kernel* kernel, double x,
                                double* out);
/* The limiting law of the kernel's distance matrix is
 * shift + scale * S with S ~ MP(y). */
ERMAT_API int ermat_kernel_limit_law(const ermat_kernel* kernel, double* shift,
                                     double* scale);

/* --- harness ----------------------------------------------------------- */

/* config_json schema:
 *   {"family": "gaussian" | "uniform-ball" | "uniform-sphere" |
 *              "uniform-cube" | "laplace",
 *    "kernel": <kernel spec>, "y": ratio, "n_list": [..], "trials": t,
 *    "seed": s, "epsilon": e | null, "out": dir, "threads": k, "bins": b}
 * Writes report.json / eigenvalues_n*.csv / histogram_n*.tsv under "out"
 * (when nonempty) and hands back the report JSON. */
ERMAT_API int ermat_run_experiment(const char* config_json,
                                   char** report_json);

/* CSV rows are observations, columns coordinates. center != 0 recenters
 * and rescales coordinates to empirical isotropy. out_dir may be NULL. */
ERMAT_API int ermat_analyze_dataset(const char* csv_path,
                                    const char* kernel_json, int center,
                                    const char* out_dir, char** report_json);

/* Monte Carlo verification runs; returns TSV.
 * config_json: {"what": "thin-shell" | "ip-moment" | "norm-moment" |
 *               "concentration", ...} — see the CLI `check` subcommand for
 * the per-mode fields. */
ERMAT_API int ermat_check(const char* config_json, char** tsv_out);

#ifdef __cplusplus
}
#endif

#endif /* ERMAT_H */
