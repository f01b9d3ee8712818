/* C interface to the jacobifield shared library.
 *
 * Every function returns a jfl_status; on failure jfl_last_error() holds a
 * message for the calling thread. Objects returned through out-parameters are
 * owned by the caller and released with the matching _free function.
 */

#ifndef JACOBIFIELD_H
#define JACOBIFIELD_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jfl_status {
  JFL_OK = 0,
  JFL_ERROR_CONFIG = 2,     /* invalid configuration, shapes, validity regions */
  JFL_ERROR_BOUNDS = 3,     /* enumeration caps and truncation limits */
  JFL_ERROR_DEGENERATE = 4, /* numerical degeneracy */
  JFL_ERROR_CHECK = 5,      /* a requested verification failed */
  JFL_ERROR_INTERNAL = 9
} jfl_status;

const char* jfl_version(void);

/* Message for the most recent failing call on this thread. */
const char* jfl_last_error(void);

/* Owned UTF-8 text returned by the library. */
typedef struct jfl_text jfl_text;
const char* jfl_text_data(const jfl_text* text);
size_t jfl_text_size(const jfl_text* text);
void jfl_text_free(jfl_text* text);

/* Runs one subcommand (moments, sample, jacobi, transform, partitions)
 * against a resolved JSON configuration. *report_out receives the JSON
 * report; it is produced for failed checks and recognized errors too. The
 * status doubles as the recommended process exit code. */
jfl_status jfl_run_command(const char* command, const char* config_json, jfl_text** report_out);

/* ---- opaque handles ---- */

typedef struct jfl_domain jfl_domain; /* grid domain, optionally with a per-cell kernel */
typedef struct jfl_sigma jfl_sigma;   /* atomic Kolmogorov measure */
typedef struct jfl_field jfl_field;   /* field specification bound to a Fock space */

/* {"cells":[{"id":0,"volume":1.0},...],"kernel":[{"atoms":[[s,m],...]},...]} */
jfl_status jfl_domain_parse(const char* json, jfl_domain** out);
void jfl_domain_free(jfl_domain* domain);
jfl_status jfl_domain_dump(const jfl_domain* domain, jfl_text** out);
int jfl_domain_cell_count(const jfl_domain* domain);

/* {"atoms":[[location,mass],...]} */
jfl_status jfl_sigma_parse(const char* json, jfl_sigma** out);
void jfl_sigma_free(jfl_sigma* sigma);
jfl_status jfl_sigma_dump(const jfl_sigma* sigma, jfl_text** out);
/* signed moment (absolute != 0 for the |s|^n variant) */
jfl_status jfl_sigma_moment(const jfl_sigma* sigma, int order, int absolute, double* out);
/* smallest C with int |s|^n dsigma <= C^n n! for n <= n_max */
jfl_status jfl_sigma_growth_constant(const jfl_sigma* sigma, int n_max, double* out);

/* kind: "gaussian", "poisson", "levy", "free_levy". sigma may be NULL for
 * gaussian/poisson, or for levy when the domain carries a kernel. */
jfl_status jfl_field_create(const char* kind, const jfl_domain* domain, const jfl_sigma* sigma,
                            double lambda, int compensated, int truncation, jfl_field** out);
void jfl_field_free(jfl_field* field);

/* phi_matrix holds phi_count test functions of cell_count values, row-major.
 * joint: vacuum moment of the operator product; predicted: partition sum. */
jfl_status jfl_field_joint_moment(const jfl_field* field, const double* phi_matrix, int phi_count,
                                  int cell_count, double* out);
jfl_status jfl_field_predicted_moment(const jfl_field* field, const double* phi_matrix, int phi_count,
                                      int cell_count, double* out);
jfl_status jfl_field_commutator_residual(const jfl_field* field, const double* phi, const double* psi,
                                         int cell_count, double* out);

#ifdef __cplusplus
}
#endif

#endif /* JACOBIFIELD_H */
