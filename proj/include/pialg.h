#ifndef PIALG_H
#define PIALG_H

/* C interface to the polynomial-identity workbench.
 *
 * A problem file (JSON) is loaded into an opaque handle, commands run
 * against it, and results come back as heap-allocated strings owned by
 * the caller. Every function returns one of the status codes below;
 * on failure *error_out (when non-NULL) receives a message that must be
 * released with pialg_free_string.
 */

#ifdef __cplusplus
extern "C" {
#endif

#define PIALG_OK 0
#define PIALG_E_VALIDATION 2 /* bad input: file, flags, or preconditions */
#define PIALG_E_BUDGET 3     /* computation larger than the configured cap */
#define PIALG_E_INTERNAL 4   /* engine self-check failed: report a bug */

typedef struct pialg_problem pialg_problem;

/* engine version string, static storage */
const char* pialg_version(void);

/* Parse and fully validate a problem. On success *out owns the handle. */
int pialg_problem_parse(const char* json_text, pialg_problem** out,
                        char** error_out);
int pialg_problem_load_file(const char* path, pialg_problem** out,
                            char** error_out);
void pialg_problem_free(pialg_problem* p);

/* Run one command against a loaded problem.
 *
 * argv is the command followed by its flags, argc entries, e.g.
 *   {"codim", "--n", "2", "--structure", "z2"}
 * Commands: validate, radical, decompose, wedderburn-malcev, levi,
 * exponent, lie-exponent, codim, codim-series, check-identity,
 * cocharacter, check-simple.
 *
 * On success *json_out and *text_out (when non-NULL) receive the report;
 * both must be released with pialg_free_string.
 */
int pialg_run(const pialg_problem* p, int argc, const char* const* argv,
              char** json_out, char** text_out, char** error_out);

void pialg_free_string(char* s);

#ifdef __cplusplus
}
#endif

#endif
