/* C interface to the absorption anti-unification library.
 *
 * Every entry point returns an absau_status. On failure the message is
 * available from absau_last_error() until the next call on the same thread.
 * Objects returned through out-parameters are owned by the caller and must be
 * released with the matching *_free function.
 */
#ifndef ABSAU_ABSAU_H
#define ABSAU_ABSAU_H

#include <stddef.h>

#if defined(_WIN32)
#define ABSAU_API __declspec(dllexport)
#else
#define ABSAU_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum absau_status {
  ABSAU_OK = 0,
  ABSAU_ERR_INPUT = 1,
  ABSAU_ERR_INTERNAL = 2,
  /* absau_check only: the claimed term is not a generalization. */
  ABSAU_NOT_GENERALIZATION = 3
} absau_status;

typedef enum absau_format { ABSAU_FORMAT_PRETTY = 0, ABSAU_FORMAT_JSON = 1 } absau_format;

typedef struct absau_theory absau_theory;
typedef struct absau_result absau_result;

typedef struct absau_options {
  absau_format format;
  size_t bound;      /* enumerate: abstraction term length bound (required) */
  size_t max_steps;  /* 0 = unlimited */
  int trace;         /* generalize: include every derivation */
  unsigned threads;  /* 0 or 1 = serial */
  size_t size_bound; /* oracle: candidate size (required) */
  size_t var_count;  /* oracle: variable pool size */
  int force;         /* oracle: allow size_bound above 12 */
} absau_options;

ABSAU_API void absau_options_init(absau_options* opts);

ABSAU_API const char* absau_version(void);
ABSAU_API const char* absau_last_error(void);

/* Theory file text: `absorption <f> <eps>` and `symbol <name>/<arity>`. */
ABSAU_API absau_status absau_theory_parse(const char* text, absau_theory** out);
ABSAU_API void absau_theory_free(absau_theory* theory);
/* Renders the theory in file syntax; the result text is the file. */
ABSAU_API absau_status absau_theory_describe(const absau_theory* theory, absau_result** out);

/* In the commands below a NULL theory means the default: Abs(f, eps_f) plus
 * every other symbol of the input terms with the arity of its first use. */
ABSAU_API absau_status absau_normalize(const absau_theory* theory, const char* term,
                                       const absau_options* opts, absau_result** out);
ABSAU_API absau_status absau_generalize(const absau_theory* theory, const char* s,
                                        const char* t, const absau_options* opts,
                                        absau_result** out);
ABSAU_API absau_status absau_enumerate(const absau_theory* theory, const char* s,
                                       const char* t, const absau_options* opts,
                                       absau_result** out);
ABSAU_API absau_status absau_linear(const absau_theory* theory, const char* s, const char* t,
                                    const absau_options* opts, absau_result** out);
/* ABSAU_NOT_GENERALIZATION still produces a result describing the failure. */
ABSAU_API absau_status absau_check(const absau_theory* theory, const char* r, const char* s,
                                   const char* t, const absau_options* opts,
                                   absau_result** out);
ABSAU_API absau_status absau_oracle(const absau_theory* theory, const char* s, const char* t,
                                    const absau_options* opts, absau_result** out);

ABSAU_API const char* absau_result_text(const absau_result* result);
ABSAU_API void absau_result_free(absau_result* result);

#ifdef __cplusplus
}
#endif

#endif
