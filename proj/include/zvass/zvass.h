/*
 * Copyright 2026 The zvass Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the zvass library: reachability, coverability and
 * inclusion for integer vector addition systems with states and resets.
 *
 * Every function returning zvass_status sets a thread-local message that
 * zvass_last_error() returns when the status is not ZVASS_OK. Strings handed
 * out through char** parameters are owned by the caller and released with
 * zvass_string_free().
 */

#ifndef ZVASS_ZVASS_H_
#define ZVASS_ZVASS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ZVASS_API __declspec(dllexport)
#else
#define ZVASS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct zvass_machine zvass_machine;
typedef struct zvass_result zvass_result;

typedef enum zvass_status {
  ZVASS_OK = 0,
  ZVASS_E_ARGUMENT = 10,
  ZVASS_E_PARSE = 11,
  ZVASS_E_IO = 12,
  ZVASS_E_DIMENSION = 13,
  ZVASS_E_CLASS = 14,
  ZVASS_E_INVALID_MACHINE = 15,
  ZVASS_E_INVALID_RUN = 16,
  ZVASS_E_OVERFLOW = 17,
  ZVASS_E_FORMULA = 18,
  ZVASS_E_BOUND = 19,
  ZVASS_E_SOLVER = 20,
  ZVASS_E_WITNESS = 21,
  ZVASS_E_INTERNAL = 30
} zvass_status;

/* Doubles as the CLI exit code. */
typedef enum zvass_answer { ZVASS_YES = 0, ZVASS_NO = 1, ZVASS_UNKNOWN = 2 } zvass_answer;

typedef enum zvass_mode { ZVASS_REACH = 0, ZVASS_COVER = 1 } zvass_mode;

typedef enum zvass_format { ZVASS_TEXT = 0, ZVASS_JSON = 1 } zvass_format;

/* NULL command / non-positive timeout: ZVASS_SOLVER_CMD / ZVASS_TIMEOUT_MS,
 * then the built-in defaults. */
typedef struct zvass_solver_options {
  const char* command;
  long timeout_ms;
} zvass_solver_options;

ZVASS_API const char* zvass_version(void);
ZVASS_API const char* zvass_last_error(void);
ZVASS_API void zvass_string_free(char* s);

/* Machines. */
ZVASS_API zvass_status zvass_machine_load(const char* path, zvass_machine** out);
ZVASS_API zvass_status zvass_machine_parse(const char* text, const char* source_name,
                                           zvass_machine** out);
ZVASS_API void zvass_machine_free(zvass_machine* m);
ZVASS_API size_t zvass_machine_dimension(const zvass_machine* m);
ZVASS_API zvass_status zvass_machine_print(const zvass_machine* m, char** out);

/* Configurations are written "state:c1,c2,...". Words are letter names
 * separated by spaces or commas; the empty string is the empty word. */
ZVASS_API zvass_status zvass_simulate(const zvass_machine* m, const char* from, const char* word,
                                      zvass_format format, char** out, int* stuck);

/* Decision procedures. */
ZVASS_API zvass_status zvass_check(const zvass_machine* m, zvass_mode mode, const char* from,
                                   const char* to, const zvass_solver_options* options,
                                   zvass_result** out);
ZVASS_API zvass_status zvass_check_inclusion(const zvass_machine* a, const char* from_a,
                                             const zvass_machine* b, const char* from_b,
                                             const zvass_solver_options* options,
                                             zvass_result** out);
ZVASS_API zvass_status zvass_emit_smt(const zvass_machine* m, zvass_mode mode, const char* from,
                                      const char* to, char** out);
ZVASS_API zvass_status zvass_emit_smt_inclusion(const zvass_machine* a, const char* from_a,
                                                const zvass_machine* b, const char* from_b,
                                                char** out);

/* Bounded exploration. A bounded search that finds nothing answers
 * ZVASS_UNKNOWN. With options != NULL an inclusion counterexample is
 * confirmed by the solver before it is reported. */
ZVASS_API zvass_status zvass_oracle(const zvass_machine* m, zvass_mode mode, const char* from,
                                    const char* to, size_t max_len, zvass_result** out);
ZVASS_API zvass_status zvass_oracle_inclusion(const zvass_machine* a, const char* from_a,
                                              const zvass_machine* b, const char* from_b,
                                              size_t max_len,
                                              const zvass_solver_options* options,
                                              zvass_result** out);

ZVASS_API zvass_answer zvass_result_answer(const zvass_result* r);
ZVASS_API size_t zvass_result_witness_length(const zvass_result* r);
ZVASS_API zvass_status zvass_result_render(const zvass_result* r, zvass_format format, char** out);
ZVASS_API void zvass_result_free(zvass_result* r);

/* Generators. `params_json` may be NULL or "{}" for a random instance drawn
 * from `seed`. The output is a JSON object with "files" (name -> contents),
 * "query" and "note". Kinds: diophantine, pi2pa, qsos2-qslde, qbf-qsos,
 * pcp, random. */
ZVASS_API zvass_status zvass_generate(const char* kind, const char* params_json, uint64_t seed,
                                      char** out);

/* Unary size of the Parikh-image formula for k = 1..k_max, as a text table
 * or JSON. */
ZVASS_API zvass_status zvass_psi_size(const zvass_machine* m, size_t k_max, zvass_format format,
                                      char** out);

#ifdef __cplusplus
}
#endif

#endif /* ZVASS_ZVASS_H_ */
