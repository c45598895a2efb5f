/* wseg.h
 *
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
 *
 * C interface to the segmenter. Every call returns a wseg_status; on
 * failure wseg_last_error() holds a message for the calling thread.
 * Strings returned through char** are owned by the caller and released
 * with wseg_string_free.
 */

#ifndef WSEG_WSEG_H_
#define WSEG_WSEG_H_

#include <stddef.h>

#if defined(_WIN32)
#define WSEG_API __declspec(dllexport)
#else
#define WSEG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  WSEG_OK = 0,
  WSEG_ERR_VALIDATION = 1,
  WSEG_ERR_IO = 2,
  WSEG_ERR_CONFIG = 3,
  WSEG_ERR_NO_ANALYSIS = 4,
  WSEG_ERR_ARGUMENT = 5,
  WSEG_ERR_INTERNAL = 6
} wseg_status;

typedef enum {
  WSEG_ALGO_ST = 0, /* least-cost path through the model */
  WSEG_ALGO_GR = 1, /* longest dictionary match */
  WSEG_ALGO_AG = 2  /* shortest dictionary match */
} wseg_algorithm;

typedef struct wseg_settings wseg_settings;
typedef struct wseg_model wseg_model;
typedef struct wseg_result wseg_result;

WSEG_API const char *wseg_last_error(void);
WSEG_API const char *wseg_version(void);
WSEG_API void wseg_string_free(char *s);

/* Settings: the constants documented in config.h. */
WSEG_API wseg_status wseg_settings_new(wseg_settings **out);
WSEG_API void wseg_settings_free(wseg_settings *settings);
WSEG_API wseg_status wseg_settings_set(wseg_settings *settings,
                                       const char *key, const char *value);
WSEG_API wseg_status wseg_settings_load(wseg_settings *settings,
                                        const char *path);

/* Input files for a model. lexicon and fallback are required; each other
 * component is enabled by giving its path. */
typedef struct {
  const char *lexicon;
  const char *fallback;
  const char *affix_rules;
  const char *seen_derived;
  const char *name_model;
  const char *translit_model;
} wseg_model_paths;

WSEG_API wseg_status wseg_model_build(const wseg_model_paths *paths,
                                      const wseg_settings *settings,
                                      wseg_model **out);
WSEG_API wseg_status wseg_model_save(const wseg_model *model, const char *path);
WSEG_API wseg_status wseg_model_load(const char *path, wseg_model **out);
WSEG_API void wseg_model_free(wseg_model *model);

/* One sentence. */
WSEG_API wseg_status wseg_segment(const wseg_model *model,
                                  wseg_algorithm algorithm,
                                  const char *sentence, wseg_result **out);

typedef struct {
  const char *surface;
  const char *category;
  const char *pronunciation; /* syllables joined by spaces */
  const char *affix;         /* empty unless derived */
  double cost;
  size_t start;
  size_t end;
} wseg_word;

WSEG_API size_t wseg_result_size(const wseg_result *result);
WSEG_API double wseg_result_total_cost(const wseg_result *result);
/* Pointers in *out stay valid until the result is freed. */
WSEG_API wseg_status wseg_result_word(const wseg_result *result, size_t index,
                                      wseg_word *out);
WSEG_API void wseg_result_free(wseg_result *result);

/* Segments every line of text with `jobs` worker threads (0 or 1 for one)
 * and formats the output in input order. format: plain, tagged, tsv or
 * spans. */
WSEG_API wseg_status wseg_segment_text(const wseg_model *model,
                                       wseg_algorithm algorithm,
                                       const char *format, const char *text,
                                       unsigned jobs, char **out);

/* Training. Inputs are file contents; names label error messages. */
WSEG_API wseg_status wseg_name_train(const char *counts_tsv,
                                     const char *counts_name,
                                     const char *radicals_tsv,
                                     const char *radicals_name,
                                     const wseg_settings *settings, char **out);
WSEG_API wseg_status wseg_translit_train(const char *names_text,
                                         const char *names_name,
                                         const wseg_settings *settings,
                                         char **out);

/* Evaluation over judge files ("a|b|c" lines). Emits the similarity and
 * distance matrices as CSV. */
WSEG_API wseg_status wseg_eval_judges(const char *const *contents,
                                      const char *const *ids, size_t count,
                                      char **similarity_csv,
                                      char **distance_csv);
/* Span scores over "sentence<TAB>start<TAB>end<TAB>tag" files. */
WSEG_API wseg_status wseg_eval_names(const char *system_tsv,
                                     const char *gold_tsv, char **report);
WSEG_API wseg_status wseg_eval_affixes(const char *system_tsv,
                                       const char *gold_tsv, char **report);
/* Classical MDS of a distance CSV. *truncated is set to 1 when fewer than
 * k positive eigenvalues exist. */
WSEG_API wseg_status wseg_mds(const char *distance_csv, size_t k,
                              char **coordinates_csv, char **svg,
                              int *truncated);

#ifdef __cplusplus
}
#endif

#endif /* WSEG_WSEG_H_ */
