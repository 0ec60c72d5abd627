/* C interface of the visbench library. */
#ifndef VISBENCH_H
#define VISBENCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(VB_BUILDING_LIBRARY)
#define VB_API __attribute__((visibility("default")))
#else
#define VB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vb_status {
  VB_OK = 0,
  VB_ERR_VALIDATION = 1,
  VB_ERR_IO = 2,
  VB_ERR_INTERNAL = 3
} vb_status;

typedef enum vb_format { VB_FORMAT_CSV = 0, VB_FORMAT_MARKDOWN = 1, VB_FORMAT_SVG = 2 } vb_format;

typedef enum vb_category { VB_SPOT_ON = 0, VB_CLOSE = 1, VB_WILD_GUESS = 2 } vb_category;

typedef enum vb_survey_kind { VB_SURVEY_LONDON = 0, VB_SURVEY_VOLVIS = 1 } vb_survey_kind;

typedef struct vb_pmf vb_pmf;
typedef struct vb_survey vb_survey;
typedef struct vb_criteria_table vb_criteria_table;

/* Strings returned through `char**` are owned by the caller; release them
   with vb_string_free. Handles are released with their *_free function.
   Every failing call sets a thread-local message. */
VB_API const char* vb_version(void);
VB_API const char* vb_last_error_message(void);
VB_API void vb_string_free(char* s);

VB_API vb_status vb_parse_format(const char* text, vb_format* out);
/* VISBENCH_PRECISION when set, otherwise 3. */
VB_API vb_status vb_default_precision(int* out);
VB_API vb_status vb_format_number(double value, int precision, char** out);

/* PMFs. `labels` may be NULL for "1".."n". */
VB_API vb_status vb_pmf_create(const double* probs, size_t n, const char* const* labels, vb_pmf** out);
VB_API vb_status vb_pmf_read(const char* path, vb_pmf** out);
VB_API vb_status vb_pmf_london(int xi, int n, vb_pmf** out);
VB_API void vb_pmf_free(vb_pmf* pmf);
VB_API size_t vb_pmf_size(const vb_pmf* pmf);
VB_API vb_status vb_pmf_get(const vb_pmf* pmf, size_t index, double* out);

/* Measures, in bits. `measure` uses the spellings kl, js, new:<k>,
   ncm:<k>, mink:<k>, each with an optional @<scale>. */
VB_API vb_status vb_entropy(const vb_pmf* p, double* out);
VB_API vb_status vb_max_entropy(size_t n, double* out);
VB_API vb_status vb_cross_entropy(const vb_pmf* p, const vb_pmf* q, double* out);
VB_API vb_status vb_kl(const vb_pmf* p, const vb_pmf* q, double* out);
/* `per_letter` may be NULL, otherwise it holds vb_pmf_size(p) values.
   `finite` (may be NULL) is 0 for an infinite KL, whose per-letter
   values are left untouched. */
VB_API vb_status vb_divergence(const char* measure, const vb_pmf* p, const vb_pmf* q, double* total,
                               double* per_letter, int* finite);
VB_API vb_status vb_benefit(const char* measure, const vb_pmf* input, const vb_pmf* output, const vb_pmf* recon,
                            double* ac, double* pd, double* benefit);
VB_API vb_status vb_cost_benefit_ratio(double benefit, double cost, double* out);
VB_API vb_status vb_categorize(int answer, int xi, int n, vb_category* out);

/* Reports. `measures` may be NULL with `measure_count` 0 for the five
   bounded candidates. */
VB_API vb_status vb_report_entropy(const char* const* paths, size_t count, vb_format format, int precision,
                                   char** out);
VB_API vb_status vb_report_divergence(const char* const* measures, size_t measure_count, const char* p_path,
                                      const char* q_path, int decompose, vb_format format, int precision,
                                      char** out);
/* Measures default to the manifest's measure, else the candidates. */
VB_API vb_status vb_report_benefit(const char* manifest_path, const char* const* measures, size_t measure_count,
                                   vb_format format, int precision, char** out);

VB_API size_t vb_scenario_count(void);
VB_API const char* vb_scenario_name(size_t index);
VB_API vb_status vb_report_scenario(const char* name, int xi, const char* const* measures, size_t measure_count,
                                    vb_format format, int precision, char** out);
/* Writes <out_dir>/<name>_<pmf>.csv for every PMF of the scenario; `log`
   (may be NULL) receives the written paths, one per line. */
VB_API vb_status vb_scenario_export(const char* name, int xi, const char* out_dir, char** log);

VB_API vb_status vb_survey_read(const char* path, vb_survey_kind kind, vb_survey** out);
VB_API void vb_survey_free(vb_survey* survey);
VB_API size_t vb_survey_size(const vb_survey* survey);
VB_API vb_status vb_survey_question_stats(const vb_survey* survey, int question, double* mean, double* min,
                                          double* max, double* mean_time);
/* `overrides_path` may be NULL; ignored for volume visualization surveys. */
VB_API vb_status vb_report_survey(const vb_survey* survey, const char* overrides_path, const char* const* measures,
                                  size_t measure_count, vb_format format, int precision, char** out);

VB_API vb_status vb_criteria_table_builtin(vb_criteria_table** out);
VB_API vb_status vb_criteria_table_read(const char* path, vb_criteria_table** out);
VB_API void vb_criteria_table_free(vb_criteria_table* table);
VB_API size_t vb_criteria_table_measures(const vb_criteria_table* table);
/* `sums` and `present` hold one entry per measure; present[i] is 0 for a
   measure eliminated before the end of `range` ("1", "2-5", "1-5", ...). */
VB_API vb_status vb_mcda_stage_sums(const vb_criteria_table* table, const char* range, int* sums, int* present);
/* `weights` may be NULL, otherwise "critical=4,important=2,helpful=1". */
VB_API vb_status vb_report_mcda(const vb_criteria_table* table, const char* weights, vb_format format,
                                int precision, char** out);

/* `directions` may be NULL for e,ne,se; `max_bends` < 0 means no cap. */
VB_API vb_status vb_grid_paths(int n, int max_turn, const char* directions, int monotone, int max_bends,
                               uint64_t* count);
VB_API vb_status vb_report_grid_paths(int n, int max_turn, const char* directions, int monotone, int max_bends,
                                      int list_paths, vb_format format, int precision, char** out);

/* Writes every check file into `out_dir`; `failures` receives the number
   of failing checks and `log` (may be NULL) one line per file. */
VB_API vb_status vb_reproduce(const char* data_dir, const char* out_dir, int* failures, char** log);

#ifdef __cplusplus
}
#endif

#endif
