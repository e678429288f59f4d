#ifndef RMAPS_RMAPS_H
#define RMAPS_RMAPS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RMAPS_API __declspec(dllexport)
#else
#define RMAPS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rmaps_status {
  RMAPS_OK = 0,
  RMAPS_E_PARAMETER = 1,
  RMAPS_E_CONTRACT = 2,
  RMAPS_E_RESOURCE = 3,
  RMAPS_E_INTERNAL = 4,
  RMAPS_E_PARSE = 5,
  RMAPS_E_NULL = 6,
  RMAPS_E_IO = 7
} rmaps_status;

typedef enum rmaps_format { RMAPS_FORMAT_JSON = 0, RMAPS_FORMAT_TSV = 1, RMAPS_FORMAT_TEXT = 2 } rmaps_format;

/* Budgets, worker count and the last error message. */
typedef struct rmaps_context rmaps_context;
/* A group parsed from a descriptor such as "pgl2:7" or "cell:pgl2:7,13". */
typedef struct rmaps_group rmaps_group;
/* Result of one command; rendered on demand. */
typedef struct rmaps_report rmaps_report;

typedef struct rmaps_family_options {
  /* Upper end of the row's search window; 0 selects the row default. */
  uint64_t max;
  /* Prime for rows C3, C4, C5, C7; 0 selects 3 (C3, C4) or 5 (C5, C7). */
  uint64_t r;
  /* Largest alpha and beta for rows C4 to C7; 0 selects 3. */
  uint64_t alpha_max;
  uint64_t beta_max;
} rmaps_family_options;

RMAPS_API const char* rmaps_version(void);
RMAPS_API const char* rmaps_status_name(int status);

RMAPS_API int rmaps_context_new(rmaps_context** out);
RMAPS_API void rmaps_context_free(rmaps_context* ctx);
/* Names: order_cap, census_cap, search_cap, aut_cap, homology_cap, matrix_cap, threads. */
RMAPS_API int rmaps_context_set_budget(rmaps_context* ctx, const char* name, uint64_t value);
/* Message of the most recent failing call on ctx; empty when none. */
RMAPS_API const char* rmaps_context_last_error(const rmaps_context* ctx);

RMAPS_API int rmaps_group_parse(rmaps_context* ctx, const char* descriptor, rmaps_group** out);
RMAPS_API void rmaps_group_free(rmaps_group* group);
/* Group order in decimal; release with rmaps_string_free. */
RMAPS_API int rmaps_group_order(rmaps_context* ctx, const rmaps_group* group, char** out);

RMAPS_API int rmaps_verify(rmaps_context* ctx, const rmaps_group* group, uint64_t m, uint64_t n, rmaps_report** out);
RMAPS_API int rmaps_census(rmaps_context* ctx, const rmaps_group* group, rmaps_report** out);
RMAPS_API int rmaps_family(rmaps_context* ctx, const char* row, const rmaps_family_options* options,
                           rmaps_report** out);
/* all != 0 adds the congruence rows and the PGL2 scan. */
RMAPS_API int rmaps_tables(rmaps_context* ctx, int all, rmaps_report** out);
RMAPS_API int rmaps_corollary(rmaps_context* ctx, uint64_t construct_cap, rmaps_report** out);
RMAPS_API int rmaps_cover_rank(rmaps_context* ctx, const rmaps_group* group, uint64_t m, uint64_t n, uint64_t r,
                               rmaps_report** out);
/* Abelianization of the smooth kernel for the triple of type (m, n). */
RMAPS_API int rmaps_smooth_homology(rmaps_context* ctx, const rmaps_group* group, uint64_t m, uint64_t n,
                                    rmaps_report** out);
/* matrix_text: "rows cols" followed by the entries in decimal. */
RMAPS_API int rmaps_snf(rmaps_context* ctx, const char* matrix_text, rmaps_report** out);
RMAPS_API int rmaps_scan_pgl(rmaps_context* ctx, uint64_t q_bound, rmaps_report** out);

/* 1 when every item passed, 0 otherwise. */
RMAPS_API int rmaps_report_passed(const rmaps_report* report);
RMAPS_API int rmaps_report_render(const rmaps_report* report, rmaps_format format, char** out);
RMAPS_API void rmaps_report_free(rmaps_report* report);

RMAPS_API void rmaps_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
