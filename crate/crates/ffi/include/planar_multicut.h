#ifndef PLANAR_MULTICUT_H
#define PLANAR_MULTICUT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PmcSeparatorMode {
  PMC_SEPARATOR_MODE_CYCLE = 0,
  PMC_SEPARATOR_MODE_HALF = 1,
} PmcSeparatorMode;

typedef enum PmcStatus {
  PMC_STATUS_OK = 0,
  PMC_STATUS_NULL_POINTER = 1,
  PMC_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed JSON or an invalid instance.
   */
  PMC_STATUS_PARSE = 3,
  PMC_STATUS_INVALID_CONFIG = 4,
  /**
   * Some pair is joined by uncuttable vertices.
   */
  PMC_STATUS_INFEASIBLE = 5,
  /**
   * The cut leaves a pair connected. Never expected.
   */
  PMC_STATUS_FEASIBILITY_CHECK_FAILED = 6,
  /**
   * Any other solver error.
   */
  PMC_STATUS_SOLVER = 7,
  PMC_STATUS_PANIC = 8,
} PmcStatus;

/**
 * A parsed instance.
 */
typedef struct PmcInstance PmcInstance;

/**
 * The result of one solve.
 */
typedef struct PmcReport PmcReport;

typedef struct PmcConfig {
  double delta;
  enum PmcSeparatorMode mode;
} PmcConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *pmc_last_error(void);

struct PmcConfig pmc_config_default(void);

/**
 * Parses an instance from NUL-terminated JSON text.
 *
 * # Safety
 * `json` must be null or a valid C string; `out` must be null or writable.
 */
enum PmcStatus pmc_instance_from_json(const char *json, struct PmcInstance **out);

/**
 * # Safety
 * `inst` must be null or a handle from [`pmc_instance_from_json`] not yet freed.
 */
void pmc_instance_free(struct PmcInstance *inst);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t pmc_instance_vertex_count(const struct PmcInstance *inst);

/**
 * Solves the LP and rounds it. A null `config` means the defaults.
 *
 * # Safety
 * `inst` must be a live handle, `config` null or valid, `out` writable.
 */
enum PmcStatus pmc_solve(const struct PmcInstance *inst,
                         const struct PmcConfig *config,
                         struct PmcReport **out);

/**
 * # Safety
 * `report` must be null or a handle from [`pmc_solve`] not yet freed.
 */
void pmc_report_free(struct PmcReport *report);

/**
 * Number of cut vertices, or 0 for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
size_t pmc_report_cut_len(const struct PmcReport *report);

/**
 * Copies up to `cap` cut vertex ids, ascending, into `buf` and returns the
 * full cut size.
 *
 * # Safety
 * `buf` must have room for `cap` values, or be null with `cap == 0`.
 */
size_t pmc_report_cut(const struct PmcReport *report, size_t *buf, size_t cap);

/**
 * Total cost of the cut, NaN for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
double pmc_report_cost(const struct PmcReport *report);

/**
 * LP optimum the cut was rounded from, NaN for a null handle.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
double pmc_report_lp_value(const struct PmcReport *report);

/**
 * The full report as JSON; free with [`pmc_string_free`]. Null on error.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
char *pmc_report_to_json(const struct PmcReport *report);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pmc_string_free(char *s);

/**
 * Writes whether deleting the `len` vertices at `cut` separates every pair.
 *
 * # Safety
 * `cut` must point to `len` ids (or be null with `len == 0`); `feasible`
 * must be writable.
 */
enum PmcStatus pmc_check_feasible(const struct PmcInstance *inst,
                                  const size_t *cut,
                                  size_t len,
                                  bool *feasible);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANAR_MULTICUT_H */
