/*
 * C interface to the juristat library.
 *
 * Conventions:
 *  - Functions return JuristatStatus; JURISTAT_STATUS_OK means every output
 *    pointer was filled. On any other status the outputs are untouched and
 *    juristat_last_error_message() describes the failure for this thread.
 *  - JuristatSeries and JuristatReport are opaque; release them with their
 *    paired _free function. Strings returned through char** are NUL
 *    terminated UTF-8 owned by the caller; release with juristat_string_free.
 *  - No function keeps a reference to caller memory after it returns.
 */

#ifndef JURISTAT_H
#define JURISTAT_H

/* Generated by cbindgen from the juristat-ffi crate; regenerate with JURISTAT_FFI_REGEN=1 cargo test -p juristat-ffi, do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * The candidate forecasting models, in comparison order.
 */
typedef enum JuristatModel {
  JURISTAT_MODEL_AUTO_AR = 0,
  JURISTAT_MODEL_HOLT_WINTERS = 1,
  JURISTAT_MODEL_SEASONAL_NAIVE = 2,
  JURISTAT_MODEL_NNAR = 3,
} JuristatModel;

/**
 * Outcome of a call. Mirrors the library's stable error codes one to one,
 * with three conditions only the boundary itself can produce.
 */
typedef enum JuristatStatus {
  /**
   * Success; all out pointers were filled.
   */
  JURISTAT_STATUS_OK = 0,
  /**
   * A CSV data row could not be parsed.
   */
  JURISTAT_STATUS_MALFORMED_ROW = 1,
  /**
   * CSV dates are not strictly increasing at the expected stride.
   */
  JURISTAT_STATUS_NON_CONTIGUOUS = 2,
  /**
   * The input contained a header but no data rows.
   */
  JURISTAT_STATUS_EMPTY = 3,
  /**
   * A series is too short for the requested operation.
   */
  JURISTAT_STATUS_TOO_SHORT = 4,
  /**
   * Two sequences that must have equal lengths do not.
   */
  JURISTAT_STATUS_LENGTH_MISMATCH = 5,
  /**
   * Panel sizes must be odd so a strict majority always exists.
   */
  JURISTAT_STATUS_EVEN_PANEL = 6,
  /**
   * The panel-size search hit its cap before reaching the target.
   */
  JURISTAT_STATUS_CAP_EXCEEDED = 7,
  /**
   * More convictions than accusations.
   */
  JURISTAT_STATUS_INCONSISTENT = 8,
  /**
   * A conviction rate needs at least one accused person.
   */
  JURISTAT_STATUS_ZERO_ACCUSED = 9,
  /**
   * Every prior-likelihood product is zero.
   */
  JURISTAT_STATUS_ZERO_EVIDENCE = 10,
  /**
   * An argument fell outside its documented range.
   */
  JURISTAT_STATUS_OUT_OF_RANGE = 11,
  /**
   * A term occurs in no document or in every document.
   */
  JURISTAT_STATUS_DEGENERATE_TERM = 12,
  /**
   * The continuity correction absorbs the whole deviation.
   */
  JURISTAT_STATUS_CORRECTION_DOMINATES = 13,
  /**
   * A regression design matrix with no usable solution.
   */
  JURISTAT_STATUS_SINGULAR_DESIGN = 14,
  /**
   * Every candidate model was demoted during selection.
   */
  JURISTAT_STATUS_ALL_MODELS_FAILED = 15,
  /**
   * CSV serialization only covers monthly and yearly cadences.
   */
  JURISTAT_STATUS_UNSUPPORTED_FREQUENCY = 16,
  /**
   * A precondition on plain arguments was violated.
   */
  JURISTAT_STATUS_INVALID_INPUT = 17,
  /**
   * A file path did not resolve.
   */
  JURISTAT_STATUS_FILE_NOT_FOUND = 18,
  /**
   * An underlying I/O operation failed.
   */
  JURISTAT_STATUS_IO_FAILURE = 19,
  /**
   * A required pointer argument was NULL.
   */
  JURISTAT_STATUS_NULL_POINTER = 20,
  /**
   * The library panicked; state is consistent but the call did nothing.
   */
  JURISTAT_STATUS_PANIC = 21,
} JuristatStatus;

/**
 * An owned model-comparison report. Opaque; create with `juristat_fits`,
 * release with `juristat_report_free`.
 */
typedef struct JuristatReport JuristatReport;

/**
 * An owned time series. Opaque; create with `juristat_series_parse_csv` or
 * `juristat_series_from_values`, release with `juristat_series_free`.
 */
typedef struct JuristatSeries JuristatSeries;

/**
 * Options for `juristat_fits`. Obtain a baseline from
 * `juristat_fits_options_default` and override fields as needed.
 */
typedef struct JuristatFitsOptions {
  /**
   * Leading fraction of the series used for training, in (0, 1).
   */
  double train_fraction;
  /**
   * Forecast horizon; 0 means "the holdout length".
   */
  size_t steps;
  /**
   * Keep only this many trailing points before splitting.
   */
  size_t max_points;
  /**
   * Base seed for the randomized candidate.
   */
  uint64_t seed;
  /**
   * Attach residual-bootstrap intervals when the winner supports them.
   */
  bool intervals;
  /**
   * Fit the candidates on one thread each instead of sequentially.
   */
  bool parallel;
} JuristatFitsOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message from this thread's most recent failing call, or NULL
 * if none has failed yet. The pointer stays valid until the next failing
 * call on the same thread; do not free it.
 */
const char *juristat_last_error_message(void);

/**
 * Frees a string returned by this library. NULL is a no-op.
 *
 * # Safety
 * `s` must be NULL or a pointer previously returned through a `char**` out
 * parameter of this library, not yet freed.
 */
void juristat_string_free(char *s);

/**
 * Parses CSV text (`yearMonth,count` header, day-01 dates, contiguous
 * periods) into a new series handle.
 *
 * # Safety
 * `text` must point to a NUL-terminated byte string; `out` must be a valid
 * writable slot.
 */
enum JuristatStatus juristat_series_parse_csv(const char *text, struct JuristatSeries **out);

/**
 * Builds a series from raw values.
 *
 * # Safety
 * `values` must point to `len` readable doubles; `out` must be a valid
 * writable slot.
 */
enum JuristatStatus juristat_series_from_values(const double *values,
                                                size_t len,
                                                int32_t start_year,
                                                uint32_t start_period,
                                                uint32_t frequency,
                                                struct JuristatSeries **out);

/**
 * Number of points in the series; 0 for NULL.
 *
 * # Safety
 * `series` must be NULL or a live series handle.
 */
size_t juristat_series_len(const struct JuristatSeries *series);

/**
 * Periods per year (12 monthly, 1 yearly); 0 for NULL.
 *
 * # Safety
 * `series` must be NULL or a live series handle.
 */
uint32_t juristat_series_frequency(const struct JuristatSeries *series);

/**
 * First period of the series.
 *
 * # Safety
 * `series` must be a live series handle; `out_year` and `out_period` must
 * be valid writable slots.
 */
enum JuristatStatus juristat_series_start(const struct JuristatSeries *series,
                                          int32_t *out_year,
                                          uint32_t *out_period);

/**
 * Copies the series values into `buf`, which must hold exactly
 * `juristat_series_len` doubles.
 *
 * # Safety
 * `series` must be a live series handle; `buf` must point to `len` writable
 * doubles.
 */
enum JuristatStatus juristat_series_copy_values(const struct JuristatSeries *series,
                                                double *buf,
                                                size_t len);

/**
 * Serializes the series back to CSV. The returned string is owned by the
 * caller; free with `juristat_string_free`.
 *
 * # Safety
 * `series` must be a live series handle; `out` must be a valid writable
 * slot.
 */
enum JuristatStatus juristat_series_to_csv(const struct JuristatSeries *series, char **out);

/**
 * Releases a series handle. NULL is a no-op.
 *
 * # Safety
 * `series` must be NULL or a live series handle, not yet freed.
 */
void juristat_series_free(struct JuristatSeries *series);

/**
 * Probability that an n-member panel of independent jurors, each correct
 * with probability `theta`, reaches the correct majority verdict.
 *
 * # Safety
 * `out` must be a valid writable slot.
 */
enum JuristatStatus juristat_majority_prob(uint64_t n, double theta, double *out);

/**
 * Monte Carlo counterpart of `juristat_majority_prob`, simulating `trials`
 * panels from the given seed.
 *
 * # Safety
 * `out` must be a valid writable slot.
 */
enum JuristatStatus juristat_majority_prob_mc(uint64_t n,
                                              double theta,
                                              uint64_t trials,
                                              uint64_t seed,
                                              double *out);

/**
 * Smallest odd panel size whose majority reliability reaches `target`.
 *
 * # Safety
 * `out` must be a valid writable slot.
 */
enum JuristatStatus juristat_min_panel_size(double theta, double target, uint64_t *out);

/**
 * Negligence comparison: liable when `burden < probability * loss`.
 *
 * # Safety
 * `out_liable` and `out_expected_harm` must be valid writable slots.
 */
enum JuristatStatus juristat_hand_rule(double burden,
                                       double probability,
                                       double loss,
                                       bool *out_liable,
                                       double *out_expected_harm);

/**
 * Expected revenue lost per business day of an out-of-service practice.
 * `out_text` may be NULL when only the number is wanted; otherwise it
 * receives the report sentence (free with `juristat_string_free`).
 *
 * # Safety
 * `out_value` must be a valid writable slot; `out_text` must be NULL or a
 * valid writable slot.
 */
enum JuristatStatus juristat_expected_daily_loss(double consultations_per_month,
                                                 double hire_rate,
                                                 double avg_ticket,
                                                 double business_days,
                                                 double *out_value,
                                                 char **out_text);

/**
 * Fraction of accused persons convicted.
 *
 * # Safety
 * `out` must be a valid writable slot.
 */
enum JuristatStatus juristat_conviction_rate(uint64_t convicted, uint64_t accused, double *out);

/**
 * Association between two index terms: `a` and `b` document frequencies,
 * `f` co-occurrences, `n` documents. `out_negative` is set when the terms
 * co-occur less than independence would predict.
 *
 * # Safety
 * `out_magnitude` and `out_negative` must be valid writable slots.
 */
enum JuristatStatus juristat_stiles_association(uint64_t a,
                                                uint64_t b,
                                                uint64_t f,
                                                uint64_t n,
                                                double *out_magnitude,
                                                bool *out_negative);

/**
 * The options `juristat_fits` uses when given NULL.
 */
struct JuristatFitsOptions juristat_fits_options_default(void);

/**
 * Compares the candidate models on a holdout split of `series` and
 * forecasts with the winner. `options` may be NULL for the defaults.
 *
 * # Safety
 * `series` must be a live series handle; `options` must be NULL or point to
 * a readable options struct; `out` must be a valid writable slot.
 */
enum JuristatStatus juristat_fits(const struct JuristatSeries *series,
                                  const struct JuristatFitsOptions *options,
                                  struct JuristatReport **out);

/**
 * Winner of the comparison.
 *
 * # Safety
 * `report` must be a live report handle; `out` must be a valid writable
 * slot.
 */
enum JuristatStatus juristat_report_best_model(const struct JuristatReport *report,
                                               enum JuristatModel *out);

/**
 * Holdout mean squared error of one candidate. Fails with
 * `JURISTAT_STATUS_INVALID_INPUT` when the candidate was dropped from the
 * comparison.
 *
 * # Safety
 * `report` must be a live report handle; `model` must be a valid enum
 * value; `out` must be a valid writable slot.
 */
enum JuristatStatus juristat_report_mse(const struct JuristatReport *report,
                                        enum JuristatModel model,
                                        double *out);

/**
 * Number of point forecasts in the report; 0 for NULL.
 *
 * # Safety
 * `report` must be NULL or a live report handle.
 */
size_t juristat_report_forecast_len(const struct JuristatReport *report);

/**
 * First forecast period (the one after the observed series ends).
 *
 * # Safety
 * `report` must be a live report handle; `out_year` and `out_period` must
 * be valid writable slots.
 */
enum JuristatStatus juristat_report_forecast_start(const struct JuristatReport *report,
                                                   int32_t *out_year,
                                                   uint32_t *out_period);

/**
 * Copies the point forecasts into `buf`, which must hold exactly
 * `juristat_report_forecast_len` doubles.
 *
 * # Safety
 * `report` must be a live report handle; `buf` must point to `len` writable
 * doubles.
 */
enum JuristatStatus juristat_report_forecast_values(const struct JuristatReport *report,
                                                    double *buf,
                                                    size_t len);

/**
 * Whether the report carries prediction intervals.
 *
 * # Safety
 * `report` must be NULL or a live report handle.
 */
bool juristat_report_has_intervals(const struct JuristatReport *report);

/**
 * Copies the interval bounds into two buffers of exactly
 * `juristat_report_forecast_len` doubles each. Fails with
 * `JURISTAT_STATUS_INVALID_INPUT` when the report carries no intervals.
 *
 * # Safety
 * `report` must be a live report handle; `lower` and `upper` must each
 * point to `len` writable doubles.
 */
enum JuristatStatus juristat_report_intervals(const struct JuristatReport *report,
                                              double *lower,
                                              double *upper,
                                              size_t len);

/**
 * Serializes the whole report as JSON (the same document the CLI prints).
 * The returned string is owned by the caller; free with
 * `juristat_string_free`.
 *
 * # Safety
 * `report` must be a live report handle; `out` must be a valid writable
 * slot.
 */
enum JuristatStatus juristat_report_to_json(const struct JuristatReport *report, char **out);

/**
 * Releases a report handle. NULL is a no-op.
 *
 * # Safety
 * `report` must be NULL or a live report handle, not yet freed.
 */
void juristat_report_free(struct JuristatReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JURISTAT_H */
