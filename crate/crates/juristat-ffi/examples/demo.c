/* Minimal consumer of the juristat C API: builds a monthly series, runs the
 * model comparison, and prints the winner with its forecasts.
 *
 * Build (from the repository root, after `cargo build -p juristat-ffi`):
 *   cc examples/demo.c -Icrates/juristat-ffi/include \
 *      -L target/debug -ljuristat_ffi -lm -o demo
 *   LD_LIBRARY_PATH=target/debug ./demo
 */
#include <stdio.h>
#include <stdlib.h>

#include "juristat.h"

static const char *model_name(JuristatModel model) {
    switch (model) {
        case JURISTAT_MODEL_AUTO_AR: return "AUTO_AR";
        case JURISTAT_MODEL_HOLT_WINTERS: return "HOLT_WINTERS";
        case JURISTAT_MODEL_SEASONAL_NAIVE: return "SEASONAL_NAIVE";
        case JURISTAT_MODEL_NNAR: return "NNAR";
    }
    return "?";
}

static int check(JuristatStatus status, const char *what) {
    if (status != JURISTAT_STATUS_OK) {
        fprintf(stderr, "%s failed (%d): %s\n", what, (int)status,
                juristat_last_error_message());
        return 1;
    }
    return 0;
}

int main(void) {
    double p;
    if (check(juristat_majority_prob(3, 0.6, &p), "majority_prob")) return 1;
    printf("P(majority correct | n=3, theta=0.6) = %.3f\n", p);

    /* Two years of a repeating monthly pattern plus a little drift. */
    double values[48];
    for (int i = 0; i < 48; i++) {
        values[i] = 100.0 + 10.0 * (i % 12) + 0.5 * i;
    }
    JuristatSeries *series = NULL;
    if (check(juristat_series_from_values(values, 48, 2020, 1, 12, &series),
              "series_from_values")) {
        return 1;
    }

    JuristatReport *report = NULL;
    if (check(juristat_fits(series, NULL, &report), "fits")) {
        juristat_series_free(series);
        return 1;
    }

    JuristatModel best;
    juristat_report_best_model(report, &best);
    size_t len = juristat_report_forecast_len(report);
    printf("winner: %s, %zu forecasts\n", model_name(best), len);

    double *forecasts = malloc(len * sizeof(double));
    if (check(juristat_report_forecast_values(report, forecasts, len),
              "forecast_values")) {
        free(forecasts);
        juristat_report_free(report);
        juristat_series_free(series);
        return 1;
    }
    for (size_t h = 0; h < len && h < 4; h++) {
        printf("  step %zu: %.2f\n", h + 1, forecasts[h]);
    }

    free(forecasts);
    juristat_report_free(report);
    juristat_series_free(series);
    return 0;
}
