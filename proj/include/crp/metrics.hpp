#pragma once

#include "crp/forecast.hpp"

#include <vector>

namespace crp {

struct RegionScore {
    double err_fraction = 0.0; // Err_N at this delta
    double avg_width = 0.0;    // Unc_N at this delta
    double delta = 0.0;
    long n = 0;
};

struct ForecastScore {
    double error_rate_percent = 0.0;
    double square_loss = 0.0;
    long n = 0;
};

// Eq. 2: 1 iff the true label is outside the region.
int err_indicator(const RegionPrediction& region, int true_label);

// Eq. 3: fraction of all labels included in the region.
double unc_fraction(const RegionPrediction& region);

// Eq. 4: arithmetic means of the two indicators. All regions must share one
// delta and label-space size, and lengths must match.
RegionScore score_regions(const std::vector<RegionPrediction>& regions,
                          const std::vector<int>& true_labels);

// Ties broken by lowest label index, matching sort_forecasts.
int argmax_label(const ForecastVector& f);

// Percent of examples whose argmax label differs from the true label.
double error_rate(const std::vector<ForecastVector>& forecasts);

// Brier score: mean over examples of sum_j (p_j - 1{true=j})^2.
double square_loss(const std::vector<ForecastVector>& forecasts);

} // namespace crp
