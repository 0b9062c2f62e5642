#pragma once

#include "crp/crc.hpp"
#include "crp/forecast.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace crp {

// Objects are uniform on [0,1]^object_dim; conditionals come from a fixed
// softmax-of-linear map (see kConditionalFamilyVersion). The emitted forecast
// is the true conditional, optionally temperature-transformed; true labels
// are always drawn from the true conditional.
struct SyntheticTask {
    int num_labels = 3;
    int object_dim = 4;
    std::uint64_t seed = 1;
    double temperature = 1.0; // 1 = Bayes-optimal forecasts
    // Overrides the family with one fixed conditional; test plumbing for the
    // degenerate constant-model cases.
    std::optional<std::vector<double>> constant_conditional;
};

inline constexpr const char* kConditionalFamilyVersion = "softmax-linear-v1";

struct BoundCheck {
    long n = 0;
    double delta = 0.0;
    double epsilon = 0.0;
    long trials = 0;
    double observed_failure_freq = 0.0;
    double bound = 0.0; // exp(-2 epsilon^2 n)
    bool pass = false;  // observed <= bound + 3-sigma binomial slack
    double mean_err = 0.0;
    // CRC areas over all trials' forecasts pooled into one batch.
    double pooled_err_above_area = 0.0;
    double pooled_avg_width_area = 0.0;
    bool pooled_strict_calibrated = false;
};

// The true conditional distribution for one object (before temperature).
std::vector<double> conditional_at(const SyntheticTask& task, const std::vector<double>& x);

// Sharpen (t < 1) or flatten (t > 1) via power-and-renormalize; t = 1 is an
// exact identity.
std::vector<double> apply_temperature(const std::vector<double>& probs, double temperature);

SyntheticTask perturb_forecaster(const SyntheticTask& task, double temperature);

std::vector<ForecastVector> sample_batch(const SyntheticTask& task, long n, std::uint64_t seed);

BoundCheck check_theorem1(const SyntheticTask& task, long n, double delta, double epsilon,
                          long trials, int pooled_grid_intervals = kDefaultGridIntervals);

std::string write_bound_check_json(const BoundCheck& check, const SyntheticTask& task);

} // namespace crp
