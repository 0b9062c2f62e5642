#pragma once

#include <optional>
#include <string>
#include <vector>

namespace crp {

struct LabelSpace {
    std::vector<std::string> names;

    int size() const { return static_cast<int>(names.size()); }
    // Returns -1 when the name is not declared.
    int index_of(const std::string& name) const;
};

// Accepted deviation of sum(probs) from 1 before a vector is rejected.
// Published forecast tables carry rounding, e.g. rows summing to 0.9978.
inline constexpr double kNormalizationWindow = 5e-3;

struct ForecastVector {
    std::string example_id;
    std::vector<double> probs; // one entry per label, sums to 1 after validation
    std::optional<int> true_label;
};

// Validates entries in [0,1] and sum within the normalization window, then
// divides by the sum. Throws a validation Error otherwise.
ForecastVector make_forecast(std::string example_id, std::vector<double> probs,
                             std::optional<int> true_label);

struct RegionPrediction {
    std::string example_id;
    double delta = 0.0;
    int num_labels = 0;
    std::vector<int> members;  // ascending forecast probability (Eq. 1 suffix order)
    double excluded_mass = 0.0;

    bool contains(int label) const;
};

// All labels paired with their probabilities, ascending by probability,
// ties by ascending label index.
std::vector<std::pair<int, double>> sort_forecasts(const ForecastVector& f);

// Eq. 1: j is the largest k whose strict prefix mass is < delta; the region
// is the ascending-order suffix from j. delta = 0 yields the full label set.
RegionPrediction build_region(const ForecastVector& f, double delta);

std::vector<RegionPrediction> build_regions_batch(const std::vector<ForecastVector>& forecasts,
                                                  double delta);

} // namespace crp
