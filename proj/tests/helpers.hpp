#pragma once

#include "crp/forecast.hpp"
#include "crp/util.hpp"

#include <random>
#include <set>
#include <vector>

namespace crp::testing {

inline ForecastVector random_forecast(std::mt19937_64& rng, int num_labels,
                                      std::optional<int> true_label = std::nullopt) {
    std::vector<double> probs(static_cast<std::size_t>(num_labels));
    double total = 0.0;
    for (double& p : probs) {
        p = uniform01(rng) + 1e-12;
        total += p;
    }
    for (double& p : probs) p /= total;
    return make_forecast("r", std::move(probs), true_label);
}

// Regenerates until all probabilities are pairwise distinct, for properties
// whose statement assumes tie-free inputs.
inline ForecastVector random_tie_free_forecast(std::mt19937_64& rng, int num_labels) {
    while (true) {
        ForecastVector f = random_forecast(rng, num_labels);
        std::set<double> seen(f.probs.begin(), f.probs.end());
        if (static_cast<int>(seen.size()) == num_labels) return f;
    }
}

// Exhaustive Eq. 1 oracle: tries every suffix of the ascending order and
// keeps the one with the longest strictly-sub-delta excluded prefix.
inline RegionPrediction suffix_oracle(const ForecastVector& f, double delta) {
    auto order = sort_forecasts(f);
    int n = static_cast<int>(order.size());
    int best_j = 0;
    double best_excluded = 0.0;
    for (int j = 1; j <= n; ++j) {
        double prefix = 0.0;
        for (int l = 0; l < j - 1; ++l) prefix += order[static_cast<std::size_t>(l)].second;
        if (prefix < delta) {
            best_j = j;
            best_excluded = prefix;
        }
    }
    RegionPrediction region;
    region.example_id = f.example_id;
    region.delta = delta;
    region.num_labels = n;
    if (best_j == 0) {
        for (const auto& [label, p] : order) region.members.push_back(label);
        region.excluded_mass = 0.0;
    } else {
        for (int k = best_j; k <= n; ++k) {
            region.members.push_back(order[static_cast<std::size_t>(k - 1)].first);
        }
        region.excluded_mass = best_excluded;
    }
    return region;
}

} // namespace crp::testing
