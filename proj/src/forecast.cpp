#include "crp/forecast.hpp"

#include "crp/error.hpp"
#include "crp/util.hpp"

#include <algorithm>
#include <cmath>

namespace crp {

int LabelSpace::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

ForecastVector make_forecast(std::string example_id, std::vector<double> probs,
                             std::optional<int> true_label) {
    if (probs.size() < 2) {
        fail_validation("forecast " + example_id + ": needs at least 2 labels");
    }
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            fail_validation("forecast " + example_id + ": probability " + fmt_double(p) +
                            " outside [0,1]");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kNormalizationWindow) {
        fail_validation("forecast " + example_id + ": probabilities sum to " + fmt_double(sum) +
                        ", outside the accepted window around 1");
    }
    for (double& p : probs) p /= sum;
    if (true_label && (*true_label < 0 || *true_label >= static_cast<int>(probs.size()))) {
        fail_validation("forecast " + example_id + ": true label index out of range");
    }
    return ForecastVector{std::move(example_id), std::move(probs), true_label};
}

bool RegionPrediction::contains(int label) const {
    return std::find(members.begin(), members.end(), label) != members.end();
}

std::vector<std::pair<int, double>> sort_forecasts(const ForecastVector& f) {
    std::vector<std::pair<int, double>> order;
    order.reserve(f.probs.size());
    for (std::size_t i = 0; i < f.probs.size(); ++i) {
        order.emplace_back(static_cast<int>(i), f.probs[i]);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    return order;
}

RegionPrediction build_region(const ForecastVector& f, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) {
        fail_validation("delta " + fmt_double(delta) + " outside [0,1]");
    }
    auto order = sort_forecasts(f);
    int n = static_cast<int>(order.size());

    // j = argmax_k { sum_{l<k} p_(l) < delta }, 1-based over the ascending
    // order; the strict inequality matters (prefix exactly equal to delta
    // does not admit k). With delta = 0 no k qualifies: full label set.
    int j = 0;
    double prefix = 0.0;
    double excluded = 0.0;
    for (int k = 1; k <= n; ++k) {
        if (prefix < delta) {
            j = k;
            excluded = prefix;
        }
        prefix += order[k - 1].second;
    }

    RegionPrediction region;
    region.example_id = f.example_id;
    region.delta = delta;
    region.num_labels = n;
    if (j == 0) {
        region.excluded_mass = 0.0;
        for (const auto& [label, p] : order) region.members.push_back(label);
    } else {
        region.excluded_mass = excluded;
        for (int k = j; k <= n; ++k) region.members.push_back(order[k - 1].first);
    }
    return region;
}

std::vector<RegionPrediction> build_regions_batch(const std::vector<ForecastVector>& forecasts,
                                                  double delta) {
    std::vector<RegionPrediction> regions;
    regions.reserve(forecasts.size());
    for (const auto& f : forecasts) {
        try {
            regions.push_back(build_region(f, delta));
        } catch (const Error& e) {
            throw Error(e.kind(), "example " + f.example_id + ": " + e.what());
        }
    }
    return regions;
}

} // namespace crp
