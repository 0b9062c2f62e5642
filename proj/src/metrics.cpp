#include "crp/metrics.hpp"

#include "crp/error.hpp"
#include "crp/util.hpp"

namespace crp {

int err_indicator(const RegionPrediction& region, int true_label) {
    if (true_label < 0 || true_label >= region.num_labels) {
        fail_validation("true label index " + std::to_string(true_label) +
                        " outside label space of size " + std::to_string(region.num_labels));
    }
    return region.contains(true_label) ? 0 : 1;
}

double unc_fraction(const RegionPrediction& region) {
    return static_cast<double>(region.members.size()) / static_cast<double>(region.num_labels);
}

RegionScore score_regions(const std::vector<RegionPrediction>& regions,
                          const std::vector<int>& true_labels) {
    if (regions.size() != true_labels.size()) {
        fail_validation("regions/labels length mismatch: " + std::to_string(regions.size()) +
                        " vs " + std::to_string(true_labels.size()));
    }
    if (regions.empty()) fail_validation("cannot score an empty batch");
    double err_sum = 0.0;
    double unc_sum = 0.0;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        if (regions[i].delta != regions[0].delta) {
            fail_validation("mixed deltas in one batch: " + fmt_double(regions[i].delta) +
                            " vs " + fmt_double(regions[0].delta));
        }
        if (regions[i].num_labels != regions[0].num_labels) {
            fail_validation("mixed label spaces in one batch");
        }
        err_sum += err_indicator(regions[i], true_labels[i]);
        unc_sum += unc_fraction(regions[i]);
    }
    RegionScore score;
    score.n = static_cast<long>(regions.size());
    score.delta = regions[0].delta;
    score.err_fraction = err_sum / static_cast<double>(score.n);
    score.avg_width = unc_sum / static_cast<double>(score.n);
    return score;
}

int argmax_label(const ForecastVector& f) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(f.probs.size()); ++i) {
        if (f.probs[i] > f.probs[best]) best = i;
    }
    return best;
}

double error_rate(const std::vector<ForecastVector>& forecasts) {
    if (forecasts.empty()) fail_validation("cannot score an empty batch");
    long wrong = 0;
    for (const auto& f : forecasts) {
        if (!f.true_label) fail_validation("forecast " + f.example_id + " has no true label");
        if (argmax_label(f) != *f.true_label) ++wrong;
    }
    return 100.0 * static_cast<double>(wrong) / static_cast<double>(forecasts.size());
}

double square_loss(const std::vector<ForecastVector>& forecasts) {
    if (forecasts.empty()) fail_validation("cannot score an empty batch");
    double total = 0.0;
    for (const auto& f : forecasts) {
        if (!f.true_label) fail_validation("forecast " + f.example_id + " has no true label");
        double s = 0.0;
        for (int j = 0; j < static_cast<int>(f.probs.size()); ++j) {
            double d = f.probs[j] - (j == *f.true_label ? 1.0 : 0.0);
            s += d * d;
        }
        total += s;
    }
    return total / static_cast<double>(forecasts.size());
}

} // namespace crp
