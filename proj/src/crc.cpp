#include "crp/crc.hpp"

#include "crp/error.hpp"
#include "crp/metrics.hpp"

namespace crp {

CrcCurve compute_crc_curve(const std::vector<ForecastVector>& forecasts, int grid_intervals) {
    if (grid_intervals < 2) fail_validation("grid intervals must be >= 2");
    if (forecasts.empty()) fail_validation("cannot build a CRC curve from an empty batch");
    std::vector<int> true_labels;
    true_labels.reserve(forecasts.size());
    for (const auto& f : forecasts) {
        if (!f.true_label) {
            fail_validation("forecast " + f.example_id + " has no true label");
        }
        true_labels.push_back(*f.true_label);
    }

    CrcCurve curve;
    curve.n = static_cast<long>(forecasts.size());
    for (int i = 0; i <= grid_intervals; ++i) {
        double delta = static_cast<double>(i) / static_cast<double>(grid_intervals);
        auto regions = build_regions_batch(forecasts, delta);
        RegionScore score = score_regions(regions, true_labels);
        curve.grid_deltas.push_back(delta);
        curve.err_at.push_back(score.err_fraction);
        curve.unc_at.push_back(score.avg_width);
    }
    return curve;
}

namespace {

void check_curve(const CrcCurve& curve) {
    if (curve.grid_deltas.size() < 2 || curve.grid_deltas.size() != curve.err_at.size() ||
        curve.grid_deltas.size() != curve.unc_at.size()) {
        fail_validation("malformed CRC curve");
    }
}

} // namespace

double err_above_area(const CrcCurve& curve) {
    check_curve(curve);
    double area = 0.0;
    for (std::size_t i = 1; i < curve.grid_deltas.size(); ++i) {
        double x0 = curve.grid_deltas[i - 1];
        double x1 = curve.grid_deltas[i];
        double g0 = curve.err_at[i - 1] - x0; // excess above the diagonal
        double g1 = curve.err_at[i] - x1;
        double w = x1 - x0;
        if (g0 >= 0.0 && g1 >= 0.0) {
            area += 0.5 * (g0 + g1) * w;
        } else if (g0 > 0.0 && g1 < 0.0) {
            double cross = g0 / (g0 - g1); // fraction of the interval until g hits 0
            area += 0.5 * g0 * cross * w;
        } else if (g0 < 0.0 && g1 > 0.0) {
            double cross = g1 / (g1 - g0);
            area += 0.5 * g1 * cross * w;
        }
        // both negative: no excess anywhere in the interval
    }
    return area;
}

double avg_width_area(const CrcCurve& curve) {
    check_curve(curve);
    double area = 0.0;
    for (std::size_t i = 1; i < curve.grid_deltas.size(); ++i) {
        double w = curve.grid_deltas[i] - curve.grid_deltas[i - 1];
        area += 0.5 * (curve.unc_at[i - 1] + curve.unc_at[i]) * w;
    }
    return area;
}

CalibrationVerdict make_verdict(const CrcCurve& curve, double loose_tolerance) {
    if (loose_tolerance < 0.0) fail_validation("loose tolerance must be >= 0");
    CalibrationVerdict v;
    v.err_above_area = err_above_area(curve);
    v.avg_width_area = avg_width_area(curve);
    v.loose_tolerance = loose_tolerance;
    v.strict_calibrated = v.err_above_area == 0.0;
    v.loose_calibrated = v.err_above_area <= loose_tolerance;
    return v;
}

} // namespace crp
