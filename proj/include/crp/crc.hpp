#pragma once

#include "crp/forecast.hpp"

#include <vector>

namespace crp {

struct CrcCurve {
    std::vector<double> grid_deltas; // ascending, endpoints 0 and 1
    std::vector<double> err_at;
    std::vector<double> unc_at;
    long n = 0;
};

struct CalibrationVerdict {
    double err_above_area = 0.0;
    double avg_width_area = 0.0;
    double loose_tolerance = 0.0;
    bool strict_calibrated = false;
    bool loose_calibrated = false;
};

inline constexpr int kDefaultGridIntervals = 100;
inline constexpr double kDefaultLooseTolerance = 1e-4;

// Scores regions at every delta of the uniform grid {0, 1/g, ..., 1}. Each
// grid point is an independent build_regions_batch + score_regions pass.
CrcCurve compute_crc_curve(const std::vector<ForecastVector>& forecasts, int grid_intervals);

// Area of max(0, err(delta) - delta): trapezium rule with the sign-crossing
// point of each interval interpolated linearly, so the clipped integral is
// exact for a piecewise-linear error curve. Zero iff err <= delta everywhere.
double err_above_area(const CrcCurve& curve);

// Trapezium-rule area under the width line over delta in [0,1].
double avg_width_area(const CrcCurve& curve);

CalibrationVerdict make_verdict(const CrcCurve& curve, double loose_tolerance);

} // namespace crp
