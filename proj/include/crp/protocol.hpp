#pragma once

#include "crp/crc.hpp"
#include "crp/dataset.hpp"
#include "crp/learners.hpp"
#include "crp/metrics.hpp"

#include <string>
#include <vector>

namespace crp {

struct ProtocolConfig {
    LearnerConfig learner;
    SplitPlan plan;
    PreprocessScope scope = PreprocessScope::train_only;
    int grid_intervals = kDefaultGridIntervals;
    double loose_tolerance = kDefaultLooseTolerance;
};

struct SeedRunResult {
    std::uint64_t seed = 0;
    long n_train = 0;
    long n_test = 0;
    ForecastScore forecast_score;
    CrcCurve curve;
    CalibrationVerdict verdict;
};

struct ProtocolMeans {
    double error_rate_percent = 0.0;
    double square_loss = 0.0;
    double crc_err_above_area = 0.0;
    double crc_avg_width_area = 0.0;
    // Derived from the mean deviation area, mirroring Table 2's per-cell
    // calibration highlight.
    bool strict_calibrated = false;
    bool loose_calibrated = false;
};

struct ProtocolResult {
    std::vector<SeedRunResult> per_seed;
    ProtocolMeans means;
};

// Per seed: split, preprocess, train, forecast the test rows, score and
// build the CRC curve; then arithmetic means over seeds.
ProtocolResult run_protocol(const Dataset& data, const ProtocolConfig& config);

std::string write_protocol_report_json(const ProtocolResult& result, const Dataset& data,
                                       const ProtocolConfig& config);

} // namespace crp
