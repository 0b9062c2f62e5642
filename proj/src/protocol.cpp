#include "crp/protocol.hpp"

#include "crp/error.hpp"
#include "crp/util.hpp"

#include <json.hpp>

namespace crp {

ProtocolResult run_protocol(const Dataset& data, const ProtocolConfig& config) {
    if (config.plan.seeds.empty()) fail_validation("protocol: no seeds given");
    ProtocolResult result;
    for (std::uint64_t seed : config.plan.seeds) {
        try {
            auto [train_raw, test_raw] = split_dataset(data, config.plan, seed);
            auto [train, test] = preprocess(train_raw, test_raw, config.scope);
            auto forecasts = train_and_forecast(train, test, config.learner);

            SeedRunResult run;
            run.seed = seed;
            run.n_train = train.n();
            run.n_test = test.n();
            run.forecast_score.error_rate_percent = error_rate(forecasts);
            run.forecast_score.square_loss = square_loss(forecasts);
            run.forecast_score.n = test.n();
            run.curve = compute_crc_curve(forecasts, config.grid_intervals);
            run.verdict = make_verdict(run.curve, config.loose_tolerance);
            result.per_seed.push_back(std::move(run));
        } catch (const Error& e) {
            throw Error(e.kind(), "seed " + std::to_string(seed) + ": " + e.what());
        }
    }

    auto count = static_cast<double>(result.per_seed.size());
    for (const auto& run : result.per_seed) {
        result.means.error_rate_percent += run.forecast_score.error_rate_percent;
        result.means.square_loss += run.forecast_score.square_loss;
        result.means.crc_err_above_area += run.verdict.err_above_area;
        result.means.crc_avg_width_area += run.verdict.avg_width_area;
    }
    result.means.error_rate_percent /= count;
    result.means.square_loss /= count;
    result.means.crc_err_above_area /= count;
    result.means.crc_avg_width_area /= count;
    result.means.strict_calibrated = result.means.crc_err_above_area == 0.0;
    result.means.loose_calibrated = result.means.crc_err_above_area <= config.loose_tolerance;
    return result;
}

std::string write_protocol_report_json(const ProtocolResult& result, const Dataset& data,
                                       const ProtocolConfig& config) {
    nlohmann::ordered_json j;
    j["dataset"] = data.provenance_name;
    j["n"] = data.n();
    j["learner"] = config.learner.kind == LearnerKind::dwknn ? "dwknn" : "naivebayes";
    if (config.learner.kind == LearnerKind::dwknn) {
        j["k"] = config.learner.k;
    } else {
        j["variance_floor"] = config.learner.variance_floor;
        j["laplace_alpha"] = config.learner.laplace_alpha;
    }
    j["train_fraction"] = config.plan.train_fraction;
    j["preprocess_scope"] = config.scope == PreprocessScope::train_only ? "train" : "all";
    j["grid_intervals"] = config.grid_intervals;
    j["loose_tolerance"] = config.loose_tolerance;
    j["rng"] = kRngVersion;
    j["seeds"] = config.plan.seeds;

    j["per_seed"] = nlohmann::ordered_json::array();
    for (const auto& run : result.per_seed) {
        nlohmann::ordered_json s;
        s["seed"] = run.seed;
        s["n_train"] = run.n_train;
        s["n_test"] = run.n_test;
        s["error_rate_percent"] = run.forecast_score.error_rate_percent;
        s["square_loss"] = run.forecast_score.square_loss;
        s["crc_err_above_area"] = run.verdict.err_above_area;
        s["crc_avg_width_area"] = run.verdict.avg_width_area;
        s["strict_calibrated"] = run.verdict.strict_calibrated;
        s["loose_calibrated"] = run.verdict.loose_calibrated;
        j["per_seed"].push_back(std::move(s));
    }
    nlohmann::ordered_json m;
    m["error_rate_percent"] = result.means.error_rate_percent;
    m["square_loss"] = result.means.square_loss;
    m["crc_err_above_area"] = result.means.crc_err_above_area;
    m["crc_avg_width_area"] = result.means.crc_avg_width_area;
    m["strict_calibrated"] = result.means.strict_calibrated;
    m["loose_calibrated"] = result.means.loose_calibrated;
    j["mean"] = std::move(m);
    return j.dump(2) + "\n";
}

} // namespace crp
