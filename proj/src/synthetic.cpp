#include "crp/synthetic.hpp"

#include "crp/error.hpp"
#include "crp/metrics.hpp"
#include "crp/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

namespace crp {

namespace {

void check_task(const SyntheticTask& task) {
    if (task.num_labels < 2) fail_validation("synthetic task: need at least 2 labels");
    if (task.object_dim < 1) fail_validation("synthetic task: need at least 1 object dimension");
    if (!(task.temperature > 0.0)) fail_validation("synthetic task: temperature must be > 0");
    if (task.constant_conditional &&
        static_cast<int>(task.constant_conditional->size()) != task.num_labels) {
        fail_validation("synthetic task: constant conditional length must equal the label count");
    }
}

// Coefficients are a fixed function of (label, dim) alone: drawn from a
// constant-seeded stream so the family is identical across runs and seeds.
// Weights spread over [-2.5, 2.5], intercepts over [-0.5, 0.5], which keeps
// sampled conditionals away from the near-one-hot regime.
std::vector<std::vector<double>> family_coefficients(int num_labels, int object_dim) {
    auto rng = make_engine(0x5EEDC0DEULL);
    std::vector<std::vector<double>> coef(static_cast<std::size_t>(num_labels));
    for (auto& row : coef) {
        row.resize(static_cast<std::size_t>(object_dim) + 1);
        for (int d = 0; d < object_dim; ++d) {
            row[static_cast<std::size_t>(d)] = -2.5 + 5.0 * uniform01(rng);
        }
        row[static_cast<std::size_t>(object_dim)] = -0.5 + uniform01(rng);
    }
    return coef;
}

} // namespace

std::vector<double> conditional_at(const SyntheticTask& task, const std::vector<double>& x) {
    if (task.constant_conditional) return *task.constant_conditional;
    static thread_local std::vector<std::vector<double>> coef;
    static thread_local int coef_labels = 0;
    static thread_local int coef_dim = 0;
    if (coef_labels != task.num_labels || coef_dim != task.object_dim) {
        coef = family_coefficients(task.num_labels, task.object_dim);
        coef_labels = task.num_labels;
        coef_dim = task.object_dim;
    }
    std::vector<double> z(static_cast<std::size_t>(task.num_labels));
    for (std::size_t c = 0; c < z.size(); ++c) {
        double v = coef[c][static_cast<std::size_t>(task.object_dim)];
        for (int d = 0; d < task.object_dim; ++d) {
            v += coef[c][static_cast<std::size_t>(d)] * x[static_cast<std::size_t>(d)];
        }
        z[c] = v;
    }
    double shift = *std::max_element(z.begin(), z.end());
    double total = 0.0;
    for (double& v : z) {
        v = std::exp(v - shift);
        total += v;
    }
    for (double& v : z) v /= total;
    return z;
}

std::vector<double> apply_temperature(const std::vector<double>& probs, double temperature) {
    if (!(temperature > 0.0)) fail_validation("temperature must be > 0");
    if (temperature == 1.0) return probs;
    std::vector<double> logp(probs.size());
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < probs.size(); ++i) {
        logp[i] = probs[i] > 0.0 ? std::log(probs[i]) / temperature
                                 : -std::numeric_limits<double>::infinity();
        max_log = std::max(max_log, logp[i]);
    }
    std::vector<double> out(probs.size());
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        out[i] = std::isfinite(logp[i]) ? std::exp(logp[i] - max_log) : 0.0;
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

SyntheticTask perturb_forecaster(const SyntheticTask& task, double temperature) {
    if (!(temperature > 0.0)) fail_validation("temperature must be > 0");
    SyntheticTask variant = task;
    variant.temperature = temperature;
    return variant;
}

std::vector<ForecastVector> sample_batch(const SyntheticTask& task, long n, std::uint64_t seed) {
    check_task(task);
    if (n < 1) fail_validation("sample_batch: n must be >= 1");
    auto rng = make_engine(seed);
    std::vector<ForecastVector> batch;
    batch.reserve(static_cast<std::size_t>(n));
    std::vector<double> x(static_cast<std::size_t>(task.object_dim));
    for (long i = 0; i < n; ++i) {
        for (double& v : x) v = uniform01(rng);
        std::vector<double> conditional = conditional_at(task, x);

        double u = uniform01(rng);
        int label = task.num_labels - 1;
        double cum = 0.0;
        for (int c = 0; c < task.num_labels; ++c) {
            cum += conditional[static_cast<std::size_t>(c)];
            if (u < cum) {
                label = c;
                break;
            }
        }
        std::vector<double> emitted = apply_temperature(conditional, task.temperature);
        batch.push_back(make_forecast(std::to_string(i), std::move(emitted), label));
    }
    return batch;
}

BoundCheck check_theorem1(const SyntheticTask& task, long n, double delta, double epsilon,
                          long trials, int pooled_grid_intervals) {
    check_task(task);
    if (n < 1) fail_validation("check_theorem1: n must be >= 1");
    if (!(delta > 0.0 && delta < 1.0)) fail_validation("check_theorem1: delta must be in (0,1)");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        fail_validation("check_theorem1: epsilon must be in [0,1)");
    }
    if (trials < 1) fail_validation("check_theorem1: trials must be >= 1");

    BoundCheck check;
    check.n = n;
    check.delta = delta;
    check.epsilon = epsilon;
    check.trials = trials;
    check.bound = std::exp(-2.0 * epsilon * epsilon * static_cast<double>(n));

    std::vector<ForecastVector> pooled;
    pooled.reserve(static_cast<std::size_t>(n * trials));
    long failures = 0;
    double err_sum = 0.0;
    for (long t = 0; t < trials; ++t) {
        auto batch = sample_batch(task, n, derive_subseed(task.seed, static_cast<std::uint64_t>(t)));
        auto regions = build_regions_batch(batch, delta);
        std::vector<int> truth;
        truth.reserve(batch.size());
        for (const auto& f : batch) truth.push_back(*f.true_label);
        RegionScore score = score_regions(regions, truth);
        if (score.err_fraction >= delta + epsilon) ++failures;
        err_sum += score.err_fraction;
        for (auto& f : batch) {
            f.example_id = std::to_string(t) + ":" + f.example_id;
            pooled.push_back(std::move(f));
        }
    }
    check.observed_failure_freq = static_cast<double>(failures) / static_cast<double>(trials);
    check.mean_err = err_sum / static_cast<double>(trials);
    double slack = 3.0 * std::sqrt(check.bound * (1.0 - check.bound) /
                                   static_cast<double>(trials));
    check.pass = check.observed_failure_freq <= check.bound + slack;

    CrcCurve curve = compute_crc_curve(pooled, pooled_grid_intervals);
    check.pooled_err_above_area = err_above_area(curve);
    check.pooled_avg_width_area = avg_width_area(curve);
    check.pooled_strict_calibrated = check.pooled_err_above_area == 0.0;
    return check;
}

std::string write_bound_check_json(const BoundCheck& check, const SyntheticTask& task) {
    nlohmann::ordered_json j;
    j["n"] = check.n;
    j["delta"] = check.delta;
    j["epsilon"] = check.epsilon;
    j["trials"] = check.trials;
    j["observed_failure_freq"] = check.observed_failure_freq;
    j["bound"] = check.bound;
    j["pass"] = check.pass;
    j["seed"] = task.seed;
    j["labels"] = task.num_labels;
    j["temperature"] = task.temperature;
    j["conditional_family"] = kConditionalFamilyVersion;
    j["rng"] = kRngVersion;
    j["mean_err"] = check.mean_err;
    j["pooled_err_above_area"] = check.pooled_err_above_area;
    j["pooled_avg_width_area"] = check.pooled_avg_width_area;
    j["pooled_strict_calibrated"] = check.pooled_strict_calibrated;
    return j.dump(2) + "\n";
}

} // namespace crp
