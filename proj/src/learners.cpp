#include "crp/learners.hpp"

#include "crp/error.hpp"
#include "crp/util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace crp {

std::vector<double> encode_features(const Schema& schema, const std::vector<Cell>& row) {
    std::vector<double> out;
    for (std::size_t a = 0; a < schema.attributes.size(); ++a) {
        if (static_cast<int>(a) == schema.class_attribute) continue;
        const Cell& c = row[a];
        if (c.missing) {
            fail_validation("missing value in attribute '" + schema.attributes[a].name +
                            "'; preprocess the dataset first");
        }
        const Attribute& attr = schema.attributes[a];
        if (attr.numeric) {
            out.push_back(c.value);
        } else {
            for (std::size_t v = 0; v < attr.values.size(); ++v) {
                out.push_back(v == static_cast<std::size_t>(c.value) ? 1.0 : 0.0);
            }
        }
    }
    return out;
}

namespace {

int class_of(const Dataset& data, std::size_t row_idx) {
    const Cell& c = data.rows[row_idx][static_cast<std::size_t>(data.schema.class_attribute)];
    if (c.missing) {
        fail_validation("row " + std::to_string(data.row_ids[row_idx]) +
                        " has a missing class label");
    }
    return static_cast<int>(c.value);
}

} // namespace

DwknnModel train_dwknn(const Dataset& train, const LearnerConfig& config) {
    if (train.n() == 0) fail_validation("dwknn: empty training set");
    if (config.k < 1) fail_validation("dwknn: k must be >= 1");
    if (config.k > train.n()) {
        fail_validation("dwknn: k = " + std::to_string(config.k) + " exceeds training size " +
                        std::to_string(train.n()));
    }
    DwknnModel model;
    model.schema = train.schema;
    model.num_classes = train.schema.num_classes();
    model.k = config.k;
    for (std::size_t i = 0; i < train.rows.size(); ++i) {
        model.points.push_back(encode_features(train.schema, train.rows[i]));
        model.labels.push_back(class_of(train, i));
    }
    return model;
}

ForecastVector forecast_dwknn(const DwknnModel& model, const std::vector<double>& x,
                              const std::string& example_id) {
    if (model.points.empty()) fail_internal("dwknn: model has no points");
    if (x.size() != model.points[0].size()) {
        fail_validation("dwknn: query has " + std::to_string(x.size()) + " features, model has " +
                        std::to_string(model.points[0].size()));
    }
    std::vector<std::pair<double, std::size_t>> dist;
    dist.reserve(model.points.size());
    for (std::size_t i = 0; i < model.points.size(); ++i) {
        double d2 = 0.0;
        const auto& p = model.points[i];
        for (std::size_t f = 0; f < p.size(); ++f) {
            double diff = p[f] - x[f];
            d2 += diff * diff;
        }
        dist.emplace_back(std::sqrt(d2), i);
    }
    auto k = static_cast<std::size_t>(model.k);
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());

    std::vector<double> score(static_cast<std::size_t>(model.num_classes), 0.0);
    std::size_t zero_count = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (dist[i].first == 0.0) ++zero_count;
    }
    if (zero_count > 0) {
        for (std::size_t i = 0; i < k; ++i) {
            if (dist[i].first == 0.0) {
                score[static_cast<std::size_t>(model.labels[dist[i].second])] +=
                    1.0 / static_cast<double>(zero_count);
            }
        }
    } else {
        for (std::size_t i = 0; i < k; ++i) {
            score[static_cast<std::size_t>(model.labels[dist[i].second])] += 1.0 / dist[i].first;
        }
    }
    double total = std::accumulate(score.begin(), score.end(), 0.0);
    for (double& s : score) s /= total;
    return make_forecast(example_id, std::move(score), std::nullopt);
}

NaiveBayesModel train_naive_bayes(const Dataset& train, const LearnerConfig& config) {
    if (train.n() == 0) fail_validation("naivebayes: empty training set");
    if (!(config.variance_floor > 0.0)) fail_validation("naivebayes: variance floor must be > 0");
    if (config.laplace_alpha < 0.0) fail_validation("naivebayes: laplace alpha must be >= 0");

    NaiveBayesModel model;
    model.schema = train.schema;
    model.variance_floor = config.variance_floor;
    model.laplace_alpha = config.laplace_alpha;

    auto num_classes = static_cast<std::size_t>(train.schema.num_classes());
    std::vector<long> class_count(num_classes, 0);
    for (std::size_t i = 0; i < train.rows.size(); ++i) {
        ++class_count[static_cast<std::size_t>(class_of(train, i))];
    }
    for (std::size_t c = 0; c < num_classes; ++c) {
        if (class_count[c] == 0) {
            fail_validation("naivebayes: class '" + train.schema.class_attr().values[c] +
                            "' has no training examples");
        }
        model.priors.push_back(static_cast<double>(class_count[c]) /
                               static_cast<double>(train.n()));
    }

    const auto& attrs = train.schema.attributes;
    model.gaussians.resize(attrs.size());
    model.nominal_freqs.resize(attrs.size());
    for (std::size_t a = 0; a < attrs.size(); ++a) {
        if (static_cast<int>(a) == train.schema.class_attribute) continue;
        if (attrs[a].numeric) {
            std::vector<double> sum(num_classes, 0.0);
            std::vector<long> count(num_classes, 0);
            for (std::size_t i = 0; i < train.rows.size(); ++i) {
                const Cell& cell = train.rows[i][a];
                if (cell.missing) continue;
                auto c = static_cast<std::size_t>(class_of(train, i));
                sum[c] += cell.value;
                ++count[c];
            }
            model.gaussians[a].resize(num_classes);
            for (std::size_t c = 0; c < num_classes; ++c) {
                if (count[c] == 0) {
                    fail_validation("naivebayes: attribute '" + attrs[a].name + "' has no observed "
                                    "values for class '" + train.schema.class_attr().values[c] + "'");
                }
                model.gaussians[a][c].mean = sum[c] / static_cast<double>(count[c]);
            }
            std::vector<double> ss(num_classes, 0.0);
            for (std::size_t i = 0; i < train.rows.size(); ++i) {
                const Cell& cell = train.rows[i][a];
                if (cell.missing) continue;
                auto c = static_cast<std::size_t>(class_of(train, i));
                double d = cell.value - model.gaussians[a][c].mean;
                ss[c] += d * d;
            }
            for (std::size_t c = 0; c < num_classes; ++c) {
                double var = count[c] > 1 ? ss[c] / static_cast<double>(count[c] - 1) : 0.0;
                model.gaussians[a][c].variance = std::max(var, config.variance_floor);
            }
        } else {
            auto num_values = attrs[a].values.size();
            model.nominal_freqs[a].assign(num_classes, std::vector<double>(num_values, 0.0));
            std::vector<long> observed(num_classes, 0);
            for (std::size_t i = 0; i < train.rows.size(); ++i) {
                const Cell& cell = train.rows[i][a];
                if (cell.missing) continue;
                auto c = static_cast<std::size_t>(class_of(train, i));
                model.nominal_freqs[a][c][static_cast<std::size_t>(cell.value)] += 1.0;
                ++observed[c];
            }
            for (std::size_t c = 0; c < num_classes; ++c) {
                double denom = static_cast<double>(observed[c]) +
                               config.laplace_alpha * static_cast<double>(num_values);
                if (denom == 0.0) {
                    fail_validation("naivebayes: attribute '" + attrs[a].name + "' has no observed "
                                    "values for class '" + train.schema.class_attr().values[c] + "'");
                }
                for (double& f : model.nominal_freqs[a][c]) {
                    f = (f + config.laplace_alpha) / denom;
                }
            }
        }
    }
    return model;
}

ForecastVector forecast_naive_bayes(const NaiveBayesModel& model, const std::vector<Cell>& row,
                                    const std::string& example_id) {
    const auto& attrs = model.schema.attributes;
    if (row.size() != attrs.size()) {
        fail_validation("naivebayes: row has " + std::to_string(row.size()) +
                        " cells, schema expects " + std::to_string(attrs.size()));
    }
    auto num_classes = model.priors.size();
    std::vector<double> log_score(num_classes);
    for (std::size_t c = 0; c < num_classes; ++c) {
        log_score[c] = std::log(model.priors[c]);
    }
    for (std::size_t a = 0; a < attrs.size(); ++a) {
        if (static_cast<int>(a) == model.schema.class_attribute) continue;
        const Cell& cell = row[a];
        if (cell.missing) continue;
        for (std::size_t c = 0; c < num_classes; ++c) {
            if (attrs[a].numeric) {
                const GaussianParam& g = model.gaussians[a][c];
                double d = cell.value - g.mean;
                log_score[c] += -0.5 * std::log(2.0 * std::numbers::pi * g.variance) -
                                d * d / (2.0 * g.variance);
            } else {
                double f = model.nominal_freqs[a][c][static_cast<std::size_t>(cell.value)];
                log_score[c] += std::log(f); // -inf when alpha = 0 and unseen
            }
        }
    }
    double shift = *std::max_element(log_score.begin(), log_score.end());
    if (!std::isfinite(shift)) {
        fail_validation("naivebayes: zero likelihood for every class on example " + example_id);
    }
    std::vector<double> probs(num_classes);
    double total = 0.0;
    for (std::size_t c = 0; c < num_classes; ++c) {
        probs[c] = std::exp(log_score[c] - shift);
        total += probs[c];
    }
    for (double& p : probs) p /= total;
    return make_forecast(example_id, std::move(probs), std::nullopt);
}

LabelSpace dataset_label_space(const Dataset& data) {
    return LabelSpace{data.schema.class_attr().values};
}

std::vector<ForecastVector> train_and_forecast(const Dataset& train, const Dataset& test,
                                               const LearnerConfig& config) {
    std::vector<ForecastVector> out;
    out.reserve(test.rows.size());
    if (config.kind == LearnerKind::dwknn) {
        DwknnModel model = train_dwknn(train, config);
        for (std::size_t i = 0; i < test.rows.size(); ++i) {
            auto x = encode_features(test.schema, test.rows[i]);
            ForecastVector f =
                forecast_dwknn(model, x, std::to_string(test.row_ids[i]));
            f.true_label = class_of(test, i);
            out.push_back(std::move(f));
        }
    } else {
        NaiveBayesModel model = train_naive_bayes(train, config);
        for (std::size_t i = 0; i < test.rows.size(); ++i) {
            ForecastVector f =
                forecast_naive_bayes(model, test.rows[i], std::to_string(test.row_ids[i]));
            f.true_label = class_of(test, i);
            out.push_back(std::move(f));
        }
    }
    return out;
}

} // namespace crp
