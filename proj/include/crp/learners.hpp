#pragma once

#include "crp/dataset.hpp"
#include "crp/forecast.hpp"

#include <vector>

namespace crp {

enum class LearnerKind { dwknn, naivebayes };

struct LearnerConfig {
    LearnerKind kind = LearnerKind::dwknn;
    int k = 1;                     // dwknn
    double variance_floor = 1e-9;  // naivebayes
    double laplace_alpha = 1.0;    // naivebayes, nominal attributes
};

// One-hot encodes nominal attributes (class excluded); numerics pass through.
// Missing cells are rejected: run preprocess first.
std::vector<double> encode_features(const Schema& schema, const std::vector<Cell>& row);

struct DwknnModel {
    std::vector<std::vector<double>> points;
    std::vector<int> labels;
    int num_classes = 0;
    int k = 1;
    Schema schema;
};

DwknnModel train_dwknn(const Dataset& train, const LearnerConfig& config);

// Weighted vote of the k nearest neighbours, weight 1/d; distance ties keep
// training-row order; zero-distance neighbours take all the mass, split
// uniformly among themselves.
ForecastVector forecast_dwknn(const DwknnModel& model, const std::vector<double>& x,
                              const std::string& example_id);

struct GaussianParam {
    double mean = 0.0;
    double variance = 0.0;
};

struct NaiveBayesModel {
    std::vector<double> priors; // class frequencies, unsmoothed
    // per attribute: numeric -> per-class Gaussian; nominal -> per-class
    // Laplace-smoothed value frequencies (class attribute left empty)
    std::vector<std::vector<GaussianParam>> gaussians;
    std::vector<std::vector<std::vector<double>>> nominal_freqs;
    Schema schema;
    double variance_floor = 1e-9;
    double laplace_alpha = 1.0;
};

NaiveBayesModel train_naive_bayes(const Dataset& train, const LearnerConfig& config);

// Log-space accumulation with max shift; missing query cells skip their
// attribute term.
ForecastVector forecast_naive_bayes(const NaiveBayesModel& model, const std::vector<Cell>& row,
                                    const std::string& example_id);

// Trains on `train` and forecasts every row of `test`; true labels are taken
// from the test class column. The label space is the class value list.
std::vector<ForecastVector> train_and_forecast(const Dataset& train, const Dataset& test,
                                               const LearnerConfig& config);

LabelSpace dataset_label_space(const Dataset& data);

} // namespace crp
