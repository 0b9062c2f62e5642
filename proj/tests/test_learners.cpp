#include "crp/learners.hpp"

#include "crp/error.hpp"
#include "crp/protocol.hpp"
#include "crp/util.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

using namespace crp;

namespace {

std::string data_path(const char* name) {
    return std::string(CRP_DATA_DIR) + "/" + name;
}

std::string error_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

// one numeric feature, binary class
Dataset line_dataset(const std::vector<std::pair<double, int>>& points) {
    Dataset ds;
    ds.schema.attributes = {Attribute{"x", true, {}}, Attribute{"class", false, {"A", "B"}}};
    ds.schema.class_attribute = 1;
    long id = 0;
    for (auto [x, label] : points) {
        ds.rows.push_back({Cell::of(x), Cell::of(label)});
        ds.row_ids.push_back(id++);
    }
    return ds;
}

// one binary nominal feature, binary class
Dataset flag_dataset(const std::vector<std::pair<int, int>>& points) {
    Dataset ds;
    ds.schema.attributes = {Attribute{"f", false, {"a", "b"}},
                            Attribute{"class", false, {"c0", "c1"}}};
    ds.schema.class_attribute = 1;
    long id = 0;
    for (auto [v, label] : points) {
        ds.rows.push_back({Cell::of(v), Cell::of(label)});
        ds.row_ids.push_back(id++);
    }
    return ds;
}

} // namespace

TEST_CASE("encode_features") {
    Dataset ds;
    ds.schema.attributes = {Attribute{"x", true, {}}, Attribute{"color", false, {"r", "g", "b"}},
                            Attribute{"class", false, {"y", "n"}}};
    ds.schema.class_attribute = 2;

    SUBCASE("numeric passes through, nominal one-hot, class skipped") {
        auto x = encode_features(ds.schema, {Cell::of(2.5), Cell::of(1), Cell::of(0)});
        CHECK(x == std::vector<double>{2.5, 0.0, 1.0, 0.0});
    }
    SUBCASE("missing cells are rejected") {
        auto msg = error_message(
            [&] { encode_features(ds.schema, {Cell::miss(), Cell::of(1), Cell::of(0)}); });
        CHECK(msg.find("preprocess") != std::string::npos);
    }
}

TEST_CASE("forecast_dwknn hand-checked vote") {
    // neighbours at distance 1 (A) and 3 (B): weights 1 and 1/3
    auto train = line_dataset({{0.0, 0}, {4.0, 1}});
    auto model = train_dwknn(train, LearnerConfig{LearnerKind::dwknn, 2});
    auto f = forecast_dwknn(model, {1.0}, "q");
    CHECK(f.probs[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(f.probs[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("forecast_dwknn zero-distance handling") {
    SUBCASE("an exact hit takes all the mass") {
        auto train = line_dataset({{0.0, 0}, {5.0, 1}});
        auto model = train_dwknn(train, LearnerConfig{LearnerKind::dwknn, 2});
        auto f = forecast_dwknn(model, {0.0}, "q");
        CHECK(f.probs[0] == 1.0);
        CHECK(f.probs[1] == 0.0);
    }
    SUBCASE("several exact hits split the mass uniformly") {
        auto train = line_dataset({{0.0, 0}, {0.0, 1}, {5.0, 0}});
        auto model = train_dwknn(train, LearnerConfig{LearnerKind::dwknn, 3});
        auto f = forecast_dwknn(model, {0.0}, "q");
        CHECK(f.probs[0] == 0.5);
        CHECK(f.probs[1] == 0.5);
    }
}

TEST_CASE("forecast_dwknn is unanimous when all k neighbours agree") {
    auto train = line_dataset({{0.0, 0}, {1.0, 0}, {2.0, 0}});
    auto model = train_dwknn(train, LearnerConfig{LearnerKind::dwknn, 3});
    auto f = forecast_dwknn(model, {0.5}, "q");
    CHECK(f.probs[0] == 1.0);
    CHECK(f.probs[1] == 0.0);
}

TEST_CASE("forecast_dwknn breaks distance ties by training-row order") {
    // both rows sit at distance 1 from the query; k = 1 must pick row 0
    auto train = line_dataset({{0.0, 0}, {2.0, 1}});
    auto model = train_dwknn(train, LearnerConfig{LearnerKind::dwknn, 1});
    auto f = forecast_dwknn(model, {1.0}, "q");
    CHECK(f.probs[0] == 1.0);

    // with the labels swapped the tie goes to the other class
    auto swapped = line_dataset({{0.0, 1}, {2.0, 0}});
    auto model2 = train_dwknn(swapped, LearnerConfig{LearnerKind::dwknn, 1});
    auto f2 = forecast_dwknn(model2, {1.0}, "q");
    CHECK(f2.probs[1] == 1.0);
}

TEST_CASE("forecast_dwknn is invariant under duplicating the training set with doubled k") {
    auto train = line_dataset({{0.0, 0}, {1.0, 1}, {3.0, 0}, {7.0, 1}});
    auto doubled = line_dataset(
        {{0.0, 0}, {1.0, 1}, {3.0, 0}, {7.0, 1}, {0.0, 0}, {1.0, 1}, {3.0, 0}, {7.0, 1}});
    auto base = train_dwknn(train, LearnerConfig{LearnerKind::dwknn, 3});
    auto dup = train_dwknn(doubled, LearnerConfig{LearnerKind::dwknn, 6});
    // query with pairwise distinct distances
    auto f = forecast_dwknn(base, {1.4}, "q");
    auto g = forecast_dwknn(dup, {1.4}, "q");
    REQUIRE(f.probs.size() == g.probs.size());
    for (std::size_t i = 0; i < f.probs.size(); ++i) {
        CHECK(f.probs[i] == doctest::Approx(g.probs[i]).epsilon(1e-12));
    }
}

TEST_CASE("train_dwknn validation") {
    auto train = line_dataset({{0.0, 0}, {1.0, 1}});
    CHECK_THROWS_AS(train_dwknn(Dataset{train.schema, {}, {}, "empty"},
                                LearnerConfig{LearnerKind::dwknn, 1}),
                    Error);
    CHECK_THROWS_AS(train_dwknn(train, LearnerConfig{LearnerKind::dwknn, 0}), Error);
    CHECK_THROWS_AS(train_dwknn(train, LearnerConfig{LearnerKind::dwknn, 3}), Error);
    auto model = train_dwknn(train, LearnerConfig{LearnerKind::dwknn, 1});
    CHECK_THROWS_AS(forecast_dwknn(model, {1.0, 2.0}, "q"), Error); // feature arity
}

TEST_CASE("train_naive_bayes hand-checked smoothing") {
    auto train = flag_dataset({{0, 0}, {0, 0}, {1, 1}, {1, 1}});
    auto model = train_naive_bayes(train, LearnerConfig{LearnerKind::naivebayes});
    CHECK(model.priors == std::vector<double>{0.5, 0.5});
    // P(a|c0) = (2+1)/(2+2), P(a|c1) = (0+1)/(2+2)
    CHECK(model.nominal_freqs[0][0][0] == 0.75);
    CHECK(model.nominal_freqs[0][0][1] == 0.25);
    CHECK(model.nominal_freqs[0][1][0] == 0.25);
    CHECK(model.nominal_freqs[0][1][1] == 0.75);

    auto f = forecast_naive_bayes(model, {Cell::of(0), Cell::miss()}, "q");
    CHECK(f.probs[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(f.probs[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("train_naive_bayes rejects an empty declared class") {
    auto train = flag_dataset({{0, 0}, {1, 0}});
    auto msg = error_message(
        [&] { train_naive_bayes(train, LearnerConfig{LearnerKind::naivebayes}); });
    CHECK(msg.find("'c1'") != std::string::npos);
    CHECK(msg.find("no training examples") != std::string::npos);
}

TEST_CASE("naive bayes variance floor keeps constant attributes finite") {
    auto train = line_dataset({{5.0, 0}, {5.0, 0}, {5.0, 1}});
    auto model = train_naive_bayes(train, LearnerConfig{LearnerKind::naivebayes});
    CHECK(model.gaussians[0][0].variance == 1e-9);
    CHECK(model.gaussians[0][1].variance == 1e-9); // single example: floored
    auto f = forecast_naive_bayes(model, {Cell::of(5.0), Cell::miss()}, "q");
    CHECK(std::isfinite(f.probs[0]));
    // identical likelihoods: posterior equals the priors
    CHECK(f.probs[0] == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(f.probs[1] == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("naive bayes variance uses the unbiased estimator") {
    // class c0 observes 1 and 3: mean 2, sample variance ((1)^2+(1)^2)/(2-1) = 2
    auto train = line_dataset({{1.0, 0}, {3.0, 0}, {0.0, 1}, {10.0, 1}});
    auto model = train_naive_bayes(train, LearnerConfig{LearnerKind::naivebayes});
    CHECK(model.gaussians[0][0].mean == 2.0);
    CHECK(model.gaussians[0][0].variance == 2.0);
    CHECK(model.gaussians[0][1].mean == 5.0);
    CHECK(model.gaussians[0][1].variance == 50.0);
}

TEST_CASE("naive bayes smooths values unseen for a class") {
    auto train = flag_dataset({{0, 0}, {0, 0}, {0, 1}, {1, 1}});
    auto model = train_naive_bayes(train, LearnerConfig{LearnerKind::naivebayes});
    // 'b' never occurs with c0 but keeps positive smoothed mass
    CHECK(model.nominal_freqs[0][0][1] == 0.25);
    auto f = forecast_naive_bayes(model, {Cell::of(1), Cell::miss()}, "q");
    double sum = f.probs[0] + f.probs[1];
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.probs[0] > 0.0);
    CHECK(f.probs[1] > f.probs[0]);
}

TEST_CASE("forecast_naive_bayes agrees with the direct product posterior") {
    Dataset ds;
    ds.schema.attributes = {Attribute{"x", true, {}}, Attribute{"f", false, {"a", "b"}},
                            Attribute{"class", false, {"c0", "c1"}}};
    ds.schema.class_attribute = 2;
    auto add = [&](double x, int v, int c) {
        ds.rows.push_back({Cell::of(x), Cell::of(v), Cell::of(c)});
        ds.row_ids.push_back(ds.n());
    };
    add(1.0, 0, 0);
    add(2.0, 0, 0);
    add(3.0, 1, 0);
    add(5.0, 1, 1);
    add(6.0, 1, 1);
    add(7.0, 0, 1);

    auto model = train_naive_bayes(ds, LearnerConfig{LearnerKind::naivebayes});
    auto f = forecast_naive_bayes(model, {Cell::of(2.5), Cell::of(0), Cell::miss()}, "q");

    auto gaussian = [](double x, const GaussianParam& g) {
        return std::exp(-(x - g.mean) * (x - g.mean) / (2.0 * g.variance)) /
               std::sqrt(2.0 * std::numbers::pi * g.variance);
    };
    double s0 = model.priors[0] * gaussian(2.5, model.gaussians[0][0]) * model.nominal_freqs[1][0][0];
    double s1 = model.priors[1] * gaussian(2.5, model.gaussians[0][1]) * model.nominal_freqs[1][1][0];
    CHECK(f.probs[0] == doctest::Approx(s0 / (s0 + s1)).epsilon(1e-9));
    CHECK(f.probs[1] == doctest::Approx(s1 / (s0 + s1)).epsilon(1e-9));
}

TEST_CASE("train_and_forecast labels and ids") {
    auto train = line_dataset({{0.0, 0}, {1.0, 0}, {9.0, 1}, {10.0, 1}});
    auto test = line_dataset({{0.5, 0}, {9.5, 1}});
    test.row_ids = {17, 42};

    for (auto kind : {LearnerKind::dwknn, LearnerKind::naivebayes}) {
        LearnerConfig config;
        config.kind = kind;
        config.k = 2;
        auto forecasts = train_and_forecast(train, test, config);
        REQUIRE(forecasts.size() == 2);
        CHECK(forecasts[0].example_id == "17");
        CHECK(forecasts[1].example_id == "42");
        CHECK(*forecasts[0].true_label == 0);
        CHECK(*forecasts[1].true_label == 1);
        for (const auto& f : forecasts) {
            double sum = 0.0;
            for (double p : f.probs) {
                CHECK(p >= 0.0);
                sum += p;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
        // both learners should find these separated clusters easy
        CHECK(forecasts[0].probs[0] > 0.5);
        CHECK(forecasts[1].probs[1] > 0.5);
    }
}

TEST_CASE("run_protocol on iris is deterministic and self-consistent") {
    auto iris = parse_arff(read_file(data_path("iris.arff")), "iris");
    ProtocolConfig config;
    config.learner.kind = LearnerKind::dwknn;
    config.learner.k = 5;
    config.plan.seeds = {1, 2, 3};

    auto a = run_protocol(iris, config);
    auto b = run_protocol(iris, config);
    REQUIRE(a.per_seed.size() == 3);
    double err_sum = 0.0;
    for (std::size_t s = 0; s < a.per_seed.size(); ++s) {
        CHECK(a.per_seed[s].seed == config.plan.seeds[s]);
        CHECK(a.per_seed[s].n_train == 99);
        CHECK(a.per_seed[s].n_test == 51);
        CHECK(a.per_seed[s].forecast_score.error_rate_percent ==
              b.per_seed[s].forecast_score.error_rate_percent);
        CHECK(a.per_seed[s].verdict.err_above_area == b.per_seed[s].verdict.err_above_area);
        err_sum += a.per_seed[s].forecast_score.error_rate_percent;
    }
    CHECK(a.means.error_rate_percent == doctest::Approx(err_sum / 3).epsilon(1e-12));
    CHECK(a.means.strict_calibrated == (a.means.crc_err_above_area == 0.0));
    CHECK(a.means.loose_calibrated == (a.means.crc_err_above_area <= config.loose_tolerance));
}
