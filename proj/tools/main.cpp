#include "crp/crc.hpp"
#include "crp/crc_io.hpp"
#include "crp/dataset.hpp"
#include "crp/error.hpp"
#include "crp/forecast.hpp"
#include "crp/forecast_io.hpp"
#include "crp/learners.hpp"
#include "crp/metrics.hpp"
#include "crp/protocol.hpp"
#include "crp/synthetic.hpp"
#include "crp/util.hpp"

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInternal = 2;

struct ConvertArgs {
    std::string forecasts;
    double delta = 0.0;
    std::string out;
};

struct EvaluateArgs {
    std::string forecasts;
    int grid = crp::kDefaultGridIntervals;
    double loose_tol = crp::kDefaultLooseTolerance;
    std::string out_dir;
    bool svg = false;
};

struct TrainEvalArgs {
    std::string dataset;
    std::string learner;
    int k = 0;
    int seeds = 5;
    double train_frac = 0.66;
    std::string preprocess_scope = "train";
    std::string out_dir;
};

struct SynthArgs {
    long n = 1000;
    int labels = 3;
    double delta = 0.0;
    double epsilon = 0.0;
    long trials = 200;
    double temperature = 1.0;
    std::uint64_t seed = 1;
    std::string out;
};

struct PlotArgs {
    std::string in;
    std::string svg;
};

int run_convert(const ConvertArgs& args) {
    crp::ForecastTable table = crp::parse_forecast_csv(crp::read_file(args.forecasts));
    auto regions = crp::build_regions_batch(table.forecasts, args.delta);
    crp::atomic_write_file(args.out, crp::write_region_csv(regions, table.labels, table.forecasts));
    return kExitOk;
}

int run_evaluate(const EvaluateArgs& args) {
    crp::ForecastTable table = crp::parse_forecast_csv(crp::read_file(args.forecasts));
    for (const auto& f : table.forecasts) {
        if (!f.true_label) {
            crp::fail_validation("evaluate needs true labels; example " + f.example_id +
                                 " has none");
        }
    }
    crp::CrcCurve curve = crp::compute_crc_curve(table.forecasts, args.grid);
    crp::CalibrationVerdict verdict = crp::make_verdict(curve, args.loose_tol);

    fs::path dir(args.out_dir);
    crp::atomic_write_file(dir / "crc.csv", crp::write_crc_csv(curve));
    crp::atomic_write_file(dir / "summary.json",
                           crp::write_crc_summary_json(curve, verdict, args.grid));
    if (args.svg) {
        crp::atomic_write_file(dir / "crc.svg", crp::render_crc_svg(curve));
    }
    return kExitOk;
}

int run_train_eval(const TrainEvalArgs& args) {
    crp::ProtocolConfig config;
    if (args.learner == "dwknn") {
        config.learner.kind = crp::LearnerKind::dwknn;
        if (args.k < 1) crp::fail_validation("--learner dwknn requires --k >= 1");
        config.learner.k = args.k;
    } else {
        config.learner.kind = crp::LearnerKind::naivebayes;
        if (args.k != 0) crp::fail_validation("--k only applies to --learner dwknn");
    }
    if (args.seeds < 1) crp::fail_validation("--seeds must be >= 1");
    config.plan.seeds.clear();
    for (int s = 1; s <= args.seeds; ++s) {
        config.plan.seeds.push_back(static_cast<std::uint64_t>(s));
    }
    config.plan.train_fraction = args.train_frac;
    config.scope = args.preprocess_scope == "all" ? crp::PreprocessScope::all
                                                  : crp::PreprocessScope::train_only;

    fs::path dataset_path(args.dataset);
    if (dataset_path.extension() != ".arff") {
        crp::fail_validation("train-eval accepts ARFF datasets only (got '" +
                             dataset_path.string() + "')");
    }
    crp::Dataset data =
        crp::parse_arff(crp::read_file(dataset_path), dataset_path.stem().string());

    crp::ProtocolResult result = crp::run_protocol(data, config);

    fs::path dir(args.out_dir);
    crp::atomic_write_file(dir / "report.json",
                           crp::write_protocol_report_json(result, data, config));
    for (const auto& run : result.per_seed) {
        crp::atomic_write_file(dir / ("crc_seed_" + std::to_string(run.seed) + ".csv"),
                               crp::write_crc_csv(run.curve));
    }
    return kExitOk;
}

int run_synth(const SynthArgs& args) {
    crp::SyntheticTask task;
    task.num_labels = args.labels;
    task.seed = args.seed;
    task.temperature = args.temperature;
    crp::BoundCheck check = crp::check_theorem1(task, args.n, args.delta, args.epsilon,
                                                args.trials);
    crp::atomic_write_file(args.out, crp::write_bound_check_json(check, task));
    return kExitOk;
}

int run_plot(const PlotArgs& args) {
    crp::CrcCurve curve = crp::parse_crc_csv(crp::read_file(args.in));
    crp::atomic_write_file(args.svg, crp::render_crc_svg(curve));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Confidence region prediction from multi-class probability forecasts"};
    app.require_subcommand(1);

    ConvertArgs convert_args;
    auto* convert = app.add_subcommand(
        "convert", "Convert a forecast CSV into region predictions at one confidence level");
    convert->add_option("--forecasts", convert_args.forecasts,
                        "Forecast CSV (header example_id,true_label,p_<name>,...)")
        ->required();
    convert->add_option("--delta", convert_args.delta,
                        "Significance level; confidence is 1-delta")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    convert->add_option("--out", convert_args.out,
                        "Output region CSV (example_id,delta,members,excluded_mass,err)")
        ->required();

    EvaluateArgs evaluate_args;
    auto* evaluate = app.add_subcommand(
        "evaluate", "Compute the CRC curve, deviation areas and calibration verdict");
    evaluate->add_option("--forecasts", evaluate_args.forecasts,
                         "Forecast CSV with true labels")
        ->required();
    evaluate->add_option("--grid", evaluate_args.grid, "Grid intervals for the delta axis")
        ->capture_default_str()
        ->check(CLI::Range(2, 1000000));
    evaluate->add_option("--loose-tol", evaluate_args.loose_tol,
                         "err-above-area tolerance for the loose verdict")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    evaluate->add_option("--out-dir", evaluate_args.out_dir,
                         "Directory receiving crc.csv and summary.json")
        ->required();
    evaluate->add_flag("--svg", evaluate_args.svg, "Also render crc.svg");

    TrainEvalArgs train_args;
    auto* train_eval = app.add_subcommand(
        "train-eval", "Run the split/train/forecast/CRC protocol on an ARFF dataset");
    train_eval->add_option("--dataset", train_args.dataset, "ARFF dataset path")->required();
    train_eval->add_option("--learner", train_args.learner, "Forecaster to train")
        ->required()
        ->check(CLI::IsMember({"dwknn", "naivebayes"}));
    train_eval->add_option("--k", train_args.k, "Neighbour count (dwknn only)");
    train_eval->add_option("--seeds", train_args.seeds,
                           "Number of split randomisations (seeds 1..N)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    train_eval->add_option("--train-frac", train_args.train_frac, "Training fraction")
        ->capture_default_str();
    train_eval->add_option("--preprocess-scope", train_args.preprocess_scope,
                           "Statistics source for normalisation/imputation")
        ->capture_default_str()
        ->check(CLI::IsMember({"train", "all"}));
    train_eval->add_option("--out-dir", train_args.out_dir,
                           "Directory receiving report.json and crc_seed_<s>.csv")
        ->required();

    SynthArgs synth_args;
    auto* synth = app.add_subcommand(
        "synth", "Monte-Carlo check of the calibration bound on a Bayes-optimal synthetic task");
    synth->add_option("--n", synth_args.n, "Examples per trial")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    synth->add_option("--labels", synth_args.labels, "Label count")
        ->capture_default_str()
        ->check(CLI::Range(2, 1000));
    synth->add_option("--delta", synth_args.delta, "Significance level, in (0,1)")
        ->required();
    synth->add_option("--epsilon", synth_args.epsilon, "Bound slack, in [0,1)")
        ->required();
    synth->add_option("--trials", synth_args.trials, "Independent batches")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    synth->add_option("--temperature", synth_args.temperature,
                      "Forecast sharpening (<1) or flattening (>1); 1 = Bayes-optimal")
        ->capture_default_str();
    synth->add_option("--seed", synth_args.seed, "Master seed")->capture_default_str();
    synth->add_option("--out", synth_args.out, "Output report JSON")->required();

    PlotArgs plot_args;
    auto* plot = app.add_subcommand("crc-plot", "Render a CRC table as an SVG plot");
    plot->add_option("--in", plot_args.in, "CRC CSV (confidence,delta,err,unc)")->required();
    plot->add_option("--svg", plot_args.svg, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (convert->parsed()) return run_convert(convert_args);
        if (evaluate->parsed()) return run_evaluate(evaluate_args);
        if (train_eval->parsed()) return run_train_eval(train_args);
        if (synth->parsed()) return run_synth(synth_args);
        if (plot->parsed()) return run_plot(plot_args);
        std::cerr << "no subcommand given\n";
        return kExitValidation;
    } catch (const crp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == crp::ErrorKind::validation ? kExitValidation : kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
