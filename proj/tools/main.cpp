#include "fundopt/agbo.hpp"
#include "fundopt/features.hpp"
#include "fundopt/imaging.hpp"
#include "fundopt/losses.hpp"
#include "fundopt/objectives.hpp"
#include "fundopt/png_io.hpp"
#include "fundopt/runio.hpp"

#include <CLI11.hpp>

#include <Eigen/Core>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr const char* kVersion = "fundopt 0.1.0";

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> items;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) {
            items.push_back(item);
        }
    }
    return items;
}

Eigen::ArrayXd read_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::size_t pos = 0;
        values.push_back(std::stod(line, &pos));
    }
    if (values.empty()) {
        throw std::runtime_error(path + " contains no values");
    }
    return Eigen::Map<Eigen::ArrayXd>(values.data(),
                                      static_cast<Eigen::Index>(values.size()));
}

int run_optimize(const std::string& config_path, const std::string& objective,
                 const std::string& out_path,
                 std::optional<std::uint64_t> seed) {
    fundopt::AgboConfig cfg = fundopt::load_config(config_path);
    if (seed) {
        cfg.seed = *seed;
    }
    const fundopt::ObjectiveHandle obj = fundopt::make_objective(objective);
    if (obj.arity() != cfg.space.dims.size()) {
        throw std::runtime_error(
            "objective \"" + objective + "\" has " +
            std::to_string(obj.arity()) +
            " dimensions but the config space has " +
            std::to_string(cfg.space.dims.size()));
    }

    fundopt::HistoryWriter writer(out_path, cfg.space);
    const fundopt::AgboResult result = fundopt::agbo_run(
        cfg, obj,
        [&writer](const fundopt::HistoryRecord& rec) { writer.append(rec); });

    fundopt::HistoryRecord best_rec;
    best_rec.candidate = result.best;
    best_rec.fitness = result.best_fitness;

    nlohmann::ordered_json summary;
    summary["objective"] = objective;
    summary["evaluations"] = result.history.size();
    summary["best_f"] = result.best_fitness;
    summary["best_x"] =
        fundopt::history_record_to_json(best_rec, cfg.space).at("x");
    summary["config"] = fundopt::config_to_json(cfg);
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int run_benchmark(const std::string& objectives_csv,
                  const std::string& methods_csv, int seeds, int budget,
                  const std::string& out_path) {
    const std::vector<std::string> objectives = split_list(objectives_csv);
    std::vector<fundopt::Method> methods;
    for (const std::string& name : split_list(methods_csv)) {
        methods.push_back(fundopt::method_from_string(name));
    }
    std::vector<std::uint64_t> seed_values;
    for (int s = 0; s < seeds; ++s) {
        seed_values.push_back(static_cast<std::uint64_t>(s));
    }
    const auto rows =
        fundopt::compare_methods(objectives, methods, seed_values, budget);
    fundopt::export_comparison_csv(rows, out_path);
    std::cerr << "wrote " << rows.size() << " rows to " << out_path << '\n';
    return 0;
}

int run_standardize(const std::string& input, const std::string& output,
                    int size) {
    const fundopt::RgbImage img = fundopt::read_png_rgb(input);
    const fundopt::RgbImage out = fundopt::standardize(img, size);
    fundopt::write_png_rgb(output, out);
    return 0;
}

int run_features(const std::string& image_path, const std::string& disc_path,
                 const std::string& cup_path, const std::string& laterality,
                 const std::string& out_path) {
    const fundopt::GrayImage img = fundopt::read_png_gray(image_path);
    fundopt::SegmentationMasks masks;
    masks.disc = fundopt::read_png_mask(disc_path);
    masks.cup = fundopt::read_png_mask(cup_path);
    const auto side = laterality == "left" ? fundopt::Laterality::left
                                           : fundopt::Laterality::right;

    const fundopt::FeatureRecord rec =
        fundopt::extract_features(img, masks, side);
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + out_path);
    }
    out << fundopt::feature_record_to_json(rec).dump(2) << '\n';
    return 0;
}

int run_loss(const std::string& pred_path, const std::string& truth_path,
             double alpha, double gamma, double beta) {
    const Eigen::ArrayXd pred = read_value_file(pred_path);
    const Eigen::ArrayXd truth = read_value_file(truth_path);
    if (pred.size() != truth.size()) {
        throw std::runtime_error("pred and truth must have equal length");
    }

    fundopt::FocalParams fp;
    fp.alpha = alpha;
    fp.gamma = gamma;
    fp.beta_fn = beta;

    double focal = 0.0, fn = 0.0, total = 0.0;
    for (Eigen::Index i = 0; i < pred.size(); ++i) {
        focal += fundopt::focal_loss(pred[i], truth[i], fp);
        fn += fundopt::fn_penalty(pred[i], truth[i]);
        total += fundopt::total_loss(pred[i], truth[i], fp);
    }
    const auto n = static_cast<double>(pred.size());

    nlohmann::ordered_json j;
    j["dice"] = fundopt::dice_loss(pred, truth);
    j["cross_entropy"] = fundopt::cross_entropy_loss(pred, truth);
    j["seg"] = fundopt::seg_loss(pred, truth, {});
    j["focal"] = focal / n;
    j["fn_penalty"] = fn / n;
    j["total"] = total / n;
    std::cout << j.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fundus-image analysis and hybrid GA/Bayesian "
                 "hyperparameter optimization toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    // optimize
    auto* optimize = app.add_subcommand(
        "optimize", "Run the optimizer on a named objective");
    std::string config_path, objective, opt_out;
    std::optional<std::uint64_t> seed_override;
    optimize->add_option("--config", config_path, "JSON run configuration")
        ->required();
    optimize->add_option("--objective", objective, "objective name")
        ->required();
    optimize->add_option("--out", opt_out, "JSONL history output path")
        ->required();
    optimize->add_option("--seed", seed_override,
                         "override the config seed");

    // benchmark
    auto* benchmark = app.add_subcommand(
        "benchmark", "Compare optimization methods at a fixed budget");
    std::string objectives_csv, methods_csv = "agbo,random";
    int seeds = 10;
    int budget = 60;
    std::string bench_out;
    benchmark
        ->add_option("--objectives", objectives_csv,
                     "comma-separated objective names")
        ->required();
    benchmark->add_option("--methods", methods_csv,
                          "comma-separated methods "
                          "(agbo,random,ga-only,bo-only)");
    benchmark->add_option("--seeds", seeds, "number of seeds (0..n-1)");
    benchmark->add_option("--budget", budget, "evaluations per run");
    benchmark->add_option("--out", bench_out, "CSV output path")->required();

    // standardize
    auto* standardize =
        app.add_subcommand("standardize", "Standardize a fundus PNG");
    std::string std_in, std_out;
    int std_size = 512;
    standardize->add_option("--input", std_in, "input PNG")->required();
    standardize->add_option("--output", std_out, "output PNG")->required();
    standardize->add_option("--size", std_size, "output side length");

    // features
    auto* features = app.add_subcommand(
        "features", "Extract per-eye features from image plus masks");
    std::string feat_image, feat_disc, feat_cup, feat_out;
    std::string laterality = "right";
    features->add_option("--image", feat_image, "standardized PNG")
        ->required();
    features->add_option("--disc", feat_disc, "disc mask PNG (nonzero = in)")
        ->required();
    features->add_option("--cup", feat_cup, "cup mask PNG (nonzero = in)")
        ->required();
    features->add_option("--laterality", laterality, "right or left")
        ->check(CLI::IsMember({"right", "left"}));
    features->add_option("--out", feat_out, "output JSON path")->required();

    // loss
    auto* loss = app.add_subcommand(
        "loss", "Evaluate loss terms on prediction/truth CSV vectors");
    std::string pred_path, truth_path;
    double alpha = 0.25, gamma = 2.0, beta = 0.5;
    loss->add_option("--pred", pred_path, "predictions, one per line")
        ->required();
    loss->add_option("--truth", truth_path, "labels, one per line")
        ->required();
    loss->add_option("--alpha", alpha, "focal alpha");
    loss->add_option("--gamma", gamma, "focal gamma");
    loss->add_option("--beta", beta, "false-negative penalty weight");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help / --version
        }
        std::cerr << e.what() << "\n\n" << app.help() << '\n';
        return 1;
    }

    try {
        if (optimize->parsed()) {
            return run_optimize(config_path, objective, opt_out,
                                seed_override);
        }
        if (benchmark->parsed()) {
            return run_benchmark(objectives_csv, methods_csv, seeds, budget,
                                 bench_out);
        }
        if (standardize->parsed()) {
            return run_standardize(std_in, std_out, std_size);
        }
        if (features->parsed()) {
            return run_features(feat_image, feat_disc, feat_cup, laterality,
                                feat_out);
        }
        if (loss->parsed()) {
            return run_loss(pred_path, truth_path, alpha, gamma, beta);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
