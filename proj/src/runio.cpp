#include "fundopt/runio.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

namespace fundopt {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad_key(const std::string& path, const std::string& what) {
    throw ConfigError("config key \"" + path + "\": " + what);
}

void reject_unknown(const ordered_json& j, const std::string& prefix,
                    const std::set<std::string>& known) {
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            bad_key(prefix.empty() ? key : prefix + "." + key,
                    "unknown key");
        }
    }
}

double require_number(const ordered_json& j, const std::string& path) {
    if (!j.is_number()) {
        bad_key(path, "expected a number");
    }
    return j.get<double>();
}

std::int64_t require_integer(const ordered_json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        bad_key(path, "expected an integer");
    }
    return j.get<std::int64_t>();
}

Dimension dimension_from_json(const ordered_json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("type")) {
        bad_key(path, "expected an object with a \"type\" tag");
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "continuous") {
        reject_unknown(j, path, {"type", "lo", "hi", "scale"});
        if (!j.contains("lo") || !j.contains("hi")) {
            bad_key(path, "continuous dimension needs lo and hi");
        }
        ContinuousDim dim;
        dim.lo = require_number(j.at("lo"), path + ".lo");
        dim.hi = require_number(j.at("hi"), path + ".hi");
        if (j.contains("scale")) {
            const std::string scale = j.at("scale").get<std::string>();
            if (scale == "log") {
                dim.scale = ContinuousDim::Scale::log;
            } else if (scale != "linear") {
                bad_key(path + ".scale", "must be \"linear\" or \"log\"");
            }
        }
        if (!(dim.lo < dim.hi)) {
            bad_key(path, "lo must be < hi");
        }
        if (dim.scale == ContinuousDim::Scale::log && dim.lo <= 0.0) {
            bad_key(path, "log scale requires lo > 0");
        }
        return dim;
    }
    if (type == "integer") {
        reject_unknown(j, path, {"type", "lo", "hi"});
        if (!j.contains("lo") || !j.contains("hi")) {
            bad_key(path, "integer dimension needs lo and hi");
        }
        IntegerDim dim;
        dim.lo = require_integer(j.at("lo"), path + ".lo");
        dim.hi = require_integer(j.at("hi"), path + ".hi");
        if (!(dim.lo < dim.hi)) {
            bad_key(path, "lo must be < hi");
        }
        return dim;
    }
    if (type == "categorical") {
        reject_unknown(j, path, {"type", "choices"});
        if (!j.contains("choices") || !j.at("choices").is_array() ||
            j.at("choices").empty()) {
            bad_key(path + ".choices", "expected a nonempty array");
        }
        CategoricalDim dim;
        for (const auto& choice : j.at("choices")) {
            dim.choices.push_back(choice.is_string()
                                      ? choice.get<std::string>()
                                      : choice.dump());
        }
        return dim;
    }
    bad_key(path + ".type",
            "must be \"continuous\", \"integer\" or \"categorical\"");
}

void check_range(bool ok, const std::string& path, const std::string& what) {
    if (!ok) {
        bad_key(path, what);
    }
}

GaParams ga_from_json(const ordered_json& j) {
    reject_unknown(j, "ga",
                   {"pc", "pm", "pool_size", "tournament_k", "mutation_sigma"});
    GaParams ga;
    if (j.contains("pc")) {
        ga.pc = require_number(j.at("pc"), "ga.pc");
        check_range(ga.pc >= 0.0 && ga.pc <= 1.0, "ga.pc",
                    "must be in [0, 1]");
    }
    if (j.contains("pm")) {
        ga.pm = require_number(j.at("pm"), "ga.pm");
        check_range(ga.pm >= 0.0 && ga.pm <= 1.0, "ga.pm",
                    "must be in [0, 1]");
    }
    if (j.contains("pool_size")) {
        ga.pool_size = static_cast<int>(
            require_integer(j.at("pool_size"), "ga.pool_size"));
        check_range(ga.pool_size >= 1, "ga.pool_size", "must be >= 1");
    }
    if (j.contains("tournament_k")) {
        ga.tournament_k = static_cast<int>(
            require_integer(j.at("tournament_k"), "ga.tournament_k"));
        check_range(ga.tournament_k >= 1, "ga.tournament_k", "must be >= 1");
    }
    if (j.contains("mutation_sigma")) {
        ga.mutation_sigma =
            require_number(j.at("mutation_sigma"), "ga.mutation_sigma");
        check_range(ga.mutation_sigma > 0.0, "ga.mutation_sigma",
                    "must be > 0");
    }
    return ga;
}

KernelSpec kernel_from_json(const ordered_json& j) {
    reject_unknown(j, "kernel",
                   {"lengthscale", "signal_variance", "noise_variance",
                    "refine_lengthscale"});
    KernelSpec spec;
    if (j.contains("lengthscale")) {
        const auto& ls = j.at("lengthscale");
        if (ls.is_array()) {
            spec.lengthscale.resize(static_cast<Eigen::Index>(ls.size()));
            Eigen::Index i = 0;
            for (const auto& v : ls) {
                spec.lengthscale[i++] =
                    require_number(v, "kernel.lengthscale");
            }
        } else {
            spec.lengthscale = Eigen::VectorXd::Constant(
                1, require_number(ls, "kernel.lengthscale"));
        }
        check_range((spec.lengthscale.array() > 0.0).all(),
                    "kernel.lengthscale", "must be > 0");
    }
    if (j.contains("signal_variance")) {
        spec.signal_variance =
            require_number(j.at("signal_variance"), "kernel.signal_variance");
        check_range(spec.signal_variance > 0.0, "kernel.signal_variance",
                    "must be > 0");
    }
    if (j.contains("noise_variance")) {
        spec.noise_variance =
            require_number(j.at("noise_variance"), "kernel.noise_variance");
        check_range(spec.noise_variance >= 0.0, "kernel.noise_variance",
                    "must be >= 0");
    }
    if (j.contains("refine_lengthscale")) {
        if (!j.at("refine_lengthscale").is_boolean()) {
            bad_key("kernel.refine_lengthscale", "expected a boolean");
        }
        spec.refine_lengthscale = j.at("refine_lengthscale").get<bool>();
    }
    return spec;
}

AcquisitionSpec acquisition_from_json(const ordered_json& j) {
    reject_unknown(j, "acquisition", {"kind", "xi", "kappa"});
    AcquisitionSpec spec;
    if (j.contains("kind")) {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "expected-improvement") {
            spec.kind = AcquisitionSpec::Kind::expected_improvement;
        } else if (kind == "ucb") {
            spec.kind = AcquisitionSpec::Kind::ucb;
        } else {
            bad_key("acquisition.kind",
                    "must be \"expected-improvement\" or \"ucb\"");
        }
    }
    if (j.contains("xi")) {
        spec.xi = require_number(j.at("xi"), "acquisition.xi");
        check_range(spec.xi >= 0.0, "acquisition.xi", "must be >= 0");
    }
    if (j.contains("kappa")) {
        spec.kappa = require_number(j.at("kappa"), "acquisition.kappa");
        check_range(spec.kappa > 0.0, "acquisition.kappa", "must be > 0");
    }
    return spec;
}

} // namespace

AgboConfig config_from_json(const ordered_json& j) {
    if (!j.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    reject_unknown(j, "",
                   {"space", "init_points", "iterations", "ga", "kernel",
                    "acquisition", "seed", "patience"});
    if (!j.contains("space")) {
        bad_key("space", "required");
    }
    if (!j.contains("seed")) {
        bad_key("seed", "required");
    }

    AgboConfig cfg;
    if (!j.at("space").is_array() || j.at("space").empty()) {
        bad_key("space", "expected a nonempty array of dimension objects");
    }
    std::size_t d = 0;
    for (const auto& dim : j.at("space")) {
        cfg.space.dims.push_back(dimension_from_json(
            dim, "space[" + std::to_string(d) + "]"));
        ++d;
    }
    validate(cfg.space);

    if (!j.at("seed").is_number_unsigned() &&
        !j.at("seed").is_number_integer()) {
        bad_key("seed", "expected an integer");
    }
    cfg.seed = j.at("seed").get<std::uint64_t>();

    if (j.contains("init_points")) {
        cfg.init_points = static_cast<int>(
            require_integer(j.at("init_points"), "init_points"));
        check_range(cfg.init_points >= 1, "init_points", "must be >= 1");
    }
    if (j.contains("iterations")) {
        cfg.iterations = static_cast<int>(
            require_integer(j.at("iterations"), "iterations"));
        check_range(cfg.iterations >= 0, "iterations", "must be >= 0");
    }
    if (j.contains("patience")) {
        const auto patience =
            static_cast<int>(require_integer(j.at("patience"), "patience"));
        check_range(patience >= 1, "patience", "must be >= 1");
        cfg.patience = patience;
    }
    if (j.contains("ga")) {
        cfg.ga = ga_from_json(j.at("ga"));
    }
    if (j.contains("kernel")) {
        cfg.kernel = kernel_from_json(j.at("kernel"));
    }
    if (j.contains("acquisition")) {
        cfg.acquisition = acquisition_from_json(j.at("acquisition"));
    }
    return cfg;
}

AgboConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " +
                          e.what());
    }
    return config_from_json(j);
}

nlohmann::ordered_json config_to_json(const AgboConfig& cfg) {
    ordered_json space = ordered_json::array();
    for (const auto& dim : cfg.space.dims) {
        if (const auto* cont = std::get_if<ContinuousDim>(&dim)) {
            space.push_back(
                {{"type", "continuous"},
                 {"lo", cont->lo},
                 {"hi", cont->hi},
                 {"scale", cont->scale == ContinuousDim::Scale::log
                               ? "log"
                               : "linear"}});
        } else if (const auto* idim = std::get_if<IntegerDim>(&dim)) {
            space.push_back(
                {{"type", "integer"}, {"lo", idim->lo}, {"hi", idim->hi}});
        } else {
            const auto& cat = std::get<CategoricalDim>(dim);
            space.push_back(
                {{"type", "categorical"}, {"choices", cat.choices}});
        }
    }

    ordered_json j;
    j["space"] = std::move(space);
    j["init_points"] = cfg.init_points;
    j["iterations"] = cfg.iterations;
    j["seed"] = cfg.seed;
    if (cfg.patience) {
        j["patience"] = *cfg.patience;
    }
    j["ga"] = {{"pc", cfg.ga.pc},
               {"pm", cfg.ga.pm},
               {"pool_size", cfg.ga.pool_size},
               {"tournament_k", cfg.ga.tournament_k},
               {"mutation_sigma", cfg.ga.mutation_sigma}};
    ordered_json kernel;
    if (cfg.kernel.lengthscale.size() == 1) {
        kernel["lengthscale"] = cfg.kernel.lengthscale[0];
    } else {
        kernel["lengthscale"] = std::vector<double>(
            cfg.kernel.lengthscale.begin(), cfg.kernel.lengthscale.end());
    }
    kernel["signal_variance"] = cfg.kernel.signal_variance;
    kernel["noise_variance"] = cfg.kernel.noise_variance;
    kernel["refine_lengthscale"] = cfg.kernel.refine_lengthscale;
    j["kernel"] = std::move(kernel);
    j["acquisition"] = {
        {"kind", cfg.acquisition.kind ==
                         AcquisitionSpec::Kind::expected_improvement
                     ? "expected-improvement"
                     : "ucb"},
        {"xi", cfg.acquisition.xi},
        {"kappa", cfg.acquisition.kappa}};
    return j;
}

nlohmann::ordered_json history_record_to_json(const HistoryRecord& rec,
                                              const SearchSpace& space) {
    ordered_json x = ordered_json::array();
    for (std::size_t d = 0; d < rec.candidate.genes.size(); ++d) {
        const double v = rec.candidate.genes[d];
        if (std::holds_alternative<IntegerDim>(space.dims[d])) {
            x.push_back(static_cast<std::int64_t>(v));
        } else if (const auto* cat =
                       std::get_if<CategoricalDim>(&space.dims[d])) {
            x.push_back(cat->choices[static_cast<std::size_t>(v)]);
        } else {
            x.push_back(v);
        }
    }

    ordered_json j;
    j["iter"] = rec.iter;
    j["x"] = std::move(x);
    j["f"] = rec.fitness;
    j["best"] = rec.best_so_far;
    j["acq"] = rec.acq ? ordered_json(*rec.acq) : ordered_json(nullptr);
    j["ms"] = rec.elapsed_ms;
    return j;
}

HistoryWriter::HistoryWriter(const std::filesystem::path& path,
                             SearchSpace space)
    : out_(path, std::ios::trunc), space_(std::move(space)), path_(path) {
    if (!out_) {
        throw std::runtime_error("cannot open history file: " +
                                 path.string());
    }
}

void HistoryWriter::append(const HistoryRecord& rec) {
    out_ << history_record_to_json(rec, space_).dump() << '\n';
    out_.flush();
    if (!out_) {
        throw std::runtime_error("history write failed: " + path_.string());
    }
}

nlohmann::ordered_json feature_record_to_json(const FeatureRecord& rec) {
    ordered_json j;
    j["disc_area"] = rec.disc_area;
    j["cup_area"] = rec.cup_area;
    j["cdr_area"] = rec.cdr_area;
    j["cdr_vertical"] = rec.cdr_vertical;
    j["cdr_horizontal"] = rec.cdr_horizontal;
    j["nrr_area"] = rec.nrr_area;
    j["isnt_i"] = rec.isnt.inferior;
    j["isnt_s"] = rec.isnt.superior;
    j["isnt_n"] = rec.isnt.nasal;
    j["isnt_t"] = rec.isnt.temporal;
    j["contrast"] = rec.texture.contrast;
    j["dissimilarity"] = rec.texture.dissimilarity;
    j["homogeneity"] = rec.texture.homogeneity;
    j["energy"] = rec.texture.energy;
    j["correlation"] = rec.texture.correlation;
    j["asm"] = rec.texture.angular_second_moment;
    j["vessel_mean"] = rec.vessels.mean_vesselness;
    j["vessel_max"] = rec.vessels.max_vesselness;
    j["vessel_density"] = rec.vessels.vessel_density;
    j["cup_within_disc"] = rec.cup_within_disc;
    return j;
}

void export_features_csv(const std::vector<FeatureRecord>& records,
                         const std::filesystem::path& path) {
    if (records.empty()) {
        throw std::invalid_argument("export_features_csv: empty record list");
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open CSV file: " + path.string());
    }
    out << "disc_area,cup_area,cdr_area,cdr_vertical,cdr_horizontal,"
           "nrr_area,isnt_i,isnt_s,isnt_n,isnt_t,contrast,dissimilarity,"
           "homogeneity,energy,correlation,asm,vessel_mean,vessel_max,"
           "vessel_density\n";
    char buf[64];
    auto num = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (const FeatureRecord& r : records) {
        out << r.disc_area << ',' << r.cup_area << ',' << num(r.cdr_area)
            << ',' << num(r.cdr_vertical) << ',' << num(r.cdr_horizontal)
            << ',' << r.nrr_area << ',' << r.isnt.inferior << ','
            << r.isnt.superior << ',' << r.isnt.nasal << ','
            << r.isnt.temporal << ',' << num(r.texture.contrast) << ','
            << num(r.texture.dissimilarity) << ','
            << num(r.texture.homogeneity) << ',' << num(r.texture.energy)
            << ',' << num(r.texture.correlation) << ','
            << num(r.texture.angular_second_moment) << ','
            << num(r.vessels.mean_vesselness) << ','
            << num(r.vessels.max_vesselness) << ','
            << num(r.vessels.vessel_density) << '\n';
    }
    if (!out) {
        throw std::runtime_error("CSV write failed: " + path.string());
    }
}

void export_comparison_csv(const std::vector<ComparisonRow>& rows,
                           const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open CSV file: " + path.string());
    }
    out << "objective,method,seed,best_fitness\n";
    char buf[64];
    for (const ComparisonRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g", row.best_fitness);
        out << row.objective << ',' << to_string(row.method) << ','
            << row.seed << ',' << buf << '\n';
    }
    if (!out) {
        throw std::runtime_error("CSV write failed: " + path.string());
    }
}

} // namespace fundopt
