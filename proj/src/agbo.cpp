#include "fundopt/agbo.hpp"

#include "fundopt/rng.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace fundopt {

namespace {

using Clock = std::chrono::steady_clock;

struct Loop {
    const ObjectiveHandle& obj;
    const RecordSink& sink;
    std::vector<HistoryRecord> history;
    std::vector<ScoredCandidate> scored;
    double best = 0.0;

    explicit Loop(const ObjectiveHandle& objective, const RecordSink& s)
        : obj(objective), sink(s) {}

    void evaluate(Candidate candidate, std::optional<double> acq) {
        const auto start = Clock::now();
        const double fitness = obj.evaluate(candidate);
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
            Clock::now() - start);

        HistoryRecord rec;
        rec.iter = static_cast<int>(history.size());
        rec.candidate = candidate;
        rec.fitness = fitness;
        best = history.empty() ? fitness : std::max(best, fitness);
        rec.best_so_far = best;
        rec.acq = acq;
        rec.elapsed_ms = elapsed.count();

        history.push_back(rec);
        scored.emplace_back(std::move(candidate), fitness);
        if (sink) {
            sink(history.back());
        }
    }
};

Eigen::MatrixXd normalized_inputs(const SearchSpace& space,
                                  const std::vector<ScoredCandidate>& scored) {
    Eigen::MatrixXd inputs(static_cast<Eigen::Index>(scored.size()),
                           space.normalized_size());
    for (std::size_t i = 0; i < scored.size(); ++i) {
        inputs.row(static_cast<Eigen::Index>(i)) =
            normalize(space, scored[i].first).transpose();
    }
    return inputs;
}

Eigen::VectorXd fitness_vector(const std::vector<ScoredCandidate>& scored) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(scored.size()));
    for (std::size_t i = 0; i < scored.size(); ++i) {
        y[static_cast<Eigen::Index>(i)] = scored[i].second;
    }
    return y;
}

double acquisition_score(const AcquisitionSpec& spec, double mu, double var,
                         double f_best) {
    const double sigma = std::sqrt(std::max(0.0, var));
    if (spec.kind == AcquisitionSpec::Kind::ucb) {
        return ucb(mu, sigma, spec.kappa);
    }
    return expected_improvement(mu, sigma, f_best, spec.xi);
}

// Shared loop body for agbo and bo-only: the two differ only in how the
// candidate pool is produced.
template <class PoolFn>
AgboResult surrogate_loop(const AgboConfig& cfg, const ObjectiveHandle& obj,
                          const RecordSink& sink, RandomStream& init_rng,
                          PoolFn make_pool) {
    if (obj.arity() != cfg.space.dims.size()) {
        throw std::invalid_argument(
            "objective arity does not match search-space dimensions");
    }

    Loop loop(obj, sink);
    for (int i = 0; i < cfg.init_points; ++i) {
        loop.evaluate(sample_uniform(cfg.space, init_rng), std::nullopt);
    }

    int since_improvement = 0;
    for (int t = 0; t < cfg.iterations; ++t) {
        const GpModel model =
            gp_fit(normalized_inputs(cfg.space, loop.scored),
                   fitness_vector(loop.scored), cfg.kernel);

        const std::vector<Candidate> pool = make_pool(loop.scored);

        double best_acq = 0.0;
        std::size_t best_idx = 0;
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const auto [mu, var] =
                gp_predict(model, normalize(cfg.space, pool[i]));
            const double score =
                acquisition_score(cfg.acquisition, mu, var, loop.best);
            if (i == 0 || score > best_acq) {
                best_acq = score;
                best_idx = i;
            }
        }

        const double previous_best = loop.best;
        loop.evaluate(pool[best_idx], best_acq);
        since_improvement =
            loop.best > previous_best ? 0 : since_improvement + 1;
        if (cfg.patience && since_improvement >= *cfg.patience) {
            break;
        }
    }

    AgboResult result;
    std::tie(result.best, result.best_fitness) =
        best_of_history(loop.history);
    result.history = std::move(loop.history);
    return result;
}

} // namespace

AgboResult agbo_run(const AgboConfig& cfg, const ObjectiveHandle& obj,
                    const RecordSink& sink) {
    RandomStream init_rng(split_seed(cfg.seed, "init"));
    RandomStream ga_rng(split_seed(cfg.seed, "ga"));
    return surrogate_loop(cfg, obj, sink, init_rng,
                          [&](const std::vector<ScoredCandidate>& scored) {
                              return evolve_candidates(scored, cfg.space,
                                                       cfg.ga, ga_rng);
                          });
}

std::pair<Candidate, double> best_of_history(
    const std::vector<HistoryRecord>& history) {
    if (history.empty()) {
        throw std::invalid_argument("best_of_history: empty history");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < history.size(); ++i) {
        if (history[i].fitness > history[best].fitness) {
            best = i;
        }
    }
    return {history[best].candidate, history[best].fitness};
}

std::string to_string(Method m) {
    switch (m) {
    case Method::agbo:
        return "agbo";
    case Method::random_search:
        return "random";
    case Method::ga_only:
        return "ga-only";
    case Method::bo_only:
        return "bo-only";
    }
    return "unknown";
}

Method method_from_string(const std::string& name) {
    if (name == "agbo") {
        return Method::agbo;
    }
    if (name == "random") {
        return Method::random_search;
    }
    if (name == "ga-only") {
        return Method::ga_only;
    }
    if (name == "bo-only") {
        return Method::bo_only;
    }
    throw std::invalid_argument("unknown method: " + name);
}

namespace {

double run_random(const AgboConfig& cfg, const ObjectiveHandle& obj,
                  int budget, RandomStream& init_rng) {
    Loop loop(obj, nullptr);
    for (int i = 0; i < budget; ++i) {
        loop.evaluate(sample_uniform(cfg.space, init_rng), std::nullopt);
    }
    return loop.best;
}

double run_ga_only(const AgboConfig& cfg, const ObjectiveHandle& obj,
                   int budget, RandomStream& init_rng, RandomStream& ga_rng) {
    Loop loop(obj, nullptr);
    for (int i = 0; i < cfg.init_points && i < budget; ++i) {
        loop.evaluate(sample_uniform(cfg.space, init_rng), std::nullopt);
    }
    while (static_cast<int>(loop.history.size()) < budget) {
        const std::vector<Candidate> generation =
            evolve_candidates(loop.scored, cfg.space, cfg.ga, ga_rng);
        for (const Candidate& c : generation) {
            if (static_cast<int>(loop.history.size()) >= budget) {
                break;
            }
            loop.evaluate(c, std::nullopt);
        }
    }
    return loop.best;
}

} // namespace

std::vector<ComparisonRow> compare_methods(
    const std::vector<std::string>& objectives,
    const std::vector<Method>& methods,
    const std::vector<std::uint64_t>& seeds, int budget,
    const AgboConfig& base) {
    if (budget < base.init_points) {
        throw std::invalid_argument("budget must be >= init_points");
    }

    std::vector<ComparisonRow> rows;
    for (const std::string& name : objectives) {
        const ObjectiveHandle obj = make_objective(name);
        for (const Method method : methods) {
            for (const std::uint64_t seed : seeds) {
                AgboConfig cfg = base;
                cfg.space = obj.space;
                cfg.iterations = budget - cfg.init_points;
                // Pair runs per (objective, seed): every method sees the
                // same init stream.
                cfg.seed = split_seed(seed, name);

                double best = 0.0;
                RandomStream init_rng(split_seed(cfg.seed, "init"));
                RandomStream ga_rng(split_seed(cfg.seed, "ga"));
                switch (method) {
                case Method::agbo:
                    best = agbo_run(cfg, obj).best_fitness;
                    break;
                case Method::random_search:
                    best = run_random(cfg, obj, budget, init_rng);
                    break;
                case Method::ga_only:
                    best = run_ga_only(cfg, obj, budget, init_rng, ga_rng);
                    break;
                case Method::bo_only:
                    best = surrogate_loop(
                               cfg, obj, nullptr, init_rng,
                               [&](const std::vector<ScoredCandidate>&) {
                                   std::vector<Candidate> pool;
                                   pool.reserve(static_cast<std::size_t>(
                                       cfg.ga.pool_size));
                                   for (int i = 0; i < cfg.ga.pool_size; ++i) {
                                       pool.push_back(sample_uniform(
                                           cfg.space, ga_rng));
                                   }
                                   return pool;
                               })
                               .best_fitness;
                    break;
                }
                rows.push_back({name, method, seed, best});
            }
        }
    }
    return rows;
}

} // namespace fundopt
