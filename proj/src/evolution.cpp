#include "fundopt/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fundopt {

Candidate sample_uniform(const SearchSpace& space, RandomStream& rng) {
    Candidate c;
    c.genes.reserve(space.dims.size());
    for (const auto& dim : space.dims) {
        if (const auto* cont = std::get_if<ContinuousDim>(&dim)) {
            if (cont->scale == ContinuousDim::Scale::log) {
                c.genes.push_back(std::exp(
                    rng.uniform(std::log(cont->lo), std::log(cont->hi))));
            } else {
                c.genes.push_back(rng.uniform(cont->lo, cont->hi));
            }
        } else if (const auto* idim = std::get_if<IntegerDim>(&dim)) {
            c.genes.push_back(
                static_cast<double>(rng.uniform_int(idim->lo, idim->hi)));
        } else {
            const auto& cat = std::get<CategoricalDim>(dim);
            c.genes.push_back(static_cast<double>(rng.uniform_int(
                0, static_cast<std::int64_t>(cat.choices.size()) - 1)));
        }
    }
    return c;
}

namespace {

// Tournament over distinct entrants via a partial Fisher-Yates shuffle.
std::size_t tournament(const std::vector<ScoredCandidate>& population, int k,
                       RandomStream& rng) {
    const auto n = static_cast<std::int64_t>(population.size());
    const auto entrants = std::min<std::int64_t>(k, n);
    std::vector<std::int64_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0);

    std::size_t best = 0;
    bool have_best = false;
    for (std::int64_t i = 0; i < entrants; ++i) {
        const std::int64_t j = rng.uniform_int(i, n - 1);
        std::swap(indices[i], indices[j]);
        const auto idx = static_cast<std::size_t>(indices[i]);
        if (!have_best || population[idx].second > population[best].second ||
            (population[idx].second == population[best].second &&
             idx < best)) {
            best = idx;
            have_best = true;
        }
    }
    return best;
}

} // namespace

std::pair<Candidate, Candidate> select_parents(
    const std::vector<ScoredCandidate>& population, int k,
    RandomStream& rng) {
    if (population.empty()) {
        throw std::invalid_argument("select_parents: empty population");
    }
    const std::size_t first = tournament(population, k, rng);
    const std::size_t second = tournament(population, k, rng);
    return {population[first].first, population[second].first};
}

Candidate crossover(const Candidate& a, const Candidate& b, double pc,
                    RandomStream& rng) {
    if (a.genes.size() != b.genes.size()) {
        throw std::invalid_argument("crossover: space mismatch");
    }
    if (rng.uniform() >= pc) {
        return a;
    }
    Candidate child;
    child.genes.resize(a.genes.size());
    for (std::size_t d = 0; d < a.genes.size(); ++d) {
        child.genes[d] = rng.uniform() < 0.5 ? a.genes[d] : b.genes[d];
    }
    return child;
}

Candidate mutate(const Candidate& c, const SearchSpace& space, double pm,
                 double sigma, RandomStream& rng) {
    if (c.genes.size() != space.dims.size()) {
        throw std::invalid_argument("mutate: candidate arity mismatch");
    }
    Candidate out = c;
    for (std::size_t d = 0; d < space.dims.size(); ++d) {
        if (rng.uniform() >= pm) {
            continue;
        }
        if (const auto* cont = std::get_if<ContinuousDim>(&space.dims[d])) {
            if (cont->scale == ContinuousDim::Scale::log) {
                const double lo = std::log(cont->lo);
                const double hi = std::log(cont->hi);
                const double v = std::log(out.genes[d]) +
                                 rng.normal() * sigma * (hi - lo);
                out.genes[d] = std::exp(std::clamp(v, lo, hi));
            } else {
                const double v = out.genes[d] + rng.normal() * sigma *
                                                    (cont->hi - cont->lo);
                out.genes[d] = std::clamp(v, cont->lo, cont->hi);
            }
        } else if (const auto* idim = std::get_if<IntegerDim>(&space.dims[d])) {
            const double range = static_cast<double>(idim->hi - idim->lo);
            const double v =
                std::round(out.genes[d] + rng.normal() * sigma * range);
            out.genes[d] = std::clamp(v, static_cast<double>(idim->lo),
                                      static_cast<double>(idim->hi));
        } else {
            const auto& cat = std::get<CategoricalDim>(space.dims[d]);
            const auto n = static_cast<std::int64_t>(cat.choices.size());
            if (n < 2) {
                continue;
            }
            // Uniform among the other choices.
            const std::int64_t cur = static_cast<std::int64_t>(out.genes[d]);
            std::int64_t pick = rng.uniform_int(0, n - 2);
            if (pick >= cur) {
                ++pick;
            }
            out.genes[d] = static_cast<double>(pick);
        }
    }
    return out;
}

std::vector<Candidate> evolve_candidates(
    const std::vector<ScoredCandidate>& history, const SearchSpace& space,
    const GaParams& ga, RandomStream& rng) {
    if (history.empty()) {
        throw std::invalid_argument("evolve_candidates: empty history");
    }

    // Elite population: top min(20, |history|) by fitness, earlier entries
    // winning ties.
    std::vector<std::size_t> order(history.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return history[a].second > history[b].second;
                     });
    const std::size_t elite_count = std::min<std::size_t>(20, order.size());
    std::vector<ScoredCandidate> population;
    population.reserve(elite_count);
    for (std::size_t i = 0; i < elite_count; ++i) {
        population.push_back(history[order[i]]);
    }

    std::vector<Eigen::VectorXd> seen;
    seen.reserve(history.size());
    for (const auto& [cand, fitness] : history) {
        seen.push_back(normalize(space, cand));
    }
    auto is_duplicate = [&](const Candidate& c) {
        const Eigen::VectorXd z = normalize(space, c);
        for (const auto& s : seen) {
            if ((z - s).norm() < 1e-9) {
                return true;
            }
        }
        return false;
    };

    std::vector<Candidate> pool;
    pool.reserve(static_cast<std::size_t>(ga.pool_size));
    while (pool.size() < static_cast<std::size_t>(ga.pool_size)) {
        Candidate child;
        for (int attempt = 0; attempt <= 10; ++attempt) {
            const auto [a, b] =
                select_parents(population, ga.tournament_k, rng);
            child = mutate(crossover(a, b, ga.pc, rng), space, ga.pm,
                           ga.mutation_sigma, rng);
            if (!is_duplicate(child)) {
                break;
            }
        }
        pool.push_back(std::move(child));
    }
    return pool;
}

} // namespace fundopt
