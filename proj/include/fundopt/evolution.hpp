#pragma once

#include "fundopt/rng.hpp"
#include "fundopt/search_space.hpp"

#include <utility>
#include <vector>

namespace fundopt {

struct GaParams {
    double pc = 0.9;           ///< crossover probability
    double pm = 0.2;           ///< per-gene mutation probability
    int pool_size = 50;        ///< candidates emitted per generation
    int tournament_k = 3;      ///< tournament size for parent selection
    double mutation_sigma = 0.1; ///< Gaussian step as a fraction of range
};

using ScoredCandidate = std::pair<Candidate, double>;

/// Each gene uniform over its domain: log dims uniform in log space,
/// integers uniform inclusive, categoricals uniform over choices.
Candidate sample_uniform(const SearchSpace& space, RandomStream& rng);

/// Two independent size-k tournaments (k distinct entrants each, clamped to
/// the population size); each returns its fitness argmax, ties to the
/// earlier index.
std::pair<Candidate, Candidate> select_parents(
    const std::vector<ScoredCandidate>& population, int k, RandomStream& rng);

/// With probability pc, uniform crossover (each gene from either parent with
/// probability 1/2); otherwise a copy of the first parent.
Candidate crossover(const Candidate& a, const Candidate& b, double pc,
                    RandomStream& rng);

/// Per gene with probability pm: continuous genes take a Gaussian step of
/// std sigma*range (log dims step in log space) clamped to bounds; integer
/// genes perturb, round and clamp; categorical genes re-draw uniformly among
/// the other choices.
Candidate mutate(const Candidate& c, const SearchSpace& space, double pm,
                 double sigma, RandomStream& rng);

/// One GA generation over the evaluated history: the population is the top
/// min(20, |history|) by fitness, and select/crossover/mutate repeats until
/// pool_size candidates exist. Candidates duplicating a history point within
/// 1e-9 in normalized space are re-generated, at most 10 retries each.
std::vector<Candidate> evolve_candidates(
    const std::vector<ScoredCandidate>& history, const SearchSpace& space,
    const GaParams& ga, RandomStream& rng);

} // namespace fundopt
