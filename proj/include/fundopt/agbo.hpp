#pragma once

#include "fundopt/evolution.hpp"
#include "fundopt/gp.hpp"
#include "fundopt/objectives.hpp"
#include "fundopt/search_space.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fundopt {

struct AcquisitionSpec {
    enum class Kind { expected_improvement, ucb };
    Kind kind = Kind::expected_improvement;
    double xi = 0.01;   ///< EI exploration offset
    double kappa = 2.0; ///< UCB exploration weight
};

struct AgboConfig {
    SearchSpace space;
    int init_points = 10;
    int iterations = 50;
    GaParams ga;
    KernelSpec kernel;
    AcquisitionSpec acquisition;
    std::uint64_t seed = 0;
    /// Stop after this many consecutive iterations without improvement.
    std::optional<int> patience;
};

/// One evaluated point. iter 0..N-1 is the random-init phase (acq unset);
/// ms is the objective-evaluation wall time.
struct HistoryRecord {
    int iter = 0;
    Candidate candidate;
    double fitness = 0.0;
    double best_so_far = 0.0;
    std::optional<double> acq;
    std::int64_t elapsed_ms = 0;
};

struct AgboResult {
    Candidate best;
    double best_fitness = 0.0;
    std::vector<HistoryRecord> history;
};

/// Called after each evaluation; lets callers stream records to disk so an
/// aborted run keeps its prefix.
using RecordSink = std::function<void(const HistoryRecord&)>;

/// Runs the full loop: evaluate N random points, then per iteration fit the
/// GP to the history, evolve a GA candidate pool, and evaluate the single
/// pool candidate maximizing the acquisition. Returns the history argmax.
AgboResult agbo_run(const AgboConfig& cfg, const ObjectiveHandle& obj,
                    const RecordSink& sink = {});

/// Fitness argmax of a history, earliest record winning ties. Throws
/// std::invalid_argument on an empty history.
std::pair<Candidate, double> best_of_history(
    const std::vector<HistoryRecord>& history);

/// Baselines sharing the AGBO evaluation budget.
enum class Method { agbo, random_search, ga_only, bo_only };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct ComparisonRow {
    std::string objective;
    Method method = Method::agbo;
    std::uint64_t seed = 0;
    double best_fitness = 0.0;
};

/// Runs each (objective, method, seed) cell at an identical evaluation
/// budget. All methods share the same seeded init phase, so at budget == N
/// they coincide; beyond it random search keeps sampling uniformly, ga-only
/// evaluates whole offspring generations, and bo-only runs the AGBO loop
/// with the GA pool replaced by uniform samples.
std::vector<ComparisonRow> compare_methods(
    const std::vector<std::string>& objectives,
    const std::vector<Method>& methods,
    const std::vector<std::uint64_t>& seeds, int budget,
    const AgboConfig& base = {});

} // namespace fundopt
