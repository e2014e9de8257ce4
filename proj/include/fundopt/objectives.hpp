#pragma once

#include "fundopt/search_space.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fundopt {

/// A named black-box objective under the maximization convention (classic
/// minimization benchmarks are negated). evaluate throws
/// std::invalid_argument on out-of-domain points.
struct ObjectiveHandle {
    std::string name;
    SearchSpace space;
    std::function<double(const Candidate&)> evaluate;
    bool parallel_safe = true;
    /// Best fitness and its location, when known.
    std::optional<double> best_fitness;
    std::optional<Candidate> best_point;

    std::size_t arity() const { return space.dims.size(); }
};

/// Registered names: sphere, branin, rastrigin, hartmann6, mock-tuning.
const std::vector<std::string>& objective_names();

/// Builds a registered objective with its canonical domain. Throws
/// std::invalid_argument for unknown names.
ObjectiveHandle make_objective(const std::string& name);

/// Mock hyperparameter-tuning fitness over (batch size, epochs, learning
/// rate): negative squared distance in transformed coordinates, maximal at
/// exactly (8, 80, 1e-4).
double mock_tuning_fitness(double batch_size, double epochs,
                           double learning_rate);

} // namespace fundopt
