#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fundopt {

struct ContinuousDim {
    double lo = 0.0;
    double hi = 1.0;
    enum class Scale { linear, log } scale = Scale::linear;
};

struct IntegerDim {
    std::int64_t lo = 0;
    std::int64_t hi = 1;
};

struct CategoricalDim {
    std::vector<std::string> choices;
};

using Dimension = std::variant<ContinuousDim, IntegerDim, CategoricalDim>;

/// Mixed continuous/integer/categorical hyperparameter domain.
struct SearchSpace {
    std::vector<Dimension> dims;

    std::size_t size() const { return dims.size(); }

    /// Number of coordinates after normalization (categoricals expand to
    /// one-hot blocks).
    Eigen::Index normalized_size() const;
};

/// Throws std::invalid_argument describing the first invalid dimension
/// (lo >= hi, log scale with lo <= 0, empty choices).
void validate(const SearchSpace& space);

/// A point in a search space. Continuous genes hold the raw value, integer
/// genes an integral value, categorical genes the choice index.
struct Candidate {
    std::vector<double> genes;

    bool operator==(const Candidate&) const = default;
};

bool in_domain(const SearchSpace& space, const Candidate& c);

/// Maps a candidate into kernel space: continuous and integer genes scale to
/// [0, 1] (log dims via the log transform); categorical genes become one-hot
/// coordinates scaled by 1/sqrt(2) so any two distinct choices sit at
/// distance 1.
Eigen::VectorXd normalize(const SearchSpace& space, const Candidate& c);

} // namespace fundopt
