#include "fundopt/search_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fundopt {

Eigen::Index SearchSpace::normalized_size() const {
    Eigen::Index n = 0;
    for (const auto& dim : dims) {
        if (const auto* cat = std::get_if<CategoricalDim>(&dim)) {
            n += static_cast<Eigen::Index>(cat->choices.size());
        } else {
            n += 1;
        }
    }
    return n;
}

void validate(const SearchSpace& space) {
    if (space.dims.empty()) {
        throw std::invalid_argument("search space has no dimensions");
    }
    for (std::size_t d = 0; d < space.dims.size(); ++d) {
        const std::string where = "space[" + std::to_string(d) + "]";
        if (const auto* c = std::get_if<ContinuousDim>(&space.dims[d])) {
            if (!(c->lo < c->hi)) {
                throw std::invalid_argument(where + ": lo must be < hi");
            }
            if (c->scale == ContinuousDim::Scale::log && c->lo <= 0.0) {
                throw std::invalid_argument(where +
                                            ": log scale requires lo > 0");
            }
        } else if (const auto* i = std::get_if<IntegerDim>(&space.dims[d])) {
            if (!(i->lo < i->hi)) {
                throw std::invalid_argument(where + ": lo must be < hi");
            }
        } else {
            const auto& cat = std::get<CategoricalDim>(space.dims[d]);
            if (cat.choices.empty()) {
                throw std::invalid_argument(where + ": choices must be nonempty");
            }
        }
    }
}

bool in_domain(const SearchSpace& space, const Candidate& c) {
    if (c.genes.size() != space.dims.size()) {
        return false;
    }
    for (std::size_t d = 0; d < space.dims.size(); ++d) {
        const double v = c.genes[d];
        if (const auto* cont = std::get_if<ContinuousDim>(&space.dims[d])) {
            if (v < cont->lo || v > cont->hi) {
                return false;
            }
        } else if (const auto* idim = std::get_if<IntegerDim>(&space.dims[d])) {
            if (v != std::floor(v) || v < static_cast<double>(idim->lo) ||
                v > static_cast<double>(idim->hi)) {
                return false;
            }
        } else {
            const auto& cat = std::get<CategoricalDim>(space.dims[d]);
            if (v != std::floor(v) || v < 0.0 ||
                v >= static_cast<double>(cat.choices.size())) {
                return false;
            }
        }
    }
    return true;
}

Eigen::VectorXd normalize(const SearchSpace& space, const Candidate& c) {
    if (c.genes.size() != space.dims.size()) {
        throw std::invalid_argument("candidate arity mismatch");
    }
    Eigen::VectorXd out(space.normalized_size());
    Eigen::Index k = 0;
    for (std::size_t d = 0; d < space.dims.size(); ++d) {
        const double v = c.genes[d];
        if (const auto* cont = std::get_if<ContinuousDim>(&space.dims[d])) {
            if (cont->scale == ContinuousDim::Scale::log) {
                out[k++] = (std::log(v) - std::log(cont->lo)) /
                           (std::log(cont->hi) - std::log(cont->lo));
            } else {
                out[k++] = (v - cont->lo) / (cont->hi - cont->lo);
            }
        } else if (const auto* idim = std::get_if<IntegerDim>(&space.dims[d])) {
            out[k++] = (v - static_cast<double>(idim->lo)) /
                       static_cast<double>(idim->hi - idim->lo);
        } else {
            const auto& cat = std::get<CategoricalDim>(space.dims[d]);
            const auto idx = static_cast<std::size_t>(v);
            for (std::size_t j = 0; j < cat.choices.size(); ++j) {
                out[k++] = j == idx ? 1.0 / std::numbers::sqrt2 : 0.0;
            }
        }
    }
    return out;
}

} // namespace fundopt
