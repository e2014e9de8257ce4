#include "fundopt/objectives.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fundopt {

namespace {

void check_domain(const SearchSpace& space, const Candidate& c,
                  const std::string& name) {
    if (!in_domain(space, c)) {
        throw std::invalid_argument(name + ": point out of domain");
    }
}

SearchSpace box(int dims, double lo, double hi) {
    SearchSpace space;
    for (int d = 0; d < dims; ++d) {
        space.dims.push_back(ContinuousDim{lo, hi});
    }
    return space;
}

double branin(double x1, double x2) {
    constexpr double a = 1.0;
    const double b = 5.1 / (4.0 * std::numbers::pi * std::numbers::pi);
    const double c = 5.0 / std::numbers::pi;
    constexpr double r = 6.0;
    constexpr double s = 10.0;
    const double t = 1.0 / (8.0 * std::numbers::pi);
    const double u = x2 - b * x1 * x1 + c * x1 - r;
    return a * u * u + s * (1.0 - t) * std::cos(x1) + s;
}

double rastrigin(const std::vector<double>& x) {
    double sum = 10.0 * static_cast<double>(x.size());
    for (double v : x) {
        sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
    }
    return sum;
}

double hartmann6(const std::vector<double>& x) {
    static const double alpha[4] = {1.0, 1.2, 3.0, 3.2};
    static const double a[4][6] = {
        {10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
        {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
        {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
        {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
    static const double p[4][6] = {
        {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
        {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
        {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
        {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        double inner = 0.0;
        for (int j = 0; j < 6; ++j) {
            const double d = x[static_cast<std::size_t>(j)] - p[i][j];
            inner += a[i][j] * d * d;
        }
        sum += alpha[i] * std::exp(-inner);
    }
    return -sum;
}

} // namespace

double mock_tuning_fitness(double batch_size, double epochs,
                           double learning_rate) {
    const double db = std::log2(batch_size) - 3.0;
    const double de = (epochs - 80.0) / 40.0;
    const double dl = std::log10(learning_rate) + 4.0;
    return -(db * db + de * de + dl * dl);
}

const std::vector<std::string>& objective_names() {
    static const std::vector<std::string> names = {
        "sphere", "branin", "rastrigin", "hartmann6", "mock-tuning"};
    return names;
}

ObjectiveHandle make_objective(const std::string& name) {
    ObjectiveHandle obj;
    obj.name = name;

    if (name == "sphere") {
        obj.space = box(3, -5.0, 5.0);
        obj.best_fitness = 0.0;
        obj.best_point = Candidate{{0.0, 0.0, 0.0}};
        obj.evaluate = [space = obj.space](const Candidate& c) {
            check_domain(space, c, "sphere");
            double sum = 0.0;
            for (double v : c.genes) {
                sum += v * v;
            }
            return -sum;
        };
    } else if (name == "branin") {
        SearchSpace space;
        space.dims.push_back(ContinuousDim{-5.0, 10.0});
        space.dims.push_back(ContinuousDim{0.0, 15.0});
        obj.space = space;
        obj.best_fitness = -0.39788735772973816;
        obj.best_point = Candidate{{std::numbers::pi, 2.275}};
        obj.evaluate = [space](const Candidate& c) {
            check_domain(space, c, "branin");
            return -branin(c.genes[0], c.genes[1]);
        };
    } else if (name == "rastrigin") {
        obj.space = box(3, -5.12, 5.12);
        obj.best_fitness = 0.0;
        obj.best_point = Candidate{{0.0, 0.0, 0.0}};
        obj.evaluate = [space = obj.space](const Candidate& c) {
            check_domain(space, c, "rastrigin");
            return -rastrigin(c.genes);
        };
    } else if (name == "hartmann6") {
        obj.space = box(6, 0.0, 1.0);
        obj.best_fitness = 3.32237;
        obj.best_point = Candidate{
            {0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573}};
        obj.evaluate = [space = obj.space](const Candidate& c) {
            check_domain(space, c, "hartmann6");
            return -hartmann6(c.genes);
        };
    } else if (name == "mock-tuning") {
        SearchSpace space;
        space.dims.push_back(CategoricalDim{{"8", "16", "32", "64"}});
        space.dims.push_back(IntegerDim{10, 100});
        space.dims.push_back(
            ContinuousDim{1e-5, 1e-2, ContinuousDim::Scale::log});
        obj.space = space;
        obj.best_fitness = 0.0;
        obj.best_point = Candidate{{0.0, 80.0, 1e-4}};
        obj.evaluate = [space](const Candidate& c) {
            check_domain(space, c, "mock-tuning");
            const double batch =
                8.0 * std::pow(2.0, c.genes[0]); // choices 8,16,32,64
            return mock_tuning_fitness(batch, c.genes[1], c.genes[2]);
        };
    } else {
        throw std::invalid_argument("unknown objective: " + name);
    }
    return obj;
}

} // namespace fundopt
