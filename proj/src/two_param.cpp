#include "pathint/two_param.hpp"

#include <cmath>
#include <stdexcept>

namespace pathint {

TwoParamField::TwoParamField(TimeGrid grid, std::size_t dim, ComponentFn eval)
    : grid_(std::move(grid)), dim_(dim), eval_(std::move(eval)) {
    if (dim_ == 0) {
        throw std::invalid_argument("TwoParamField: dimension must be >= 1");
    }
    if (!eval_) {
        throw std::invalid_argument("TwoParamField: missing evaluator");
    }
}

double TwoParamField::magnitude(std::size_t i, std::size_t j) const {
    if (dim_ == 1) {
        return std::abs(eval_(i, j, 0));
    }
    double s = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) {
        const double v = eval_(i, j, c);
        s += v * v;
    }
    return std::sqrt(s);
}

TwoParamField increment_field(const SampledPath& x) {
    return TwoParamField(x.grid(), x.dim(),
                         [x](std::size_t i, std::size_t j, std::size_t c) {
                             return x.increment(i, j, c);
                         });
}

ControlFunction::ControlFunction(TimeGrid grid, Fn omega)
    : grid_(std::move(grid)), omega_(std::move(omega)) {
    if (!omega_) {
        throw std::invalid_argument("ControlFunction: missing evaluator");
    }
}

double ControlFunction::at_times(double s, double t) const {
    return omega_(grid_.index_of(s), grid_.index_of(t));
}

} // namespace pathint
