#pragma once

#include <cstddef>
#include <functional>
#include <memory>

#include "pathint/grid.hpp"
#include "pathint/path.hpp"

namespace pathint {

/// Function of interval endpoints (s,t), s <= t, on grid index pairs. Values
/// are dim-vectors; magnitude(i,j) is the Euclidean length used by variation
/// norms. Vanishes on the diagonal by contract.
class TwoParamField {
public:
    using ComponentFn = std::function<double(std::size_t, std::size_t, std::size_t)>;

    TwoParamField(TimeGrid grid, std::size_t dim, ComponentFn eval);

    const TimeGrid& grid() const { return grid_; }
    std::size_t dim() const { return dim_; }

    double component(std::size_t i, std::size_t j, std::size_t c) const {
        return eval_(i, j, c);
    }
    double magnitude(std::size_t i, std::size_t j) const;

private:
    TimeGrid grid_;
    std::size_t dim_;
    ComponentFn eval_;
};

/// Increment field X_{s,t} of a path.
TwoParamField increment_field(const SampledPath& x);

/// Nonnegative superadditive two-parameter function vanishing on the diagonal:
/// omega(s,u) + omega(u,t) <= omega(s,t). Superadditivity is a contract of the
/// producer; verify_superadditive (variation.hpp) checks it.
class ControlFunction {
public:
    using Fn = std::function<double(std::size_t, std::size_t)>;

    ControlFunction(TimeGrid grid, Fn omega);

    const TimeGrid& grid() const { return grid_; }
    double operator()(std::size_t i, std::size_t j) const { return omega_(i, j); }
    double at_times(double s, double t) const;

private:
    TimeGrid grid_;
    Fn omega_;
};

} // namespace pathint
