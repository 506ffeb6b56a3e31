#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "pathint/grid.hpp"

namespace pathint {

/// A d-dimensional path sampled on a TimeGrid. Values are stored row-major,
/// one d-vector per grid point. Immutable in spirit: operations return new
/// paths instead of mutating.
class SampledPath {
public:
    SampledPath(TimeGrid grid, std::size_t dim, std::vector<double> values);

    const TimeGrid& grid() const { return grid_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return grid_.size(); }

    double value(std::size_t i, std::size_t component) const {
        return values_[i * dim_ + component];
    }
    std::span<const double> at(std::size_t i) const {
        return {values_.data() + i * dim_, dim_};
    }
    std::span<const double> values() const { return values_; }

    /// X_{s,t} for one component, by grid indices.
    double increment(std::size_t i0, std::size_t i1, std::size_t component) const {
        return value(i1, component) - value(i0, component);
    }

    /// Single-component view as a new d=1 path (copies values).
    SampledPath component(std::size_t c) const;

private:
    TimeGrid grid_;
    std::size_t dim_;
    std::vector<double> values_;
};

/// Increment X_{s,t} = X_t - X_s of a path between two grid times.
struct PathIncrement {
    double s;
    double t;
    std::vector<double> delta;
};

PathIncrement make_increment(const SampledPath& x, std::size_t i0, std::size_t i1);

/// Brownian sample: cumulative Gaussian increments with variance equal to the
/// grid spacing, B(start) = 0. Increments are drawn from a counter-based
/// generator keyed by (seed, increment index, component), so generation is
/// order-independent and bit-reproducible.
SampledPath sample_brownian(std::uint64_t seed, const TimeGrid& grid, std::size_t d);

/// Truncated lacunary Fourier pair on [-1,1]:
///   component 1: sum_{k=1..m} 2^{-alpha k} sin(2^k pi t)
///   component 2: sum_{k=1..m} 2^{-alpha k} cos(2^k pi t)
/// Terms are added smallest-first to limit rounding. The grid must span [-1,1].
SampledPath lacunary_pair(double alpha, std::size_t m, const TimeGrid& grid);

/// Pointwise image f(X_t) of a scalar path. Throws NumericDomainError when f
/// produces a non-finite value.
SampledPath compose(const std::function<double(double)>& f, const SampledPath& x);

/// Piecewise-linear approximation of x along the breakpoints of level_grid,
/// frozen at its time-t value from t onward:
///   s < t : interpolant between surrounding level breakpoints,
///   s >= t: interpolant value at t.
/// level_grid points must be a subset of x's grid; t must be a grid point.
SampledPath stopped_linear_approximation(const SampledPath& x, const TimeGrid& level_grid,
                                         double t);

/// CSV dump: header "t,x1,...,xd", one row per grid point, 17 significant digits.
void write_path_csv(const SampledPath& x, std::ostream& out);

} // namespace pathint
