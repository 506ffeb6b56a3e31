#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace pathint {

/// Finite time grid: strictly increasing points spanning [start, horizon].
/// Most grids start at 0; the lacunary counterexample lives on [-1, 1], so a
/// general start point is allowed. Immutable after construction; copies share
/// the underlying point storage.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> points);

    /// n equally spaced points from a to b.
    static TimeGrid uniform(double a, double b, std::size_t n);

    std::size_t size() const { return pts_->size(); }
    double operator[](std::size_t i) const { return (*pts_)[i]; }
    double start() const { return pts_->front(); }
    double horizon() const { return pts_->back(); }
    double span() const { return horizon() - start(); }
    std::span<const double> points() const { return *pts_; }

    /// Index of a grid time (1e-12 absolute-relative tolerance), or nullopt.
    std::optional<std::size_t> try_index_of(double time) const;

    /// Like try_index_of but throws std::invalid_argument when absent.
    std::size_t index_of(double time) const;

    /// Largest grid index i with points()[i] <= time (time must be in range).
    std::size_t floor_index(double time) const;

    bool is_uniform(double rel_tol = 1e-9) const;

    /// Largest L with size() == 2^L + 1, if the grid has that shape.
    std::optional<std::size_t> log2_intervals() const;

    /// True when both handles see identical points (shared storage shortcut).
    bool same_as(const TimeGrid& other) const;

private:
    std::shared_ptr<const std::vector<double>> pts_;
};

/// Uniform grid on [0, T]; the default constructor for most experiments.
TimeGrid make_uniform_grid(double T, std::size_t n);

} // namespace pathint
