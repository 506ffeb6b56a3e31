#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pathint/grid.hpp"
#include "pathint/path.hpp"

namespace pathint {

/// Partition of [start, end] with breakpoints on a host grid, stored as grid
/// indices. A full partition covers the whole grid span; truncate() produces
/// partitions of [start, t]. A single breakpoint means "no intervals"
/// (the signaled empty case of truncate at t = start).
class Partition {
public:
    /// Full partition from explicit grid indices (must start at 0 and end at
    /// the last grid index, strictly increasing).
    static Partition from_indices(TimeGrid grid, std::vector<std::size_t> indices);

    /// Full partition from breakpoint times, each matched to a grid point.
    static Partition from_times(const TimeGrid& grid, std::span<const double> times);

    const TimeGrid& grid() const { return grid_; }
    std::size_t breakpoint_count() const { return idx_.size(); }
    std::size_t interval_count() const { return idx_.size() - 1; }
    bool empty() const { return idx_.size() < 2; }

    std::size_t index(std::size_t k) const { return idx_[k]; }
    double time(std::size_t k) const { return grid_[idx_[k]]; }
    std::span<const std::size_t> indices() const { return idx_; }

    double start() const { return time(0); }
    double end() const { return time(idx_.size() - 1); }

private:
    Partition(TimeGrid grid, std::vector<std::size_t> idx);
    friend Partition truncate(const Partition&, double);

    TimeGrid grid_;
    std::vector<std::size_t> idx_;
};

/// Mesh: the largest interval length.
double mesh(const Partition& p);

/// Truncation pi(t) = {[u, v ^ t] : [u, v] in pi, u < t}. t must be a grid
/// point; t = start yields the empty partition (signaled by empty(), not an
/// error). The final breakpoint is exactly t.
Partition truncate(const Partition& p, double t);

/// Largest breakpoint <= s.
double locate_left(const Partition& p, double s);

/// Nested ("increasing") family of partitions with decreasing mesh, indexed by
/// level. Every breakpoint of level n appears in level n+1.
class PartitionSequence {
public:
    /// Validates nestedness and strictly decreasing meshes.
    explicit PartitionSequence(std::vector<Partition> levels);

    const TimeGrid& grid() const { return levels_.front().grid(); }
    std::size_t level_count() const { return levels_.size(); }
    const Partition& level(std::size_t n) const { return levels_[n]; }
    const Partition& finest() const { return levels_.back(); }

private:
    std::vector<Partition> levels_;
};

/// Dyadic levels 0..max_level on a uniform grid with 2^L + 1 points: level n
/// has breakpoints at index stride 2^(L-n).
PartitionSequence dyadic_sequence(const TimeGrid& grid, std::size_t max_level);

/// Values of x at the breakpoints of p, as a path on the coarser grid.
SampledPath sample_at_breakpoints(const SampledPath& x, const Partition& p);

} // namespace pathint
