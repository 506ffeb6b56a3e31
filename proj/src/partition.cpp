#include "pathint/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace pathint {

Partition::Partition(TimeGrid grid, std::vector<std::size_t> idx)
    : grid_(std::move(grid)), idx_(std::move(idx)) {}

Partition Partition::from_indices(TimeGrid grid, std::vector<std::size_t> indices) {
    if (indices.empty()) {
        throw std::invalid_argument("Partition: no breakpoints");
    }
    for (std::size_t k = 0; k + 1 < indices.size(); ++k) {
        if (!(indices[k] < indices[k + 1])) {
            throw std::invalid_argument("Partition: indices must be strictly increasing");
        }
    }
    if (indices.back() >= grid.size()) {
        throw std::invalid_argument("Partition: index out of grid range");
    }
    if (indices.front() != 0 || indices.back() != grid.size() - 1) {
        throw std::invalid_argument("Partition: must cover the full grid span");
    }
    return Partition(std::move(grid), std::move(indices));
}

Partition Partition::from_times(const TimeGrid& grid, std::span<const double> times) {
    std::vector<std::size_t> idx(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        idx[k] = grid.index_of(times[k]);
    }
    return from_indices(grid, std::move(idx));
}

double mesh(const Partition& p) {
    if (p.empty()) {
        throw std::invalid_argument("mesh: empty partition");
    }
    double m = 0.0;
    for (std::size_t k = 0; k + 1 < p.breakpoint_count(); ++k) {
        m = std::max(m, p.time(k + 1) - p.time(k));
    }
    return m;
}

Partition truncate(const Partition& p, double t) {
    const std::size_t t_idx = p.grid().index_of(t);
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < p.breakpoint_count() && p.index(k) < t_idx; ++k) {
        idx.push_back(p.index(k));
    }
    idx.push_back(t_idx); // [u, v ^ t]: the final breakpoint is exactly t
    return Partition(p.grid(), std::move(idx));
}

double locate_left(const Partition& p, double s) {
    if (s < p.grid().start() || s > p.grid().horizon()) {
        throw std::invalid_argument("locate_left: time outside grid range");
    }
    std::size_t lo = 0, hi = p.breakpoint_count() - 1;
    if (p.time(hi) <= s) return p.time(hi);
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (p.time(mid) <= s) lo = mid; else hi = mid;
    }
    return p.time(lo);
}

PartitionSequence::PartitionSequence(std::vector<Partition> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) {
        throw std::invalid_argument("PartitionSequence: no levels");
    }
    for (std::size_t n = 0; n < levels_.size(); ++n) {
        if (!levels_[n].grid().same_as(levels_.front().grid())) {
            throw std::invalid_argument("PartitionSequence: levels on different grids");
        }
        if (levels_[n].empty()) {
            throw std::invalid_argument("PartitionSequence: empty level");
        }
    }
    for (std::size_t n = 0; n + 1 < levels_.size(); ++n) {
        const auto coarse = levels_[n].indices();
        const auto fine = levels_[n + 1].indices();
        if (!std::includes(fine.begin(), fine.end(), coarse.begin(), coarse.end())) {
            throw std::invalid_argument("PartitionSequence: levels are not nested");
        }
        if (!(mesh(levels_[n + 1]) < mesh(levels_[n]))) {
            throw std::invalid_argument("PartitionSequence: mesh must strictly decrease");
        }
    }
}

PartitionSequence dyadic_sequence(const TimeGrid& grid, std::size_t max_level) {
    const auto L = grid.log2_intervals();
    if (!L || !grid.is_uniform()) {
        throw std::invalid_argument("dyadic_sequence: grid must be uniform with 2^L + 1 points");
    }
    if (max_level > *L) {
        throw std::invalid_argument("dyadic_sequence: max_level exceeds grid resolution");
    }
    std::vector<Partition> levels;
    levels.reserve(max_level + 1);
    for (std::size_t n = 0; n <= max_level; ++n) {
        const std::size_t stride = std::size_t{1} << (*L - n);
        std::vector<std::size_t> idx;
        idx.reserve((std::size_t{1} << n) + 1);
        for (std::size_t i = 0; i < grid.size(); i += stride) {
            idx.push_back(i);
        }
        levels.push_back(Partition::from_indices(grid, std::move(idx)));
    }
    return PartitionSequence(std::move(levels));
}

SampledPath sample_at_breakpoints(const SampledPath& x, const Partition& p) {
    if (!x.grid().same_as(p.grid())) {
        throw std::invalid_argument("sample_at_breakpoints: partition on a different grid");
    }
    if (p.empty()) {
        throw std::invalid_argument("sample_at_breakpoints: empty partition");
    }
    std::vector<double> times(p.breakpoint_count());
    std::vector<double> vals(p.breakpoint_count() * x.dim());
    for (std::size_t k = 0; k < p.breakpoint_count(); ++k) {
        times[k] = p.time(k);
        for (std::size_t c = 0; c < x.dim(); ++c) {
            vals[k * x.dim() + c] = x.value(p.index(k), c);
        }
    }
    return SampledPath(TimeGrid(std::move(times)), x.dim(), std::move(vals));
}

} // namespace pathint
