#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "pathint/numeric.hpp"
#include "pathint/partition.hpp"
#include "pathint/path.hpp"
#include "pathint/two_param.hpp"

namespace testutil {

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Deterministic uniforms for test data.
class TestRng {
public:
    explicit TestRng(std::uint64_t key) : key_(key) {}
    double uniform() { return pathint::counter_uniform(key_, counter_++); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::size_t index(std::size_t n) {
        return std::min<std::size_t>(n - 1, static_cast<std::size_t>(uniform() * n));
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Independent oracle for the p-variation supremum: enumerate every subset of
/// interior breakpoints (exponential; grids of at most ~16 points).
inline double brute_force_pvariation(const pathint::TwoParamField& f, double p, std::size_t i0,
                                     std::size_t i1) {
    const std::size_t interior = i1 - i0 - 1;
    double best = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << interior); ++mask) {
        std::vector<std::size_t> idx{i0};
        for (std::size_t k = 0; k < interior; ++k) {
            if (mask & (std::uint64_t{1} << k)) idx.push_back(i0 + 1 + k);
        }
        idx.push_back(i1);
        double sum = 0.0;
        for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
            sum += std::pow(f.magnitude(idx[k], idx[k + 1]), p);
        }
        best = std::max(best, sum);
    }
    return std::pow(best, 1.0 / p);
}

inline pathint::SampledPath random_scalar_path(TestRng& rng, const pathint::TimeGrid& grid) {
    std::vector<double> vals(grid.size());
    for (auto& v : vals) v = rng.uniform(-1.0, 1.0);
    return pathint::SampledPath(grid, 1, std::move(vals));
}

inline pathint::SampledPath random_path(TestRng& rng, const pathint::TimeGrid& grid,
                                        std::size_t d) {
    std::vector<double> vals(grid.size() * d);
    for (auto& v : vals) v = rng.uniform(-1.0, 1.0);
    return pathint::SampledPath(grid, d, std::move(vals));
}

/// Random full partition: every interior grid point kept with probability keep.
inline pathint::Partition random_partition(TestRng& rng, const pathint::TimeGrid& grid,
                                           double keep = 0.5) {
    std::vector<std::size_t> idx{0};
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (rng.uniform() < keep) idx.push_back(i);
    }
    idx.push_back(grid.size() - 1);
    return pathint::Partition::from_indices(grid, std::move(idx));
}

} // namespace testutil
