#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pathint/two_param.hpp"

namespace pathint {

/// p-variation of a two-parameter field over [s,t], restricted to partitions
/// with breakpoints on the sample grid:
///   sup_pi ( sum_{[u,v] in pi} |f(u,v)|^p )^(1/p),
/// computed exactly by dynamic programming over grid indices,
///   V(j) = max_{i<j} [ V(i) + |f(t_i,t_j)|^p ],
/// O(N^2) in the grid points between s and t. band > 0 limits the lookback to
/// `band` grid steps; banded values are lower bounds of the exact supremum.
double p_variation(const TwoParamField& f, double p, double s, double t, std::size_t band = 0);

/// Index-based variant; [i0, i1] are grid indices.
double p_variation_indices(const TwoParamField& f, double p, std::size_t i0, std::size_t i1,
                           std::size_t band = 0);

/// One DP sweep anchored at i0: returns V(j)^(1/p) for every j in [i0, N-1].
/// Row j is the p-variation over [t_{i0}, t_j].
std::vector<double> p_variation_row(const TwoParamField& f, double p, std::size_t i0,
                                    std::size_t band = 0);

/// Control function omega(s,t) = p_variation(increments of x, p, s, t)^p,
/// tabulated for all grid pairs (O(N^3) build; grids are capped at 2048
/// points). Dominates |X_{s,t}|^p and is superadditive by construction.
ControlFunction control_from_pvariation(const SampledPath& x, double p);

/// Pointwise sum of control functions on a common grid.
ControlFunction sum_controls(const std::vector<ControlFunction>& parts);

/// Superadditivity check omega(s,u) + omega(u,t) <= omega(s,t) (1e-9 relative
/// slack): exhaustive over all triples when the grid has at most
/// `exhaustive_limit` points, otherwise `samples` random triples drawn from a
/// fixed-seed generator. Returns the worst violation ratio (<= 1 means pass).
double superadditivity_defect(const ControlFunction& omega, std::size_t exhaustive_limit = 64,
                              std::size_t samples = 100000);
bool verify_superadditive(const ControlFunction& omega, std::size_t exhaustive_limit = 64,
                          std::size_t samples = 100000);

struct HolderEstimate {
    double exponent;
    double residual; // root-mean-square residual of the log-log fit
};

/// Least-squares slope of log(max increment at lag 2^k) against log(scale)
/// over dyadic lags k in [scale_range.first, scale_range.second]. Scalar
/// paths on uniform grids only. Returns nullopt for degenerate (constant at
/// some scale) paths: the exponent is undefined.
std::optional<HolderEstimate> holder_estimate(const SampledPath& x,
                                              std::pair<std::size_t, std::size_t> scale_range);

} // namespace pathint
