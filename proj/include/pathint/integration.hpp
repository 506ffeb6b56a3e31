#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pathint/control.hpp"
#include "pathint/partition.hpp"
#include "pathint/path.hpp"
#include "pathint/two_param.hpp"

namespace pathint {

/// gamma-weighted Riemann sum sum_{[s,t] in pi} <Y_s + gamma Y_{s,t}, X_{s,t}>,
/// accumulated in ascending time order with compensated summation.
/// gamma = 0 is the Ito-type sum, gamma = 1/2 the Stratonovich-type one.
double riemann_gamma(const SampledPath& y, const SampledPath& x, const Partition& pi,
                     double gamma);

enum class SelectorRule { Left, Right, Mid };

/// Riemann sum with integrand evaluated at a chosen grid point of each
/// interval: sum <Y_{s'}, X_{s,t}>. The callable form must return a grid index
/// inside [s,t].
double riemann_point(const SampledPath& y, const SampledPath& x, const Partition& pi,
                     SelectorRule rule);
double riemann_point(const SampledPath& y, const SampledPath& x, const Partition& pi,
                     const std::function<std::size_t(std::size_t, std::size_t)>& selector);

struct SymAntisymResult {
    double symmetric;     // S_gamma
    double antisymmetric; // A_gamma; accumulated gamma-free, so it is exactly
                          // the same number for every gamma
};

/// Symmetric/antisymmetric split of the gamma-Riemann sum:
/// (S + A)/2 equals riemann_gamma up to rounding.
SymAntisymResult sym_antisym(const SampledPath& y, const SampledPath& x, const Partition& pi,
                             double gamma);

/// Left-point Levy-area matrix for one partition:
///   L(i,j) = sum ( X^i_s X^j_{s,t} - X^j_s X^i_{s,t} ),
/// exactly antisymmetric with zero diagonal by construction. Row-major d x d.
std::vector<double> levy_area(const SampledPath& x, const Partition& pi);

/// Refinement diagnostic for a limit taken along a partition sequence.
struct RiemannResult {
    std::vector<double> values; // one per level
    std::vector<double> meshes;
    double limit = 0.0;      // finest-level value
    double cauchy_gap = 0.0; // max successive difference over the final 4 levels
};

/// Per-level Levy areas along a partition sequence, optionally with an
/// arbitrary-point selector instead of left endpoints.
class LevyAreaSequence {
public:
    LevyAreaSequence(std::size_t d, std::vector<RiemannResult> upper);

    std::size_t dim() const { return d_; }
    /// Result for the ordered pair (i,j), i < j; (j,i) is its negation.
    const RiemannResult& at(std::size_t i, std::size_t j) const;

private:
    std::size_t d_;
    std::vector<RiemannResult> upper_; // (i,j) with i < j, row-major order
};

LevyAreaSequence levy_area_sequence(const SampledPath& x, const PartitionSequence& seq,
                                    std::optional<SelectorRule> selector = std::nullopt);

/// Sewing construction: the additive function Phi built from a nearly-additive
/// scalar field Xi with coherence defect |Xi(s,t)-Xi(s,u)-Xi(u,t)| <= K w(s,t)^theta.
struct SewingResult {
    SampledPath phi; // scalar path on the host grid, phi(start) = 0
    double theta;
    double K;
    std::vector<double> level_values; // Phi_n(horizon) per level
    std::vector<double> level_meshes;
    double certificate_max_ratio; // worst |Phi(t)-Phi(s)-Xi(s,t)| / bound over checked pairs
    bool certified;               // certificate_max_ratio <= 1 (+1e-9 slack)

    /// C(theta) = K (1 - 2^(1-theta))^(-1).
    double constant() const;
    /// Certified bound C(theta) w(s,t)^theta at grid indices.
    double certified_bound(std::size_t i, std::size_t j) const;

    ControlFunction omega;
};

/// Verifies the coherence premise on grid triples (exhaustive for grids of at
/// most 64 points, 1e5 fixed-seed random triples otherwise; throws
/// PremiseFailed with the offending triple), then sums Xi along each level.
/// The reported phi is the two-level Richardson extrapolation of the
/// per-level sums at rate 2^(1-theta), the rate implied by the coherence
/// exponent; the raw per-level endpoint sums are kept alongside. The
/// certified bound is checked on all pairs of level-6 breakpoints (or the
/// finest level if coarser).
SewingResult sewing_integral(const TwoParamField& xi, const ControlFunction& omega, double theta,
                             double K, const PartitionSequence& seq);

/// Follmer quadratic variation along a nested partition sequence, per
/// component pair. Level-n bracket paths are evaluated on the full host grid
/// through the truncated-partition formula
///   [X^i,X^j]^n_t = sum_{[u,v] in pi_n} X^i_{u^t, v^t} X^j_{u^t, v^t},
/// with cross brackets defined by polarization from diagonal ones.
class QuadraticVariation {
public:
    QuadraticVariation(SampledPath x, PartitionSequence seq);

    const PartitionSequence& sequence() const { return seq_; }
    const SampledPath& path() const { return x_; }
    std::size_t dim() const { return x_.dim(); }
    std::size_t level_count() const { return seq_.level_count(); }

    /// Bracket path on the full grid at a given level (symmetric in i,j).
    std::span<const double> bracket_path(std::size_t level, std::size_t i, std::size_t j) const;
    /// Finest-level bracket path.
    std::span<const double> bracket_path(std::size_t i, std::size_t j) const;

    double bracket(std::size_t level, std::size_t i, std::size_t j, std::size_t g) const;
    double increment(std::size_t level, std::size_t i, std::size_t j, std::size_t g0,
                     std::size_t g1) const;

    /// sup_t |B_n(t) - B_{n-1}(t)| between successive levels (level >= 1).
    double uniform_gap(std::size_t level, std::size_t i, std::size_t j) const;

private:
    std::size_t pair_id(std::size_t i, std::size_t j) const;

    SampledPath x_;
    PartitionSequence seq_;
    std::size_t npairs_;
    std::vector<double> data_; // [level][pair][grid point]
};

QuadraticVariation quadratic_variation(const SampledPath& x, const PartitionSequence& seq);

struct CovariationPair {
    double direct;      // sum <X_{s,t}, Y_{s,t}> at the level
    double via_bracket; // sum_{i,j} left-point Stieltjes sum of Y'(i,j) against
                        // the level's bracket increments
};

CovariationPair quadratic_covariation(const ControlledDecomposition& y_dec,
                                      const QuadraticVariation& qv, std::size_t pi_level);

struct StratonovichResult {
    std::vector<double> level_values; // gamma = 1/2 sums per level
    double value;                     // finest-level estimate
    /// Worst deviation, over levels, of the exact split
    /// value_n = (Y_T.X_T - Y_0.X_0)/2 + A_n/2.
    double split_max_error;
};

/// Stratonovich integral of Y against X along the sequence (gamma = 1/2).
StratonovichResult stratonovich(const ControlledDecomposition& y_dec,
                                const PartitionSequence& seq);

struct GammaIdentityResult {
    std::vector<double> residuals; // per level
    double stratonovich_value;
    std::vector<double> via_bracket; // per level
};

/// Residuals of the gamma-integral identity
///   gamma-sum  =  Stratonovich value + (2 gamma - 1)/2 * sum_{i,j} int Y'(i,j) d[X^i,X^j]
/// at each level, with the Stratonovich value estimated at the finest level.
GammaIdentityResult gamma_integral_identity(const ControlledDecomposition& y_dec,
                                            const PartitionSequence& seq, double gamma);

} // namespace pathint
