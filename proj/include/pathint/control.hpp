#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "pathint/matrix_path.hpp"
#include "pathint/path.hpp"
#include "pathint/two_param.hpp"

namespace pathint {

/// Remainder of the first-order expansion of y along x:
///   R(s,t) = Y_{s,t} - Y'_s X_{s,t},
/// a dim(y)-vector field vanishing on the diagonal. Grids must match and
/// y_prime must be dim(y) x dim(x).
TwoParamField remainder(const SampledPath& x, const SampledPath& y, const MatrixPath& y_prime);

/// Variation-norm report for a candidate controlled decomposition. Finiteness
/// on a finite grid is automatic, so no thresholding happens here; the norms
/// are meant to be compared across refinement levels.
struct ControlReport {
    double remainder_r_norm = 0.0;
    double y_prime_q_norm = 0.0;
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;     // 1/r = 1/p + 1/q
    double theta = 0.0; // 2/p + 1/q
    bool admissible = false; // theta > 1
};

ControlReport check_controlled(const SampledPath& x, const SampledPath& y,
                               const MatrixPath& y_prime, double p, double q);

/// Candidate Gubinelli derivative for scalar y against scalar x: at each grid
/// index i the ridge least-squares slope of Y_{t_i,t_j} on X_{t_i,t_j} over
/// j within `window` grid steps of i,
///   c_i = sum XY / (sum X^2 + ridge).
/// ridge = nullopt applies the default rule 1e-12 * max_j X_{t_i,t_j}^2.
/// Throws SingularFit when the denominator vanishes.
std::vector<double> fit_gubinelli_derivative(const SampledPath& x, const SampledPath& y,
                                             std::size_t window,
                                             std::optional<double> ridge = std::nullopt);

constexpr std::size_t kDefaultFitWindow = 8;

/// Report for one ordered component pair of a self-control check.
struct PairControlReport {
    std::size_t i = 0; // controlled component
    std::size_t j = 0; // controlling component
    ControlReport report;
};

struct SelfControlOptions {
    std::size_t window = kDefaultFitWindow;
    std::optional<double> ridge = std::nullopt;
    /// Which ordered pairs to evaluate; defaults to all i != j.
    std::function<bool(std::size_t i, std::size_t j)> include;
};

/// For each selected ordered pair (i,j), fits X^i against X^j and reports the
/// variation norms of derivative and remainder.
std::vector<PairControlReport> check_self_controlled(const SampledPath& x, double p, double q,
                                                     const SelfControlOptions& opts = {});

struct SimilarityReport {
    bool similar = false;
    double max_deviation = 0.0; // max over t of max-abs entry of (X'_t^T)^{-1} - Y'_t
};

/// Similarity check for mutually controlled paths: ((X'_t)^*)^{-1} == Y'_t for
/// all t, within tol. Throws NonInvertible at the first singular X'_t.
SimilarityReport check_similar(const SampledPath& x, const SampledPath& y,
                               const MatrixPath& x_prime, const MatrixPath& y_prime, double tol);

/// Controlled-path decomposition (Y, Y', R^Y) with its exponent bookkeeping.
class ControlledDecomposition {
public:
    ControlledDecomposition(SampledPath x, SampledPath y, MatrixPath y_prime, double p, double q);

    const SampledPath& x() const { return x_; }
    const SampledPath& y() const { return y_; }
    const MatrixPath& y_prime() const { return y_prime_; }
    const TwoParamField& remainder_field() const { return remainder_; }
    double p() const { return p_; }
    double q() const { return q_; }
    double r() const { return r_; }
    double theta() const { return theta_; }
    bool admissible() const { return theta_ > 1.0; }

private:
    SampledPath x_;
    SampledPath y_;
    MatrixPath y_prime_;
    TwoParamField remainder_;
    double p_;
    double q_;
    double r_;
    double theta_;
};

} // namespace pathint
