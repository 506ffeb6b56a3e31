#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pathint/integration.hpp"
#include "pathint/partition.hpp"
#include "pathint/path.hpp"

namespace pathint {

/// Twice differentiable scalar field on R^d with a declared Holder exponent
/// for the Hessian. Gradient and Hessian are spot-checked against central
/// finite differences at construction (step 1e-6, relative error 1e-5, at
/// deterministic pseudo-random points in [-1,1]^d).
class SmoothField {
public:
    using Fn = std::function<double(std::span<const double>)>;
    using GradFn = std::function<std::vector<double>(std::span<const double>)>;
    using HessFn = std::function<std::vector<double>(std::span<const double>)>;

    SmoothField(std::size_t dim, Fn f, GradFn grad, HessFn hess, double holder_alpha);

    std::size_t dim() const { return dim_; }
    double holder_alpha() const { return holder_alpha_; }

    double value(std::span<const double> x) const { return f_(x); }
    std::vector<double> gradient(std::span<const double> x) const { return grad_(x); }
    /// Row-major d x d.
    std::vector<double> hessian(std::span<const double> x) const { return hess_(x); }

private:
    std::size_t dim_;
    Fn f_;
    GradFn grad_;
    HessFn hess_;
    double holder_alpha_;
};

/// d=1 monomial x^k (k >= 1).
SmoothField smooth_monomial(unsigned k, double holder_alpha = 1.0);
/// Linear field <c, x>.
SmoothField smooth_linear(std::vector<double> c);
/// Quadratic form <x, A x> for symmetric A (row-major d x d).
SmoothField smooth_quadratic_form(std::vector<double> a, std::size_t d);

/// The gradient of F along a path, as a d-dimensional path.
SampledPath gradient_path(const SmoothField& F, const SampledPath& x);

/// Finite signed measure on [0,T]: atoms at grid points plus a piecewise
/// constant density per grid cell. Pairings with grid-sampled test functions
/// are trapezoid quadrature (exact for piecewise-linear test functions).
class SignedMeasure1D {
public:
    struct Atom {
        std::size_t index;
        double weight;
    };

    SignedMeasure1D(TimeGrid grid, std::vector<double> cell_density, std::vector<Atom> atoms);

    static SignedMeasure1D lebesgue(const TimeGrid& grid);
    static SignedMeasure1D dirac(const TimeGrid& grid, std::size_t index, double weight = 1.0);

    const TimeGrid& grid() const { return grid_; }
    std::span<const double> cell_density() const { return cell_density_; }
    std::span<const Atom> atoms() const { return atoms_; }

    /// <mu, phi> for a test function sampled at grid points.
    double pair_with(std::span<const double> test_values) const;
    /// mu([t_a, T]): full tail cells plus atoms at index >= a. Used for the
    /// indicator pairings <DF, 1_{[s,T]}>, which trapezoid quadrature would
    /// get wrong at the jump.
    double tail_mass(std::size_t a) const;
    double total_variation() const;

private:
    TimeGrid grid_;
    std::vector<double> cell_density_; // one value per grid cell
    std::vector<Atom> atoms_;
};

/// Second-derivative measure on [0,T]^2: a density living on the diagonal
/// plus off-diagonal atom pairs. Exact for the integral-functional class and
/// for cylindrical functionals.
struct DiagonalMeasure2D {
    struct AtomPair {
        std::size_t i;
        std::size_t j;
        double weight;
    };

    TimeGrid grid;
    std::vector<double> diag_cell_density;
    std::vector<AtomPair> atoms;

    /// <m, 1_{[t_a,T]} x 1_{[t_a,T]}>.
    double tail_mass(std::size_t a) const;
};

/// Path functional with time derivative and measure-valued first and second
/// Frechet derivatives. All callables receive the evaluation time as a grid
/// index together with the stopped path at that time; eval must depend on the
/// path only through its values up to that time.
struct PathFunctional {
    std::size_t dim = 1;
    std::function<double(std::size_t, const SampledPath&)> eval;
    std::function<double(std::size_t, const SampledPath&)> time_derivative;
    /// First derivative D_i F as a signed measure.
    std::function<SignedMeasure1D(std::size_t, const SampledPath&, std::size_t)> d1;
    /// Second derivative D^2_{i,j} F as a diagonal-plus-atoms measure.
    std::function<DiagonalMeasure2D(std::size_t, const SampledPath&, std::size_t, std::size_t)>
        d2;
};

/// The sample path stopped at a grid index: values frozen from there on.
SampledPath stop_sample(const SampledPath& x, std::size_t t_idx);

/// Ramp weight of the functional Ito integral for interval k of pi:
/// 0 before t_k, linear on [t_k, t_{k+1}], 1 after. Reconstructs stopped
/// piecewise-linear increments: X^{n,t_{k+1}} - X^{n,t_k} = eta * X_{t_k,t_{k+1}}.
double eta_weight(const Partition& pi, std::size_t k, double s);

/// Residuals |Stratonovich sum of DF(X) dX - (F(X_T) - F(X_0))| per level
/// (the Stratonovich chain rule).
std::vector<double> chain_rule_residual(const SmoothField& F, const SampledPath& x,
                                        const PartitionSequence& seq);

/// Residuals of the pathwise Ito formula
///   F(X_T) = F(X_0) + gamma-sum(DF(X), X) - (2 gamma - 1)/2 * sum_{i,j} D2_{i,j}F d[X^i,X^j]
/// per level, with the bracket term taken at the same level.
std::vector<double> follmer_ito_residual(const SmoothField& F, const SampledPath& x,
                                         const PartitionSequence& seq, double gamma);

/// F(X) = int_0^T g(s, X_s) mu(ds) with its derivative measures:
/// d1 has density d_x g(s, X_s) against mu, d2 the diagonal density
/// d_xx g(s, X_s) against mu. Scalar paths.
PathFunctional integral_functional(const std::function<double(double, double)>& g,
                                   const std::function<double(double, double)>& g_x,
                                   const std::function<double(double, double)>& g_xx,
                                   const SignedMeasure1D& mu);

/// Residuals |F(t,X^t) - F(0,X^0) - drift - Ito term - bracket term| of the
/// functional Ito formula per level, evaluated at grid time t. The drift term
/// uses left-point quadrature over pi_n(t), the Ito term pairs d1 with the
/// eta ramps, the bracket term pairs d2 tail masses with level-n bracket
/// increments.
std::vector<double> functional_ito_residual(const PathFunctional& F, const SampledPath& x,
                                            const PartitionSequence& seq, double t);

} // namespace pathint
