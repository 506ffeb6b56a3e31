#include "pathint/functional.hpp"

#include <cmath>
#include <stdexcept>

#include "pathint/errors.hpp"
#include "pathint/numeric.hpp"

namespace pathint {

namespace {

void spot_check_derivatives(std::size_t dim, const SmoothField::Fn& f,
                            const SmoothField::GradFn& grad, const SmoothField::HessFn& hess) {
    const double h = 1e-6;
    const double tol = 1e-5;
    for (std::size_t trial = 0; trial < 5; ++trial) {
        std::vector<double> x(dim);
        for (std::size_t c = 0; c < dim; ++c) {
            x[c] = 2.0 * counter_uniform(0x5f1e1d, trial * dim + c) - 1.0;
        }
        const auto g = grad(x);
        if (g.size() != dim) {
            throw std::invalid_argument("SmoothField: gradient size mismatch");
        }
        const auto H = hess(x);
        if (H.size() != dim * dim) {
            throw std::invalid_argument("SmoothField: hessian size mismatch");
        }
        std::vector<double> xp(x), xm(x);
        for (std::size_t i = 0; i < dim; ++i) {
            xp[i] = x[i] + h;
            xm[i] = x[i] - h;
            const double fd = (f(xp) - f(xm)) / (2.0 * h);
            if (std::abs(fd - g[i]) > tol * std::max(1.0, std::abs(g[i]))) {
                throw std::invalid_argument("SmoothField: gradient disagrees with finite differences");
            }
            const auto gp = grad(xp);
            const auto gm = grad(xm);
            for (std::size_t r = 0; r < dim; ++r) {
                const double hd = (gp[r] - gm[r]) / (2.0 * h);
                if (std::abs(hd - H[r * dim + i]) > tol * std::max(1.0, std::abs(H[r * dim + i]))) {
                    throw std::invalid_argument(
                        "SmoothField: hessian disagrees with finite differences");
                }
            }
            xp[i] = x[i];
            xm[i] = x[i];
        }
    }
}

} // namespace

SmoothField::SmoothField(std::size_t dim, Fn f, GradFn grad, HessFn hess, double holder_alpha)
    : dim_(dim), f_(std::move(f)), grad_(std::move(grad)), hess_(std::move(hess)),
      holder_alpha_(holder_alpha) {
    if (dim_ == 0 || !f_ || !grad_ || !hess_) {
        throw std::invalid_argument("SmoothField: incomplete definition");
    }
    spot_check_derivatives(dim_, f_, grad_, hess_);
}

SmoothField smooth_monomial(unsigned k, double holder_alpha) {
    if (k < 1) {
        throw std::invalid_argument("smooth_monomial: need k >= 1");
    }
    const double kk = k;
    return SmoothField(
        1, [k](std::span<const double> x) { return std::pow(x[0], k); },
        [k, kk](std::span<const double> x) {
            return std::vector<double>{kk * std::pow(x[0], k - 1)};
        },
        [k, kk](std::span<const double> x) {
            return std::vector<double>{k >= 2 ? kk * (kk - 1.0) * std::pow(x[0], k - 2) : 0.0};
        },
        holder_alpha);
}

SmoothField smooth_linear(std::vector<double> c) {
    const std::size_t d = c.size();
    auto coeff = std::make_shared<std::vector<double>>(std::move(c));
    return SmoothField(
        d,
        [coeff](std::span<const double> x) {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) s += (*coeff)[i] * x[i];
            return s;
        },
        [coeff](std::span<const double>) { return *coeff; },
        [coeff, d](std::span<const double>) { return std::vector<double>(d * d, 0.0); }, 1.0);
}

SmoothField smooth_quadratic_form(std::vector<double> a, std::size_t d) {
    if (a.size() != d * d) {
        throw std::invalid_argument("smooth_quadratic_form: size mismatch");
    }
    auto A = std::make_shared<std::vector<double>>(std::move(a));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if ((*A)[i * d + j] != (*A)[j * d + i]) {
                throw std::invalid_argument("smooth_quadratic_form: matrix must be symmetric");
            }
        }
    }
    return SmoothField(
        d,
        [A, d](std::span<const double> x) {
            double s = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) s += x[i] * (*A)[i * d + j] * x[j];
            return s;
        },
        [A, d](std::span<const double> x) {
            std::vector<double> g(d, 0.0);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) g[i] += 2.0 * (*A)[i * d + j] * x[j];
            return g;
        },
        [A, d](std::span<const double>) {
            std::vector<double> h(d * d);
            for (std::size_t k = 0; k < d * d; ++k) h[k] = 2.0 * (*A)[k];
            return h;
        },
        1.0);
}

SampledPath gradient_path(const SmoothField& F, const SampledPath& x) {
    if (F.dim() != x.dim()) {
        throw std::invalid_argument("gradient_path: dimension mismatch");
    }
    std::vector<double> vals(x.size() * x.dim());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto g = F.gradient(x.at(i));
        std::copy(g.begin(), g.end(), vals.begin() + i * x.dim());
    }
    return SampledPath(x.grid(), x.dim(), std::move(vals));
}

SignedMeasure1D::SignedMeasure1D(TimeGrid grid, std::vector<double> cell_density,
                                 std::vector<Atom> atoms)
    : grid_(std::move(grid)), cell_density_(std::move(cell_density)), atoms_(std::move(atoms)) {
    if (cell_density_.size() != grid_.size() - 1) {
        throw std::invalid_argument("SignedMeasure1D: need one density value per grid cell");
    }
    for (const auto& a : atoms_) {
        if (a.index >= grid_.size()) {
            throw std::invalid_argument("SignedMeasure1D: atom off the grid");
        }
    }
}

SignedMeasure1D SignedMeasure1D::lebesgue(const TimeGrid& grid) {
    return SignedMeasure1D(grid, std::vector<double>(grid.size() - 1, 1.0), {});
}

SignedMeasure1D SignedMeasure1D::dirac(const TimeGrid& grid, std::size_t index, double weight) {
    return SignedMeasure1D(grid, std::vector<double>(grid.size() - 1, 0.0), {{index, weight}});
}

double SignedMeasure1D::pair_with(std::span<const double> test_values) const {
    if (test_values.size() != grid_.size()) {
        throw std::invalid_argument("SignedMeasure1D::pair_with: size mismatch");
    }
    CompensatedSum acc;
    for (std::size_t c = 0; c + 1 < grid_.size(); ++c) {
        acc.add(cell_density_[c] * 0.5 * (test_values[c] + test_values[c + 1]) *
                (grid_[c + 1] - grid_[c]));
    }
    for (const auto& a : atoms_) {
        acc.add(a.weight * test_values[a.index]);
    }
    const double v = acc.value();
    if (!std::isfinite(v)) {
        throw NumericDomainError("SignedMeasure1D: non-finite pairing");
    }
    return v;
}

double SignedMeasure1D::tail_mass(std::size_t a) const {
    CompensatedSum acc;
    for (std::size_t c = a; c + 1 < grid_.size(); ++c) {
        acc.add(cell_density_[c] * (grid_[c + 1] - grid_[c]));
    }
    for (const auto& at : atoms_) {
        if (at.index >= a) acc.add(at.weight);
    }
    return acc.value();
}

double SignedMeasure1D::total_variation() const {
    double tv = 0.0;
    for (std::size_t c = 0; c + 1 < grid_.size(); ++c) {
        tv += std::abs(cell_density_[c]) * (grid_[c + 1] - grid_[c]);
    }
    for (const auto& a : atoms_) tv += std::abs(a.weight);
    return tv;
}

double DiagonalMeasure2D::tail_mass(std::size_t a) const {
    CompensatedSum acc;
    for (std::size_t c = a; c + 1 < grid.size(); ++c) {
        acc.add(diag_cell_density[c] * (grid[c + 1] - grid[c]));
    }
    for (const auto& at : atoms) {
        if (at.i >= a && at.j >= a) acc.add(at.weight);
    }
    return acc.value();
}

SampledPath stop_sample(const SampledPath& x, std::size_t t_idx) {
    if (t_idx >= x.size()) {
        throw std::invalid_argument("stop_sample: index out of range");
    }
    std::vector<double> vals(x.size() * x.dim());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const std::size_t src = std::min(i, t_idx);
        for (std::size_t c = 0; c < x.dim(); ++c) {
            vals[i * x.dim() + c] = x.value(src, c);
        }
    }
    return SampledPath(x.grid(), x.dim(), std::move(vals));
}

double eta_weight(const Partition& pi, std::size_t k, double s) {
    if (k + 1 >= pi.breakpoint_count()) {
        throw std::invalid_argument("eta_weight: interval index out of range");
    }
    const double a = pi.time(k), b = pi.time(k + 1);
    if (s <= a) return 0.0;
    if (s >= b) return 1.0;
    return (s - a) / (b - a);
}

std::vector<double> chain_rule_residual(const SmoothField& F, const SampledPath& x,
                                        const PartitionSequence& seq) {
    const auto y = gradient_path(F, x);
    const double target = F.value(x.at(x.size() - 1)) - F.value(x.at(0));
    std::vector<double> res(seq.level_count());
    for (std::size_t n = 0; n < seq.level_count(); ++n) {
        res[n] = std::abs(riemann_gamma(y, x, seq.level(n), 0.5) - target);
    }
    return res;
}

std::vector<double> follmer_ito_residual(const SmoothField& F, const SampledPath& x,
                                         const PartitionSequence& seq, double gamma) {
    const auto y = gradient_path(F, x);
    const QuadraticVariation qv(x, seq);
    const double target = F.value(x.at(x.size() - 1)) - F.value(x.at(0));
    const std::size_t d = x.dim();

    std::vector<double> res(seq.level_count());
    for (std::size_t n = 0; n < seq.level_count(); ++n) {
        const Partition& pi = seq.level(n);
        const double G = riemann_gamma(y, x, pi, gamma);
        CompensatedSum H;
        for (std::size_t k = 0; k + 1 < pi.breakpoint_count(); ++k) {
            const auto hess = F.hessian(x.at(pi.index(k)));
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    H.add(hess[i * d + j] *
                          qv.increment(n, i, j, pi.index(k), pi.index(k + 1)));
                }
            }
        }
        res[n] = std::abs(target - G + 0.5 * (2.0 * gamma - 1.0) * H.value());
    }
    return res;
}

PathFunctional integral_functional(const std::function<double(double, double)>& g,
                                   const std::function<double(double, double)>& g_x,
                                   const std::function<double(double, double)>& g_xx,
                                   const SignedMeasure1D& mu) {
    if (!g || !g_x || !g_xx) {
        throw std::invalid_argument("integral_functional: incomplete integrand");
    }
    PathFunctional F;
    F.dim = 1;

    // integrand sampled along the internally stopped path
    auto sample = [](const std::function<double(double, double)>& fn, const SampledPath& y,
                     std::size_t t_idx) {
        std::vector<double> vals(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            vals[i] = fn(y.grid()[i], y.value(std::min(i, t_idx), 0));
        }
        return vals;
    };

    F.eval = [g, mu, sample](std::size_t t_idx, const SampledPath& y) {
        return mu.pair_with(sample(g, y, t_idx));
    };
    F.time_derivative = [](std::size_t, const SampledPath&) { return 0.0; };
    F.d1 = [g_x, mu, sample](std::size_t t_idx, const SampledPath& y, std::size_t i) {
        if (i != 0) {
            throw std::invalid_argument("integral_functional: scalar paths only");
        }
        const auto vals = sample(g_x, y, t_idx);
        const auto& grid = mu.grid();
        std::vector<double> cells(grid.size() - 1);
        for (std::size_t c = 0; c + 1 < grid.size(); ++c) {
            cells[c] = mu.cell_density()[c] * 0.5 * (vals[c] + vals[c + 1]);
        }
        std::vector<SignedMeasure1D::Atom> atoms;
        for (const auto& a : mu.atoms()) {
            atoms.push_back({a.index, a.weight * vals[a.index]});
        }
        return SignedMeasure1D(grid, std::move(cells), std::move(atoms));
    };
    F.d2 = [g_xx, mu, sample](std::size_t t_idx, const SampledPath& y, std::size_t i,
                              std::size_t j) {
        if (i != 0 || j != 0) {
            throw std::invalid_argument("integral_functional: scalar paths only");
        }
        const auto vals = sample(g_xx, y, t_idx);
        const auto& grid = mu.grid();
        DiagonalMeasure2D m{grid, std::vector<double>(grid.size() - 1), {}};
        for (std::size_t c = 0; c + 1 < grid.size(); ++c) {
            m.diag_cell_density[c] = mu.cell_density()[c] * 0.5 * (vals[c] + vals[c + 1]);
        }
        for (const auto& a : mu.atoms()) {
            m.atoms.push_back({a.index, a.index, a.weight * vals[a.index]});
        }
        return m;
    };
    return F;
}

std::vector<double> functional_ito_residual(const PathFunctional& F, const SampledPath& x,
                                            const PartitionSequence& seq, double t) {
    if (F.dim != x.dim()) {
        throw std::invalid_argument("functional_ito_residual: dimension mismatch");
    }
    const TimeGrid& grid = x.grid();
    const std::size_t t_idx = grid.index_of(t);
    const std::size_t d = x.dim();
    const QuadraticVariation qv(x, seq);

    const double lhs =
        F.eval(t_idx, stop_sample(x, t_idx)) - F.eval(0, stop_sample(x, 0));

    std::vector<double> res(seq.level_count());
    std::vector<double> eta(grid.size());
    std::vector<double> interp(grid.size() * d);
    std::vector<double> stopped_vals(grid.size() * d);
    for (std::size_t n = 0; n < seq.level_count(); ++n) {
        const Partition& pi = seq.level(n);

        // piecewise-linear interpolant of x along this level, on the full grid
        for (std::size_t k = 0; k + 1 < pi.breakpoint_count(); ++k) {
            const std::size_t a = pi.index(k), b = pi.index(k + 1);
            for (std::size_t g = a; g <= b; ++g) {
                const double lam = (grid[g] - grid[a]) / (grid[b] - grid[a]);
                for (std::size_t c = 0; c < d; ++c) {
                    interp[g * d + c] =
                        x.value(a, c) + lam * (x.value(b, c) - x.value(a, c));
                }
            }
        }

        CompensatedSum rhs;
        for (std::size_t k = 0; k + 1 < pi.breakpoint_count() && pi.index(k) < t_idx; ++k) {
            const std::size_t a = pi.index(k);
            const std::size_t v = pi.index(k + 1);     // full level interval end
            const std::size_t b = std::min(v, t_idx);  // truncated end

            // X^{n,t_k}: the level interpolant frozen at t_k
            std::copy(interp.begin(), interp.begin() + a * d, stopped_vals.begin());
            for (std::size_t g = a; g < grid.size(); ++g) {
                for (std::size_t c = 0; c < d; ++c) {
                    stopped_vals[g * d + c] = x.value(a, c);
                }
            }
            const SampledPath stopped(grid, d, stopped_vals);

            // drift term, left-point quadrature over pi_n(t)
            rhs.add(F.time_derivative(a, stopped) * (grid[b] - grid[a]));

            // eta ramp over the full interval, capped at the truncation point
            // so that X^{n,t_{k+1} ^ t} - X^{n,t_k} = eta * X_{t_k,t_{k+1}}
            const double cap = (grid[b] - grid[a]) / (grid[v] - grid[a]);
            for (std::size_t g = 0; g < grid.size(); ++g) {
                double w = (grid[g] - grid[a]) / (grid[v] - grid[a]);
                if (w < 0.0) w = 0.0;
                if (w > cap) w = cap;
                eta[g] = w;
            }
            for (std::size_t i = 0; i < d; ++i) {
                rhs.add(F.d1(a, stopped, i).pair_with(eta) * x.increment(a, v, i));
            }
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    rhs.add(0.5 * F.d2(a, stopped, i, j).tail_mass(a) *
                            qv.increment(n, i, j, a, b));
                }
            }
        }
        res[n] = std::abs(lhs - rhs.value());
    }
    return res;
}

} // namespace pathint
