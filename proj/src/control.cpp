#include "pathint/control.hpp"

#include <cmath>
#include <stdexcept>

#include "pathint/errors.hpp"
#include "pathint/variation.hpp"

namespace pathint {

namespace {

void check_same_grid(const SampledPath& a, const SampledPath& b, const char* who) {
    if (!a.grid().same_as(b.grid())) {
        throw std::invalid_argument(std::string(who) + ": paths on different grids");
    }
}

// q-variation of a matrix path, treating the matrix as a flat vector
double matrix_path_variation(const MatrixPath& m, double q) {
    const std::size_t dim = m.rows() * m.cols();
    TwoParamField f(m.grid(), dim, [&m](std::size_t i, std::size_t j, std::size_t c) {
        return m.at(j)[c] - m.at(i)[c];
    });
    return p_variation_indices(f, q, 0, m.grid().size() - 1);
}

} // namespace

TwoParamField remainder(const SampledPath& x, const SampledPath& y, const MatrixPath& y_prime) {
    check_same_grid(x, y, "remainder");
    if (!y_prime.grid().same_as(x.grid())) {
        throw std::invalid_argument("remainder: derivative on a different grid");
    }
    if (y_prime.rows() != y.dim() || y_prime.cols() != x.dim()) {
        throw std::invalid_argument("remainder: derivative must be dim(y) x dim(x)");
    }
    const std::size_t dx = x.dim();
    return TwoParamField(
        x.grid(), y.dim(), [x, y, y_prime, dx](std::size_t i, std::size_t j, std::size_t c) {
            double v = y.increment(i, j, c);
            for (std::size_t k = 0; k < dx; ++k) {
                v -= y_prime.entry(i, c, k) * x.increment(i, j, k);
            }
            return v;
        });
}

ControlReport check_controlled(const SampledPath& x, const SampledPath& y,
                               const MatrixPath& y_prime, double p, double q) {
    ControlReport rep;
    rep.p = p;
    rep.q = q;
    rep.r = 1.0 / (1.0 / p + 1.0 / q);
    rep.theta = 2.0 / p + 1.0 / q;
    rep.admissible = rep.theta > 1.0;
    const auto R = remainder(x, y, y_prime);
    rep.remainder_r_norm = p_variation_indices(R, rep.r, 0, x.size() - 1);
    rep.y_prime_q_norm = matrix_path_variation(y_prime, q);
    return rep;
}

std::vector<double> fit_gubinelli_derivative(const SampledPath& x, const SampledPath& y,
                                             std::size_t window, std::optional<double> ridge) {
    check_same_grid(x, y, "fit_gubinelli_derivative");
    if (x.dim() != 1 || y.dim() != 1) {
        throw std::invalid_argument("fit_gubinelli_derivative: scalar paths only");
    }
    if (window < 2) {
        throw std::invalid_argument("fit_gubinelli_derivative: window must be >= 2");
    }
    const std::size_t n = x.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = (i > window) ? i - window : 0;
        const std::size_t hi = std::min(n - 1, i + window);
        double sxx = 0.0, sxy = 0.0, max_sq = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            if (j == i) continue;
            const double dx = x.increment(i, j, 0);
            const double dy = y.increment(i, j, 0);
            sxx += dx * dx;
            sxy += dx * dy;
            max_sq = std::max(max_sq, dx * dx);
        }
        const double lam = ridge ? *ridge : 1e-12 * max_sq;
        if (sxx + lam == 0.0) {
            throw SingularFit("fit_gubinelli_derivative: all increments vanish in window", i);
        }
        out[i] = sxy / (sxx + lam);
    }
    return out;
}

std::vector<PairControlReport> check_self_controlled(const SampledPath& x, double p, double q,
                                                     const SelfControlOptions& opts) {
    if (x.dim() < 2) {
        throw std::invalid_argument("check_self_controlled: need d >= 2");
    }
    std::vector<PairControlReport> out;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        for (std::size_t j = 0; j < x.dim(); ++j) {
            if (i == j) continue;
            if (opts.include && !opts.include(i, j)) continue;
            const auto xi = x.component(i);
            const auto xj = x.component(j);
            const auto deriv = fit_gubinelli_derivative(xj, xi, opts.window, opts.ridge);
            std::vector<double> data(deriv);
            MatrixPath y_prime(x.grid(), 1, 1, std::move(data));
            PairControlReport rep;
            rep.i = i;
            rep.j = j;
            rep.report = check_controlled(xj, xi, y_prime, p, q);
            out.push_back(std::move(rep));
        }
    }
    return out;
}

SimilarityReport check_similar(const SampledPath& x, const SampledPath& y,
                               const MatrixPath& x_prime, const MatrixPath& y_prime, double tol) {
    check_same_grid(x, y, "check_similar");
    const std::size_t d = x.dim();
    if (y.dim() != d) {
        throw std::invalid_argument("check_similar: dimension mismatch");
    }
    if (x_prime.rows() != d || x_prime.cols() != d || y_prime.rows() != d ||
        y_prime.cols() != d) {
        throw std::invalid_argument("check_similar: derivatives must be d x d");
    }
    SimilarityReport rep;
    std::vector<double> transposed(d * d);
    for (std::size_t t = 0; t < x.size(); ++t) {
        const auto m = x_prime.at(t);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                transposed[r * d + c] = m[c * d + r];
            }
        }
        if (!invert_small(transposed, d)) {
            throw NonInvertible("check_similar: singular derivative", x.grid()[t], t);
        }
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                const double dev = std::abs(transposed[r * d + c] - y_prime.entry(t, r, c));
                rep.max_deviation = std::max(rep.max_deviation, dev);
            }
        }
    }
    rep.similar = rep.max_deviation <= tol;
    return rep;
}

ControlledDecomposition::ControlledDecomposition(SampledPath x, SampledPath y,
                                                 MatrixPath y_prime, double p, double q)
    : x_(std::move(x)),
      y_(std::move(y)),
      y_prime_(std::move(y_prime)),
      remainder_(remainder(x_, y_, y_prime_)),
      p_(p),
      q_(q),
      r_(1.0 / (1.0 / p + 1.0 / q)),
      theta_(2.0 / p + 1.0 / q) {
    if (!(p >= 1.0) || !(q > 0.0)) {
        throw std::invalid_argument("ControlledDecomposition: bad exponents");
    }
}

} // namespace pathint
