#include "pathint/integration.hpp"

#include <cmath>
#include <stdexcept>

#include "pathint/errors.hpp"
#include "pathint/numeric.hpp"

namespace pathint {

namespace {

void check_pair(const SampledPath& y, const SampledPath& x, const Partition& pi,
                const char* who) {
    if (!y.grid().same_as(x.grid()) || !pi.grid().same_as(x.grid())) {
        throw std::invalid_argument(std::string(who) + ": grid mismatch");
    }
    if (y.dim() != x.dim()) {
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    }
    if (pi.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty partition");
    }
}

// <Y_s, X_{s,t}>, <X_s, Y_{s,t}>, <Y_{s,t}, X_{s,t}> for one interval
struct IntervalTerms {
    double u, v, w;
};

IntervalTerms interval_terms(const SampledPath& y, const SampledPath& x, std::size_t i0,
                             std::size_t i1) {
    IntervalTerms t{0.0, 0.0, 0.0};
    for (std::size_t c = 0; c < x.dim(); ++c) {
        const double dx = x.increment(i0, i1, c);
        const double dy = y.increment(i0, i1, c);
        t.u += y.value(i0, c) * dx;
        t.v += x.value(i0, c) * dy;
        t.w += dy * dx;
    }
    return t;
}

std::size_t select_index(SelectorRule rule, const TimeGrid& grid, std::size_t i0,
                         std::size_t i1) {
    switch (rule) {
        case SelectorRule::Left:
            return i0;
        case SelectorRule::Right:
            return i1;
        case SelectorRule::Mid: {
            const double mid = 0.5 * (grid[i0] + grid[i1]);
            std::size_t k = grid.floor_index(mid);
            if (k < i0) k = i0;
            if (k + 1 <= i1 && grid[k + 1] - mid < mid - grid[k]) ++k;
            return k;
        }
    }
    return i0;
}

} // namespace

double riemann_gamma(const SampledPath& y, const SampledPath& x, const Partition& pi,
                     double gamma) {
    check_pair(y, x, pi, "riemann_gamma");
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("riemann_gamma: gamma must lie in [0,1]");
    }
    CompensatedSum acc;
    for (std::size_t k = 0; k + 1 < pi.breakpoint_count(); ++k) {
        const auto t = interval_terms(y, x, pi.index(k), pi.index(k + 1));
        acc.add(t.u + gamma * t.w);
    }
    return acc.value();
}

double riemann_point(const SampledPath& y, const SampledPath& x, const Partition& pi,
                     const std::function<std::size_t(std::size_t, std::size_t)>& selector) {
    check_pair(y, x, pi, "riemann_point");
    CompensatedSum acc;
    for (std::size_t k = 0; k + 1 < pi.breakpoint_count(); ++k) {
        const std::size_t i0 = pi.index(k), i1 = pi.index(k + 1);
        const std::size_t sp = selector(i0, i1);
        if (sp < i0 || sp > i1) {
            throw std::invalid_argument("riemann_point: selector left the interval");
        }
        double term = 0.0;
        for (std::size_t c = 0; c < x.dim(); ++c) {
            term += y.value(sp, c) * x.increment(i0, i1, c);
        }
        acc.add(term);
    }
    return acc.value();
}

double riemann_point(const SampledPath& y, const SampledPath& x, const Partition& pi,
                     SelectorRule rule) {
    const TimeGrid& grid = x.grid();
    return riemann_point(y, x, pi, [&grid, rule](std::size_t i0, std::size_t i1) {
        return select_index(rule, grid, i0, i1);
    });
}

SymAntisymResult sym_antisym(const SampledPath& y, const SampledPath& x, const Partition& pi,
                             double gamma) {
    check_pair(y, x, pi, "sym_antisym");
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw std::invalid_argument("sym_antisym: gamma must lie in [0,1]");
    }
    CompensatedSum s, a;
    for (std::size_t k = 0; k + 1 < pi.breakpoint_count(); ++k) {
        const auto t = interval_terms(y, x, pi.index(k), pi.index(k + 1));
        s.add(t.u + t.v + 2.0 * gamma * t.w);
        // the gamma terms of the antisymmetric summand cancel identically:
        // gamma<Y_{s,t},X_{s,t}> - gamma<X_{s,t},Y_{s,t}> = 0
        a.add(t.u - t.v);
    }
    return {s.value(), a.value()};
}

std::vector<double> levy_area(const SampledPath& x, const Partition& pi) {
    if (x.dim() < 2) {
        throw std::invalid_argument("levy_area: need d >= 2");
    }
    if (!pi.grid().same_as(x.grid())) {
        throw std::invalid_argument("levy_area: grid mismatch");
    }
    const std::size_t d = x.dim();
    std::vector<CompensatedSum> acc(d * d);
    for (std::size_t k = 0; k + 1 < pi.breakpoint_count(); ++k) {
        const std::size_t i0 = pi.index(k), i1 = pi.index(k + 1);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                acc[i * d + j].add(x.value(i0, i) * x.increment(i0, i1, j) -
                                   x.value(i0, j) * x.increment(i0, i1, i));
            }
        }
    }
    std::vector<double> area(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            area[i * d + j] = acc[i * d + j].value();
            area[j * d + i] = -area[i * d + j];
        }
    }
    return area;
}

LevyAreaSequence::LevyAreaSequence(std::size_t d, std::vector<RiemannResult> upper)
    : d_(d), upper_(std::move(upper)) {}

const RiemannResult& LevyAreaSequence::at(std::size_t i, std::size_t j) const {
    if (i >= j || j >= d_) {
        throw std::invalid_argument("LevyAreaSequence::at: need i < j < d");
    }
    // position of (i,j) in the row-major upper triangle
    const std::size_t offset = i * d_ - i * (i + 1) / 2 + (j - i - 1);
    return upper_[offset];
}

LevyAreaSequence levy_area_sequence(const SampledPath& x, const PartitionSequence& seq,
                                    std::optional<SelectorRule> selector) {
    if (x.dim() < 2) {
        throw std::invalid_argument("levy_area_sequence: need d >= 2");
    }
    if (!seq.grid().same_as(x.grid())) {
        throw std::invalid_argument("levy_area_sequence: grid mismatch");
    }
    const std::size_t d = x.dim();
    const std::size_t npairs = d * (d - 1) / 2;
    std::vector<RiemannResult> upper(npairs);

    for (std::size_t n = 0; n < seq.level_count(); ++n) {
        const Partition& pi = seq.level(n);
        std::vector<CompensatedSum> acc(npairs);
        for (std::size_t k = 0; k + 1 < pi.breakpoint_count(); ++k) {
            const std::size_t i0 = pi.index(k), i1 = pi.index(k + 1);
            const std::size_t sp =
                selector ? select_index(*selector, x.grid(), i0, i1) : i0;
            std::size_t pos = 0;
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = i + 1; j < d; ++j, ++pos) {
                    acc[pos].add(x.value(sp, i) * x.increment(i0, i1, j) -
                                 x.value(sp, j) * x.increment(i0, i1, i));
                }
            }
        }
        const double m = mesh(pi);
        for (std::size_t pos = 0; pos < npairs; ++pos) {
            upper[pos].values.push_back(acc[pos].value());
            upper[pos].meshes.push_back(m);
        }
    }
    for (auto& r : upper) {
        r.limit = r.values.back();
        const std::size_t L = r.values.size();
        const std::size_t lo = (L > 4) ? L - 4 : 1;
        for (std::size_t n = lo; n < L; ++n) {
            r.cauchy_gap = std::max(r.cauchy_gap, std::abs(r.values[n] - r.values[n - 1]));
        }
    }
    return LevyAreaSequence(d, std::move(upper));
}

double SewingResult::constant() const {
    return K / (1.0 - std::exp2(1.0 - theta));
}

double SewingResult::certified_bound(std::size_t i, std::size_t j) const {
    return constant() * std::pow(omega(i, j), theta);
}

SewingResult sewing_integral(const TwoParamField& xi, const ControlFunction& omega, double theta,
                             double K, const PartitionSequence& seq) {
    if (!(theta > 1.0)) {
        throw std::invalid_argument("sewing_integral: theta must exceed 1");
    }
    if (!(K >= 0.0)) {
        throw std::invalid_argument("sewing_integral: K must be nonnegative");
    }
    if (xi.dim() != 1) {
        throw std::invalid_argument("sewing_integral: scalar fields only");
    }
    if (!xi.grid().same_as(seq.grid()) || !omega.grid().same_as(seq.grid())) {
        throw std::invalid_argument("sewing_integral: grid mismatch");
    }
    const TimeGrid& grid = xi.grid();
    const std::size_t n = grid.size();

    // coherence premise: |Xi(s,t) - Xi(s,u) - Xi(u,t)| <= K w(s,t)^theta
    auto check_triple = [&](std::size_t s, std::size_t u, std::size_t t) {
        const double a = xi.component(s, t, 0);
        const double b = xi.component(s, u, 0);
        const double c = xi.component(u, t, 0);
        const double defect = std::abs(a - b - c);
        const double slack = 1e-12 * (1.0 + std::abs(a) + std::abs(b) + std::abs(c));
        const double bound = K * std::pow(omega(s, t), theta) * (1.0 + 1e-9) + slack;
        if (defect > bound) {
            throw PremiseFailed("sewing_integral: coherence bound violated", grid[s], grid[u],
                                grid[t], defect / bound);
        }
    };
    if (n <= 64) {
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t u = s; u < n; ++u)
                for (std::size_t t = u; t < n; ++t) check_triple(s, u, t);
    } else {
        const std::uint64_t key = 0xc0ffee;
        for (std::size_t k = 0; k < 100000; ++k) {
            std::size_t a = std::min(n - 1, static_cast<std::size_t>(counter_uniform(key, 3 * k) * n));
            std::size_t b = std::min(n - 1, static_cast<std::size_t>(counter_uniform(key, 3 * k + 1) * n));
            std::size_t c = std::min(n - 1, static_cast<std::size_t>(counter_uniform(key, 3 * k + 2) * n));
            const std::size_t lo = std::min({a, b, c});
            const std::size_t hi = std::max({a, b, c});
            check_triple(lo, a + b + c - lo - hi, hi);
        }
    }

    // per-level sums Phi_n at every grid point via the truncated partition
    const std::size_t L = seq.level_count();
    std::vector<std::vector<double>> phi_n(L, std::vector<double>(n, 0.0));
    std::vector<double> level_values(L), level_meshes(L);
    for (std::size_t lev = 0; lev < L; ++lev) {
        const Partition& pi = seq.level(lev);
        CompensatedSum prefix;
        std::size_t k = 0; // current breakpoint position
        for (std::size_t g = 0; g < n; ++g) {
            while (k + 1 < pi.breakpoint_count() && pi.index(k + 1) <= g) {
                prefix.add(xi.component(pi.index(k), pi.index(k + 1), 0));
                ++k;
            }
            const std::size_t b = pi.index(k);
            phi_n[lev][g] = prefix.value() + (g > b ? xi.component(b, g, 0) : 0.0);
        }
        level_values[lev] = phi_n[lev][n - 1];
        level_meshes[lev] = mesh(pi);
    }

    // limit estimate: Richardson extrapolation of the last two levels at the
    // coherence rate 2^(1-theta)
    std::vector<double> phi(n);
    if (L >= 2) {
        const double rho = std::exp2(1.0 - theta);
        for (std::size_t g = 0; g < n; ++g) {
            phi[g] = (phi_n[L - 1][g] - rho * phi_n[L - 2][g]) / (1.0 - rho);
        }
    } else {
        phi = phi_n[0];
    }
    phi[0] = 0.0;

    SewingResult res{SampledPath(grid, 1, std::move(phi)),
                     theta,
                     K,
                     std::move(level_values),
                     std::move(level_meshes),
                     0.0,
                     false,
                     omega};

    // certificate on all pairs of coarse-level breakpoints (level 6 or the
    // finest available)
    const Partition& coarse = seq.level(std::min<std::size_t>(6, L - 1));
    const double C = res.constant();
    for (std::size_t a = 0; a < coarse.breakpoint_count(); ++a) {
        for (std::size_t b = a + 1; b < coarse.breakpoint_count(); ++b) {
            const std::size_t i = coarse.index(a), j = coarse.index(b);
            const double lhs =
                std::abs(res.phi.value(j, 0) - res.phi.value(i, 0) - xi.component(i, j, 0));
            const double bound =
                C * std::pow(omega(i, j), theta) + 1e-12 * (1.0 + std::abs(xi.component(i, j, 0)));
            res.certificate_max_ratio = std::max(res.certificate_max_ratio, lhs / bound);
        }
    }
    res.certified = res.certificate_max_ratio <= 1.0 + 1e-9;
    return res;
}

std::size_t QuadraticVariation::pair_id(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    // row-major upper triangle including the diagonal
    return i * dim() - i * (i + 1) / 2 + j;
}

QuadraticVariation::QuadraticVariation(SampledPath x, PartitionSequence seq)
    : x_(std::move(x)), seq_(std::move(seq)) {
    if (!x_.grid().same_as(seq_.grid())) {
        throw std::invalid_argument("QuadraticVariation: grid mismatch");
    }
    const std::size_t d = x_.dim();
    const std::size_t n = x_.grid().size();
    npairs_ = d * (d + 1) / 2;
    data_.assign(seq_.level_count() * npairs_ * n, 0.0);

    std::vector<double> dx(d);
    for (std::size_t lev = 0; lev < seq_.level_count(); ++lev) {
        const Partition& pi = seq_.level(lev);
        std::vector<CompensatedSum> prefix(npairs_);
        std::size_t k = 0;
        for (std::size_t g = 0; g < n; ++g) {
            while (k + 1 < pi.breakpoint_count() && pi.index(k + 1) <= g) {
                const std::size_t a = pi.index(k), b = pi.index(k + 1);
                std::size_t pos = 0;
                for (std::size_t i = 0; i < d; ++i) dx[i] = x_.increment(a, b, i);
                for (std::size_t i = 0; i < d; ++i) {
                    for (std::size_t j = i; j < d; ++j, ++pos) {
                        // diagonal directly; cross terms by polarization
                        const double term =
                            (i == j) ? dx[i] * dx[i]
                                     : 0.5 * ((dx[i] + dx[j]) * (dx[i] + dx[j]) -
                                              dx[i] * dx[i] - dx[j] * dx[j]);
                        prefix[pos].add(term);
                    }
                }
                ++k;
            }
            const std::size_t b = pi.index(k);
            std::size_t pos = 0;
            for (std::size_t i = 0; i < d; ++i) dx[i] = x_.increment(b, g, i);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = i; j < d; ++j, ++pos) {
                    const double straddle =
                        (g > b) ? ((i == j) ? dx[i] * dx[i]
                                            : 0.5 * ((dx[i] + dx[j]) * (dx[i] + dx[j]) -
                                                     dx[i] * dx[i] - dx[j] * dx[j]))
                                : 0.0;
                    data_[(lev * npairs_ + pos) * n + g] = prefix[pos].value() + straddle;
                }
            }
        }
    }
}

std::span<const double> QuadraticVariation::bracket_path(std::size_t level, std::size_t i,
                                                         std::size_t j) const {
    if (level >= level_count() || i >= dim() || j >= dim()) {
        throw std::invalid_argument("QuadraticVariation: index out of range");
    }
    const std::size_t n = x_.grid().size();
    return {data_.data() + (level * npairs_ + pair_id(i, j)) * n, n};
}

std::span<const double> QuadraticVariation::bracket_path(std::size_t i, std::size_t j) const {
    return bracket_path(level_count() - 1, i, j);
}

double QuadraticVariation::bracket(std::size_t level, std::size_t i, std::size_t j,
                                   std::size_t g) const {
    return bracket_path(level, i, j)[g];
}

double QuadraticVariation::increment(std::size_t level, std::size_t i, std::size_t j,
                                     std::size_t g0, std::size_t g1) const {
    const auto b = bracket_path(level, i, j);
    return b[g1] - b[g0];
}

double QuadraticVariation::uniform_gap(std::size_t level, std::size_t i, std::size_t j) const {
    if (level == 0 || level >= level_count()) {
        throw std::invalid_argument("QuadraticVariation::uniform_gap: need 1 <= level < count");
    }
    const auto fine = bracket_path(level, i, j);
    const auto coarse = bracket_path(level - 1, i, j);
    double gap = 0.0;
    for (std::size_t g = 0; g < fine.size(); ++g) {
        gap = std::max(gap, std::abs(fine[g] - coarse[g]));
    }
    return gap;
}

QuadraticVariation quadratic_variation(const SampledPath& x, const PartitionSequence& seq) {
    return QuadraticVariation(x, seq);
}

CovariationPair quadratic_covariation(const ControlledDecomposition& y_dec,
                                      const QuadraticVariation& qv, std::size_t pi_level) {
    const SampledPath& x = y_dec.x();
    const SampledPath& y = y_dec.y();
    if (!x.grid().same_as(qv.path().grid())) {
        throw std::invalid_argument("quadratic_covariation: grid mismatch");
    }
    if (pi_level >= qv.level_count()) {
        throw std::invalid_argument("quadratic_covariation: level out of range");
    }
    const Partition& pi = qv.sequence().level(pi_level);
    const std::size_t d = x.dim();

    CompensatedSum direct;
    for (std::size_t k = 0; k + 1 < pi.breakpoint_count(); ++k) {
        double term = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            term += x.increment(pi.index(k), pi.index(k + 1), c) *
                    y.increment(pi.index(k), pi.index(k + 1), c);
        }
        direct.add(term);
    }

    CompensatedSum via;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const auto b = qv.bracket_path(pi_level, i, j);
            for (std::size_t k = 0; k + 1 < pi.breakpoint_count(); ++k) {
                via.add(y_dec.y_prime().entry(pi.index(k), i, j) *
                        (b[pi.index(k + 1)] - b[pi.index(k)]));
            }
        }
    }
    return {direct.value(), via.value()};
}

StratonovichResult stratonovich(const ControlledDecomposition& y_dec,
                                const PartitionSequence& seq) {
    const SampledPath& x = y_dec.x();
    const SampledPath& y = y_dec.y();
    StratonovichResult res;
    const std::size_t last = x.size() - 1;
    double boundary = 0.0;
    for (std::size_t c = 0; c < x.dim(); ++c) {
        boundary += y.value(last, c) * x.value(last, c) - y.value(0, c) * x.value(0, c);
    }
    res.split_max_error = 0.0;
    for (std::size_t n = 0; n < seq.level_count(); ++n) {
        const double v = riemann_gamma(y, x, seq.level(n), 0.5);
        const auto sa = sym_antisym(y, x, seq.level(n), 0.5);
        res.level_values.push_back(v);
        res.split_max_error =
            std::max(res.split_max_error, std::abs(v - 0.5 * (boundary + sa.antisymmetric)));
    }
    res.value = res.level_values.back();
    return res;
}

GammaIdentityResult gamma_integral_identity(const ControlledDecomposition& y_dec,
                                            const PartitionSequence& seq, double gamma) {
    const SampledPath& x = y_dec.x();
    const SampledPath& y = y_dec.y();
    const QuadraticVariation qv(x, seq);

    const std::size_t last = x.size() - 1;
    double boundary = 0.0;
    for (std::size_t c = 0; c < x.dim(); ++c) {
        boundary += y.value(last, c) * x.value(last, c) - y.value(0, c) * x.value(0, c);
    }
    const auto sa = sym_antisym(y, x, seq.finest(), 0.5);
    GammaIdentityResult res;
    res.stratonovich_value = 0.5 * (boundary + sa.antisymmetric);

    for (std::size_t n = 0; n < seq.level_count(); ++n) {
        const auto cov = quadratic_covariation(y_dec, qv, n);
        res.via_bracket.push_back(cov.via_bracket);
        const double lhs = riemann_gamma(y, x, seq.level(n), gamma);
        res.residuals.push_back(
            lhs - (res.stratonovich_value + 0.5 * (2.0 * gamma - 1.0) * cov.via_bracket));
    }
    return res;
}

} // namespace pathint
