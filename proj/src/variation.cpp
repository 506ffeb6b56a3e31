#include "pathint/variation.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "pathint/numeric.hpp"

namespace pathint {

namespace {

void check_exponent(double p) {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("p_variation: exponent must be >= 1");
    }
}

// DP sweep anchored at i0 over raw p-th powers; V[j - i0] = max partition sum.
std::vector<double> dp_powers(const TwoParamField& f, double p, std::size_t i0,
                              std::size_t i1, std::size_t band) {
    const std::size_t n = i1 - i0 + 1;
    std::vector<double> V(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        double best = 0.0;
        const std::size_t lo = (band > 0 && j > band) ? j - band : 0;
        for (std::size_t i = lo; i < j; ++i) {
            const double m = f.magnitude(i0 + i, i0 + j);
            const double cand = V[i] + std::pow(m, p);
            if (cand > best) best = cand;
        }
        V[j] = best;
    }
    return V;
}

} // namespace

double p_variation_indices(const TwoParamField& f, double p, std::size_t i0, std::size_t i1,
                           std::size_t band) {
    check_exponent(p);
    if (i0 > i1 || i1 >= f.grid().size()) {
        throw std::invalid_argument("p_variation: bad index pair");
    }
    if (i0 == i1) return 0.0;
    const auto V = dp_powers(f, p, i0, i1, band);
    return std::pow(V.back(), 1.0 / p);
}

double p_variation(const TwoParamField& f, double p, double s, double t, std::size_t band) {
    return p_variation_indices(f, p, f.grid().index_of(s), f.grid().index_of(t), band);
}

std::vector<double> p_variation_row(const TwoParamField& f, double p, std::size_t i0,
                                    std::size_t band) {
    check_exponent(p);
    if (i0 >= f.grid().size()) {
        throw std::invalid_argument("p_variation_row: index out of range");
    }
    auto V = dp_powers(f, p, i0, f.grid().size() - 1, band);
    for (double& v : V) {
        v = std::pow(v, 1.0 / p);
    }
    return V;
}

ControlFunction control_from_pvariation(const SampledPath& x, double p) {
    check_exponent(p);
    const std::size_t n = x.size();
    if (n > 2048) {
        throw std::invalid_argument(
            "control_from_pvariation: tabulation capped at 2048 grid points");
    }
    const auto f = increment_field(x);
    // one DP sweep per anchor: omega(i,j) = V_p(i,j)^p, full upper triangle
    auto table = std::make_shared<std::vector<double>>(n * n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const auto V = dp_powers(f, p, i, n - 1, 0);
        for (std::size_t j = i; j < n; ++j) {
            (*table)[i * n + j] = V[j - i];
        }
    }
    return ControlFunction(x.grid(), [table, n](std::size_t i, std::size_t j) {
        if (i > j || j >= n) {
            throw std::invalid_argument("ControlFunction: need grid indices i <= j");
        }
        return (*table)[i * n + j];
    });
}

ControlFunction sum_controls(const std::vector<ControlFunction>& parts) {
    if (parts.empty()) {
        throw std::invalid_argument("sum_controls: empty list");
    }
    for (const auto& c : parts) {
        if (!c.grid().same_as(parts.front().grid())) {
            throw std::invalid_argument("sum_controls: grid mismatch");
        }
    }
    auto copies = std::make_shared<std::vector<ControlFunction>>(parts);
    return ControlFunction(parts.front().grid(), [copies](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (const auto& c : *copies) s += c(i, j);
        return s;
    });
}

double superadditivity_defect(const ControlFunction& omega, std::size_t exhaustive_limit,
                              std::size_t samples) {
    const std::size_t n = omega.grid().size();
    double worst = 0.0;
    auto ratio = [&](std::size_t s, std::size_t u, std::size_t t) {
        const double whole = omega(s, t);
        const double split = omega(s, u) + omega(u, t);
        if (split <= whole) return 0.0;
        return (split - whole) / std::max(1e-300, std::abs(whole));
    };
    if (n <= exhaustive_limit) {
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t u = s; u < n; ++u) {
                for (std::size_t t = u; t < n; ++t) {
                    worst = std::max(worst, ratio(s, u, t));
                }
            }
        }
    } else {
        const std::uint64_t key = 0x5eedc0de;
        for (std::size_t k = 0; k < samples; ++k) {
            std::size_t a = static_cast<std::size_t>(counter_uniform(key, 3 * k) * n);
            std::size_t b = static_cast<std::size_t>(counter_uniform(key, 3 * k + 1) * n);
            std::size_t c = static_cast<std::size_t>(counter_uniform(key, 3 * k + 2) * n);
            a = std::min(a, n - 1); b = std::min(b, n - 1); c = std::min(c, n - 1);
            std::size_t lo = std::min({a, b, c});
            std::size_t hi = std::max({a, b, c});
            std::size_t mid = a + b + c - lo - hi;
            worst = std::max(worst, ratio(lo, mid, hi));
        }
    }
    return worst;
}

bool verify_superadditive(const ControlFunction& omega, std::size_t exhaustive_limit,
                          std::size_t samples) {
    return superadditivity_defect(omega, exhaustive_limit, samples) <= 1e-9;
}

std::optional<HolderEstimate> holder_estimate(const SampledPath& x,
                                              std::pair<std::size_t, std::size_t> scale_range) {
    if (x.dim() != 1) {
        throw std::invalid_argument("holder_estimate: scalar paths only");
    }
    if (!x.grid().is_uniform()) {
        throw std::invalid_argument("holder_estimate: uniform grids only");
    }
    if (scale_range.first > scale_range.second) {
        throw std::invalid_argument("holder_estimate: bad scale range");
    }
    const std::size_t n = x.size();
    const double h = x.grid().span() / static_cast<double>(n - 1);

    std::vector<double> log_scale, log_inc;
    for (std::size_t k = scale_range.first; k <= scale_range.second; ++k) {
        const std::size_t lag = std::size_t{1} << k;
        if (lag >= n) {
            throw std::invalid_argument("holder_estimate: scale exceeds grid");
        }
        double m = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) {
            m = std::max(m, std::abs(x.value(i + lag, 0) - x.value(i, 0)));
        }
        if (m == 0.0) {
            return std::nullopt; // constant at this scale: exponent undefined
        }
        log_scale.push_back(std::log(static_cast<double>(lag) * h));
        log_inc.push_back(std::log(m));
    }
    const std::size_t k = log_scale.size();
    if (k < 2) {
        throw std::invalid_argument("holder_estimate: need at least two scales");
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) { mx += log_scale[i]; my += log_inc[i]; }
    mx /= static_cast<double>(k); my /= static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (log_scale[i] - mx) * (log_scale[i] - mx);
        sxy += (log_scale[i] - mx) * (log_inc[i] - my);
    }
    const double slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = log_inc[i] - (my + slope * (log_scale[i] - mx));
        rss += r * r;
    }
    return HolderEstimate{slope, std::sqrt(rss / static_cast<double>(k))};
}

} // namespace pathint
