#include "pathint/path.hpp"

#include <cmath>
#include <stdexcept>

#include "pathint/errors.hpp"
#include "pathint/numeric.hpp"

namespace pathint {

SampledPath::SampledPath(TimeGrid grid, std::size_t dim, std::vector<double> values)
    : grid_(std::move(grid)), dim_(dim), values_(std::move(values)) {
    if (dim_ == 0) {
        throw std::invalid_argument("SampledPath: dimension must be >= 1");
    }
    if (values_.size() != grid_.size() * dim_) {
        throw std::invalid_argument("SampledPath: values length must equal grid length times dim");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("SampledPath: non-finite value");
        }
    }
}

SampledPath SampledPath::component(std::size_t c) const {
    if (c >= dim_) {
        throw std::invalid_argument("SampledPath::component: index out of range");
    }
    std::vector<double> vals(size());
    for (std::size_t i = 0; i < size(); ++i) {
        vals[i] = value(i, c);
    }
    return SampledPath(grid_, 1, std::move(vals));
}

PathIncrement make_increment(const SampledPath& x, std::size_t i0, std::size_t i1) {
    if (i0 > i1 || i1 >= x.size()) {
        throw std::invalid_argument("make_increment: bad index pair");
    }
    PathIncrement inc;
    inc.s = x.grid()[i0];
    inc.t = x.grid()[i1];
    inc.delta.resize(x.dim());
    for (std::size_t c = 0; c < x.dim(); ++c) {
        inc.delta[c] = x.increment(i0, i1, c);
    }
    return inc;
}

SampledPath sample_brownian(std::uint64_t seed, const TimeGrid& grid, std::size_t d) {
    if (d < 1) {
        throw std::invalid_argument("sample_brownian: need d >= 1");
    }
    const std::size_t n = grid.size();
    std::vector<double> vals(n * d, 0.0);
    for (std::size_t c = 0; c < d; ++c) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double dt = grid[i + 1] - grid[i];
            const double z = counter_gaussian(seed, i * d + c);
            acc += z * std::sqrt(dt);
            vals[(i + 1) * d + c] = acc;
        }
    }
    return SampledPath(grid, d, std::move(vals));
}

SampledPath lacunary_pair(double alpha, std::size_t m, const TimeGrid& grid) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("lacunary_pair: alpha must lie in (0,1)");
    }
    if (m < 1) {
        throw std::invalid_argument("lacunary_pair: need m >= 1");
    }
    if (std::abs(grid.start() + 1.0) > 1e-12 || std::abs(grid.horizon() - 1.0) > 1e-12) {
        throw std::invalid_argument("lacunary_pair: grid must span [-1,1]");
    }
    const double pi = 3.14159265358979323846264338328;
    const std::size_t n = grid.size();
    std::vector<double> vals(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = grid[i];
        double s = 0.0, c = 0.0;
        // smallest coefficient first: k = m down to 1. The phase 2^k t is
        // reduced mod 2 before multiplying by pi: scaling by 2^k and fmod are
        // exact, so no precision is lost to large arguments at high k.
        for (std::size_t k = m; k >= 1; --k) {
            const double a = std::exp2(-alpha * static_cast<double>(k));
            const double w = pi * std::fmod(std::exp2(static_cast<double>(k)) * t, 2.0);
            s += a * std::sin(w);
            c += a * std::cos(w);
        }
        vals[i * 2] = s;
        vals[i * 2 + 1] = c;
    }
    return SampledPath(grid, 2, std::move(vals));
}

SampledPath compose(const std::function<double(double)>& f, const SampledPath& x) {
    if (x.dim() != 1) {
        throw std::invalid_argument("compose: path must be one-dimensional");
    }
    std::vector<double> vals(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        vals[i] = f(x.value(i, 0));
        if (!std::isfinite(vals[i])) {
            throw NumericDomainError("compose: non-finite value at t = " +
                                     format_full(x.grid()[i]));
        }
    }
    return SampledPath(x.grid(), 1, std::move(vals));
}

SampledPath stopped_linear_approximation(const SampledPath& x, const TimeGrid& level_grid,
                                         double t) {
    const TimeGrid& grid = x.grid();
    // level breakpoints must sit on the host grid
    std::vector<std::size_t> level_idx(level_grid.size());
    for (std::size_t k = 0; k < level_grid.size(); ++k) {
        auto idx = grid.try_index_of(level_grid[k]);
        if (!idx) {
            throw std::invalid_argument(
                "stopped_linear_approximation: level grid point not on host grid");
        }
        level_idx[k] = *idx;
    }
    if (level_idx.front() != 0 || level_idx.back() != grid.size() - 1) {
        throw std::invalid_argument(
            "stopped_linear_approximation: level grid must span the host grid");
    }
    const std::size_t t_idx = grid.index_of(t);

    const std::size_t d = x.dim();
    std::vector<double> vals(grid.size() * d);

    // interpolant of x along level breakpoints, evaluated at a grid time
    auto interp = [&](double s, std::size_t c) {
        std::size_t lo = 0, hi = level_idx.size() - 1;
        while (lo + 1 < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (level_grid[mid] <= s) lo = mid; else hi = mid;
        }
        const double a = level_grid[lo], b = level_grid[lo + 1];
        const double lam = (s - a) / (b - a);
        return x.value(level_idx[lo], c) +
               lam * (x.value(level_idx[lo + 1], c) - x.value(level_idx[lo], c));
    };

    std::vector<double> frozen(d);
    for (std::size_t c = 0; c < d; ++c) {
        frozen[c] = interp(t, c);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t c = 0; c < d; ++c) {
            vals[i * d + c] = (i < t_idx) ? interp(grid[i], c) : frozen[c];
        }
    }
    return SampledPath(grid, d, std::move(vals));
}

void write_path_csv(const SampledPath& x, std::ostream& out) {
    out << "t";
    for (std::size_t c = 1; c <= x.dim(); ++c) {
        out << ",x" << c;
    }
    out << "\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        out << format_full(x.grid()[i]);
        for (std::size_t c = 0; c < x.dim(); ++c) {
            out << "," << format_full(x.value(i, c));
        }
        out << "\n";
    }
}

} // namespace pathint
