#include "pathint/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace pathint {

namespace {

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

} // namespace

TimeGrid::TimeGrid(std::vector<double> points) {
    if (points.size() < 2) {
        throw std::invalid_argument("TimeGrid: need at least 2 points");
    }
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i] < points[i + 1])) {
            throw std::invalid_argument("TimeGrid: points must be strictly increasing");
        }
    }
    for (double p : points) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument("TimeGrid: non-finite point");
        }
    }
    pts_ = std::make_shared<const std::vector<double>>(std::move(points));
}

TimeGrid TimeGrid::uniform(double a, double b, std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("TimeGrid::uniform: need n >= 2");
    }
    if (!(a < b)) {
        throw std::invalid_argument("TimeGrid::uniform: need a < b");
    }
    std::vector<double> pts(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = a + static_cast<double>(i) * h;
    }
    pts.back() = b;
    return TimeGrid(std::move(pts));
}

std::optional<std::size_t> TimeGrid::try_index_of(double time) const {
    const auto& p = *pts_;
    if (time < p.front() || time > p.back()) {
        if (close(time, p.front())) return 0;
        if (close(time, p.back())) return p.size() - 1;
        return std::nullopt;
    }
    // binary search for the insertion point, then check neighbors
    std::size_t lo = 0, hi = p.size() - 1;
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (p[mid] <= time) lo = mid; else hi = mid;
    }
    if (close(p[lo], time)) return lo;
    if (close(p[hi], time)) return hi;
    return std::nullopt;
}

std::size_t TimeGrid::index_of(double time) const {
    if (auto i = try_index_of(time)) return *i;
    throw std::invalid_argument("TimeGrid: time is not a grid point");
}

std::size_t TimeGrid::floor_index(double time) const {
    const auto& p = *pts_;
    if (time < p.front() || time > p.back()) {
        throw std::invalid_argument("TimeGrid::floor_index: time outside grid range");
    }
    std::size_t lo = 0, hi = p.size() - 1;
    if (time >= p.back()) return p.size() - 1;
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (p[mid] <= time) lo = mid; else hi = mid;
    }
    return lo;
}

bool TimeGrid::is_uniform(double rel_tol) const {
    const auto& p = *pts_;
    const double h = span() / static_cast<double>(p.size() - 1);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (std::abs((p[i + 1] - p[i]) - h) > rel_tol * h) return false;
    }
    return true;
}

std::optional<std::size_t> TimeGrid::log2_intervals() const {
    const std::size_t intervals = size() - 1;
    if ((intervals & (intervals - 1)) != 0) return std::nullopt;
    std::size_t l = 0;
    for (std::size_t v = intervals; v > 1; v >>= 1) ++l;
    return l;
}

bool TimeGrid::same_as(const TimeGrid& other) const {
    if (pts_ == other.pts_) return true;
    return *pts_ == *other.pts_;
}

TimeGrid make_uniform_grid(double T, std::size_t n) {
    if (!(T > 0.0)) {
        throw std::invalid_argument("make_uniform_grid: need T > 0");
    }
    return TimeGrid::uniform(0.0, T, n);
}

} // namespace pathint
