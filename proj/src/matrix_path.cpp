#include "pathint/matrix_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathint {

MatrixPath::MatrixPath(TimeGrid grid, std::size_t rows, std::size_t cols,
                       std::vector<double> data)
    : grid_(std::move(grid)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows_ == 0 || cols_ == 0) {
        throw std::invalid_argument("MatrixPath: zero dimension");
    }
    if (data_.size() != grid_.size() * rows_ * cols_) {
        throw std::invalid_argument("MatrixPath: data length mismatch");
    }
}

MatrixPath MatrixPath::constant(const TimeGrid& grid, std::size_t rows, std::size_t cols,
                                std::span<const double> matrix) {
    if (matrix.size() != rows * cols) {
        throw std::invalid_argument("MatrixPath::constant: matrix size mismatch");
    }
    std::vector<double> data(grid.size() * rows * cols);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::copy(matrix.begin(), matrix.end(), data.begin() + i * rows * cols);
    }
    return MatrixPath(grid, rows, cols, std::move(data));
}

MatrixPath MatrixPath::identity(const TimeGrid& grid, std::size_t d) {
    std::vector<double> m(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1.0;
    return constant(grid, d, d, m);
}

bool invert_small(std::vector<double>& a, std::size_t d) {
    if (a.size() != d * d) {
        throw std::invalid_argument("invert_small: size mismatch");
    }
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return false;

    std::vector<double> inv(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) inv[i * d + i] = 1.0;

    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::abs(a[r * d + col]) > std::abs(a[piv * d + col])) piv = r;
        }
        if (std::abs(a[piv * d + col]) <= scale * 1e-13) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < d; ++c) {
                std::swap(a[piv * d + c], a[col * d + c]);
                std::swap(inv[piv * d + c], inv[col * d + c]);
            }
        }
        const double q = a[col * d + col];
        for (std::size_t c = 0; c < d; ++c) {
            a[col * d + c] /= q;
            inv[col * d + c] /= q;
        }
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            const double f = a[r * d + col];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < d; ++c) {
                a[r * d + c] -= f * a[col * d + c];
                inv[r * d + c] -= f * inv[col * d + c];
            }
        }
    }
    a = std::move(inv);
    return true;
}

} // namespace pathint
