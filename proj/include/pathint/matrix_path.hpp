#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pathint/grid.hpp"

namespace pathint {

/// Matrix-valued path: one rows x cols matrix (row-major) per grid point.
/// Houses Gubinelli derivatives Y'_t.
class MatrixPath {
public:
    MatrixPath(TimeGrid grid, std::size_t rows, std::size_t cols, std::vector<double> data);

    static MatrixPath constant(const TimeGrid& grid, std::size_t rows, std::size_t cols,
                               std::span<const double> matrix);
    static MatrixPath identity(const TimeGrid& grid, std::size_t d);

    const TimeGrid& grid() const { return grid_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double entry(std::size_t t_idx, std::size_t r, std::size_t c) const {
        return data_[(t_idx * rows_ + r) * cols_ + c];
    }
    std::span<const double> at(std::size_t t_idx) const {
        return {data_.data() + t_idx * rows_ * cols_, rows_ * cols_};
    }

private:
    TimeGrid grid_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// In-place Gauss-Jordan inverse of a small dense row-major d x d matrix.
/// Returns false when a pivot falls below scale * 1e-13.
bool invert_small(std::vector<double>& a, std::size_t d);

} // namespace pathint
