#pragma once

#include "tmoment/scalar.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace tmoment {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const
    {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }
    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
    // Rows and columns selected by index lists.
    Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const
    {
        Matrix s(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
        return s;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ScalarMatrix = Matrix<Scalar>;

bool is_exact(const ScalarMatrix& a);
ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
std::vector<Scalar> multiply(const ScalarMatrix& a, std::span<const Scalar> v);
ScalarMatrix leading_block(const ScalarMatrix& a, std::size_t k);
double max_abs(const ScalarMatrix& a);

// Row echelon form with pivots on the first independent columns.  Exact
// matrices use fraction-free (Bareiss) elimination.  Float matrices use
// partial pivoting; a column is dependent when its best remaining entry is at
// most rank_tol times the column's largest original entry.
struct Echelon {
    ScalarMatrix reduced;
    std::vector<std::size_t> pivot_columns;
    std::vector<std::size_t> free_columns;
    bool exact = true;
    std::size_t rank() const { return pivot_columns.size(); }
};

Echelon row_echelon(const ScalarMatrix& a, double rank_tol);

// One kernel vector per free column: 1 at that column, 0 at the other free
// columns.
std::vector<std::vector<Scalar>> kernel_basis(const Echelon& e);

std::size_t rank(const ScalarMatrix& a, double rank_tol);
Scalar determinant(const ScalarMatrix& a);

// Solution of a square system, or nullopt when the matrix is singular.
std::optional<std::vector<Scalar>> solve_square(const ScalarMatrix& a, std::span<const Scalar> b,
                                                double rank_tol);

}  // namespace tmoment
