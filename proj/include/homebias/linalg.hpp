#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace homebias::linalg {

/// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::vector<double> column(std::size_t c) const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

std::vector<double> multiply(const Matrix& a, std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// Householder QR of an n x k matrix (n >= k). Q is kept implicitly as
/// reflectors below the diagonal of the packed storage.
class HouseholderQR {
public:
    explicit HouseholderQR(Matrix a);

    std::size_t rows() const noexcept { return qr_.rows(); }
    std::size_t cols() const noexcept { return qr_.cols(); }

    /// |R_jj| relative to the largest |R_ii|. Columns whose ratio falls below
    /// `tolerance` are linear combinations of the columns before them.
    std::vector<std::size_t> dependent_columns(double tolerance = 1e-10) const;

    /// argmin ||A x - b||_2. Requires full column rank.
    std::vector<double> solve(std::span<const double> b) const;

    /// (A^T A)^{-1} = R^{-1} R^{-T}.
    Matrix inverse_gram() const;

    /// Entry of the triangular factor R.
    double r(std::size_t i, std::size_t j) const noexcept
    {
        return i == j ? diag_[i] : (i < j ? qr_(i, j) : 0.0);
    }

private:
    std::vector<double> apply_qt(std::span<const double> b) const;

    Matrix qr_;
    std::vector<double> beta_;  // Householder scaling factors
    std::vector<double> diag_;  // diagonal of R
};

}  // namespace homebias::linalg
