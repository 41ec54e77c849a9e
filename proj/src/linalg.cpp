#include "homebias/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace homebias::linalg {

std::vector<double> Matrix::column(std::size_t c) const
{
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

std::vector<double> multiply(const Matrix& a, std::span<const double> x)
{
    if (x.size() != a.cols())
        throw std::invalid_argument("multiply: dimension mismatch");
    std::vector<double> out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        out[r] = dot(a.row(r), x);
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

HouseholderQR::HouseholderQR(Matrix a) : qr_(std::move(a))
{
    const std::size_t n = qr_.rows();
    const std::size_t k = qr_.cols();
    if (n < k)
        throw std::invalid_argument("HouseholderQR: fewer rows than columns");
    beta_.assign(k, 0.0);
    diag_.assign(k, 0.0);

    for (std::size_t j = 0; j < k; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = j; i < n; ++i)
            norm2 += qr_(i, j) * qr_(i, j);
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) {
            diag_[j] = 0.0;
            continue;
        }
        const double alpha = qr_(j, j) > 0.0 ? -norm : norm;
        qr_(j, j) -= alpha;  // column j rows j.. now hold v
        double vtv = 0.0;
        for (std::size_t i = j; i < n; ++i)
            vtv += qr_(i, j) * qr_(i, j);
        beta_[j] = vtv > 0.0 ? 2.0 / vtv : 0.0;
        diag_[j] = alpha;

        for (std::size_t c = j + 1; c < k; ++c) {
            double s = 0.0;
            for (std::size_t i = j; i < n; ++i)
                s += qr_(i, j) * qr_(i, c);
            s *= beta_[j];
            for (std::size_t i = j; i < n; ++i)
                qr_(i, c) -= s * qr_(i, j);
        }
    }
}

std::vector<std::size_t> HouseholderQR::dependent_columns(double tolerance) const
{
    double largest = 0.0;
    for (double d : diag_)
        largest = std::max(largest, std::abs(d));
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < diag_.size(); ++j)
        if (largest == 0.0 || std::abs(diag_[j]) <= tolerance * largest)
            out.push_back(j);
    return out;
}

std::vector<double> HouseholderQR::apply_qt(std::span<const double> b) const
{
    const std::size_t n = qr_.rows();
    std::vector<double> y(b.begin(), b.end());
    for (std::size_t j = 0; j < qr_.cols(); ++j) {
        if (beta_[j] == 0.0)
            continue;
        double s = 0.0;
        for (std::size_t i = j; i < n; ++i)
            s += qr_(i, j) * y[i];
        s *= beta_[j];
        for (std::size_t i = j; i < n; ++i)
            y[i] -= s * qr_(i, j);
    }
    return y;
}

std::vector<double> HouseholderQR::solve(std::span<const double> b) const
{
    if (b.size() != qr_.rows())
        throw std::invalid_argument("HouseholderQR::solve: dimension mismatch");
    const std::size_t k = qr_.cols();
    std::vector<double> c = apply_qt(b);
    std::vector<double> x(k, 0.0);
    for (std::size_t ii = k; ii-- > 0;) {
        double s = c[ii];
        for (std::size_t j = ii + 1; j < k; ++j)
            s -= qr_(ii, j) * x[j];
        x[ii] = s / diag_[ii];
    }
    return x;
}

Matrix HouseholderQR::inverse_gram() const
{
    const std::size_t k = qr_.cols();
    // Upper-triangular R^{-1}, column by column.
    Matrix rinv(k, k);
    for (std::size_t c = 0; c < k; ++c) {
        rinv(c, c) = 1.0 / diag_[c];
        for (std::size_t ii = c; ii-- > 0;) {
            double s = 0.0;
            for (std::size_t j = ii + 1; j <= c; ++j)
                s += qr_(ii, j) * rinv(j, c);
            rinv(ii, c) = -s / diag_[ii];
        }
    }
    Matrix out(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            double s = 0.0;
            for (std::size_t m = std::max(i, j); m < k; ++m)
                s += rinv(i, m) * rinv(j, m);
            out(i, j) = s;
            out(j, i) = s;
        }
    return out;
}

}  // namespace homebias::linalg
