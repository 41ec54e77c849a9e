#include "homebias/glm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "homebias/errors.hpp"

namespace homebias {

namespace {

using linalg::HouseholderQR;
using linalg::Matrix;

// log(1 + e^x) without overflow.
double softplus(double x) noexcept { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

void require_full_rank(const HouseholderQR& qr, const std::vector<std::string>& names)
{
    const auto dep = qr.dependent_columns();
    if (dep.empty())
        return;
    std::vector<std::string> cols;
    std::string list;
    for (auto j : dep) {
        cols.push_back(names[j]);
        list += (list.empty() ? "" : ", ") + names[j];
    }
    throw SingularDesignError(cols, "singular design: column(s) linearly dependent on earlier columns: " + list);
}

Coefficient make_coefficient(const std::string& name, double est, double se, bool normal, double dof)
{
    Coefficient c{name, est, se, 0.0, 1.0};
    if (se > 0.0 && std::isfinite(se)) {
        c.statistic = est / se;
    } else if (est != 0.0) {
        c.statistic = std::copysign(std::numeric_limits<double>::infinity(), est);
    }
    c.p_value = normal ? normal_two_sided_p(c.statistic) : student_t_two_sided_p(c.statistic, dof);
    return c;
}

// sqrt(W) X for the current linear predictor, with the working response
// (y - p) / sqrt(W) so that the LS solution is the Newton step.
struct WeightedSystem {
    Matrix a;
    std::vector<double> b;
};

constexpr double kMinWeight = 1e-12;

WeightedSystem weighted_system(const Matrix& x, std::span<const double> y, std::span<const double> beta)
{
    WeightedSystem sys{Matrix(x.rows(), x.cols()), std::vector<double>(x.rows())};
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double p = inverse_logit(linalg::dot(x.row(i), beta));
        const double w = std::max(p * (1.0 - p), kMinWeight);
        const double sw = std::sqrt(w);
        for (std::size_t j = 0; j < x.cols(); ++j)
            sys.a(i, j) = sw * x(i, j);
        sys.b[i] = (y[i] - p) / sw;
    }
    return sys;
}

}  // namespace

void DesignMatrix::validate() const
{
    if (columns.size() != x.cols())
        throw UsageError("design: " + std::to_string(columns.size()) + " names for " +
                         std::to_string(x.cols()) + " columns");
    if (response.size() != x.rows())
        throw UsageError("design: response length " + std::to_string(response.size()) +
                         " differs from row count " + std::to_string(x.rows()));
    if (x.rows() < x.cols() || x.cols() == 0)
        throw UsageError("design: need at least as many rows as columns");
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (double v : x.row(i))
            if (!std::isfinite(v))
                throw UsageError("design: non-finite covariate in row " + std::to_string(i));
        if (!std::isfinite(response[i]))
            throw UsageError("design: non-finite response in row " + std::to_string(i));
    }
}

const Coefficient& FitResult::at(std::string_view name) const
{
    for (const auto& c : coefficients)
        if (c.name == name)
            return c;
    throw UsageError("fit has no coefficient named '" + std::string(name) + "'");
}

std::vector<double> FitResult::estimates() const
{
    std::vector<double> out;
    for (const auto& c : coefficients)
        out.push_back(c.estimate);
    return out;
}

std::vector<std::string> FitResult::names() const
{
    std::vector<std::string> out;
    for (const auto& c : coefficients)
        out.push_back(c.name);
    return out;
}

double inverse_logit(double eta) noexcept
{
    if (eta >= 0.0)
        return 1.0 / (1.0 + std::exp(-eta));
    const double e = std::exp(eta);
    return e / (1.0 + e);
}

double logistic_log_likelihood(const Matrix& x, std::span<const double> y, std::span<const double> beta)
{
    double ll = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double eta = linalg::dot(x.row(i), beta);
        ll += y[i] * eta - softplus(eta);
    }
    return ll;
}

std::vector<double> logistic_score(const Matrix& x, std::span<const double> y, std::span<const double> beta)
{
    std::vector<double> g(x.cols(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double r = y[i] - inverse_logit(linalg::dot(x.row(i), beta));
        for (std::size_t j = 0; j < x.cols(); ++j)
            g[j] += r * x(i, j);
    }
    return g;
}

Matrix logistic_information(const Matrix& x, std::span<const double> beta)
{
    const std::size_t k = x.cols();
    Matrix info(k, k);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double p = inverse_logit(linalg::dot(x.row(i), beta));
        const double w = p * (1.0 - p);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a; b < k; ++b)
                info(a, b) += w * x(i, a) * x(i, b);
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < a; ++b)
            info(a, b) = info(b, a);
    return info;
}

double normal_two_sided_p(double z) noexcept
{
    if (std::isnan(z))
        return std::numeric_limits<double>::quiet_NaN();
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

double student_t_two_sided_p(double t, double dof)
{
    if (std::isnan(t))
        return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t))
        return 0.0;
    const boost::math::students_t dist(dof);
    return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

std::string significance_stars(double p_value)
{
    if (p_value < 0.01)
        return "***";
    if (p_value < 0.05)
        return "**";
    if (p_value < 0.1)
        return "*";
    return "";
}

FitResult fit_logistic(const DesignMatrix& design, const LogisticOptions& options)
{
    design.validate();
    const Matrix& x = design.x;
    const auto& y = design.response;
    for (double v : y)
        if (v != 0.0 && v != 1.0)
            throw UsageError("fit_logistic: response must be 0/1");
    require_full_rank(HouseholderQR(x), design.columns);

    const std::size_t k = x.cols();
    std::vector<double> beta(k, 0.0);
    double deviance = -2.0 * logistic_log_likelihood(x, y, beta);

    FitResult fit;
    fit.kind = FitKind::Logistic;
    fit.observations = x.rows();
    fit.converged = false;

    for (int it = 1; it <= options.max_iterations; ++it) {
        fit.iterations = it;
        const auto sys = weighted_system(x, y, beta);
        const std::vector<double> step = HouseholderQR(sys.a).solve(sys.b);

        std::vector<double> next(k);
        double next_dev = 0.0;
        double scale = 1.0;
        for (int halving = 0; halving < 30; ++halving, scale *= 0.5) {
            for (std::size_t j = 0; j < k; ++j)
                next[j] = beta[j] + scale * step[j];
            next_dev = -2.0 * logistic_log_likelihood(x, y, next);
            if (std::isfinite(next_dev) && next_dev <= deviance + 1e-12 * std::abs(deviance))
                break;
        }
        const double change = std::abs(deviance - next_dev);
        beta = std::move(next);
        deviance = next_dev;
        if (change < options.deviance_tolerance) {
            fit.converged = true;
            break;
        }
    }

    const auto sys = weighted_system(x, y, beta);
    const HouseholderQR qr(sys.a);
    const Matrix cov = qr.inverse_gram();

    for (std::size_t j = 0; j < k; ++j)
        fit.coefficients.push_back(
            make_coefficient(design.columns[j], beta[j], std::sqrt(cov(j, j)), true, 0.0));

    const double ll = -0.5 * deviance;
    fit.log_likelihood = ll;
    fit.aic = 2.0 * static_cast<double>(k) - 2.0 * ll;

    std::size_t saturated = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const double p = inverse_logit(linalg::dot(x.row(i), beta));
        if (p < 1e-10 || p > 1.0 - 1e-10)
            ++saturated;
    }
    std::string diverging;
    for (const auto& c : fit.coefficients)
        if (std::abs(c.estimate) > 10.0)
            diverging += (diverging.empty() ? "" : ", ") + c.name;

    std::ostringstream diag;
    if (saturated > 0 && !diverging.empty()) {
        fit.separation = true;
        fit.converged = false;
        diag << "perfect or quasi-complete separation: " << saturated
             << " fitted probabilities numerically 0 or 1; diverging coefficients: " << diverging;
    } else if (!fit.converged) {
        diag << "no convergence after " << fit.iterations << " iterations";
    }
    fit.diagnostic = diag.str();
    return fit;
}

FitResult fit_ols(const DesignMatrix& design)
{
    design.validate();
    const Matrix& x = design.x;
    const auto& y = design.response;
    const std::size_t n = x.rows();
    const std::size_t k = x.cols();
    if (n <= k)
        throw UsageError("fit_ols: need more rows than columns for standard errors");

    const HouseholderQR qr(x);
    require_full_rank(qr, design.columns);
    const std::vector<double> beta = qr.solve(y);
    const std::vector<double> fitted = linalg::multiply(x, beta);

    double mean = 0.0;
    for (double v : y)
        mean += v;
    mean /= static_cast<double>(n);
    double ssr = 0.0, sst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ssr += (y[i] - fitted[i]) * (y[i] - fitted[i]);
        sst += (y[i] - mean) * (y[i] - mean);
    }
    const double dof = static_cast<double>(n - k);
    const double sigma2 = ssr / dof;
    const Matrix inv = qr.inverse_gram();

    FitResult fit;
    fit.kind = FitKind::Ols;
    fit.observations = n;
    fit.iterations = 1;
    fit.converged = true;
    for (std::size_t j = 0; j < k; ++j)
        fit.coefficients.push_back(
            make_coefficient(design.columns[j], beta[j], std::sqrt(sigma2 * inv(j, j)), false, dof));

    const double zero_var = static_cast<double>(n) * std::pow(1e-14 * std::max(1.0, std::abs(mean)), 2);
    fit.r_squared = sst <= zero_var ? 0.0 : std::clamp(1.0 - ssr / sst, 0.0, 1.0);
    fit.residual_std_error = std::sqrt(sigma2);
    return fit;
}

double predict_win_prob(const FitResult& fit, std::span<const double> covariates)
{
    if (covariates.size() != fit.coefficients.size())
        throw UsageError("predict_win_prob: expected " + std::to_string(fit.coefficients.size()) +
                         " covariates, got " + std::to_string(covariates.size()));
    double eta = 0.0;
    for (std::size_t j = 0; j < covariates.size(); ++j)
        eta += fit.coefficients[j].estimate * covariates[j];
    return inverse_logit(eta);
}

}  // namespace homebias
