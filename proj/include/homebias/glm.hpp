#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "homebias/linalg.hpp"

namespace homebias {

/// Covariates (first column is the intercept) plus the response.
struct DesignMatrix {
    std::vector<std::string> columns;
    linalg::Matrix x;
    std::vector<double> response;

    std::size_t rows() const noexcept { return x.rows(); }
    /// Throws UsageError when shapes disagree or a cell is not finite.
    void validate() const;
};

enum class FitKind { Logistic, Ols };

struct Coefficient {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double statistic = 0.0;  // z for logistic, t for OLS
    double p_value = 1.0;
};

struct FitResult {
    FitKind kind = FitKind::Logistic;
    std::vector<Coefficient> coefficients;
    std::size_t observations = 0;

    // Logistic fits.
    std::optional<double> log_likelihood;
    std::optional<double> aic;
    // OLS fits.
    std::optional<double> r_squared;
    std::optional<double> residual_std_error;

    int iterations = 0;
    bool converged = true;
    bool separation = false;
    std::string diagnostic;

    const Coefficient& at(std::string_view name) const;
    std::vector<double> estimates() const;
    std::vector<std::string> names() const;
};

struct LogisticOptions {
    double deviance_tolerance = 1e-8;
    int max_iterations = 100;
};

/// Maximum-likelihood logistic regression by iteratively reweighted least
/// squares from a zero start. Standard errors come from the inverse Fisher
/// information at the optimum; p-values from the standard normal.
/// Throws SingularDesignError for rank-deficient designs. Perfect separation
/// is reported through `converged = false` and `separation = true`.
FitResult fit_logistic(const DesignMatrix& design, const LogisticOptions& options = {});

/// Least squares through Householder QR with classical standard errors and
/// Student-t p-values. R^2 is 0 for a zero-variance response.
FitResult fit_ols(const DesignMatrix& design);

/// Inverse logit of the linear predictor for covariates in fit column order.
double predict_win_prob(const FitResult& fit, std::span<const double> covariates);

double inverse_logit(double eta) noexcept;

/// Bernoulli log-likelihood, its gradient and the Fisher information
/// (negative Hessian) at `beta`.
double logistic_log_likelihood(const linalg::Matrix& x, std::span<const double> y,
                               std::span<const double> beta);
std::vector<double> logistic_score(const linalg::Matrix& x, std::span<const double> y,
                                   std::span<const double> beta);
linalg::Matrix logistic_information(const linalg::Matrix& x, std::span<const double> beta);

/// Two-sided p-values.
double normal_two_sided_p(double z) noexcept;
double student_t_two_sided_p(double t, double dof);

/// "***", "**", "*" at the 0.01 / 0.05 / 0.1 levels.
std::string significance_stars(double p_value);

}  // namespace homebias
