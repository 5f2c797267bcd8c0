#pragma once

#include "rnmw/likelihood.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rnmw {

enum class Model { RNMW, NMW };

const char* model_name(Model m);

struct FitOptions {
    int starts = 20;
    /// Max-norm of the projected gradient in log-parameters.
    double tolerance = 1e-6;
    int max_iterations = 500;
    std::uint64_t seed = 12345;
    /// Lower bound on gamma and theta.
    double shape_floor = 1e-6;
    /// Lower bound on alpha, beta and lambda.
    double scale_floor = 1e-300;
};

struct FitResult {
    Model model = Model::RNMW;
    std::vector<std::string> names;
    Eigen::VectorXd estimates;
    double loglik = 0.0;
    /// Inverse observed information on the natural scale; absent when the
    /// information matrix is not positive definite.
    std::optional<Eigen::MatrixXd> covariance;
    /// NaN where the covariance is absent.
    Eigen::VectorXd std_errors;
    bool converged = false;
    double gradient_norm = 0.0;
    int iterations = 0;
    int starts_tried = 0;
    int best_start = -1;
    /// Condition number of the information matrix in log-parameters.
    double condition_number = 0.0;
    /// Largest relative difference between the covariance and its
    /// delta-method counterpart from the log-parameter Hessian.
    double delta_method_discrepancy = 0.0;
    std::vector<std::string> warnings;

    RnmwParams rnmw() const;
    NmwParams nmw() const;
};

/// Maximum-likelihood fit by multistart quasi-Newton on log-parameters.
/// Starts run in parallel; the best converged start wins, ties going to the
/// lowest start index, so the result does not depend on the thread count.
FitResult fit_mle(const Dataset& ds, Model model, const FitOptions& opts = {});

/// Single-threaded reference for fit_mle.
FitResult fit_mle_serial(const Dataset& ds, Model model, const FitOptions& opts = {});

/// NMW fit with one start taken from an existing RNMW fit at gamma = theta = 1/2.
FitResult fit_nmw_from(const Dataset& ds, const RnmwParams& reduced, const FitOptions& opts = {});

/// Initial points used by fit_mle, in start-index order.
std::vector<Eigen::VectorXd> rnmw_starts(const Dataset& ds, const FitOptions& opts);
std::vector<Eigen::VectorXd> nmw_starts(const Dataset& ds, const RnmwParams& reduced,
                                        const FitOptions& opts);

/// Log-likelihood of the model at a natural-scale parameter vector.
double model_log_likelihood(const Dataset& ds, Model model, const Eigen::VectorXd& theta);

struct WaldInterval {
    std::string parameter;
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
};

/// estimate -/+ z * se with the lower end clamped at zero.
/// Throws DomainError when the fit carries no covariance.
std::vector<WaldInterval> wald_intervals(const FitResult& fit, double level = 0.95);

}  // namespace rnmw
