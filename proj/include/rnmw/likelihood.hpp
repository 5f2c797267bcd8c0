#pragma once

#include "rnmw/distribution.hpp"
#include "rnmw/nmw.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace rnmw {

enum class Event { Failure, Censored };

struct Observation {
    double time = 0.0;
    Event event = Event::Failure;
};

/// Right-censored lifetime sample. Times are strictly positive and finite.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::string name, std::vector<Observation> observations);

    /// Complete sample: every time is a failure.
    static Dataset complete(std::string name, const std::vector<double>& times);

    const std::string& name() const { return name_; }
    const std::vector<Observation>& observations() const { return obs_; }
    std::size_t size() const { return obs_.size(); }
    std::size_t failures() const { return failures_; }
    std::size_t censored() const { return obs_.size() - failures_; }
    bool has_censoring() const { return failures_ != obs_.size(); }
    double max_time() const;

private:
    std::string name_;
    std::vector<Observation> obs_;
    std::size_t failures_ = 0;
};

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;
using Vector5 = Eigen::Matrix<double, 5, 1>;
using Matrix5 = Eigen::Matrix<double, 5, 5>;

// Failures contribute log h(x) - H(x), censored observations -H(x). With no
// censoring this is the complete-data log-likelihood. A zero hazard at a
// failure time gives -infinity rather than an exception.

double log_likelihood(const Dataset& ds, const RnmwParams& p);

/// Gradient of log_likelihood in (alpha, beta, lambda).
Vector3 score(const Dataset& ds, const RnmwParams& p);

/// Negative Hessian of log_likelihood in (alpha, beta, lambda).
Matrix3 observed_information(const Dataset& ds, const RnmwParams& p);

double nmw_log_likelihood(const Dataset& ds, const NmwParams& q);

/// Gradient in (alpha, beta, gamma, theta, lambda).
Vector5 nmw_score(const Dataset& ds, const NmwParams& q);

/// Negative Hessian in (alpha, beta, gamma, theta, lambda).
Matrix5 nmw_observed_information(const Dataset& ds, const NmwParams& q);

}  // namespace rnmw
