#include "rnmw/fit.hpp"

#include "detail.hpp"
#include "rnmw/error.hpp"
#include "rnmw/random.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace rnmw {

using Eigen::MatrixXd;
using Eigen::VectorXd;

const char* model_name(Model m) { return m == Model::RNMW ? "RNMW" : "NMW"; }

RnmwParams FitResult::rnmw() const {
    if (model != Model::RNMW) throw DomainError("FitResult::rnmw: fit is not an RNMW fit");
    return RnmwParams{estimates[0], estimates[1], estimates[2]};
}

NmwParams FitResult::nmw() const {
    if (model != Model::NMW) throw DomainError("FitResult::nmw: fit is not an NMW fit");
    return NmwParams{estimates[0], estimates[1], estimates[2], estimates[3], estimates[4]};
}

double model_log_likelihood(const Dataset& ds, Model model, const VectorXd& theta) {
    if (model == Model::RNMW) return log_likelihood(ds, RnmwParams{theta[0], theta[1], theta[2]});
    return nmw_log_likelihood(ds, NmwParams{theta[0], theta[1], theta[2], theta[3], theta[4]});
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Negative log-likelihood in z = log(theta).
class Problem {
public:
    Problem(const Dataset& ds, Model model, const FitOptions& opts) : ds_(ds), model_(model) {
        const int k = model == Model::RNMW ? 3 : 5;
        lower_ = VectorXd::Constant(k, std::log(opts.scale_floor));
        if (model == Model::NMW) {
            lower_[2] = std::log(opts.shape_floor);
            lower_[3] = std::log(opts.shape_floor);
        }
    }

    int dim() const { return static_cast<int>(lower_.size()); }
    const VectorXd& lower() const { return lower_; }

    VectorXd clamp(const VectorXd& z) const { return z.cwiseMax(lower_); }

    double value(const VectorXd& z) const {
        try {
            const double ll = model_log_likelihood(ds_, model_, z.array().exp().matrix());
            return std::isfinite(ll) ? -ll : kInf;
        } catch (const DomainError&) {
            return kInf;
        }
    }

    VectorXd natural_score(const VectorXd& theta) const {
        if (model_ == Model::RNMW) return score(ds_, RnmwParams{theta[0], theta[1], theta[2]});
        return nmw_score(ds_, NmwParams{theta[0], theta[1], theta[2], theta[3], theta[4]});
    }

    MatrixXd natural_information(const VectorXd& theta) const {
        if (model_ == Model::RNMW)
            return observed_information(ds_, RnmwParams{theta[0], theta[1], theta[2]});
        return nmw_observed_information(ds_,
                                        NmwParams{theta[0], theta[1], theta[2], theta[3], theta[4]});
    }

    VectorXd gradient(const VectorXd& z) const {
        const VectorXd theta = z.array().exp().matrix();
        return -(theta.array() * natural_score(theta).array()).matrix();
    }

    MatrixXd hessian(const VectorXd& z) const {
        const VectorXd theta = z.array().exp().matrix();
        const MatrixXd info = natural_information(theta);
        MatrixXd h = theta.asDiagonal() * info * theta.asDiagonal();
        h.diagonal() -= (theta.array() * natural_score(theta).array()).matrix();
        return h;
    }

    // Components pinned at a lower bound with the gradient pushing outward are inactive.
    std::vector<bool> active(const VectorXd& z, const VectorXd& g) const {
        std::vector<bool> act(static_cast<std::size_t>(dim()), true);
        for (int i = 0; i < dim(); ++i)
            if (z[i] <= lower_[i] && g[i] > 0.0) act[i] = false;
        return act;
    }

    double projected_norm(const VectorXd& z, const VectorXd& g) const {
        const auto act = active(z, g);
        double m = 0.0;
        for (int i = 0; i < dim(); ++i)
            if (act[i]) m = std::max(m, std::abs(g[i]));
        return m;
    }

private:
    const Dataset& ds_;
    Model model_;
    VectorXd lower_;
};

struct Run {
    VectorXd z;
    double f = kInf;
    double pg = kInf;
    int iterations = 0;
    bool converged = false;
    bool ok = false;
};

struct Step {
    VectorXd z;
    double f;
};

// Backtracking Armijo search along d, projected onto the bounds. The
// acceptance test carries a few ulps of slack so that steps at the rounding
// floor of f are not rejected.
std::optional<Step> line_search(const Problem& pr, const VectorXd& z, double f, const VectorXd& g,
                                VectorXd d) {
    const double longest = d.cwiseAbs().maxCoeff();
    if (longest > 5.0) d *= 5.0 / longest;
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(f);
    double t = 1.0;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
        const VectorXd zn = pr.clamp(z + t * d);
        const double fn = pr.value(zn);
        if (std::isfinite(fn) && fn <= f + 1e-4 * g.dot(zn - z) + slack) return Step{zn, fn};
    }
    return std::nullopt;
}

Run minimize(const Problem& pr, const VectorXd& theta0, const FitOptions& opts) {
    Run run;
    const int k = pr.dim();
    VectorXd z = pr.clamp(theta0.array().max(std::numeric_limits<double>::min()).log().matrix());
    double f = pr.value(z);
    if (!std::isfinite(f)) return run;
    VectorXd g = pr.gradient(z);
    if (!g.allFinite()) return run;
    run.ok = true;

    auto finish = [&](int it) {
        run.z = z;
        run.f = f;
        run.pg = pr.projected_norm(z, g);
        run.iterations = it;
        run.converged = run.pg <= opts.tolerance;
        return run;
    };

    // Phase 1: BFGS on the inverse Hessian.
    MatrixXd hinv = MatrixXd::Identity(k, k);
    bool scaled = false;
    int it = 0;
    for (; it < opts.max_iterations; ++it) {
        if (pr.projected_norm(z, g) <= opts.tolerance) return finish(it);
        const auto act = pr.active(z, g);
        VectorXd d = -hinv * g;
        for (int i = 0; i < k; ++i)
            if (!act[i] && d[i] < 0.0) d[i] = 0.0;
        if (!(g.dot(d) < 0.0)) {
            hinv.setIdentity();
            d = -g;
            for (int i = 0; i < k; ++i)
                if (!act[i]) d[i] = 0.0;
        }
        const auto step = line_search(pr, z, f, g, d);
        if (!step) break;
        const VectorXd gn = pr.gradient(step->z);
        if (!gn.allFinite()) break;
        const VectorXd s = step->z - z;
        const VectorXd y = gn - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (!scaled) {
                hinv *= sy / y.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const MatrixXd left = MatrixXd::Identity(k, k) - rho * s * y.transpose();
            hinv = left * hinv * left.transpose() + rho * s * s.transpose();
        }
        const bool stalled = std::abs(f - step->f) <= 1e-15 * std::abs(f) && s.norm() < 1e-14;
        z = step->z;
        f = step->f;
        g = gn;
        if (stalled) break;
    }

    // Phase 2: Newton polishing with the exact log-parameter Hessian on the
    // free variables, damped towards gradient descent when indefinite.
    for (int polish = 0; polish < 50; ++polish, ++it) {
        if (pr.projected_norm(z, g) <= opts.tolerance) break;
        const auto act = pr.active(z, g);
        std::vector<int> free;
        for (int i = 0; i < k; ++i)
            if (act[i]) free.push_back(i);
        const MatrixXd h = pr.hessian(z);
        if (!h.allFinite()) break;
        const int nf = static_cast<int>(free.size());
        MatrixXd hf(nf, nf);
        VectorXd gf(nf);
        for (int a = 0; a < nf; ++a) {
            gf[a] = g[free[a]];
            for (int b = 0; b < nf; ++b) hf(a, b) = h(free[a], free[b]);
        }
        double shift = 0.0;
        VectorXd df;
        for (int attempt = 0; attempt < 40; ++attempt) {
            Eigen::LLT<MatrixXd> llt(hf + shift * MatrixXd::Identity(nf, nf));
            if (llt.info() == Eigen::Success) {
                df = -llt.solve(gf);
                break;
            }
            shift = shift == 0.0 ? 1e-8 * std::max(1.0, hf.diagonal().cwiseAbs().maxCoeff())
                                 : shift * 10.0;
        }
        if (df.size() == 0) break;
        VectorXd d = VectorXd::Zero(k);
        for (int a = 0; a < nf; ++a) d[free[a]] = df[a];
        const auto step = line_search(pr, z, f, g, d);
        if (!step) break;
        const VectorXd gn = pr.gradient(step->z);
        if (!gn.allFinite()) break;
        z = step->z;
        f = step->f;
        g = gn;
    }
    return finish(it);
}

FitResult finalize(const Dataset& ds, Model model, const Problem& pr, const std::vector<Run>& runs,
                   const std::vector<VectorXd>& starts) {
    FitResult res;
    res.model = model;
    res.names = model == Model::RNMW
                    ? std::vector<std::string>{"alpha", "beta", "lambda"}
                    : std::vector<std::string>{"alpha", "beta", "gamma", "theta", "lambda"};
    res.starts_tried = static_cast<int>(runs.size());

    int best = -1;
    for (int pass = 0; pass < 2 && best < 0; ++pass) {
        for (int i = 0; i < static_cast<int>(runs.size()); ++i) {
            const auto& r = runs[i];
            if (!r.ok || (pass == 0 && !r.converged)) continue;
            if (best < 0 || r.f < runs[best].f) best = i;
        }
    }
    const int k = pr.dim();
    if (best < 0) {
        res.estimates = starts.empty() ? VectorXd::Constant(k, 1.0) : starts.front();
        res.loglik = -kInf;
        res.std_errors = VectorXd::Constant(k, std::numeric_limits<double>::quiet_NaN());
        res.gradient_norm = kInf;
        res.warnings.push_back("no start produced a finite log-likelihood");
        return res;
    }

    const Run& r = runs[best];
    res.best_start = best;
    res.converged = r.converged;
    res.iterations = r.iterations;
    res.gradient_norm = r.pg;
    res.estimates = r.z.array().exp().matrix();
    res.loglik = model_log_likelihood(ds, model, res.estimates);
    if (!res.converged) res.warnings.push_back("no start met the gradient tolerance");
    for (int i = 0; i < pr.dim(); ++i)
        if (r.z[i] <= pr.lower()[i])
            res.warnings.push_back(res.names[static_cast<std::size_t>(i)] + " sits at its lower bound");

    const VectorXd& theta = res.estimates;
    const MatrixXd info = pr.natural_information(theta);
    const MatrixXd info_log = theta.asDiagonal() * info * theta.asDiagonal();
    res.std_errors = VectorXd::Constant(k, std::numeric_limits<double>::quiet_NaN());

    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(info_log, Eigen::EigenvaluesOnly);
    const double emin = eig.eigenvalues().minCoeff(), emax = eig.eigenvalues().maxCoeff();
    res.condition_number = emin > 0.0 ? emax / emin : kInf;

    Eigen::LLT<MatrixXd> llt(info_log);
    if (!info_log.allFinite() || llt.info() != Eigen::Success || !(emin > 0.0)) {
        res.warnings.push_back("observed information is not positive definite; covariance omitted");
        return res;
    }
    const MatrixXd inv_log = llt.solve(MatrixXd::Identity(k, k));
    MatrixXd cov = theta.asDiagonal() * inv_log * theta.asDiagonal();
    cov = 0.5 * (cov + cov.transpose());
    res.covariance = cov;
    res.std_errors = cov.diagonal().cwiseSqrt();

    const MatrixXd hz = pr.hessian(r.z);
    Eigen::FullPivLU<MatrixXd> lu(hz);
    if (hz.allFinite() && lu.isInvertible()) {
        const MatrixXd delta = theta.asDiagonal() * lu.inverse() * theta.asDiagonal();
        double worst = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                worst = std::max(worst, std::abs(delta(i, j) - cov(i, j)) /
                                            std::sqrt(cov(i, i) * cov(j, j)));
        res.delta_method_discrepancy = worst;
    } else {
        res.delta_method_discrepancy = kInf;
    }
    if (model == Model::NMW && res.condition_number > 1e8)
        res.warnings.push_back("NMW information is ill-conditioned; standard errors are unreliable");
    return res;
}

FitResult run_starts(const Dataset& ds, Model model, const FitOptions& opts,
                     const std::vector<VectorXd>& starts, bool parallel) {
    const Problem pr(ds, model, opts);
    std::vector<Run> runs(starts.size());
    auto body = [&](std::ptrdiff_t i) { runs[i] = minimize(pr, starts[i], opts); };
    if (parallel)
        detail::parallel_for(static_cast<std::ptrdiff_t>(starts.size()), body);
    else
        for (std::size_t i = 0; i < starts.size(); ++i) body(static_cast<std::ptrdiff_t>(i));
    return finalize(ds, model, pr, runs, starts);
}

void check_fit_inputs(const Dataset& ds, const FitOptions& opts) {
    if (ds.failures() == 0) throw InputError("fit_mle: dataset has no failures");
    if (opts.starts < 1) throw DomainError("fit_mle: need at least one start");
    if (!(opts.tolerance > 0.0)) throw DomainError("fit_mle: tolerance must be positive");
}

// Multiplicative log-normal jitter driven by a seeded uniform stream (Box-Muller).
class Jitter {
public:
    explicit Jitter(std::uint64_t seed) : u_(seed) {}
    double factor(double sd) {
        const double u1 = u_.next(), u2 = u_.next();
        const double n = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        return std::exp(sd * n);
    }

private:
    UniformStream u_;
};

double sum_pow(const Dataset& ds, double e) {
    double s = 0.0;
    for (const auto& o : ds.observations()) s += std::pow(o.time, e);
    return s;
}

FitResult fit_nmw_impl(const Dataset& ds, const RnmwParams& reduced, const FitOptions& opts,
                       bool parallel) {
    check_fit_inputs(ds, opts);
    auto res = run_starts(ds, Model::NMW, opts, nmw_starts(ds, reduced, opts), parallel);
    if (ds.failures() < 5)
        res.warnings.push_back("fewer than 5 failures; the NMW fit is weakly identified");
    return res;
}

FitResult fit_impl(const Dataset& ds, Model model, const FitOptions& opts, bool parallel) {
    check_fit_inputs(ds, opts);
    auto reduced = run_starts(ds, Model::RNMW, opts, rnmw_starts(ds, opts), parallel);
    if (model == Model::RNMW) return reduced;
    return fit_nmw_impl(ds, reduced.rnmw(), opts, parallel);
}

}  // namespace

std::vector<VectorXd> rnmw_starts(const Dataset& ds, const FitOptions& opts) {
    const double xmax = ds.max_time();
    // Weibull(1/2) maximum-likelihood scale with beta = 0.
    const double alpha0 = static_cast<double>(ds.failures()) / sum_pow(ds, 0.5);

    // beta is chosen so that the wear-out term beta sqrt(x) e^{lambda x}
    // contributes about c at the largest observation.
    auto point = [&](double alpha, double lambda_xmax, double c) {
        VectorXd v(3);
        v << alpha, c / (std::sqrt(xmax) * std::exp(lambda_xmax)), lambda_xmax / xmax;
        return v;
    };

    std::vector<VectorXd> starts;
    for (double lx : {1.0, 3.0, 6.0, 10.0, 15.0, 20.0})
        for (double c : {0.1, 1.0}) starts.push_back(point(alpha0, lx, c));

    Jitter jitter(opts.seed);
    const VectorXd centre = point(alpha0, 8.0, 0.5);
    while (static_cast<int>(starts.size()) < opts.starts) {
        VectorXd v = centre;
        for (int i = 0; i < 3; ++i) v[i] *= jitter.factor(0.75);
        starts.push_back(v);
    }
    starts.resize(static_cast<std::size_t>(opts.starts));
    return starts;
}

std::vector<VectorXd> nmw_starts(const Dataset& ds, const RnmwParams& reduced,
                                 const FitOptions& opts) {
    const double xmax = ds.max_time();
    const double d = static_cast<double>(ds.failures());
    std::vector<VectorXd> starts;
    VectorXd centre(5);
    centre << reduced.alpha, std::max(reduced.beta, 1e-12), 0.5, 0.5, std::max(reduced.lambda, 1e-6);
    starts.push_back(centre);

    for (double theta : {0.4, 0.6, 0.9})
        for (double gamma : {0.05, 0.5, 1.5}) {
            const double alpha0 = d / sum_pow(ds, theta);
            const double lambda = centre[4];
            VectorXd v(5);
            v << alpha0, 1.0 / (std::pow(xmax, gamma) * std::exp(lambda * xmax)), gamma, theta, lambda;
            starts.push_back(v);
        }

    Jitter jitter(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    while (static_cast<int>(starts.size()) < opts.starts) {
        VectorXd v = centre;
        for (int i = 0; i < 5; ++i) v[i] *= jitter.factor(i == 1 ? 1.5 : 0.4);
        starts.push_back(v);
    }
    starts.resize(static_cast<std::size_t>(opts.starts));
    return starts;
}

FitResult fit_mle(const Dataset& ds, Model model, const FitOptions& opts) {
    return fit_impl(ds, model, opts, true);
}

FitResult fit_mle_serial(const Dataset& ds, Model model, const FitOptions& opts) {
    return fit_impl(ds, model, opts, false);
}

FitResult fit_nmw_from(const Dataset& ds, const RnmwParams& reduced, const FitOptions& opts) {
    return fit_nmw_impl(ds, reduced, opts, true);
}

std::vector<WaldInterval> wald_intervals(const FitResult& fit, double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("wald_intervals: level must be in (0, 1)");
    if (!fit.covariance) throw DomainError("wald_intervals: fit has no covariance matrix");
    const double z = boost::math::quantile(boost::math::normal(), 0.5 + 0.5 * level);
    std::vector<WaldInterval> out;
    for (int i = 0; i < fit.estimates.size(); ++i) {
        const double est = fit.estimates[i], se = fit.std_errors[i];
        out.push_back({fit.names[i], est, std::max(0.0, est - z * se), est + z * se, level});
    }
    return out;
}

}  // namespace rnmw
