#include "rnmw/likelihood.hpp"

#include "detail.hpp"
#include "rnmw/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rnmw {

Dataset::Dataset(std::string name, std::vector<Observation> observations)
    : name_(std::move(name)), obs_(std::move(observations)) {
    if (obs_.empty()) throw DomainError("dataset '" + name_ + "' is empty");
    for (const auto& o : obs_) {
        if (!std::isfinite(o.time) || o.time <= 0.0)
            throw DomainError("dataset '" + name_ + "': observation times must be finite and > 0");
        if (o.event == Event::Failure) ++failures_;
    }
}

Dataset Dataset::complete(std::string name, const std::vector<double>& times) {
    std::vector<Observation> obs;
    obs.reserve(times.size());
    for (double t : times) obs.push_back({t, Event::Failure});
    return Dataset(std::move(name), std::move(obs));
}

double Dataset::max_time() const {
    double m = 0.0;
    for (const auto& o : obs_) m = std::max(m, o.time);
    return m;
}

double log_likelihood(const Dataset& ds, const RnmwParams& p) {
    validate(p);
    double ll = 0.0;
    for (const auto& o : ds.observations()) {
        if (o.event == Event::Failure) ll += log_hazard(p, o.time);
        ll -= cumulative_hazard(p, o.time);
    }
    return ll;
}

Vector3 score(const Dataset& ds, const RnmwParams& p) {
    validate(p);
    const double a = p.alpha, b = p.beta, l = p.lambda;
    Vector3 g = Vector3::Zero();
    for (const auto& o : ds.observations()) {
        const double x = o.time, s = std::sqrt(x), lx = l * x;
        if (o.event == Event::Failure) {
            // q = exp(lx) / (alpha + beta (1 + 2 lx) exp(lx)), formed without overflow.
            const double q = 1.0 / (a * std::exp(-lx) + b * (1.0 + 2.0 * lx));
            g[0] += std::exp(-lx) * q;
            g[1] += (1.0 + 2.0 * lx) * q;
            g[2] += b * x * (3.0 + 2.0 * lx) * q;
        }
        const double sE = detail::scaled_exp(1.0, s, lx);
        g[0] -= s;
        g[1] -= sE;
        g[2] -= b * x * sE;
    }
    return g;
}

Matrix3 observed_information(const Dataset& ds, const RnmwParams& p) {
    validate(p);
    const double a = p.alpha, b = p.beta, l = p.lambda;
    Matrix3 hess = Matrix3::Zero();
    for (const auto& o : ds.observations()) {
        const double x = o.time, s = std::sqrt(x), lx = l * x;
        if (o.event == Event::Failure) {
            const double q = 1.0 / (a * std::exp(-lx) + b * (1.0 + 2.0 * lx));
            // First and second derivatives of h, each divided by h.
            const double ha = std::exp(-lx) * q;
            const double hb = (1.0 + 2.0 * lx) * q;
            const double hl = b * x * (3.0 + 2.0 * lx) * q;
            const double hbl = x * (3.0 + 2.0 * lx) * q;
            const double hll = b * x * x * (5.0 + 2.0 * lx) * q;
            hess(0, 0) -= ha * ha;
            hess(0, 1) -= ha * hb;
            hess(0, 2) -= ha * hl;
            hess(1, 1) -= hb * hb;
            hess(1, 2) += hbl - hb * hl;
            hess(2, 2) += hll - hl * hl;
        }
        const double xsE = detail::scaled_exp(1.0, x * s, lx);
        hess(1, 2) -= xsE;
        hess(2, 2) -= b * x * xsE;
    }
    hess(1, 0) = hess(0, 1);
    hess(2, 0) = hess(0, 2);
    hess(2, 1) = hess(1, 2);
    return -hess;
}

double nmw_log_likelihood(const Dataset& ds, const NmwParams& q) {
    validate(q);
    double ll = 0.0;
    for (const auto& o : ds.observations()) {
        if (o.event == Event::Failure) ll += nmw_log_hazard(q, o.time);
        ll -= nmw_cumulative_hazard(q, o.time);
    }
    return ll;
}

namespace {

enum : int { kA = 0, kB = 1, kG = 2, kT = 3, kL = 4 };

// Per-observation pieces of the NMW hazard h = alpha theta a + beta (gamma + lambda x) b
// and cumulative hazard H = alpha A + beta B, with A = x^theta, B = x^gamma e^{lambda x},
// a = A / x, b = B / x.
struct NmwTerms {
    Vector5 dh;       // dh / dparam
    Matrix5 d2h;      // d2h / dparam2
    Vector5 dH;
    Matrix5 d2H;
    double h = 0.0;

    NmwTerms(const NmwParams& q, double x) {
        const double lx = q.lambda * x, L = std::log(x);
        const double A = detail::shape_pow(x, q.theta);
        const double B = detail::scaled_exp(1.0, detail::shape_pow(x, q.gamma), lx);
        const double a = A / x, b = B / x;
        const double gl = q.gamma + lx;
        h = q.alpha * q.theta * a + q.beta * gl * b;

        dh << q.theta * a, gl * b, q.beta * b * (1.0 + gl * L), q.alpha * a * (1.0 + q.theta * L),
            q.beta * b * x * (1.0 + gl);
        d2h.setZero();
        d2h(kA, kT) = a * (1.0 + q.theta * L);
        d2h(kB, kG) = b * (1.0 + gl * L);
        d2h(kB, kL) = b * x * (1.0 + gl);
        d2h(kG, kG) = q.beta * b * L * (2.0 + gl * L);
        d2h(kG, kL) = q.beta * b * x * (1.0 + (gl + 1.0) * L);
        d2h(kT, kT) = q.alpha * a * L * (2.0 + q.theta * L);
        d2h(kL, kL) = q.beta * b * x * x * (2.0 + gl);
        symmetrize(d2h);

        dH << A, B, q.beta * B * L, q.alpha * A * L, q.beta * B * x;
        d2H.setZero();
        d2H(kA, kT) = A * L;
        d2H(kB, kG) = B * L;
        d2H(kB, kL) = B * x;
        d2H(kG, kG) = q.beta * B * L * L;
        d2H(kG, kL) = q.beta * B * L * x;
        d2H(kT, kT) = q.alpha * A * L * L;
        d2H(kL, kL) = q.beta * B * x * x;
        symmetrize(d2H);
    }

    static void symmetrize(Matrix5& m) {
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) m(j, i) = m(i, j);
    }
};

}  // namespace

Vector5 nmw_score(const Dataset& ds, const NmwParams& q) {
    validate(q);
    Vector5 g = Vector5::Zero();
    for (const auto& o : ds.observations()) {
        const NmwTerms t(q, o.time);
        if (o.event == Event::Failure) g += t.dh / t.h;
        g -= t.dH;
    }
    return g;
}

Matrix5 nmw_observed_information(const Dataset& ds, const NmwParams& q) {
    validate(q);
    Matrix5 hess = Matrix5::Zero();
    for (const auto& o : ds.observations()) {
        const NmwTerms t(q, o.time);
        if (o.event == Event::Failure) {
            const Vector5 r = t.dh / t.h;
            hess += t.d2h / t.h - r * r.transpose();
        }
        hess -= t.d2H;
    }
    return -hess;
}

}  // namespace rnmw
