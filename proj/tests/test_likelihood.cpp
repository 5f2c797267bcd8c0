#include "oracles.hpp"
#include "rnmw/cli.hpp"
#include "rnmw/likelihood.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace rnmw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Dataset one(double x, Event e) { return Dataset("one", {{x, e}}); }

// Finite-difference gradient and Hessian in relative steps.
template <class F, class V>
V fd_gradient(F f, const V& t) {
    V g = V::Zero(t.size());
    for (int i = 0; i < t.size(); ++i) {
        g[i] = oracle::derivative(
            [&](double v) {
                V s = t;
                s[i] = v;
                return f(s);
            },
            t[i], 1e-4 * t[i]);
    }
    return g;
}

}  // namespace

TEST_CASE("log-likelihood by substitution") {
    CHECK_THAT(log_likelihood(one(1, Event::Failure), {1, 0, 0}), WithinAbs(std::log(0.5) - 1, 1e-14));
    CHECK_THAT(log_likelihood(one(1, Event::Censored), {1, 1, 0}), WithinAbs(-2.0, 1e-14));
}

TEST_CASE("log-likelihood on Aarset at the tabulated estimates") {
    const auto ds = cli::read_dataset(RNMW_DATA_DIR "/aarset.csv");
    REQUIRE(ds.size() == 50);
    CHECK_THAT(log_likelihood(ds, {0.102, 3.644e-8, 0.180}), WithinAbs(-213.55, 0.1));
}

TEST_CASE("score and information against finite differences") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Dataset ds = oracle::random_censored(seed, 40);
        const RnmwParams p{0.3 + 0.05 * seed, 0.01 * seed, 0.1 + 0.02 * seed};
        const Vector3 t(p.alpha, p.beta, p.lambda);
        auto ll = [&](const Vector3& v) { return log_likelihood(ds, {v[0], v[1], v[2]}); };
        const Vector3 g = score(ds, p);
        const Vector3 gfd = fd_gradient(ll, t);
        for (int i = 0; i < 3; ++i) CHECK_THAT(g[i], WithinRel(gfd[i], 1e-6));

        const Matrix3 info = observed_information(ds, p);
        for (int i = 0; i < 3; ++i) {
            auto gi = [&](const Vector3& v) { return score(ds, {v[0], v[1], v[2]})[i]; };
            const Vector3 row = -fd_gradient(gi, t);
            for (int j = 0; j < 3; ++j) CHECK_THAT(info(i, j), WithinRel(row[j], 1e-6));
        }
    }
}

TEST_CASE("NMW score and information against finite differences") {
    for (std::uint64_t seed = 11; seed <= 16; ++seed) {
        const Dataset ds = oracle::random_censored(seed, 30);
        const NmwParams q{0.3, 0.02 * (seed - 10), 0.4 + 0.2 * (seed - 10), 0.7, 0.15};
        Vector5 t;
        t << q.alpha, q.beta, q.gamma, q.theta, q.lambda;
        auto ll = [&](const Vector5& v) { return nmw_log_likelihood(ds, {v[0], v[1], v[2], v[3], v[4]}); };
        const Vector5 g = nmw_score(ds, q);
        const Vector5 gfd = fd_gradient(ll, t);
        for (int i = 0; i < 5; ++i) CHECK_THAT(g[i], WithinRel(gfd[i], 1e-6));

        const Matrix5 info = nmw_observed_information(ds, q);
        for (int i = 0; i < 5; ++i) {
            auto gi = [&](const Vector5& v) { return nmw_score(ds, {v[0], v[1], v[2], v[3], v[4]})[i]; };
            const Vector5 row = -fd_gradient(gi, t);
            for (int j = 0; j < 5; ++j) CHECK_THAT(info(i, j), WithinRel(row[j], 1e-6));
        }
    }
}

TEST_CASE("NMW likelihood reduces to RNMW at one half") {
    const Dataset ds = oracle::random_censored(99, 25);
    const RnmwParams p{0.4, 0.05, 0.3};
    CHECK_THAT(nmw_log_likelihood(ds, to_nmw(p)), WithinRel(log_likelihood(ds, p), 1e-13));
    const Vector5 g = nmw_score(ds, to_nmw(p));
    const Vector3 r = score(ds, p);
    CHECK_THAT(g[0], WithinRel(r[0], 1e-12));
    CHECK_THAT(g[1], WithinRel(r[1], 1e-12));
    CHECK_THAT(g[4], WithinRel(r[2], 1e-12));
}

TEST_CASE("dataset bookkeeping") {
    const Dataset ds("d", {{1, Event::Failure}, {2, Event::Censored}, {3, Event::Failure}});
    CHECK(ds.size() == 3);
    CHECK(ds.failures() == 2);
    CHECK(ds.censored() == 1);
    CHECK(ds.has_censoring());
    CHECK(ds.max_time() == 3.0);
    CHECK_THROWS(Dataset("bad", {{0.0, Event::Failure}}));
    CHECK_THROWS(Dataset("bad", {{-1.0, Event::Failure}}));
}
