#include "oracles.hpp"
#include "rnmw/distribution.hpp"
#include "rnmw/error.hpp"
#include "rnmw/random.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace rnmw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("cumulative hazard by substitution") {
    CHECK_THAT(cumulative_hazard({1, 1, 0}, 1.0), WithinAbs(2.0, 1e-15));
    CHECK_THAT(cumulative_hazard({2, 0, 0}, 4.0), WithinAbs(4.0, 1e-15));
    CHECK(cumulative_hazard({0.3, 0.2, 1.5}, 0.0) == 0.0);
    CHECK_THAT(cumulative_hazard({0.5, 0.25, 2.0}, 3.0),
               WithinRel(0.5 * std::sqrt(3.0) + 0.25 * std::sqrt(3.0) * std::exp(6.0), 1e-14));
}

TEST_CASE("cdf, survival and density at simple points") {
    const RnmwParams p{1, 1, 0};
    CHECK(cdf(p, 0.0) == 0.0);
    CHECK(survival(p, 0.0) == 1.0);
    CHECK_THAT(cdf(p, 1.0), WithinAbs(1 - std::exp(-2.0), 1e-15));
    CHECK_THAT(survival(p, 1.0), WithinAbs(std::exp(-2.0), 1e-15));
    CHECK_THAT(pdf({1, 0, 0}, 1.0), WithinAbs(0.5 * std::exp(-1.0), 1e-15));
    CHECK_THAT(log_pdf({1, 0, 0}, 1.0), WithinAbs(std::log(0.5) - 1.0, 1e-14));
    CHECK_THROWS_AS(pdf(p, 0.0), DomainError);
}

TEST_CASE("hazard and its log-derivative") {
    CHECK_THAT(hazard({2, 0, 0}, 4.0), WithinAbs(0.5, 1e-15));
    CHECK_THAT(hazard({1, 1, 1}, 1.0), WithinRel((1 + 3 * std::exp(1.0)) / 2, 1e-14));
    CHECK_THAT(hazard_log_derivative({1, 0, 1}, 2.0), WithinAbs(-0.25, 1e-15));
    CHECK_THROWS_AS(hazard({1, 1, 1}, 0.0), DomainError);
    CHECK_THROWS_AS(hazard_log_derivative({1, 1, 1}, -1.0), DomainError);

    const RnmwParams p{0.4, 0.3, 0.7};
    for (double x : {0.05, 0.3, 1.0, 2.5, 6.0}) {
        const double fd = oracle::derivative([&](double t) { return std::log(hazard(p, t)); }, x, 1e-4 * x);
        CHECK_THAT(hazard_log_derivative(p, x), WithinRel(fd, 1e-7));
        const double fh = oracle::derivative([&](double t) { return cumulative_hazard(p, t); }, x, 1e-4 * x);
        CHECK_THAT(hazard(p, x), WithinRel(fh, 1e-8));
    }
}

TEST_CASE("hazard shape classification") {
    const auto s = hazard_shape({1, 1, 1});
    REQUIRE(s.kind == HazardKind::Bathtub);
    REQUIRE(s.minimum_location);
    CHECK(*s.minimum_location > 0.3);
    CHECK(*s.minimum_location < 0.35);
    CHECK_THAT(*s.minimum_location, WithinAbs(0.325, 5e-3));
    CHECK(std::abs(hazard_log_derivative({1, 1, 1}, *s.minimum_location)) < 1e-10);
    CHECK_THAT(*s.minimum_value, WithinRel(hazard({1, 1, 1}, *s.minimum_location), 1e-14));

    CHECK(hazard_shape({1, 0, 1}).kind == HazardKind::Decreasing);
    CHECK(hazard_shape({1, 2, 0}).kind == HazardKind::Decreasing);
    CHECK_FALSE(hazard_shape({1, 0, 1}).minimum_location.has_value());

    // Tiny beta pushes the minimum far right without losing the root.
    const RnmwParams aarset{0.102, 3.644e-8, 0.180};
    const auto a = hazard_shape(aarset);
    REQUIRE(a.kind == HazardKind::Bathtub);
    CHECK_THAT(hazard_minimum_equation_lhs(aarset, *a.minimum_location), WithinRel(aarset.alpha, 1e-9));
    CHECK(std::abs(hazard_log_derivative(aarset, *a.minimum_location)) < 1e-10);
    CHECK(hazard(aarset, 0.99 * *a.minimum_location) > *a.minimum_value);
    CHECK(hazard(aarset, 1.01 * *a.minimum_location) > *a.minimum_value);
}

TEST_CASE("quantile inverts the cdf") {
    CHECK(quantile({1, 1, 1}, 0.0) == 0.0);
    CHECK_THAT(quantile({1, 1, 0}, 1 - std::exp(-2.0)), WithinRel(1.0, 1e-12));
    CHECK_THROWS_AS(quantile({1, 1, 1}, 1.0), DomainError);
    CHECK_THROWS_AS(quantile({1, 1, 1}, -0.1), DomainError);
    CHECK_THROWS_AS(quantile({1, 1, 1}, std::nan("")), DomainError);

    const RnmwParams p{0.2, 0.05, 1.3};
    for (double u : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.9, 0.999999}) {
        const double x = quantile(p, u);
        CHECK_THAT(cdf(p, x), WithinRel(u, 1e-10));
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(validate(RnmwParams{-1, 0, 0}), DomainError);
    CHECK_THROWS_AS(validate(RnmwParams{0, 0, 1}), DomainError);
    CHECK_THROWS_AS(validate(RnmwParams{1, std::numeric_limits<double>::infinity(), 0}), DomainError);
    CHECK_THROWS_AS(cdf({1, 0, 0}, std::nan("")), DomainError);
    CHECK_NOTHROW(validate(RnmwParams{0, 1, 0}));
}

TEST_CASE("sampling matches the Weibull(1/2) mean") {
    UniformStream s(2024);
    const auto u = s.take(1000000);
    const auto x = sample({1, 0, 0}, u);
    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    CHECK_THAT(mean, WithinAbs(2.0, 0.01));
    CHECK(sample({1, 1, 1}, std::vector<double>{}).empty());
}
