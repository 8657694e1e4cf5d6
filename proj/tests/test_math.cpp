#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "srm/math.hpp"

using namespace srm;

TEST_CASE("normal quantile hits standard critical values") {
    // Reference values accurate to ~1e-12.
    CHECK(math::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(math::normal_quantile(0.95) == doctest::Approx(1.644853626951472).epsilon(1e-12));
    CHECK(math::normal_quantile(0.995) == doctest::Approx(2.575829303548901).epsilon(1e-12));
    CHECK(math::normal_quantile(0.5) == 0.0);
}

TEST_CASE("normal quantile is symmetric and inverts the CDF") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(1e-6, 0.5);
    for (int i = 0; i < 500; ++i) {
        const double d = unit(rng);
        const double hi = math::normal_quantile(0.5 + d);
        const double lo = math::normal_quantile(0.5 - d);
        CHECK(std::fabs(hi + lo) <= 1e-9);
        CHECK(std::fabs(math::normal_cdf(hi) - (0.5 + d)) <= 1e-13);
    }
    // deep tails
    for (const double p : {1e-10, 1e-6, 1.0 - 1e-10}) {
        const double x = math::normal_quantile(p);
        CHECK(std::fabs(math::normal_cdf(x) - p) <= 1e-9 * p + 1e-15);
    }
    CHECK_THROWS_AS(math::normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(math::normal_quantile(1.0), std::domain_error);
}

TEST_CASE("normal cdf basics") {
    CHECK(math::normal_cdf(0.0) == 0.5);
    CHECK(math::normal_cdf(-40.0) >= 0.0);
    CHECK(math::normal_cdf(40.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(math::normal_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
}

TEST_CASE("regularized incomplete beta matches the closed-form (2,4) polynomial") {
    for (int i = 0; i <= 1000; ++i) {
        const double x = static_cast<double>(i) / 1000.0;
        const double poly =
            10 * x * x - 20 * x * x * x + 15 * x * x * x * x - 4 * x * x * x * x * x;
        CHECK(std::fabs(math::regularized_incomplete_beta(2.0, 4.0, x) - poly) <= 1e-12);
    }
}

TEST_CASE("incomplete beta inverse reference points") {
    CHECK(math::incomplete_beta_inverse(1.0, 1.0, 0.8) ==
          doctest::Approx(0.8).epsilon(1e-12));
    CHECK(math::incomplete_beta_inverse(2.0, 2.0, 0.8) ==
          doctest::Approx(0.7128592745832596).epsilon(1e-10));
    CHECK(math::incomplete_beta_inverse(3.0, 2.0, 0.001) ==
          doctest::Approx(0.06403813910283339).epsilon(1e-9));
    CHECK(math::incomplete_beta_inverse(2.0, 4.0, 0.8125) ==
          doctest::Approx(0.5).epsilon(1e-11));
}

TEST_CASE("incomplete beta inverse round-trips random points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
    std::uniform_real_distribution<double> shape(0.3, 8.0);
    for (int i = 0; i < 200; ++i) {
        const double a = shape(rng), b = shape(rng), p = unit(rng);
        const double x = math::incomplete_beta_inverse(a, b, p);
        CHECK(std::fabs(math::regularized_incomplete_beta(a, b, x) - p) <= 1e-9);
    }
    CHECK(math::incomplete_beta_inverse(2.0, 4.0, 0.0) == 0.0);
    CHECK(math::incomplete_beta_inverse(2.0, 4.0, 1.0) == 1.0);
    CHECK_THROWS_AS(math::regularized_incomplete_beta(-1.0, 2.0, 0.5), std::domain_error);
}

TEST_CASE("pairwise sum") {
    const std::int64_t n = 100001;
    const double s = math::pairwise_sum(1, n + 1, [](std::int64_t i) {
        return static_cast<double>(i);
    });
    CHECK(s == doctest::Approx(0.5 * static_cast<double>(n) * (n + 1.0)).epsilon(1e-15));

    // alternating series that plain accumulation gets slightly wrong
    const double alt = math::pairwise_sum(0, 2000000, [](std::int64_t i) {
        return (i % 2 == 0) ? 0.1 : -0.1;
    });
    CHECK(std::fabs(alt) <= 1e-10);
}
