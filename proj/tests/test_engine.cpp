#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "srm/engine.hpp"
#include "srm/errors.hpp"

using namespace srm;

namespace {

const QuadratureScheme table_simpson =
    QuadratureScheme::repro_grid(QuadratureRule::Simpson, 10000);
const QuadratureScheme table_trapezoid =
    QuadratureScheme::repro_grid(QuadratureRule::Trapezoid, 10000);

}  // namespace

TEST_CASE("benchmark srm cells") {
    const auto normal = LossDistribution::standard_normal();
    const auto uniform = LossDistribution::standard_uniform();
    CHECK(std::fabs(spectral_risk_measure(normal, RiskSpectrum::exponential(5.0), table_simpson).value -
                    1.080) <= 0.005);
    CHECK(std::fabs(spectral_risk_measure(normal, RiskSpectrum::exponential(25.0), table_simpson).value -
                    1.945) <= 0.005);
    CHECK(std::fabs(spectral_risk_measure(uniform, RiskSpectrum::power_low(0.9), table_trapezoid).value -
                    0.526) <= 0.01);
    CHECK(std::fabs(spectral_risk_measure(uniform, RiskSpectrum::power_high(5.0), table_trapezoid).value -
                    0.833) <= 0.005);
}

TEST_CASE("empirical srm under exact slices is the exact discrete sum") {
    const auto emp = LossDistribution::from_samples({0.0, 1.0});
    const auto result = spectral_risk_measure(emp, RiskSpectrum::es_step(0.5), QuadratureScheme::exact_slice());
    CHECK(result.value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_FALSE(result.diagnostics.has_value());  // exact, no quadrature
    CHECK(result.captured_mass() == 1.0);

    // order statistics weighted by exact cumulative-weight differences
    const std::vector<double> xs = {-1.0, 0.25, 2.0, 5.0};
    const auto spectrum = RiskSpectrum::exponential(3.0);
    double expected = 0.0;
    for (std::size_t i = 1; i <= xs.size(); ++i) {
        const double n = static_cast<double>(xs.size());
        expected += (spectrum.cumulative_weight(static_cast<double>(i) / n) -
                     spectrum.cumulative_weight(static_cast<double>(i - 1) / n)) *
                    xs[i - 1];
    }
    const auto r = spectral_risk_measure(LossDistribution::from_samples(xs), spectrum,
                       QuadratureScheme::exact_slice());
    CHECK(r.value == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("srm rejects the VaR spectrum") {
    CHECK_THROWS_AS(spectral_risk_measure(LossDistribution::standard_uniform(), RiskSpectrum::var_dirac(0.5),
                        QuadratureScheme::exact_slice()),
                    std::invalid_argument);
}

TEST_CASE("var is the exact quantile") {
    CHECK(var(LossDistribution::standard_uniform(), 0.95).value == 0.95);
    CHECK(var(LossDistribution::cauchy(), 0.5).value == 0.0);
    CHECK(var(LossDistribution::standard_normal(), 0.95).value ==
          doctest::Approx(1.6448536269514722).epsilon(1e-10));
    CHECK_FALSE(var(LossDistribution::standard_normal(), 0.95).diagnostics.has_value());
    CHECK_THROWS_AS(var(LossDistribution::standard_normal(), 0.0), std::domain_error);
}

TEST_CASE("es values and srm equivalence") {
    const auto uniform = LossDistribution::standard_uniform();
    CHECK(es(uniform, 0.95, QuadratureScheme::exact_slice()).value ==
          doctest::Approx(0.975).epsilon(1e-12));
    CHECK(es(uniform, 0.0, QuadratureScheme::exact_slice()).value ==
          doctest::Approx(0.5).epsilon(1e-12));

    const auto normal = LossDistribution::standard_normal();
    const double closed = 2.0627128075074257;  // pdf(q(0.95)) / 0.05
    CHECK(std::fabs(es(normal, 0.95, QuadratureScheme::exact_slice(1000000)).value -
                    closed) <= 2e-6);

    for (const auto& scheme : {QuadratureScheme::exact_slice(10000), table_trapezoid}) {
        CHECK(es(normal, 0.95, scheme).value ==
              spectral_risk_measure(normal, RiskSpectrum::es_step(0.95), scheme).value);
    }
    CHECK_THROWS_AS(es(uniform, 1.0, QuadratureScheme::exact_slice()), std::domain_error);
}

TEST_CASE("sweep reproduces benchmark columns") {
    const std::vector<double> ks = {1.0, 5.0, 25.0, 100.0};
    const auto normal_curve = sweep(LossDistribution::standard_normal(),
                                    SpectrumFamily::Exponential, ks, table_simpson);
    const double normal_refs[] = {0.278, 1.080, 1.945, 2.467};
    REQUIRE(normal_curve.points.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(normal_curve.points[i].first == ks[i]);
        CHECK(std::fabs(normal_curve.points[i].second - normal_refs[i]) <= 0.005);
    }

    const std::vector<double> gammas = {0.1, 0.5, 0.9};
    const auto plow_curve = sweep(LossDistribution::standard_normal(),
                                  SpectrumFamily::PowerLow, gammas, table_trapezoid);
    const double plow_refs[] = {1.062, 0.664, 0.096};
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(std::fabs(plow_curve.points[i].second - plow_refs[i]) <= 0.01);

    const std::vector<double> highs = {1.1, 1.5, 5.0, 20.0};
    const auto cauchy_curve = sweep(LossDistribution::cauchy(), SpectrumFamily::PowerHigh,
                                    highs, table_trapezoid);
    const double cauchy_refs[] = {1.096, 3.258, 11.276, 36.503};
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::fabs(cauchy_curve.points[i].second - cauchy_refs[i]) <=
              0.05 * cauchy_refs[i]);

    const std::vector<double> bad = {5.0, 1.0};
    CHECK_THROWS_AS(sweep(LossDistribution::standard_normal(), SpectrumFamily::Exponential,
                          bad, table_simpson),
                    std::invalid_argument);
}

TEST_CASE("limit checks") {
    const auto exact = QuadratureScheme::exact_slice();
    SUBCASE("exponential k -> 0 approaches the mean") {
        const auto r = limit_check(LossDistribution::standard_uniform(),
                                   LimitKind::ExpKToZero, exact);
        CHECK(r.reference.value() == 0.5);
        CHECK(std::fabs(r.limit_estimate - 0.5) <= 1e-4);

        const auto g = limit_check(LossDistribution::gumbel_min(), LimitKind::ExpKToZero,
                                   exact);
        CHECK(std::fabs(g.limit_estimate - -0.5772156649015329) <= 1e-4);
    }
    SUBCASE("power-high gamma -> 1 approaches the mean on the benchmark grid") {
        const auto r = limit_check(LossDistribution::beta(2, 4),
                                   LimitKind::PowerHighGammaToOne, table_trapezoid);
        CHECK(r.reference.value() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(std::fabs(r.limit_estimate - 1.0 / 3.0) <= 1e-3);
        CHECK(std::fabs(r.limit_estimate - 0.333) <= 1e-3);
    }
    SUBCASE("power-low gamma -> 0 collapses to zero on the truncated grid") {
        const auto r = limit_check(LossDistribution::standard_uniform(),
                                   LimitKind::PowerLowGammaToZero, table_trapezoid);
        CHECK(r.reference.value() == 0.0);
        CHECK(std::fabs(r.limit_estimate) <= 1e-3);
    }
    SUBCASE("power-low gamma -> 0 approaches the essential supremum under exact slices") {
        const auto r = limit_check(LossDistribution::standard_uniform(),
                                   LimitKind::PowerLowGammaToZero,
                                   QuadratureScheme::exact_slice(1000000));
        CHECK(r.reference.value() == 1.0);
        CHECK(std::fabs(r.limit_estimate - 1.0) <= 1e-3);
    }
    SUBCASE("cauchy uses the grid integral of q as its reference") {
        const auto r = limit_check(LossDistribution::cauchy(), LimitKind::PowerHighGammaToOne,
                                   table_trapezoid);
        REQUIRE(r.reference.has_value());
        CHECK(std::fabs(r.limit_estimate - r.reference.value()) <= 1e-3);
    }
}

TEST_CASE("srm derivative") {
    const auto exact = QuadratureScheme::exact_slice();
    const auto normal = LossDistribution::standard_normal();

    CHECK_THROWS_AS(srm_derivative(normal, SpectrumFamily::Exponential, 5.0, 1e-4, 0.0,
                                   table_simpson),
                    std::invalid_argument);

    CHECK(default_derivative_step(5.0) == doctest::Approx(5e-4).epsilon(1e-15));
    CHECK(default_derivative_step(0.2) == doctest::Approx(1e-4).epsilon(1e-15));

    const auto base = srm_derivative(normal, SpectrumFamily::Exponential, 5.0,
                                     default_derivative_step(5.0), 0.0, exact);
    CHECK(base.central_difference > 0.0);
    CHECK(base.shifted_central_difference == base.central_difference);

    const auto shifted = srm_derivative(normal, SpectrumFamily::Exponential, 5.0,
                                        default_derivative_step(5.0), 1000.0, exact);
    CHECK(std::fabs(shifted.shifted_central_difference - base.central_difference) <=
          1e-6 * (1.0 + 1000.0));

    // d/dgamma of gamma/(gamma+1) at gamma = 2 is 1/9 for uniform losses
    const auto high = srm_derivative(LossDistribution::standard_uniform(),
                                     SpectrumFamily::PowerHigh, 2.0, 1e-5, 0.0, exact);
    CHECK(high.central_difference == doctest::Approx(1.0 / 9.0).epsilon(1e-5));
}

TEST_CASE("subadditivity checks") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> a(200), neg(200), b(200);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = gauss(rng);
        neg[i] = -a[i];
        b[i] = 0.7 * gauss(rng) + 0.1;
    }
    const auto exp5 = RiskSpectrum::exponential(5.0);

    SUBCASE("comonotone pair is additive") {
        const auto r = subadditivity_check(a, a, exp5);
        CHECK(r.holds);
        CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));
    }
    SUBCASE("perfect hedge nets to zero") {
        const auto r = subadditivity_check(a, neg, exp5);
        CHECK(r.holds);
        CHECK(r.lhs == 0.0);
        CHECK(r.rhs >= 0.0);
    }
    SUBCASE("independent-style draws under expected shortfall") {
        std::vector<double> x(1000), y(1000);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = gauss(rng);
            y[i] = gauss(rng);
        }
        CHECK(subadditivity_check(x, y, RiskSpectrum::es_step(0.95)).holds);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(subadditivity_check(a, std::vector<double>{1.0}, exp5),
                        std::invalid_argument);
        CHECK_THROWS_AS(subadditivity_check(a, b, RiskSpectrum::var_dirac(0.5)),
                        std::invalid_argument);
    }
}

TEST_CASE("monotone quantiles give monotone risk measures") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> bump(0.0, 0.5);
    std::vector<double> x(128), y(128);
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = gauss(rng);
        y[i] = x[i] + bump(rng);
    }
    const auto dx = LossDistribution::from_samples(x);
    const auto dy = LossDistribution::from_samples(y);
    for (const auto& s : {RiskSpectrum::exponential(5.0), RiskSpectrum::power_high(3.0),
                          RiskSpectrum::es_step(0.9)}) {
        CHECK(spectral_risk_measure(dx, s, QuadratureScheme::exact_slice()).value <=
              spectral_risk_measure(dy, s, QuadratureScheme::exact_slice()).value);
    }
}

TEST_CASE("warnings flag truncation loss and heavy tails") {
    const auto low_mass = spectral_risk_measure(LossDistribution::standard_uniform(),
                              RiskSpectrum::power_low(0.1), table_trapezoid);
    REQUIRE_FALSE(low_mass.warnings.empty());
    CHECK(low_mass.captured_mass() < 0.999);

    const auto cauchy = spectral_risk_measure(LossDistribution::cauchy(), RiskSpectrum::exponential(5.0),
                            table_simpson);
    bool heavy_tail_note = false;
    for (const auto& w : cauchy.warnings)
        heavy_tail_note = heavy_tail_note || w.find("heavy tail") != std::string::npos;
    CHECK(heavy_tail_note);

    const auto clean = spectral_risk_measure(LossDistribution::standard_uniform(),
                           RiskSpectrum::exponential(5.0), QuadratureScheme::exact_slice());
    CHECK(clean.warnings.empty());
}

TEST_CASE("tables") {
    const Table t1 = make_table(1);
    REQUIRE(t1.row_labels.size() == 4);
    REQUIRE(t1.column_labels.size() == 5);
    CHECK(t1.row_labels[3] == "100");
    CHECK(t1.column_labels[4] == "gumbel_min");
    CHECK(std::fabs(t1.cells[3][4].value - 1.594) <= 0.005);
    REQUIRE_FALSE(t1.cells[3][2].warnings.empty());  // k=100 truncation loss

    const Table t2 = make_table(2);
    REQUIRE(t2.row_labels.size() == 5);
    CHECK(t2.row_labels.front() == "->0");
    CHECK(t2.row_labels.back() == "->1");
    // gamma = 0.5 row, cauchy column
    CHECK(std::fabs(t2.cells[2][1].value - 31.707) <= 0.05 * 31.707);

    const Table t3 = make_table(3);
    CHECK(std::fabs(t3.cells[1][3].value - 0.393) <= 0.005);

    CHECK_THROWS_AS(make_table(4), std::invalid_argument);
}

TEST_CASE("figure data") {
    const auto fig1 = figure_data(1);
    REQUIRE(fig1.abscissa.size() == 1001);
    REQUIRE(fig1.series.size() == 2);
    CHECK(fig1.abscissa.front() == 0.0);
    CHECK(fig1.abscissa.back() == 1.0);
    CHECK(fig1.series[0].back() ==
          doctest::Approx(5.0 / -std::expm1(-5.0)).epsilon(1e-12));
    CHECK(fig1.series[0].back() == doctest::Approx(5.0339).epsilon(1e-4));

    const auto fig5 = figure_data(5);
    CHECK(fig5.series[1].back() == 5.0);  // gamma p^{gamma-1} at p = 1

    const auto fig3 = figure_data(3);
    CHECK(std::isinf(fig3.series[0].back()));

    const auto fig6 = figure_data(6);
    REQUIRE(fig6.abscissa.size() == 100);
    CHECK(fig6.abscissa.front() == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(fig6.abscissa.back() == doctest::Approx(20.0).epsilon(1e-12));
    REQUIRE(fig6.series.size() == 5);

    CHECK_THROWS_AS(figure_data(0), std::invalid_argument);
    CHECK_THROWS_AS(figure_data(7), std::invalid_argument);
}
