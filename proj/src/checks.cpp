#include "srm/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "srm/engine.hpp"
#include "srm/math.hpp"

namespace srm::checks {

namespace {

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), format, args...);
    return buf;
}

std::vector<RiskSpectrum> density_spectra() {
    return {RiskSpectrum::es_step(0.0),       RiskSpectrum::es_step(0.95),
            RiskSpectrum::exponential(1e-12), RiskSpectrum::exponential(1e-6),
            RiskSpectrum::exponential(1.0),   RiskSpectrum::exponential(5.0),
            RiskSpectrum::exponential(25.0),  RiskSpectrum::exponential(100.0),
            RiskSpectrum::power_low(0.1),     RiskSpectrum::power_low(0.5),
            RiskSpectrum::power_low(0.9),     RiskSpectrum::power_low(1.0 - 1e-6),
            RiskSpectrum::power_high(1.1),    RiskSpectrum::power_high(2.0),
            RiskSpectrum::power_high(5.0),    RiskSpectrum::power_high(20.0)};
}

std::vector<double> fixed_samples() {
    return {-1.2, 0.3, 0.5, 2.4, 7.1, -0.4, 0.0};
}

PropertyResult check_normalization() {
    double worst = 0.0;
    auto spectra = density_spectra();
    spectra.push_back(RiskSpectrum::var_dirac(0.95));
    for (const auto& s : spectra)
        worst = std::max(worst, check_admissibility(s, 999).normalization_residual);
    return {"spectrum normalization residual <= 1e-12", worst <= 1e-12,
            fmt("max residual %.3e over %zu spectra", worst, spectra.size())};
}

PropertyResult check_p1_p3() {
    std::mt19937_64 rng(20240401);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    bool ok = true;
    int tested = 0;
    const auto probe = [&](const RiskSpectrum& s, bool expect_strict) {
        const auto report = check_admissibility(s, 2001);
        ok = ok && report.nonnegativity_ok && report.strictly_increasing == expect_strict &&
             report.normalization_residual <= 1e-12;
        ++tested;
    };
    for (int i = 0; i < 20; ++i) {
        probe(RiskSpectrum::exponential(std::exp(std::lerp(std::log(1e-3), std::log(500.0),
                                                           unit(rng)))),
              true);
        probe(RiskSpectrum::power_low(std::lerp(0.01, 0.99, unit(rng))), true);
        probe(RiskSpectrum::power_high(1.0 + std::exp(std::lerp(std::log(0.01), std::log(30.0),
                                                                unit(rng)))),
              true);
    }
    probe(RiskSpectrum::es_step(0.95), false);
    return {"P1 nonnegativity and P3' strict increase across random parameters", ok,
            fmt("%d spectra probed on a 2001-point grid", tested)};
}

struct LawCase {
    LossDistribution dist;
    RiskSpectrum spectrum;
};

std::vector<LawCase> law_cases() {
    std::vector<LawCase> cases;
    const std::vector<LossDistribution> dists = {
        LossDistribution::standard_normal(), LossDistribution::standard_uniform(),
        LossDistribution::beta(2.0, 4.0),
        LossDistribution::from_samples(fixed_samples())};
    const std::vector<RiskSpectrum> spectra = {
        RiskSpectrum::exponential(5.0), RiskSpectrum::power_low(0.3),
        RiskSpectrum::power_high(3.0), RiskSpectrum::es_step(0.9)};
    for (const auto& d : dists)
        for (const auto& s : spectra) cases.push_back({d, s});
    return cases;
}

PropertyResult check_translation_exact_slice() {
    const auto scheme = QuadratureScheme::exact_slice(20000);
    double worst = 0.0;
    for (const auto& c : law_cases()) {
        const double base = spectral_risk_measure(c.dist, c.spectrum, scheme).value;
        for (const double shift : {-10.0, 1000.0}) {
            const double shifted = spectral_risk_measure(c.dist.scaled_shifted(1.0, shift), c.spectrum,
                                       scheme).value;
            const double err = std::fabs(shifted - base - shift) /
                               (1.0 + std::fabs(shift) + std::fabs(base));
            worst = std::max(worst, err);
        }
    }
    return {"translation invariance (exact-slice): shift by c moves the SRM by c",
            worst <= 1e-10, fmt("worst relative error %.3e (tolerance 1e-10)", worst)};
}

PropertyResult check_translation_repro_grid() {
    double worst = 0.0;
    for (const auto rule : {QuadratureRule::Simpson, QuadratureRule::Trapezoid}) {
        const auto scheme = QuadratureScheme::repro_grid(rule, 2000);
        for (const auto& c : law_cases()) {
            const auto base = spectral_risk_measure(c.dist, c.spectrum, scheme);
            const double mass = base.diagnostics->discrete_mass;
            for (const double shift : {-10.0, 1000.0}) {
                const double shifted = spectral_risk_measure(c.dist.scaled_shifted(1.0, shift), c.spectrum,
                                           scheme).value;
                const double err = std::fabs(shifted - base.value - shift * mass) /
                                   (1.0 + std::fabs(shift) + std::fabs(base.value));
                worst = std::max(worst, err);
            }
        }
    }
    return {"truncated-grid translation law: shift by c moves the SRM by c times the "
            "grid weight mass",
            worst <= 1e-10, fmt("worst relative error %.3e (tolerance 1e-10)", worst)};
}

PropertyResult check_positive_homogeneity() {
    double worst = 0.0;
    const std::vector<QuadratureScheme> schemes = {
        QuadratureScheme::exact_slice(20000),
        QuadratureScheme::repro_grid(QuadratureRule::Simpson, 2000)};
    for (const auto& scheme : schemes) {
        for (const auto& c : law_cases()) {
            const double base = spectral_risk_measure(c.dist, c.spectrum, scheme).value;
            for (const double lambda : {2.0, 3.7}) {
                const double scaled = spectral_risk_measure(c.dist.scaled_shifted(lambda, 0.0), c.spectrum,
                                          scheme).value;
                const double err = std::fabs(scaled - lambda * base) /
                                   (1.0 + std::fabs(lambda * base));
                worst = std::max(worst, err);
            }
        }
    }
    return {"positive homogeneity: scaling quantiles by lambda scales the SRM by lambda",
            worst <= 1e-12, fmt("worst relative error %.3e (tolerance 1e-12)", worst)};
}

PropertyResult check_comonotone_additivity() {
    std::mt19937_64 rng(20240402);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t n = 257;
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = gauss(rng);
    for (auto& v : y) v = 2.0 * gauss(rng) + 0.5;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    std::vector<double> sum(n);
    for (std::size_t i = 0; i < n; ++i) sum[i] = x[i] + y[i];

    const auto scheme = QuadratureScheme::exact_slice();
    double worst = 0.0;
    for (const auto& s : {RiskSpectrum::exponential(5.0), RiskSpectrum::power_low(0.4),
                          RiskSpectrum::power_high(3.0), RiskSpectrum::es_step(0.9)}) {
        const double lhs = spectral_risk_measure(LossDistribution::from_samples(sum), s, scheme).value;
        const double rhs = spectral_risk_measure(LossDistribution::from_samples(x), s, scheme).value +
                           spectral_risk_measure(LossDistribution::from_samples(y), s, scheme).value;
        worst = std::max(worst, std::fabs(lhs - rhs) / (1.0 + std::fabs(rhs)));
    }
    return {"comonotone additivity: the SRM adds over comonotone positions", worst <= 1e-12,
            fmt("worst relative error %.3e (tolerance 1e-12)", worst)};
}

PropertyResult check_var_exactness() {
    bool ok = true;
    const auto dists = benchmark_distributions();
    for (const auto& d : dists)
        for (const double alpha : {0.05, 0.5, 0.95, 0.99})
            ok = ok && var(d, alpha).value == d.quantile(alpha);
    const auto emp = LossDistribution::from_samples(fixed_samples());
    for (const double alpha : {0.25, 0.5, 0.75})
        ok = ok && var(emp, alpha).value == emp.quantile(alpha);
    return {"VaR exactness: var(dist, alpha) equals the alpha quantile bit-for-bit", ok,
            "5 analytic families + empirical, several levels"};
}

PropertyResult check_es_srm_equivalence() {
    bool ok = true;
    const std::vector<QuadratureScheme> schemes = {
        QuadratureScheme::exact_slice(10000),
        QuadratureScheme::repro_grid(QuadratureRule::Trapezoid, 2000)};
    for (const auto& scheme : schemes) {
        for (const auto& d : {LossDistribution::standard_normal(),
                              LossDistribution::standard_uniform(),
                              LossDistribution::from_samples(fixed_samples())}) {
            for (const double alpha : {0.0, 0.5, 0.95}) {
                ok = ok && es(d, alpha, scheme).value ==
                               spectral_risk_measure(d, RiskSpectrum::es_step(alpha), scheme).value;
            }
        }
    }
    return {"ES/SRM equivalence: es() and spectral_risk_measure(es_step) agree bit-for-bit", ok,
            "both modes, analytic and empirical"};
}

PropertyResult check_quantile_properties() {
    std::mt19937_64 rng(20240403);
    std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
    bool monotone = true;
    double worst_roundtrip = 0.0;

    std::vector<LossDistribution> dists = benchmark_distributions();
    dists.push_back(LossDistribution::from_samples(fixed_samples()));
    for (const auto& d : dists) {
        for (int i = 0; i < 300; ++i) {
            double p1 = unit(rng), p2 = unit(rng);
            if (p1 > p2) std::swap(p1, p2);
            if (p1 == p2) continue;
            if (!(d.quantile(p1) <= d.quantile(p2))) monotone = false;
        }
        if (d.is_empirical()) continue;
        for (int i = 0; i < 200; ++i) {
            const double p = unit(rng);
            worst_roundtrip = std::max(worst_roundtrip,
                                       std::fabs(d.cdf(d.quantile(p)) - p));
        }
    }
    const bool ok = monotone && worst_roundtrip <= 1e-8;
    return {"quantile monotonicity and CDF round trips", ok,
            fmt("monotone across 6 distributions; worst |cdf(quantile(p)) - p| = %.3e "
                "(tolerance 1e-8)", worst_roundtrip)};
}

// Closed form of the exponential-weight integral of phi(p) p over [a,b]
// for the standard uniform: the reference the truncated grid converges to.
double uniform_exponential_closed(double k, double a, double b) {
    const double lambda = k / -std::expm1(-k);
    const auto anti = [&](double p) {
        return lambda * std::exp(-k * (1.0 - p)) * (p / k - 1.0 / (k * k));
    };
    return anti(b) - anti(a);
}

PropertyResult check_simpson_order() {
    const double k = 1.0;
    const double h = 1e-4;
    const double closed = uniform_exponential_closed(k, h, 1.0 - h);
    const auto uniform = LossDistribution::standard_uniform();
    const auto spectrum = RiskSpectrum::exponential(k);
    double err[3];
    const std::int64_t ns[3] = {10, 40, 160};
    for (int i = 0; i < 3; ++i) {
        const auto scheme = QuadratureScheme::repro_grid(QuadratureRule::Simpson, ns[i], h);
        err[i] = std::fabs(integrate_product(spectrum, uniform, scheme).value - closed);
    }
    const double r1 = err[0] / err[1];
    const double r2 = err[1] / err[2];
    return {"Simpson order: quadrupling the node count cuts the error by >= 200x",
            r1 >= 200.0 && r2 >= 200.0,
            fmt("error ratios %.0fx and %.0fx across N = 10 -> 40 -> 160", r1, r2)};
}

PropertyResult check_subadditivity_batch() {
    std::mt19937_64 rng(20240404);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    std::uniform_real_distribution<double> offset(-1.0, 1.0);
    const auto spectra = {RiskSpectrum::exponential(5.0), RiskSpectrum::power_high(3.0),
                          RiskSpectrum::es_step(0.95)};
    const std::size_t n = 500;
    int failures = 0;
    double worst_gap = -1e300;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(n), b(n);
        const double sb = scale(rng), ob = offset(rng);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = gauss(rng);
            b[i] = sb * gauss(rng) + ob;
        }
        for (const auto& s : spectra) {
            const auto result = subadditivity_check(a, b, s);
            if (!result.holds) ++failures;
            worst_gap = std::max(worst_gap, result.lhs - result.rhs);
        }
    }
    return {"subadditivity over 200 randomized sample pairs (n = 500)", failures == 0,
            fmt("%d violations; worst lhs - rhs = %.3e", failures, worst_gap)};
}

PropertyResult check_exp_sweep_increasing() {
    const auto scheme = QuadratureScheme::repro_grid(QuadratureRule::Simpson, 10000);
    std::vector<double> ks(20);
    for (std::size_t i = 0; i < ks.size(); ++i)
        ks[i] = std::pow(100.0, static_cast<double>(i) / 19.0);
    bool ok = true;
    std::string failing;
    for (const auto& d : benchmark_distributions()) {
        const auto curve = sweep(d, SpectrumFamily::Exponential, ks, scheme);
        for (std::size_t i = 1; i < curve.points.size(); ++i) {
            if (!(curve.points[i].second > curve.points[i - 1].second)) {
                ok = false;
                failing = d.label();
            }
        }
    }
    return {"exponential sweep strictly increases in k on all five benchmark "
            "distributions", ok,
            ok ? "20 log-spaced k in [1, 100]" : "not increasing for " + failing};
}

PropertyResult check_power_low_sweep_shape() {
    const auto scheme = QuadratureScheme::repro_grid(QuadratureRule::Trapezoid, 10000);
    std::vector<double> gs(25);
    for (std::size_t i = 0; i < gs.size(); ++i)
        gs[i] = 0.005 * std::pow(0.995 / 0.005, static_cast<double>(i) / 24.0);
    bool ok = true;
    std::string detail;
    for (const auto& d : benchmark_distributions()) {
        const auto curve = sweep(d, SpectrumFamily::PowerLow, gs, scheme);
        std::size_t peak = 0;
        for (std::size_t i = 1; i < curve.points.size(); ++i)
            if (curve.points[i].second > curve.points[peak].second) peak = i;
        bool shape = peak > 0 && peak + 1 < curve.points.size();
        for (std::size_t i = 1; i <= peak && shape; ++i)
            shape = curve.points[i].second > curve.points[i - 1].second;
        for (std::size_t i = peak + 1; i < curve.points.size() && shape; ++i)
            shape = curve.points[i].second < curve.points[i - 1].second;
        if (!shape) {
            ok = false;
            detail = "no rise-peak-fall shape for " + d.label();
        }
    }
    return {"power-low sweep rises, peaks at an interior gamma, then falls on all five "
            "benchmark distributions", ok,
            ok ? "25 log-spaced gamma in [0.005, 0.995]" : detail};
}

PropertyResult check_weight_profile_crossing() {
    const auto fig = figure_data(3);
    int sign_changes = 0;
    int prev_sign = 0;
    for (std::size_t i = 0; i < fig.abscissa.size(); ++i) {
        const double d0 = fig.series[0][i];
        const double d1 = fig.series[1][i];
        if (!std::isfinite(d0) || !std::isfinite(d1)) continue;
        const double diff = d0 - d1;
        const int sign = diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0);
        if (sign != 0 && prev_sign != 0 && sign != prev_sign) ++sign_changes;
        if (sign != 0) prev_sign = sign;
    }
    return {"the gamma = 0.7 and gamma = 0.9 low-power weight profiles cross exactly "
            "once inside (0,1)",
            sign_changes == 1, fmt("%d sign changes on the 1001-point grid", sign_changes)};
}

PropertyResult check_derivative_sign() {
    const auto report = srm_derivative(LossDistribution::standard_normal(),
                                       SpectrumFamily::Exponential, 5.0,
                                       default_derivative_step(5.0), 0.0,
                                       QuadratureScheme::exact_slice());
    return {"the exponential SRM of normal losses has a positive k-derivative at k = 5",
            report.central_difference > 0.0,
            fmt("central difference %.6f", report.central_difference)};
}

PropertyResult check_derivative_translation() {
    const auto scheme = QuadratureScheme::exact_slice();
    const auto dist = LossDistribution::standard_normal();
    const double step = default_derivative_step(5.0);
    const double base = srm_derivative(dist, SpectrumFamily::Exponential, 5.0, step, 0.0,
                                       scheme).central_difference;
    double worst = 0.0;
    bool ok = true;
    for (const double c : {-1000.0, -10.0, 10.0, 1000.0}) {
        const auto report = srm_derivative(dist, SpectrumFamily::Exponential, 5.0, step, c,
                                           scheme);
        const double err = std::fabs(report.shifted_central_difference - base);
        worst = std::max(worst, err / (1.0 + std::fabs(c)));
        ok = ok && err <= 1e-6 * (1.0 + std::fabs(c));
    }
    return {"the k-derivative is unchanged when every quantile is shifted by a constant",
            ok,
            fmt("worst scaled deviation %.3e; each weighting family stays normalized as "
                "its parameter moves, so the integral of the weight's parameter "
                "derivative vanishes and a constant shift cannot alter the slope",
                worst)};
}

}  // namespace

std::vector<PropertyResult> property_suite() {
    return {check_normalization(),
            check_p1_p3(),
            check_translation_exact_slice(),
            check_translation_repro_grid(),
            check_positive_homogeneity(),
            check_comonotone_additivity(),
            check_var_exactness(),
            check_es_srm_equivalence(),
            check_quantile_properties(),
            check_simpson_order(),
            check_subadditivity_batch()};
}

std::vector<PropertyResult> shape_suite() {
    return {check_exp_sweep_increasing(), check_power_low_sweep_shape(),
            check_weight_profile_crossing()};
}

std::vector<PropertyResult> derivative_suite() {
    return {check_derivative_sign(), check_derivative_translation()};
}

std::vector<PropertyResult> all_suites() {
    std::vector<PropertyResult> all = property_suite();
    for (auto& r : shape_suite()) all.push_back(std::move(r));
    for (auto& r : derivative_suite()) all.push_back(std::move(r));
    return all;
}

}  // namespace srm::checks
