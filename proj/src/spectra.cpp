#include "srm/spectra.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

#include "srm/errors.hpp"

namespace srm {

namespace {

void require_probability_closed(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s: p must lie in [0,1], got %g", what, p);
        throw std::domain_error(buf);
    }
}

void require_finite_positive(double v, const char* what) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%s must be positive and finite, got %g", what, v);
        throw std::domain_error(buf);
    }
}

}  // namespace

RiskSpectrum RiskSpectrum::var_dirac(double alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("var spectrum: alpha must lie in (0,1)");
    return RiskSpectrum(SpectrumKind::VaRDirac, alpha);
}

RiskSpectrum RiskSpectrum::es_step(double alpha) {
    if (!std::isfinite(alpha) || !(alpha >= 0.0 && alpha < 1.0))
        throw std::domain_error("es spectrum: alpha must lie in [0,1)");
    return RiskSpectrum(SpectrumKind::ESStep, alpha);
}

RiskSpectrum RiskSpectrum::exponential(double k) {
    require_finite_positive(k, "exponential spectrum: k");
    return RiskSpectrum(SpectrumKind::Exponential, k);
}

RiskSpectrum RiskSpectrum::power_low(double gamma) {
    if (!std::isfinite(gamma) || !(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error(
            "power-low spectrum: gamma must lie in (0,1); the spectral risk measure has a "
            "near-singular point at gamma = 1, and gamma > 1 needs the power-high form");
    return RiskSpectrum(SpectrumKind::PowerLow, gamma);
}

RiskSpectrum RiskSpectrum::power_high(double gamma) {
    if (!std::isfinite(gamma) || !(gamma > 1.0))
        throw std::domain_error(
            "power-high spectrum: gamma must exceed 1; the spectral risk measure has a "
            "near-singular point at gamma = 1, and gamma < 1 needs the power-low form");
    return RiskSpectrum(SpectrumKind::PowerHigh, gamma);
}

double RiskSpectrum::normalization() const {
    switch (kind_) {
        case SpectrumKind::Exponential:
            return param_ / -std::expm1(-param_);
        case SpectrumKind::PowerLow:
            return param_ * (1.0 - param_);
        case SpectrumKind::PowerHigh:
            return param_;
        case SpectrumKind::ESStep:
            return 1.0 / (1.0 - param_);
        case SpectrumKind::VaRDirac:
            throw unsupported_operation("normalization: the VaR spectrum has no density constant");
    }
    throw std::logic_error("unreachable spectrum kind");
}

double RiskSpectrum::weight(double p) const {
    require_probability_closed(p, "weight");
    switch (kind_) {
        case SpectrumKind::VaRDirac:
            throw unsupported_operation(
                "weight: the VaR spectrum is a Dirac mass with no pointwise density; "
                "use the engine var operation");
        case SpectrumKind::ESStep:
            return p < param_ ? 0.0 : 1.0 / (1.0 - param_);
        case SpectrumKind::Exponential:
            // k e^{-k(1-p)} / (1 - e^{-k}); expm1 keeps this exact as k -> 0.
            return param_ * std::exp(-param_ * (1.0 - p)) / -std::expm1(-param_);
        case SpectrumKind::PowerLow:
            if (p == 1.0) return std::numeric_limits<double>::infinity();
            return param_ * std::pow(1.0 - p, param_ - 1.0);
        case SpectrumKind::PowerHigh:
            return param_ * std::pow(p, param_ - 1.0);
    }
    throw std::logic_error("unreachable spectrum kind");
}

double RiskSpectrum::cumulative_weight(double p) const {
    require_probability_closed(p, "cumulative_weight");
    switch (kind_) {
        case SpectrumKind::VaRDirac:
            return p < param_ ? 0.0 : 1.0;
        case SpectrumKind::ESStep:
            return p <= param_ ? 0.0 : (p - param_) / (1.0 - param_);
        case SpectrumKind::Exponential:
            return (std::expm1(-param_ * (1.0 - p)) - std::expm1(-param_)) /
                   -std::expm1(-param_);
        case SpectrumKind::PowerLow:
            return 1.0 - std::pow(1.0 - p, param_);
        case SpectrumKind::PowerHigh:
            return std::pow(p, param_);
    }
    throw std::logic_error("unreachable spectrum kind");
}

std::string RiskSpectrum::label() const {
    char buf[64];
    switch (kind_) {
        case SpectrumKind::VaRDirac:
            std::snprintf(buf, sizeof(buf), "var(alpha=%g)", param_);
            break;
        case SpectrumKind::ESStep:
            std::snprintf(buf, sizeof(buf), "es(alpha=%g)", param_);
            break;
        case SpectrumKind::Exponential:
            std::snprintf(buf, sizeof(buf), "exponential(k=%g)", param_);
            break;
        case SpectrumKind::PowerLow:
            std::snprintf(buf, sizeof(buf), "power_low(gamma=%g)", param_);
            break;
        case SpectrumKind::PowerHigh:
            std::snprintf(buf, sizeof(buf), "power_high(gamma=%g)", param_);
            break;
    }
    return buf;
}

AdmissibilityReport check_admissibility(const RiskSpectrum& spectrum, int grid_points) {
    if (grid_points < 3)
        throw std::invalid_argument("check_admissibility: grid_points must be >= 3");

    AdmissibilityReport report;
    report.normalization_residual =
        std::fabs((spectrum.cumulative_weight(1.0) - spectrum.cumulative_weight(0.0)) - 1.0);

    if (!spectrum.has_density()) {
        // A Dirac mass: nonnegative as a measure, but not an increasing
        // density in any pointwise sense.
        report.nonnegativity_ok = true;
        report.strictly_increasing = false;
        report.weakly_increasing = false;
        return report;
    }

    const int n = grid_points;
    std::vector<double> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double p = static_cast<double>(j + 1) / static_cast<double>(n + 1);
        w[static_cast<std::size_t>(j)] = spectrum.weight(p);
    }
    report.nonnegativity_ok = true;
    report.strictly_increasing = true;
    report.weakly_increasing = true;
    for (int j = 0; j < n; ++j) {
        if (!(w[static_cast<std::size_t>(j)] >= 0.0)) report.nonnegativity_ok = false;
        if (j > 0) {
            const double prev = w[static_cast<std::size_t>(j - 1)];
            const double cur = w[static_cast<std::size_t>(j)];
            if (!(cur > prev)) report.strictly_increasing = false;
            if (cur < prev) report.weakly_increasing = false;
        }
    }
    return report;
}

double exponential_utility(double k, double x) {
    require_finite_positive(k, "exponential_utility: k");
    return -std::exp(-k * x);
}

double power_utility(double gamma, double x) {
    require_finite_positive(gamma, "power_utility: gamma");
    if (!(x > 0.0))
        throw std::domain_error("power_utility: x must be positive");
    if (gamma == 1.0) return std::log(x);
    return std::expm1((1.0 - gamma) * std::log(x)) / (1.0 - gamma);
}

RiskAversionCoefficients exponential_risk_aversion(double k, double x) {
    require_finite_positive(k, "exponential_risk_aversion: k");
    if (!(x > 0.0))
        throw std::domain_error("exponential_risk_aversion: x must be positive");
    return {k, x * k};
}

RiskAversionCoefficients power_risk_aversion(double gamma, double x) {
    require_finite_positive(gamma, "power_risk_aversion: gamma");
    if (!(x > 0.0))
        throw std::domain_error("power_risk_aversion: x must be positive");
    return {gamma / x, gamma};
}

}  // namespace srm
