#pragma once

#include <string>

namespace srm {

enum class SpectrumKind {
    VaRDirac,
    ESStep,
    Exponential,
    PowerLow,
    PowerHigh,
};

/// A risk-aversion weighting function phi(p) over cumulative probability.
///
/// Each kind has a closed-form cumulative weight Phi(p) with Phi(0)=0 and
/// Phi(1)=1 exactly; the normalization constant is derived from the
/// parameter, never stored. The VaR spectrum is a Dirac mass and has no
/// pointwise density.
class RiskSpectrum {
public:
    static RiskSpectrum var_dirac(double alpha);    // alpha in (0,1)
    static RiskSpectrum es_step(double alpha);      // alpha in [0,1)
    static RiskSpectrum exponential(double k);      // k > 0
    static RiskSpectrum power_low(double gamma);    // gamma in (0,1)
    static RiskSpectrum power_high(double gamma);   // gamma > 1

    SpectrumKind kind() const { return kind_; }

    /// alpha, k, or gamma depending on the kind.
    double param() const { return param_; }

    /// Normalization constant lambda: k/(1-e^-k), gamma*(1-gamma), or
    /// gamma for the exponential / power-low / power-high kinds.
    double normalization() const;

    bool has_density() const { return kind_ != SpectrumKind::VaRDirac; }

    /// phi(p) for p in [0,1]. PowerLow returns +infinity at p = 1;
    /// VaRDirac throws unsupported_operation.
    double weight(double p) const;

    /// Phi(p) = integral of phi over [0,p], closed form, for p in [0,1].
    double cumulative_weight(double p) const;

    std::string label() const;

private:
    RiskSpectrum(SpectrumKind kind, double param) : kind_(kind), param_(param) {}

    SpectrumKind kind_;
    double param_;
};

struct AdmissibilityReport {
    bool nonnegativity_ok = false;
    double normalization_residual = 0.0;
    bool strictly_increasing = false;
    bool weakly_increasing = false;
};

/// Checks the admissibility properties on an evenly spaced interior grid
/// of `grid_points` points (>= 3). The normalization residual comes from
/// the closed-form cumulative weight.
AdmissibilityReport check_admissibility(const RiskSpectrum& spectrum, int grid_points);

/// U(x) = -exp(-k x), k > 0.
double exponential_utility(double k, double x);

/// U(x) = (x^(1-gamma) - 1)/(1-gamma) for gamma != 1, ln(x) at gamma = 1.
/// Requires x > 0. Unlike the spectrum constructors, gamma = 1 is a valid
/// utility.
double power_utility(double gamma, double x);

struct RiskAversionCoefficients {
    double absolute;
    double relative;
};

/// (k, x k) for the exponential utility; x > 0.
RiskAversionCoefficients exponential_risk_aversion(double k, double x);

/// (gamma/x, gamma) for the power utility; x > 0.
RiskAversionCoefficients power_risk_aversion(double gamma, double x);

}  // namespace srm
