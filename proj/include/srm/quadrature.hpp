#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srm/distributions.hpp"
#include "srm/spectra.hpp"

namespace srm {

enum class QuadratureRule { Trapezoid, Simpson };
enum class QuadratureMode { ReproGrid, ExactSlice };

/// How the product integral of phi(p) q_p over the unit interval is
/// evaluated.
///
/// ReproGrid is the fixed benchmark grid behind the built-in tables: the
/// composite rule on nodes p_i = h + i (1-2h)/N, i.e. the unit interval
/// truncated symmetrically at both endpoints by `top_truncation` so the
/// rule never touches p = 0 or p = 1, where quantiles or weights blow
/// up. Any node value that still comes out non-finite is replaced by 0
/// and counted.
///
/// ExactSlice covers all of [0,1]: each of the N uniform slices
/// contributes its exact closed-form weight mass times the quantile at
/// the slice midpoint, so it converges to the true weighted integral
/// whenever that integral exists, endpoint singularities included.
struct QuadratureScheme {
    QuadratureRule rule = QuadratureRule::Trapezoid;
    std::int64_t intervals = 100000;
    QuadratureMode mode = QuadratureMode::ExactSlice;
    double top_truncation = 1e-4;  // ReproGrid only

    static QuadratureScheme repro_grid(QuadratureRule rule, std::int64_t intervals,
                                       double truncation = 1e-4);
    static QuadratureScheme exact_slice(std::int64_t intervals = 100000);

    /// Throws std::invalid_argument on Simpson parity violations or
    /// out-of-range fields.
    void validate() const;

    std::string label() const;
};

struct IntegralDiagnostics {
    double value = 0.0;
    /// Phi(top) - Phi(bottom) over the integration domain, closed form;
    /// exactly 1 in ExactSlice mode.
    double captured_mass = 1.0;
    /// The quadrature rule applied to the weight function alone: the mass
    /// the discrete sum actually distributes. A constant shift of all
    /// quantiles moves `value` by exactly shift * discrete_mass.
    double discrete_mass = 1.0;
    std::int64_t nonfinite_nodes_zeroed = 0;
    QuadratureScheme scheme;
};

/// Evaluates the weighted quantile integral of `spectrum` against `dist`
/// under `scheme`. The spectrum must have a density (not VaR).
IntegralDiagnostics integrate_product(const RiskSpectrum& spectrum,
                                      const LossDistribution& dist,
                                      const QuadratureScheme& scheme);

/// One integrate_product value per interval count, same rule/mode/truncation.
/// `interval_counts` must be non-empty and strictly ascending.
std::vector<std::pair<std::int64_t, double>> convergence_study(
    const RiskSpectrum& spectrum, const LossDistribution& dist,
    const QuadratureScheme& base, std::span<const std::int64_t> interval_counts);

}  // namespace srm
