#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srm/distributions.hpp"
#include "srm/quadrature.hpp"
#include "srm/spectra.hpp"

namespace srm {

struct RiskMeasureResult {
    double value = 0.0;
    RiskSpectrum spectrum;
    /// Absent when the value is exact (VaR, empirical discrete sums).
    std::optional<IntegralDiagnostics> diagnostics;
    std::vector<std::string> warnings;

    double captured_mass() const {
        return diagnostics ? diagnostics->captured_mass : 1.0;
    }
};

enum class SpectrumFamily { Exponential, PowerLow, PowerHigh };

struct SweepCurve {
    std::string parameter_name;  // "k" or "gamma"
    std::vector<std::pair<double, double>> points;  // (parameter, SRM value)
    QuadratureScheme scheme;
};

enum class LimitKind {
    ExpKToZero,           // k -> 0: SRM -> mean loss
    PowerLowGammaToOne,   // gamma -> 1-: SRM -> mean loss
    PowerHighGammaToOne,  // gamma -> 1+: SRM -> mean loss
    PowerLowGammaToZero,  // gamma -> 0: 0 on the truncated grid,
                          // essential supremum for the exact integral
};

struct LimitCheckResult {
    double limit_estimate = 0.0;
    /// Analytic reference when one exists: the mean (or for the Cauchy
    /// the same-grid integral of q), 0 or the essential supremum for the
    /// gamma -> 0 case. May be +-infinity; nullopt when undefined.
    std::optional<double> reference;
};

struct DerivativeReport {
    double parameter = 0.0;
    double step = 0.0;
    double central_difference = 0.0;
    double shifted_central_difference = 0.0;
    double shift = 0.0;
};

struct SubadditivityResult {
    double lhs = 0.0;   // SRM of the combined position
    double rhs = 0.0;   // sum of the standalone SRMs
    bool holds = false;
};

struct Table {
    int id = 0;
    std::string parameter_name;
    std::vector<std::string> row_labels;
    std::vector<std::string> column_labels;
    std::vector<std::vector<RiskMeasureResult>> cells;  // [row][column]
};

struct FigureData {
    int id = 0;
    std::string abscissa_name;  // "p", "k" or "gamma"
    std::vector<std::string> series_names;
    std::vector<double> abscissa;
    std::vector<std::vector<double>> series;  // series[s][i]
};

/// The spectral risk measure of `dist` under `spectrum`.
///
/// Empirical distributions under ExactSlice use the exact discrete sum
/// over order statistics (no quadrature error, diagnostics absent);
/// everything else goes through integrate_product. VaR spectra are
/// rejected; use var().
RiskMeasureResult spectral_risk_measure(const LossDistribution& dist, const RiskSpectrum& spectrum,
                      const QuadratureScheme& scheme);

/// The alpha loss quantile, exact.
RiskMeasureResult var(const LossDistribution& dist, double alpha);

/// Expected shortfall at level alpha in [0,1); same code path as
/// spectral_risk_measure(dist, es_step(alpha), scheme).
RiskMeasureResult es(const LossDistribution& dist, double alpha,
                     const QuadratureScheme& scheme);

/// One SRM per parameter, ascending, same scheme. Evaluations may fan out
/// across threads; points are placed by index.
SweepCurve sweep(const LossDistribution& dist, SpectrumFamily family,
                 std::span<const double> params, const QuadratureScheme& scheme);

/// SRM at the boundary-adjacent parameter (k = 1e-6, gamma = 1 -+ 1e-6,
/// gamma = 1e-6) together with its analytic reference.
LimitCheckResult limit_check(const LossDistribution& dist, LimitKind kind,
                             const QuadratureScheme& scheme);

/// Step used by srm_derivative when the caller has no preference.
double default_derivative_step(double param);

/// Central difference of the SRM in the family parameter, and the same
/// difference with every quantile shifted by `shift_c`. ExactSlice only:
/// on the truncated grid the derivative picks up scheme artifacts from
/// the lost weight mass.
DerivativeReport srm_derivative(const LossDistribution& dist, SpectrumFamily family,
                                double param, double step, double shift_c,
                                const QuadratureScheme& scheme);

/// Exact-discrete-sum check of subadditivity for two equal-length sample
/// positions under an admissible spectrum.
SubadditivityResult subadditivity_check(std::span<const double> a,
                                        std::span<const double> b,
                                        const RiskSpectrum& spectrum);

/// The five benchmark loss distributions in column order: standard
/// normal, Cauchy, standard uniform, beta(2,4), minimum Gumbel.
std::vector<LossDistribution> benchmark_distributions();

/// Benchmark tables: 1 = exponential SRM (Simpson), 2 = power-low SRM
/// with limit rows (trapezoid), 3 = power-high SRM (trapezoid); all on
/// the N = 10000 reproduction grid across the five benchmark
/// distributions.
Table make_table(int id);

/// Figure data: 1/3/5 are weighting-function profiles on a 1001-point p
/// grid, 2/4/6 are SRM sweeps over 100-point parameter grids spanning the
/// table ranges, one series per benchmark distribution.
FigureData figure_data(int id);

}  // namespace srm
