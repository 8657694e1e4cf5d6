#include "srm/engine.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "srm/errors.hpp"
#include "srm/math.hpp"
#include "srm/parallel.hpp"

namespace srm {

namespace {

constexpr double mass_warning_threshold = 0.999;

std::string format_label(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

/// Exact discrete SRM over ascending order statistics:
/// sum_i [Phi(i/n) - Phi((i-1)/n)] x_(i).
double empirical_exact_srm(const std::vector<double>& sorted, const RiskSpectrum& spectrum) {
    const auto n = static_cast<std::int64_t>(sorted.size());
    const double dn = static_cast<double>(n);
    return math::pairwise_sum(1, n + 1, [&](std::int64_t i) {
        const double dm = spectrum.cumulative_weight(static_cast<double>(i) / dn) -
                          spectrum.cumulative_weight(static_cast<double>(i - 1) / dn);
        return dm * sorted[static_cast<std::size_t>(i - 1)];
    });
}

void append_warnings(RiskMeasureResult& result, const LossDistribution& dist) {
    const double mass = result.captured_mass();
    if (mass < mass_warning_threshold) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "captured weight mass %.6f < %.3f: the grid truncation discards "
                      "spectrum mass", mass, mass_warning_threshold);
        result.warnings.emplace_back(buf);
    }
    if (dist.family() == DistFamily::Cauchy) {
        result.warnings.emplace_back(
            "heavy tail: the weighted quantile integral diverges toward p = 1, so the "
            "value depends on the grid resolution and endpoint truncation");
    }
}

RiskSpectrum family_spectrum(SpectrumFamily family, double param) {
    switch (family) {
        case SpectrumFamily::Exponential: return RiskSpectrum::exponential(param);
        case SpectrumFamily::PowerLow:    return RiskSpectrum::power_low(param);
        case SpectrumFamily::PowerHigh:   return RiskSpectrum::power_high(param);
    }
    throw std::logic_error("unreachable spectrum family");
}

const char* family_parameter_name(SpectrumFamily family) {
    return family == SpectrumFamily::Exponential ? "k" : "gamma";
}

/// Grid integral of q alone under the same scheme; the limit reference
/// for the Cauchy, whose mean does not exist.
double grid_integral_of_q(const LossDistribution& dist, const QuadratureScheme& scheme) {
    return spectral_risk_measure(dist, RiskSpectrum::es_step(0.0), scheme).value;
}

}  // namespace

RiskMeasureResult spectral_risk_measure(const LossDistribution& dist, const RiskSpectrum& spectrum,
                      const QuadratureScheme& scheme) {
    if (spectrum.kind() == SpectrumKind::VaRDirac)
        throw std::invalid_argument("srm: the VaR spectrum is computed exactly by var()");
    scheme.validate();

    RiskMeasureResult result{0.0, spectrum, std::nullopt, {}};
    if (dist.is_empirical() && scheme.mode == QuadratureMode::ExactSlice) {
        result.value = empirical_exact_srm(dist.samples(), spectrum);
    } else {
        IntegralDiagnostics diag = integrate_product(spectrum, dist, scheme);
        result.value = diag.value;
        result.diagnostics = std::move(diag);
    }
    if (!std::isfinite(result.value))
        throw std::domain_error("srm: the risk measure is not finite under this scheme");
    append_warnings(result, dist);
    return result;
}

RiskMeasureResult var(const LossDistribution& dist, double alpha) {
    RiskMeasureResult result{0.0, RiskSpectrum::var_dirac(alpha), std::nullopt, {}};
    result.value = dist.quantile(alpha);
    return result;
}

RiskMeasureResult es(const LossDistribution& dist, double alpha,
                     const QuadratureScheme& scheme) {
    return spectral_risk_measure(dist, RiskSpectrum::es_step(alpha), scheme);
}

SweepCurve sweep(const LossDistribution& dist, SpectrumFamily family,
                 std::span<const double> params, const QuadratureScheme& scheme) {
    if (params.empty())
        throw std::invalid_argument("sweep: parameter list must be non-empty");
    for (std::size_t i = 1; i < params.size(); ++i)
        if (!(params[i] > params[i - 1]))
            throw std::invalid_argument("sweep: parameters must be strictly ascending");

    SweepCurve curve{family_parameter_name(family), {}, scheme};
    curve.points.resize(params.size());
    parallel::for_index(static_cast<std::int64_t>(params.size()), [&](std::int64_t i) {
        const double p = params[static_cast<std::size_t>(i)];
        curve.points[static_cast<std::size_t>(i)] = {
            p, spectral_risk_measure(dist, family_spectrum(family, p), scheme).value};
    });
    return curve;
}

LimitCheckResult limit_check(const LossDistribution& dist, LimitKind kind,
                             const QuadratureScheme& scheme) {
    constexpr double eps = 1e-6;
    LimitCheckResult out;
    const auto mean_reference = [&]() -> std::optional<double> {
        if (auto m = dist.mean()) return m;
        return grid_integral_of_q(dist, scheme);
    };
    switch (kind) {
        case LimitKind::ExpKToZero:
            out.limit_estimate = spectral_risk_measure(dist, RiskSpectrum::exponential(eps), scheme).value;
            out.reference = mean_reference();
            break;
        case LimitKind::PowerLowGammaToOne:
            out.limit_estimate = spectral_risk_measure(dist, RiskSpectrum::power_low(1.0 - eps), scheme).value;
            out.reference = mean_reference();
            break;
        case LimitKind::PowerHighGammaToOne:
            out.limit_estimate = spectral_risk_measure(dist, RiskSpectrum::power_high(1.0 + eps), scheme).value;
            out.reference = mean_reference();
            break;
        case LimitKind::PowerLowGammaToZero:
            out.limit_estimate = spectral_risk_measure(dist, RiskSpectrum::power_low(eps), scheme).value;
            out.reference = scheme.mode == QuadratureMode::ReproGrid
                                ? 0.0
                                : dist.support_upper();
            break;
    }
    return out;
}

double default_derivative_step(double param) {
    return 1e-4 * std::max(1.0, std::fabs(param));
}

DerivativeReport srm_derivative(const LossDistribution& dist, SpectrumFamily family,
                                double param, double step, double shift_c,
                                const QuadratureScheme& scheme) {
    if (scheme.mode != QuadratureMode::ExactSlice)
        throw std::invalid_argument(
            "srm_derivative: requires an exact-slice scheme; on the truncated grid the "
            "derivative reflects the lost weight mass, not the risk measure");
    if (!(step > 0.0))
        throw std::invalid_argument("srm_derivative: step must be positive");

    const auto central = [&](const LossDistribution& d) {
        const double up = spectral_risk_measure(d, family_spectrum(family, param + step), scheme).value;
        const double dn = spectral_risk_measure(d, family_spectrum(family, param - step), scheme).value;
        return (up - dn) / (2.0 * step);
    };

    DerivativeReport report;
    report.parameter = param;
    report.step = step;
    report.shift = shift_c;
    report.central_difference = central(dist);
    report.shifted_central_difference =
        shift_c == 0.0 ? report.central_difference
                       : central(dist.scaled_shifted(1.0, shift_c));
    return report;
}

SubadditivityResult subadditivity_check(std::span<const double> a,
                                        std::span<const double> b,
                                        const RiskSpectrum& spectrum) {
    if (a.size() != b.size())
        throw std::invalid_argument("subadditivity_check: samples must have equal length");
    if (a.empty())
        throw std::invalid_argument("subadditivity_check: samples must be non-empty");
    if (spectrum.kind() == SpectrumKind::VaRDirac)
        throw std::invalid_argument(
            "subadditivity_check: the VaR spectrum is not admissible (weights are not "
            "nondecreasing), so subadditivity is not guaranteed");

    std::vector<double> combined(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) combined[i] = a[i] + b[i];

    const QuadratureScheme exact = QuadratureScheme::exact_slice();
    SubadditivityResult out;
    out.lhs = spectral_risk_measure(LossDistribution::from_samples(std::move(combined)), spectrum, exact).value;
    out.rhs = spectral_risk_measure(LossDistribution::from_samples({a.begin(), a.end()}), spectrum, exact).value +
              spectral_risk_measure(LossDistribution::from_samples({b.begin(), b.end()}), spectrum, exact).value;
    out.holds = out.lhs <= out.rhs + 1e-9 * (1.0 + std::fabs(out.rhs));
    return out;
}

std::vector<LossDistribution> benchmark_distributions() {
    return {LossDistribution::standard_normal(), LossDistribution::cauchy(),
            LossDistribution::standard_uniform(), LossDistribution::beta(2.0, 4.0),
            LossDistribution::gumbel_min()};
}

namespace {

constexpr std::int64_t table_intervals = 10000;

std::vector<std::string> benchmark_column_labels() {
    return {"standard_normal", "cauchy", "standard_uniform", "beta_2_4", "gumbel_min"};
}

Table fill_table(int id, const char* parameter_name,
                 const std::vector<std::string>& row_labels,
                 const std::vector<RiskSpectrum>& row_spectra,
                 const QuadratureScheme& scheme) {
    Table table;
    table.id = id;
    table.parameter_name = parameter_name;
    table.row_labels = row_labels;
    table.column_labels = benchmark_column_labels();
    const auto dists = benchmark_distributions();

    const auto rows = static_cast<std::int64_t>(row_spectra.size());
    const auto cols = static_cast<std::int64_t>(dists.size());
    table.cells.resize(static_cast<std::size_t>(rows));
    for (auto& row : table.cells)
        row.resize(static_cast<std::size_t>(cols),
                   RiskMeasureResult{0.0, row_spectra.front(), std::nullopt, {}});

    parallel::for_index(rows * cols, [&](std::int64_t idx) {
        const auto r = static_cast<std::size_t>(idx / cols);
        const auto c = static_cast<std::size_t>(idx % cols);
        table.cells[r][c] = spectral_risk_measure(dists[c], row_spectra[r], scheme);
    });
    return table;
}

}  // namespace

Table make_table(int id) {
    constexpr double limit_eps = 1e-6;
    switch (id) {
        case 1: {
            const auto scheme = QuadratureScheme::repro_grid(QuadratureRule::Simpson,
                                                             table_intervals);
            std::vector<RiskSpectrum> spectra;
            std::vector<std::string> labels;
            for (const double k : {1.0, 5.0, 25.0, 100.0}) {
                spectra.push_back(RiskSpectrum::exponential(k));
                labels.push_back(format_label("%g", k));
            }
            return fill_table(1, "k", labels, spectra, scheme);
        }
        case 2: {
            const auto scheme = QuadratureScheme::repro_grid(QuadratureRule::Trapezoid,
                                                             table_intervals);
            std::vector<RiskSpectrum> spectra;
            std::vector<std::string> labels;
            spectra.push_back(RiskSpectrum::power_low(limit_eps));
            labels.emplace_back("->0");
            for (const double g : {0.1, 0.5, 0.9}) {
                spectra.push_back(RiskSpectrum::power_low(g));
                labels.push_back(format_label("%g", g));
            }
            spectra.push_back(RiskSpectrum::power_low(1.0 - limit_eps));
            labels.emplace_back("->1");
            return fill_table(2, "gamma", labels, spectra, scheme);
        }
        case 3: {
            const auto scheme = QuadratureScheme::repro_grid(QuadratureRule::Trapezoid,
                                                             table_intervals);
            std::vector<RiskSpectrum> spectra;
            std::vector<std::string> labels;
            for (const double g : {1.1, 1.5, 5.0, 20.0}) {
                spectra.push_back(RiskSpectrum::power_high(g));
                labels.push_back(format_label("%g", g));
            }
            return fill_table(3, "gamma", labels, spectra, scheme);
        }
        default:
            throw std::invalid_argument("make_table: id must be 1, 2 or 3");
    }
}

namespace {

FigureData weight_profile_figure(int id, const std::vector<RiskSpectrum>& spectra,
                                 const std::vector<std::string>& names) {
    FigureData fig;
    fig.id = id;
    fig.abscissa_name = "p";
    fig.series_names = names;
    constexpr int points = 1001;
    fig.abscissa.resize(points);
    fig.series.assign(spectra.size(), std::vector<double>(points));
    for (int i = 0; i < points; ++i) {
        const double p = static_cast<double>(i) / static_cast<double>(points - 1);
        fig.abscissa[static_cast<std::size_t>(i)] = p;
        for (std::size_t s = 0; s < spectra.size(); ++s)
            fig.series[s][static_cast<std::size_t>(i)] = spectra[s].weight(p);
    }
    return fig;
}

FigureData sweep_figure(int id, SpectrumFamily family, double lo, double hi,
                        bool log_spaced, const QuadratureScheme& scheme) {
    constexpr int points = 100;
    std::vector<double> params(points);
    for (int i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        params[static_cast<std::size_t>(i)] =
            log_spaced ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t;
    }

    FigureData fig;
    fig.id = id;
    fig.abscissa_name = family_parameter_name(family);
    fig.abscissa = params;
    fig.series_names = benchmark_column_labels();
    const auto dists = benchmark_distributions();
    fig.series.assign(dists.size(), std::vector<double>(points));
    parallel::for_index(static_cast<std::int64_t>(dists.size()), [&](std::int64_t d) {
        const SweepCurve curve = sweep(dists[static_cast<std::size_t>(d)], family,
                                       params, scheme);
        for (int i = 0; i < points; ++i)
            fig.series[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)] =
                curve.points[static_cast<std::size_t>(i)].second;
    });
    return fig;
}

}  // namespace

FigureData figure_data(int id) {
    switch (id) {
        case 1:
            return weight_profile_figure(
                1, {RiskSpectrum::exponential(5.0), RiskSpectrum::exponential(25.0)},
                {"k_5", "k_25"});
        case 2:
            return sweep_figure(2, SpectrumFamily::Exponential, 1.0, 100.0, true,
                                QuadratureScheme::repro_grid(QuadratureRule::Simpson,
                                                             table_intervals));
        case 3:
            return weight_profile_figure(
                3, {RiskSpectrum::power_low(0.7), RiskSpectrum::power_low(0.9)},
                {"gamma_0.7", "gamma_0.9"});
        case 4:
            return sweep_figure(4, SpectrumFamily::PowerLow, 0.1, 0.9, false,
                                QuadratureScheme::repro_grid(QuadratureRule::Trapezoid,
                                                             table_intervals));
        case 5:
            return weight_profile_figure(
                5, {RiskSpectrum::power_high(1.5), RiskSpectrum::power_high(5.0)},
                {"gamma_1.5", "gamma_5"});
        case 6:
            return sweep_figure(6, SpectrumFamily::PowerHigh, 1.1, 20.0, true,
                                QuadratureScheme::repro_grid(QuadratureRule::Trapezoid,
                                                             table_intervals));
        default:
            throw std::invalid_argument("figure_data: id must be between 1 and 6");
    }
}

}  // namespace srm
