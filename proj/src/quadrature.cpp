#include "srm/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "srm/errors.hpp"
#include "srm/math.hpp"

namespace srm {

QuadratureScheme QuadratureScheme::repro_grid(QuadratureRule rule, std::int64_t intervals,
                                              double truncation) {
    QuadratureScheme s;
    s.rule = rule;
    s.intervals = intervals;
    s.mode = QuadratureMode::ReproGrid;
    s.top_truncation = truncation;
    s.validate();
    return s;
}

QuadratureScheme QuadratureScheme::exact_slice(std::int64_t intervals) {
    QuadratureScheme s;
    s.mode = QuadratureMode::ExactSlice;
    s.intervals = intervals;
    s.validate();
    return s;
}

void QuadratureScheme::validate() const {
    if (intervals < 1)
        throw std::invalid_argument("quadrature scheme: intervals must be >= 1");
    if (mode == QuadratureMode::ReproGrid) {
        if (!(top_truncation > 0.0 && top_truncation < 0.5))
            throw std::invalid_argument(
                "quadrature scheme: truncation must lie in (0, 0.5)");
        if (rule == QuadratureRule::Simpson && intervals % 2 != 0)
            throw std::invalid_argument(
                "quadrature scheme: Simpson's rule needs an even interval count");
    }
}

std::string QuadratureScheme::label() const {
    char buf[96];
    if (mode == QuadratureMode::ExactSlice) {
        std::snprintf(buf, sizeof(buf), "exact_slice(n=%lld)",
                      static_cast<long long>(intervals));
    } else {
        std::snprintf(buf, sizeof(buf), "repro_grid(%s,n=%lld,h=%g)",
                      rule == QuadratureRule::Simpson ? "simpson" : "trapezoid",
                      static_cast<long long>(intervals), top_truncation);
    }
    return buf;
}

namespace {

IntegralDiagnostics integrate_repro_grid(const RiskSpectrum& spectrum,
                                         const LossDistribution& dist,
                                         const QuadratureScheme& scheme) {
    const std::int64_t n = scheme.intervals;
    const double lo = scheme.top_truncation;
    const double hi = 1.0 - scheme.top_truncation;
    const double width = hi - lo;
    const double h = width / static_cast<double>(n);
    const bool simpson = scheme.rule == QuadratureRule::Simpson;

    const auto node = [&](std::int64_t i) {
        return lo + static_cast<double>(i) * width / static_cast<double>(n);
    };
    const auto rule_factor = [&](std::int64_t i) -> double {
        if (simpson) return (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        return (i == 0 || i == n) ? 0.5 : 1.0;
    };
    const double scale = simpson ? h / 3.0 : h;

    std::int64_t zeroed = 0;
    const double value = scale * math::pairwise_sum(0, n + 1, [&](std::int64_t i) {
        const double p = node(i);
        const double f = spectrum.weight(p) * dist.quantile_extended(p);
        if (!std::isfinite(f)) {
            ++zeroed;
            return 0.0;
        }
        return rule_factor(i) * f;
    });
    const double discrete_mass = scale * math::pairwise_sum(0, n + 1, [&](std::int64_t i) {
        const double w = spectrum.weight(node(i));
        return std::isfinite(w) ? rule_factor(i) * w : 0.0;
    });

    IntegralDiagnostics diag;
    diag.value = value;
    diag.captured_mass = spectrum.cumulative_weight(hi) - spectrum.cumulative_weight(lo);
    diag.discrete_mass = discrete_mass;
    diag.nonfinite_nodes_zeroed = zeroed;
    diag.scheme = scheme;
    return diag;
}

IntegralDiagnostics integrate_exact_slice(const RiskSpectrum& spectrum,
                                          const LossDistribution& dist,
                                          const QuadratureScheme& scheme) {
    const std::int64_t n = scheme.intervals;
    const double dn = static_cast<double>(n);

    const double value = math::pairwise_sum(1, n + 1, [&](std::int64_t i) {
        const double left = static_cast<double>(i - 1) / dn;
        const double right = static_cast<double>(i) / dn;
        const double dm = spectrum.cumulative_weight(right) - spectrum.cumulative_weight(left);
        return dm == 0.0 ? 0.0 : dm * dist.quantile(0.5 * (left + right));
    });
    const double discrete_mass = math::pairwise_sum(1, n + 1, [&](std::int64_t i) {
        return spectrum.cumulative_weight(static_cast<double>(i) / dn) -
               spectrum.cumulative_weight(static_cast<double>(i - 1) / dn);
    });

    IntegralDiagnostics diag;
    diag.value = value;
    diag.captured_mass = 1.0;
    diag.discrete_mass = discrete_mass;
    diag.nonfinite_nodes_zeroed = 0;
    diag.scheme = scheme;
    return diag;
}

}  // namespace

IntegralDiagnostics integrate_product(const RiskSpectrum& spectrum,
                                      const LossDistribution& dist,
                                      const QuadratureScheme& scheme) {
    scheme.validate();
    if (!spectrum.has_density())
        throw unsupported_operation(
            "integrate_product: the VaR spectrum has no density to integrate; "
            "use the engine var operation");
    if (scheme.mode == QuadratureMode::ReproGrid)
        return integrate_repro_grid(spectrum, dist, scheme);
    return integrate_exact_slice(spectrum, dist, scheme);
}

std::vector<std::pair<std::int64_t, double>> convergence_study(
    const RiskSpectrum& spectrum, const LossDistribution& dist,
    const QuadratureScheme& base, std::span<const std::int64_t> interval_counts) {
    if (interval_counts.empty())
        throw std::invalid_argument("convergence_study: interval counts must be non-empty");
    for (std::size_t i = 1; i < interval_counts.size(); ++i)
        if (interval_counts[i] <= interval_counts[i - 1])
            throw std::invalid_argument("convergence_study: interval counts must be ascending");

    std::vector<std::pair<std::int64_t, double>> out;
    out.reserve(interval_counts.size());
    for (const std::int64_t n : interval_counts) {
        QuadratureScheme s = base;
        s.intervals = n;
        out.emplace_back(n, integrate_product(spectrum, dist, s).value);
    }
    return out;
}

}  // namespace srm
