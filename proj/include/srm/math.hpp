#pragma once

#include <cstdint>

namespace srm::math {

inline constexpr double euler_gamma = 0.5772156649015329;

/// Standard normal CDF, accurate in both tails (erfc based).
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Inverse standard normal CDF for p in (0,1).
///
/// Rational approximation (Acklam) polished with one Halley step against
/// normal_cdf; absolute error is far below the 1e-9 the library promises.
double normal_quantile(double p);

/// Regularized incomplete beta function I_x(a,b), continued-fraction
/// evaluation. a,b > 0, x in [0,1].
double regularized_incomplete_beta(double a, double b, double x);

/// Inverse of I_x(a,b) in x: bracketed Newton with bisection fallback,
/// converges to |dx| <= 1e-12.
double incomplete_beta_inverse(double a, double b, double p);

/// Sum of term(i) for i in [lo, hi), accumulated by recursive halving so
/// the result is deterministic and cancellation-resistant regardless of n.
template <class F>
double pairwise_sum(std::int64_t lo, std::int64_t hi, F&& term) {
    const std::int64_t n = hi - lo;
    if (n <= 64) {
        double s = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) s += term(i);
        return s;
    }
    const std::int64_t mid = lo + n / 2;
    return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

}  // namespace srm::math
