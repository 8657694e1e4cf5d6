#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace srm {

enum class DistFamily {
    StandardNormal,
    Cauchy,
    StandardUniform,
    Beta,
    GumbelMin,
    Empirical,
};

/// A loss distribution seen through its quantile function q_p.
///
/// The analytic families are immutable value types; `scaled_shifted`
/// returns a copy whose quantile function is scale*q_p + shift, which is
/// what the translation/homogeneity properties and the shifted-derivative
/// machinery operate on. Empirical distributions keep their ascending
/// order statistics and apply transforms to the samples directly so the
/// discrete weighted sums stay exact.
class LossDistribution {
public:
    static LossDistribution standard_normal();
    static LossDistribution cauchy();
    static LossDistribution standard_uniform();
    static LossDistribution beta(double alpha, double beta);
    static LossDistribution gumbel_min();
    static LossDistribution from_samples(std::vector<double> losses);

    DistFamily family() const { return family_; }
    bool is_empirical() const { return family_ == DistFamily::Empirical; }

    /// q_p for p in (0,1); throws std::domain_error outside.
    double quantile(double p) const;

    /// q_p extended to [0,1]: the endpoints return the support bounds
    /// (possibly +-infinity), which is the limit of q_p from inside.
    double quantile_extended(double p) const;

    /// F(x) for the analytic families; empirical samples are not
    /// supported (throws unsupported_operation).
    double cdf(double x) const;

    /// Mean loss; nullopt for the Cauchy, whose mean does not exist.
    std::optional<double> mean() const;

    double support_lower() const;
    double support_upper() const;

    /// Ascending order statistics; only valid for Empirical.
    const std::vector<double>& samples() const;

    /// Distribution with quantile function scale*q_p + shift, scale > 0.
    LossDistribution scaled_shifted(double scale, double shift) const;

    double beta_alpha() const { return beta_alpha_; }
    double beta_beta() const { return beta_beta_; }

    std::string label() const;

private:
    explicit LossDistribution(DistFamily family) : family_(family) {}

    double base_quantile(double p) const;
    double base_cdf(double x) const;

    DistFamily family_;
    double beta_alpha_ = 0.0;
    double beta_beta_ = 0.0;
    std::vector<double> samples_;
    double scale_ = 1.0;
    double shift_ = 0.0;
};

/// Reads one loss per line (ASCII decimal). A single non-numeric first
/// line is accepted as a header; any other non-numeric line is a
/// validation error naming the line number. Blank lines are skipped.
LossDistribution parse_losses(std::istream& in, const std::string& source_name);
LossDistribution read_losses_file(const std::string& path);

}  // namespace srm
