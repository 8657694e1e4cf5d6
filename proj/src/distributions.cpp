#include "srm/distributions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "srm/errors.hpp"
#include "srm/math.hpp"

namespace srm {

namespace {

constexpr double pi = 3.141592653589793;
constexpr double inf = std::numeric_limits<double>::infinity();

void require_probability_open(double p, const char* what) {
    if (!(p > 0.0 && p < 1.0)) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%s: p must lie in (0,1), got %g", what, p);
        throw std::domain_error(buf);
    }
}

}  // namespace

LossDistribution LossDistribution::standard_normal() {
    return LossDistribution(DistFamily::StandardNormal);
}

LossDistribution LossDistribution::cauchy() {
    return LossDistribution(DistFamily::Cauchy);
}

LossDistribution LossDistribution::standard_uniform() {
    return LossDistribution(DistFamily::StandardUniform);
}

LossDistribution LossDistribution::beta(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw std::domain_error("beta distribution: shape parameters must be positive and finite");
    LossDistribution d(DistFamily::Beta);
    d.beta_alpha_ = alpha;
    d.beta_beta_ = beta;
    return d;
}

LossDistribution LossDistribution::gumbel_min() {
    return LossDistribution(DistFamily::GumbelMin);
}

LossDistribution LossDistribution::from_samples(std::vector<double> losses) {
    if (losses.empty())
        throw std::invalid_argument("from_samples: losses must be non-empty");
    for (std::size_t i = 0; i < losses.size(); ++i) {
        if (!std::isfinite(losses[i])) {
            char buf[96];
            std::snprintf(buf, sizeof(buf), "from_samples: loss at index %zu is not finite", i);
            throw std::invalid_argument(buf);
        }
    }
    std::sort(losses.begin(), losses.end());
    LossDistribution d(DistFamily::Empirical);
    d.samples_ = std::move(losses);
    return d;
}

double LossDistribution::base_quantile(double p) const {
    switch (family_) {
        case DistFamily::StandardNormal:
            return math::normal_quantile(p);
        case DistFamily::Cauchy:
            // branch on the half so mirror probabilities hit tan at the
            // same argument
            return p >= 0.5 ? std::tan(pi * (p - 0.5)) : -std::tan(pi * (0.5 - p));
        case DistFamily::StandardUniform:
            return p;
        case DistFamily::Beta:
            return math::incomplete_beta_inverse(beta_alpha_, beta_beta_, p);
        case DistFamily::GumbelMin:
            return std::log(-std::log1p(-p));
        case DistFamily::Empirical: {
            const auto n = static_cast<double>(samples_.size());
            double t = p * n;
            auto i = static_cast<std::int64_t>(std::ceil(t));
            // p = i/n must select the i-th order statistic even when the
            // product lands an ulp above the integer.
            if (i >= 1 && static_cast<double>(i) - t > 1.0 - 1e-9) --i;
            if (i < 1) i = 1;
            if (i > static_cast<std::int64_t>(samples_.size()))
                i = static_cast<std::int64_t>(samples_.size());
            return samples_[static_cast<std::size_t>(i - 1)];
        }
    }
    throw std::logic_error("unreachable distribution family");
}

double LossDistribution::quantile(double p) const {
    require_probability_open(p, "quantile");
    if (family_ == DistFamily::Empirical) return base_quantile(p);
    return scale_ * base_quantile(p) + shift_;
}

double LossDistribution::quantile_extended(double p) const {
    if (p == 0.0) return support_lower();
    if (p == 1.0) return support_upper();
    return quantile(p);
}

double LossDistribution::base_cdf(double x) const {
    switch (family_) {
        case DistFamily::StandardNormal:
            return math::normal_cdf(x);
        case DistFamily::Cauchy:
            return std::atan(x) / pi + 0.5;
        case DistFamily::StandardUniform:
            return std::clamp(x, 0.0, 1.0);
        case DistFamily::Beta:
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 1.0;
            return math::regularized_incomplete_beta(beta_alpha_, beta_beta_, x);
        case DistFamily::GumbelMin:
            return -std::expm1(-std::exp(x));
        case DistFamily::Empirical:
            break;
    }
    throw std::logic_error("unreachable distribution family");
}

double LossDistribution::cdf(double x) const {
    if (family_ == DistFamily::Empirical)
        throw unsupported_operation("cdf: not provided for empirical samples");
    return base_cdf((x - shift_) / scale_);
}

std::optional<double> LossDistribution::mean() const {
    switch (family_) {
        case DistFamily::StandardNormal:
            return scale_ * 0.0 + shift_;
        case DistFamily::Cauchy:
            return std::nullopt;
        case DistFamily::StandardUniform:
            return scale_ * 0.5 + shift_;
        case DistFamily::Beta:
            return scale_ * (beta_alpha_ / (beta_alpha_ + beta_beta_)) + shift_;
        case DistFamily::GumbelMin:
            return scale_ * -math::euler_gamma + shift_;
        case DistFamily::Empirical: {
            const auto n = static_cast<std::int64_t>(samples_.size());
            const double s = math::pairwise_sum(0, n, [&](std::int64_t i) {
                return samples_[static_cast<std::size_t>(i)];
            });
            return s / static_cast<double>(n);
        }
    }
    throw std::logic_error("unreachable distribution family");
}

double LossDistribution::support_lower() const {
    switch (family_) {
        case DistFamily::StandardNormal:
        case DistFamily::Cauchy:
        case DistFamily::GumbelMin:
            return -inf;
        case DistFamily::StandardUniform:
        case DistFamily::Beta:
            return shift_;  // scale_*0 + shift_
        case DistFamily::Empirical:
            return samples_.front();
    }
    throw std::logic_error("unreachable distribution family");
}

double LossDistribution::support_upper() const {
    switch (family_) {
        case DistFamily::StandardNormal:
        case DistFamily::Cauchy:
        case DistFamily::GumbelMin:
            return inf;
        case DistFamily::StandardUniform:
        case DistFamily::Beta:
            return scale_ + shift_;
        case DistFamily::Empirical:
            return samples_.back();
    }
    throw std::logic_error("unreachable distribution family");
}

const std::vector<double>& LossDistribution::samples() const {
    if (family_ != DistFamily::Empirical)
        throw unsupported_operation("samples: only empirical distributions carry samples");
    return samples_;
}

LossDistribution LossDistribution::scaled_shifted(double scale, double shift) const {
    if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(shift))
        throw std::domain_error("scaled_shifted: scale must be positive and finite");
    if (family_ == DistFamily::Empirical) {
        std::vector<double> out(samples_.size());
        for (std::size_t i = 0; i < samples_.size(); ++i)
            out[i] = scale * samples_[i] + shift;
        return from_samples(std::move(out));
    }
    LossDistribution d = *this;
    d.scale_ = scale * scale_;
    d.shift_ = scale * shift_ + shift;
    return d;
}

std::string LossDistribution::label() const {
    std::string base;
    switch (family_) {
        case DistFamily::StandardNormal: base = "standard_normal"; break;
        case DistFamily::Cauchy:         base = "cauchy"; break;
        case DistFamily::StandardUniform: base = "standard_uniform"; break;
        case DistFamily::Beta: {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "beta(%g,%g)", beta_alpha_, beta_beta_);
            base = buf;
            break;
        }
        case DistFamily::GumbelMin:      base = "gumbel_min"; break;
        case DistFamily::Empirical: {
            char buf[48];
            std::snprintf(buf, sizeof(buf), "empirical(n=%zu)", samples_.size());
            base = buf;
            break;
        }
    }
    if (scale_ != 1.0 || shift_ != 0.0) {
        char buf[80];
        std::snprintf(buf, sizeof(buf), "%g*%s%+g", scale_, base.c_str(), shift_);
        return buf;
    }
    return base;
}

namespace {

bool parse_double(std::string_view token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

LossDistribution parse_losses(std::istream& in, const std::string& source_name) {
    std::vector<double> losses;
    std::string line;
    std::size_t line_no = 0;
    bool saw_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view token = trim(line);
        if (token.empty()) continue;
        double value = 0.0;
        if (!parse_double(token, value)) {
            if (line_no == 1 && !saw_data) continue;  // single header line
            std::ostringstream msg;
            msg << source_name << ":" << line_no << ": not a number: '" << token << "'";
            throw std::invalid_argument(msg.str());
        }
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg << source_name << ":" << line_no << ": loss value is not finite";
            throw std::invalid_argument(msg.str());
        }
        saw_data = true;
        losses.push_back(value);
    }
    if (losses.empty())
        throw std::invalid_argument(source_name + ": no loss values found");
    return LossDistribution::from_samples(std::move(losses));
}

LossDistribution read_losses_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open loss file: " + path);
    return parse_losses(in, path);
}

}  // namespace srm
