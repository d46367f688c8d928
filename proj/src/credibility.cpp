#include "ancred/credibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ancred/errors.hpp"
#include "ancred/numerics.hpp"

namespace ancred {

namespace {

// Matthews derived his intrinsic-credibility rule from t = 1.272 z.
constexpr double kMatthewsShrinkage = 1.272;

double z_from_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("significance level alpha must be in (0,1)");
    }
    return -std_normal_quantile(alpha / 2.0);
}

double two_sided_p(double t) {
    return 2.0 * std_normal_cdf(-std::fabs(t));
}

} // namespace

double sceptical_limit(const ConfidenceInterval& ci) {
    detail::validate(ci);
    double lower = ci.lower;
    double upper = ci.upper;
    if (upper <= 0.0) { // mirror negative intervals
        const double l = lower;
        lower = -upper;
        upper = -l;
    }
    if (!(lower > 0.0)) {
        throw not_significant_error(
            "sceptical_limit: interval covers zero, sceptical prior undefined");
    }
    const double width = upper - lower;
    return width * width / (4.0 * std::sqrt(upper * lower));
}

double sceptical_variance(const EffectEstimate& est, double alpha) {
    detail::validate(est);
    const double z = z_from_alpha(alpha);
    const double t = est.theta_hat / est.se;
    const double ratio = (t * t) / (z * z);
    if (!(ratio > 1.0)) {
        throw not_significant_error(
            "sceptical_variance: result not significant at the requested level");
    }
    return est.se * est.se / (ratio - 1.0);
}

ScepticalPrior make_sceptical_prior(const EffectEstimate& est, double alpha) {
    const double tau2 = sceptical_variance(est, alpha);
    const double z = z_from_alpha(alpha);
    return ScepticalPrior{
        .variance = tau2,
        .level = 1.0 - alpha,
        .sceptical_limit = z * std::sqrt(tau2),
    };
}

TestResult box_test(const EffectEstimate& external, const ScepticalPrior& prior) {
    detail::validate(external);
    if (!(prior.variance > 0.0)) {
        throw std::invalid_argument("box_test: prior variance must be > 0");
    }
    const double stat =
        external.theta_hat / std::sqrt(prior.variance + external.se * external.se);
    return TestResult{.statistic = stat, .tail = chi_sq1_tail(stat * stat)};
}

TestResult compatibility_test(const EffectEstimate& internal,
                              const EffectEstimate& external) {
    detail::validate(internal);
    detail::validate(external);
    const double stat = (external.theta_hat - internal.theta_hat) /
                        std::sqrt(internal.se * internal.se + external.se * external.se);
    return TestResult{.statistic = stat, .tail = chi_sq1_tail(stat * stat)};
}

double extrinsic_p(double t, double t0, double c) {
    if (!std::isfinite(t) || !std::isfinite(t0) || !std::isfinite(c)) {
        throw std::invalid_argument("extrinsic_p: non-finite input");
    }
    if (t == 0.0 || t0 == 0.0) {
        throw no_solution_error("extrinsic_p: no root below 1 when t or t0 is zero");
    }
    if (!(c > 0.0)) {
        throw std::domain_error("extrinsic_p: variance ratio c must be > 0");
    }
    const double t2 = t * t;
    const double t02 = t0 * t0;
    const double pmax = std::max(two_sided_p(t), two_sided_p(t0));

    // The objective vanishes at alpha = max(p, p0), so the bracket is
    // opened strictly to its right.
    const double lo = pmax * (1.0 + 1e-12);
    const double hi = 1.0 - 1e-12;
    if (!(lo < hi)) {
        // Root squeezed against 1 beyond double resolution.
        return std::min(std::nextafter(1.0, 0.0), std::nextafter(pmax, 2.0));
    }

    const auto objective = [&](double alpha) {
        const double z = -std_normal_quantile(alpha / 2.0);
        const double z2 = z * z;
        return (t02 / z2 - 1.0) * (t2 / z2 - 1.0) - c;
    };
    // For very small c (or a near-zero statistic paired with a large
    // one) the root sits within 1e-12 of max(p, p0), at or below the
    // opened endpoint; lo itself is then the answer to tolerance.
    if (objective(lo) >= 0.0) return lo;
    return find_root_monotone(objective, lo, hi, Tolerance{.abs_tol = 1e-10});
}

bool matthews_extrinsic_credible(double t, double t0, double c, double alpha) {
    if (!std::isfinite(t) || !std::isfinite(t0)) {
        throw std::invalid_argument("matthews_extrinsic_credible: non-finite statistic");
    }
    if (!(c > 0.0)) {
        throw std::domain_error("matthews_extrinsic_credible: c must be > 0");
    }
    const double z = z_from_alpha(alpha);
    const double z2 = z * z;
    if (!(t * t > z2)) {
        throw not_significant_error(
            "matthews_extrinsic_credible: internal result not significant at alpha");
    }
    return (t0 * t0 / z2) * (t * t / z2 - 1.0) >= c;
}

double intrinsic_threshold(double alpha) {
    const double z = z_from_alpha(alpha);
    return 2.0 * std_normal_cdf(-std::numbers::sqrt2 * z);
}

double matthews_intrinsic_threshold(double alpha) {
    const double z = z_from_alpha(alpha);
    return 2.0 * std_normal_cdf(-kMatthewsShrinkage * z);
}

double intrinsic_p(double p) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::domain_error("intrinsic_p: p must be in (0,1]");
    }
    if (p == 1.0) return 1.0;
    const double t = -std_normal_quantile(p / 2.0);
    return 2.0 * std_normal_cdf(-t / std::numbers::sqrt2);
}

RatioVerdict credibility_ratio_credible(const ConfidenceInterval& ci) {
    detail::validate(ci);
    double ratio = 0.0;
    if (ci.lower > 0.0) {
        ratio = ci.upper / ci.lower;
    } else if (ci.upper < 0.0) {
        ratio = ci.lower / ci.upper;
    } else {
        throw not_significant_error(
            "credibility_ratio_credible: interval covers zero, ratio not positive");
    }
    return RatioVerdict{.ratio = ratio, .credible = ratio <= credibility_ratio_bound()};
}

bool intrinsically_credible_by_variance(const EffectEstimate& est, double alpha) {
    detail::validate(est);
    const double sigma2 = est.se * est.se;
    try {
        return sceptical_variance(est, alpha) <= sigma2;
    } catch (const not_significant_error&) {
        return false;
    }
}

CredibilityReport credibility_report(const EffectEstimate& est, double level) {
    detail::validate(est);
    detail::validate_level(level);
    const double alpha = 1.0 - level;
    CredibilityReport report;
    report.level = level;
    report.p = p_value(est);
    report.p_intrinsic = intrinsic_p(report.p);
    report.intrinsically_credible = intrinsically_credible_by_variance(est, alpha);
    const ConfidenceInterval ci = estimate_to_ci(est, level);
    if (ci.lower > 0.0 || ci.upper < 0.0) {
        const RatioVerdict verdict = credibility_ratio_credible(ci);
        report.credibility_ratio = verdict.ratio;
        report.ratio_credible = verdict.credible;
    }
    return report;
}

CredibilityReport credibility_report(double p, double level) {
    if (!(p > 0.0 && p <= 1.0)) {
        throw std::domain_error("credibility_report: p must be in (0,1]");
    }
    detail::validate_level(level);
    CredibilityReport report;
    report.level = level;
    report.p = p;
    report.p_intrinsic = intrinsic_p(p);
    return report;
}

} // namespace ancred
