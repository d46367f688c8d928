#pragma once

#include <numbers>
#include <optional>

#include "ancred/effects.hpp"

namespace ancred {

/// Zero-mean normal prior that is just sceptical enough to drag a
/// significant result back to the significance boundary at its level.
struct ScepticalPrior {
    double variance = 0.0;        ///< tau^2, > 0
    double level = 0.95;          ///< 1 - alpha used in the derivation
    double sceptical_limit = 0.0; ///< S = z_{alpha/2} * tau; prior credible interval is [-S, S]
};

/// Statistic/tail pair for the prior-predictive and compatibility checks.
struct TestResult {
    double statistic = 0.0;
    double tail = 1.0;
};

/// Ratio of interval limits and the verdict against the closed-form bound.
struct RatioVerdict {
    double ratio = 0.0;
    bool credible = false;
};

/// Bundled credibility outputs for one study (extrinsic fields are
/// filled in only when external evidence is supplied).
struct CredibilityReport {
    double level = 0.95; ///< working confidence level
    double p = 1.0;
    double p_intrinsic = 1.0;
    std::optional<double> p_extrinsic;
    std::optional<double> p_box;
    std::optional<bool> intrinsically_credible; ///< tau^2 <= sigma^2 verdict at `level`
    std::optional<double> credibility_ratio;
    std::optional<bool> ratio_credible;
};

/// Upper bound on the credibility ratio for an intrinsically credible
/// interval: 3 + 2*sqrt(2) ~= 5.828.
constexpr double credibility_ratio_bound() {
    return 3.0 + 2.0 * std::numbers::sqrt2;
}

/// Half-width S = (U-L)^2 / (4 sqrt(UL)) of the sceptical prior's
/// credible interval at the interval's own level.  Negative intervals
/// are mirrored to (-U, -L).  Throws not_significant_error when the
/// interval covers zero.
double sceptical_limit(const ConfidenceInterval& ci);

/// Sceptical prior variance tau^2 = sigma^2 / (t^2/z^2 - 1) at level
/// 1 - alpha.  Requires t^2 > z^2 (significance at alpha).
double sceptical_variance(const EffectEstimate& est, double alpha);

/// Convenience bundle of sceptical_variance and the matching limit
/// S = z_{alpha/2} * tau.
ScepticalPrior make_sceptical_prior(const EffectEstimate& est, double alpha);

/// Prior-predictive conflict check between a sceptical prior and
/// external data: statistic theta0 / sqrt(tau^2 + sigma0^2), tail from
/// chi^2(1).  Small tails signal prior-data conflict.
TestResult box_test(const EffectEstimate& external, const ScepticalPrior& prior);

/// Plain two-study compatibility check,
/// (theta0 - theta) / sqrt(sigma^2 + sigma0^2), tail from chi^2(1).
TestResult compatibility_test(const EffectEstimate& internal,
                              const EffectEstimate& external);

/// p-value for extrinsic credibility: the alpha solving
///   (t0^2/z^2 - 1)(t^2/z^2 - 1) = c,   z = z_{alpha/2},
/// located by bisection on alpha in (max(p, p0), 1).  Always exceeds
/// both two-sided p-values.  Throws no_solution_error when t or t0 is
/// exactly zero (no root below 1 exists).
double extrinsic_p(double t, double t0, double c);

/// Original threshold-style extrinsic check,
///   (t0^2/z^2)(t^2/z^2 - 1) >= c,
/// which can fire without external significance when c < 1.  Requires
/// the internal result significant at alpha.
bool matthews_extrinsic_credible(double t, double t0, double c, double alpha);

/// Threshold on the ordinary two-sided p-value that makes a result
/// intrinsically credible at level alpha: 2{1 - Phi(sqrt(2) z_{alpha/2})}.
double intrinsic_threshold(double alpha);

/// Matthews' variant of the threshold, 2{1 - Phi(1.272 z_{alpha/2})}.
double matthews_intrinsic_threshold(double alpha);

/// p-value for intrinsic credibility as a calibration of the ordinary
/// p-value: p_I = 2[1 - Phi(t/sqrt(2))] with t = Phi^{-1}(1 - p/2).
double intrinsic_p(double p);

/// Ratio of interval limits (U/L, or L/U when both are negative) and
/// whether it clears the closed-form bound 3 + 2*sqrt(2).
RatioVerdict credibility_ratio_credible(const ConfidenceInterval& ci);

/// Intrinsic credibility via the variance route: true iff the result is
/// significant at alpha and tau^2 <= sigma^2.  Non-significant input
/// returns false (no sceptical prior exists).
bool intrinsically_credible_by_variance(const EffectEstimate& est, double alpha);

/// Assemble the per-study report at a working level: p, p_I, the
/// tau^2 <= sigma^2 verdict, and the ratio verdict when significant.
CredibilityReport credibility_report(const EffectEstimate& est, double level);

/// Report for a bare p-value (no estimate, so no prior or ratio fields).
CredibilityReport credibility_report(double p, double level);

} // namespace ancred
