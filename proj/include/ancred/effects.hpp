#pragma once

#include <cstdint>

namespace ancred {

/// Effect estimate on an additive scale (e.g. log relative risk) with
/// its standard error.
struct EffectEstimate {
    double theta_hat = 0.0;
    double se = 1.0; ///< must be > 0
};

/// Equi-tailed confidence interval, symmetric around the point estimate
/// under the normal approximation.
struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95; ///< 1 - alpha, in (0,1)
};

/// Raw 2x2 counts: events / group size for treatment and control arms.
struct TwoByTwoTable {
    std::int64_t events_treat = 0;
    std::int64_t n_treat = 0;
    std::int64_t events_ctrl = 0;
    std::int64_t n_ctrl = 0;
};

/// Wald log-relative-risk estimate from a 2x2 table:
///   theta_hat = log[(a/n1)/(b/n2)]
///   se        = sqrt(1/a - 1/n1 + 1/b - 1/n2)
/// Throws degenerate_table_error if any cell (events or non-events in
/// either arm) is zero; no continuity correction is applied.
EffectEstimate from_two_by_two(const TwoByTwoTable& table);

/// Midpoint and half-width of a symmetric interval:
///   theta_hat = (L+U)/2,  se = (U-L) / (2 z_{alpha/2}).
EffectEstimate ci_to_estimate(const ConfidenceInterval& ci);

/// (theta_hat -+ z_{alpha/2} se, level); inverse of ci_to_estimate at
/// matching levels.
ConfidenceInterval estimate_to_ci(const EffectEstimate& est, double level);

/// t = theta_hat / se.
double test_statistic(const EffectEstimate& est);

/// Two-sided p-value for significance, 2*(1 - Phi(|t|)).
double p_value(const EffectEstimate& est);

namespace detail {
void validate(const EffectEstimate& est);
void validate(const ConfidenceInterval& ci);
void validate_level(double level);
} // namespace detail

} // namespace ancred
