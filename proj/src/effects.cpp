#include "ancred/effects.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ancred/errors.hpp"
#include "ancred/numerics.hpp"

namespace ancred {

namespace detail {

void validate(const EffectEstimate& est) {
    if (!std::isfinite(est.theta_hat) || !std::isfinite(est.se)) {
        throw std::invalid_argument("EffectEstimate: non-finite field");
    }
    if (!(est.se > 0.0)) {
        throw std::invalid_argument("EffectEstimate: se must be > 0");
    }
}

void validate(const ConfidenceInterval& ci) {
    if (!std::isfinite(ci.lower) || !std::isfinite(ci.upper)) {
        throw std::invalid_argument("ConfidenceInterval: non-finite limit");
    }
    if (!(ci.lower < ci.upper)) {
        throw std::invalid_argument("ConfidenceInterval: need lower < upper");
    }
    validate_level(ci.level);
}

void validate_level(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw std::domain_error("confidence level must be in (0,1)");
    }
}

} // namespace detail

namespace {

void require_nonzero_cells(const TwoByTwoTable& t) {
    if (t.n_treat <= 0 || t.n_ctrl <= 0) {
        throw std::invalid_argument("TwoByTwoTable: group sizes must be positive");
    }
    if (t.events_treat < 0 || t.events_ctrl < 0 || t.events_treat > t.n_treat ||
        t.events_ctrl > t.n_ctrl) {
        throw std::invalid_argument("TwoByTwoTable: events must lie in [0, group size]");
    }
    if (t.events_treat == 0) {
        throw degenerate_table_error("degenerate table: zero events in treatment group");
    }
    if (t.events_treat == t.n_treat) {
        throw degenerate_table_error("degenerate table: zero non-events in treatment group");
    }
    if (t.events_ctrl == 0) {
        throw degenerate_table_error("degenerate table: zero events in control group");
    }
    if (t.events_ctrl == t.n_ctrl) {
        throw degenerate_table_error("degenerate table: zero non-events in control group");
    }
}

} // namespace

EffectEstimate from_two_by_two(const TwoByTwoTable& table) {
    require_nonzero_cells(table);
    const double a = static_cast<double>(table.events_treat);
    const double n1 = static_cast<double>(table.n_treat);
    const double b = static_cast<double>(table.events_ctrl);
    const double n2 = static_cast<double>(table.n_ctrl);
    // grouped so that swapping the arms preserves se bit-for-bit
    return EffectEstimate{
        .theta_hat = std::log((a / n1) / (b / n2)),
        .se = std::sqrt((1.0 / a + 1.0 / b) - (1.0 / n1 + 1.0 / n2)),
    };
}

EffectEstimate ci_to_estimate(const ConfidenceInterval& ci) {
    detail::validate(ci);
    const double alpha = 1.0 - ci.level;
    const double z = -std_normal_quantile(alpha / 2.0);
    return EffectEstimate{
        .theta_hat = 0.5 * (ci.lower + ci.upper),
        .se = (ci.upper - ci.lower) / (2.0 * z),
    };
}

ConfidenceInterval estimate_to_ci(const EffectEstimate& est, double level) {
    detail::validate(est);
    detail::validate_level(level);
    const double z = -std_normal_quantile((1.0 - level) / 2.0);
    return ConfidenceInterval{
        .lower = est.theta_hat - z * est.se,
        .upper = est.theta_hat + z * est.se,
        .level = level,
    };
}

double test_statistic(const EffectEstimate& est) {
    detail::validate(est);
    return est.theta_hat / est.se;
}

double p_value(const EffectEstimate& est) {
    detail::validate(est);
    const double t = est.theta_hat / est.se;
    return 2.0 * std_normal_cdf(-std::fabs(t));
}

} // namespace ancred
