#pragma once

#include <cmath>
#include <concepts>
#include <stdexcept>

#include "ancred/errors.hpp"

namespace ancred {

/// Convergence control for the bracketing root finder.
struct Tolerance {
    double abs_tol = 1e-10; ///< bracket width at which to stop
    int max_iter = 200;
};

/// Standard normal CDF Phi(x), evaluated through erfc so that the far
/// tails keep full relative accuracy.  Absolute error <= 1e-12.
double std_normal_cdf(double x);

/// Inverse of std_normal_cdf on (0,1).  Closed-form approximation
/// refined by Halley steps against the implemented CDF, so the
/// round-trip std_normal_cdf(std_normal_quantile(p)) = p holds to 1e-10.
double std_normal_quantile(double p);

/// Standard normal density (2*pi)^(-1/2) exp(-x^2/2).
double std_normal_pdf(double x);

/// Upper tail Pr(chi^2(1) >= q) = 2*(1 - Phi(sqrt(q))), built directly
/// on std_normal_cdf via its tail symmetry.
double chi_sq1_tail(double q);

/// Bisection on [lo, hi] for a continuous, strictly monotone f with a
/// sign change over the bracket.  Returns the final bracket midpoint
/// once the bracket width is <= tol.abs_tol.  Deterministic: repeated
/// calls with identical inputs are bit-identical.
///
/// Throws bracket_error if f(lo) and f(hi) share a sign, and
/// convergence_error if max_iter halvings do not reach the tolerance.
template <std::invocable<double> F>
double find_root_monotone(F&& f, double lo, double hi, Tolerance tol = {}) {
    if (!(tol.abs_tol > 0.0)) {
        throw std::invalid_argument("find_root_monotone: abs_tol must be > 0");
    }
    if (tol.max_iter < 1) {
        throw std::invalid_argument("find_root_monotone: max_iter must be >= 1");
    }
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw std::invalid_argument("find_root_monotone: need finite lo < hi");
    }

    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw bracket_error("find_root_monotone: no sign change on [lo, hi]");
    }

    const bool rising = fhi > 0.0;
    for (int i = 0; i < tol.max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol.abs_tol) return mid;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == rising) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw convergence_error("find_root_monotone: max_iter exceeded");
}

} // namespace ancred
