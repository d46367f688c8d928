// Independent reference implementations used only by tests.  They must
// stay decoupled from the library code paths they check: the CDF oracle
// runs in long double through erfcl, the quantile oracle is a plain
// bisection against that CDF, and the extrinsic p-value oracle solves
// the closed-form quadratic instead of iterating on alpha.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace oracles {

inline long double phi_cdf(long double x) {
    return 0.5L * erfcl(-x / 1.41421356237309504880168872420969808L);
}

inline long double phi_pdf(long double x) {
    return expl(-0.5L * x * x) / 2.50662827463100050241576528481104525L;
}

inline long double phi_quantile(long double p) {
    if (!(p > 0.0L && p < 1.0L)) {
        throw std::domain_error("oracle quantile: p outside (0,1)");
    }
    long double lo = -45.0L, hi = 45.0L;
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if (phi_cdf(mid) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5L * (lo + hi);
}

inline double two_sided_p(double t) {
    return static_cast<double>(2.0L * phi_cdf(-fabsl(t)));
}

// Composite Simpson quadrature on [a, b] with n subintervals (n even).
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        sum += f(a + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    }
    return sum * h / 3.0;
}

// Closed-form extrinsic p-value: with u = z_{alpha/2}^2, the defining
// equality (t0^2/u - 1)(t^2/u - 1) = c becomes
//   (1 - c) u^2 - (t0^2 + t^2) u + t0^2 t^2 = 0,
// whose admissible root satisfies 0 < u < min(t^2, t0^2).
inline double extrinsic_p_closed_form(double t, double t0, double c) {
    const long double t2 = static_cast<long double>(t) * t;
    const long double t02 = static_cast<long double>(t0) * t0;
    long double u;
    if (c == 1.0) {
        u = t02 * t2 / (t02 + t2);
    } else {
        const long double a = 1.0L - static_cast<long double>(c);
        const long double b = -(t02 + t2);
        const long double q = t02 * t2;
        const long double disc = sqrtl(b * b - 4.0L * a * q);
        const long double u1 = (-b - disc) / (2.0L * a);
        const long double u2 = (-b + disc) / (2.0L * a);
        const long double umax = t2 < t02 ? t2 : t02;
        u = (u1 > 0.0L && u1 < umax) ? u1 : u2;
        if (!(u > 0.0L && u < umax)) {
            throw std::domain_error("oracle extrinsic p: no admissible root");
        }
    }
    return static_cast<double>(2.0L * phi_cdf(-sqrtl(u)));
}

} // namespace oracles
