#pragma once

// Test-only oracles, kept independent of the library's quadrature paths:
// adaptive Simpson for integrals over R, plus small helpers shared by suites.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>

namespace oracles {

using cplx = std::complex<double>;

namespace detail {

template <typename F>
cplx simpson(const F& f, double a, double b, cplx fa, cplx fm, cplx fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
cplx adapt(const F& f, double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol,
           int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const cplx flm = f(lm), frm = f(rm);
    const cplx left = simpson(f, a, m, fa, flm, fm);
    const cplx right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adapt(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson on [a, b].
template <typename F>
cplx integrate(const F& f, double a, double b, double tol = 1e-12) {
    const double m = 0.5 * (a + b);
    const cplx fa = f(a), fm = f(m), fb = f(b);
    const cplx whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adapt(f, a, b, fa, fm, fb, whole, tol, 48);
}

/// Adaptive Simpson over the line, truncated where the integrand is tiny.
template <typename F>
cplx integrate_line(const F& f, double half_width = 64.0, double tol = 1e-12) {
    return integrate(f, -half_width, half_width, tol);
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

inline double rel_err(cplx got, cplx want) {
    return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

}  // namespace oracles
