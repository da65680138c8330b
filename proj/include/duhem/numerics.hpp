#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "duhem/errors.hpp"

namespace duhem {

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
/// Throws QuadratureFailure when `max_depth` bisections do not suffice.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-10, int max_depth = 60);

/// Bisection root of a continuous function on [lo, hi]; requires
/// phi(lo) and phi(hi) to have opposite (or zero) signs. Stops when the
/// bracket width falls below `xtol` plus a few ulps of the endpoint scale,
/// or when an exact zero is hit.
double bisect_root(const std::function<double(double)>& phi, double lo,
                   double hi, double xtol = 0.0);

/// Golden-section minimizer of a scalar function on [lo, hi]; returns the
/// abscissa of the smallest value found once the bracket width is below
/// `xtol`. The function need not be unimodal on the full line; callers are
/// expected to localize the minimum first.
double golden_section_min(const std::function<double(double)>& f, double lo,
                          double hi, double xtol = 1e-12);

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol, int max_depth) {
    struct Rec {
        const std::function<double(double)>& f;
        int max_depth;

        double run(double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) const {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m);
            const double rm = 0.5 * (m + b);
            const double flm = f(lm);
            const double frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            const double delta = left + right - whole;
            if (std::fabs(delta) <= 15.0 * tol) {
                return left + right + delta / 15.0;
            }
            if (depth >= max_depth) {
                throw QuadratureFailure("adaptive Simpson exceeded depth cap");
            }
            return run(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
                   run(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
        }
    };
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Rec{f, max_depth}.run(a, b, fa, fm, fb, whole, tol, 0);
}

inline double bisect_root(const std::function<double(double)>& phi, double lo,
                          double hi, double xtol) {
    double flo = phi(lo);
    double fhi = phi(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw BracketFailure("bisect_root: no sign change on the bracket");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at ulp resolution
        const double fmid = phi(mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if (hi - lo <= xtol) break;
    }
    return 0.5 * (lo + hi);
}

inline double golden_section_min(const std::function<double(double)>& f,
                                 double lo, double hi, double xtol) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > xtol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
        if (x1 >= x2) break;  // interval exhausted at double resolution
    }
    return f1 <= f2 ? x1 : x2;
}

}  // namespace duhem
