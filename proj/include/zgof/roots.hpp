#pragma once

#include <cmath>
#include <utility>

#include "zgof/errors.hpp"

namespace zgof {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Brent's method on a sign-changing bracket [a, b].
///
/// Stops when |f(x)| <= f_tol or the bracket is narrower than x_tol.
template <typename F>
RootResult brent_root(F&& f, double a, double b, double fa, double fb, double f_tol, double x_tol = 0.0,
                      int max_iter = 200) {
    if (fa * fb > 0.0) {
        throw BracketError("brent_root: root not bracketed");
    }
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a, e = d;
    RootResult out;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * x_tol;
        const double xm = 0.5 * (c - b);
        out = {b, fb, iter, false};
        if (std::abs(fb) <= f_tol || std::abs(xm) <= tol1 || fb == 0.0) {
            out.converged = true;
            return out;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    out = {b, fb, max_iter, std::abs(fb) <= f_tol};
    return out;
}

} // namespace zgof
