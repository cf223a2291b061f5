#pragma once

#include <cmath>

#include "stieltjes/big_complex.hpp"
#include "stieltjes/precision.hpp"

namespace stieltjes {

// Lambert W: solution of W e^W = z. Branch 0 (principal, W(0) = 0) and
// branch -1 are supported. Halley iteration from an asymptotic-series seed;
// the seed keeps the step count O(1) even for astronomically large |z|.
inline BigComplex lambert_w(const BigComplex& z, int branch, const PrecisionContext& ctx) {
    if (branch != 0 && branch != -1)
        throw domain_error("lambert_w: only branches 0 and -1 are implemented");
    long wb = ctx.bits() + 16;
    BigComplex zw{z.re.at_prec(wb), z.im.at_prec(wb)};
    if (zw.is_zero()) {
        if (branch == 0) return BigComplex(wb);
        throw domain_error("lambert_w: branch -1 has a logarithmic singularity at 0");
    }

    double az = std::pow(10.0, abs(zw).log10_abs());
    BigComplex w(wb);
    if (branch == -1 && zw.is_real() && zw.re.sign() < 0) {
        // real branch -1 on (-1/e, 0): w ~ ln(-z) - ln(-ln(-z))
        BigReal l1 = log(-zw.re);
        w = BigComplex(l1 - log(-l1));
    } else if (branch == -1) {
        BigComplex l1 = log(zw) - mul_i(BigComplex(const_pi(wb) * 2));
        w = l1 - log(l1);
    } else if (az > 3.0) {
        // W ~ L1 - L2 + L2/L1 with L1 = log z, L2 = log L1
        BigComplex l1 = log(zw);
        BigComplex l2 = log(l1);
        w = l1 - l2 + l2 / l1;
    } else if (az < 0.25) {
        // Maclaurin seed W = z - z^2 + (3/2) z^3 - ...
        w = zw * (1L + zw * (BigComplex::from_long(-1, 0, wb) + zw * BigReal::from_double(1.5, wb)));
    } else {
        w = log(zw + 1L);
    }

    double tol_log10 = abs(zw).log10_abs() - 0.301 * static_cast<double>(ctx.bits()) + 1;
    for (int it = 0; it < 200; ++it) {
        BigComplex ew = exp(w);
        BigComplex fvalue = w * ew - zw;
        if (abs(fvalue).log10_abs() <= tol_log10) return w;
        BigComplex wp1 = w + 1L;
        if (wp1.is_zero())
            throw convergence_error("lambert_w: iteration hit the branch point w = -1");
        BigComplex denom = ew * wp1 - (w + 2L) * fvalue / (wp1 * 2L);
        w = w - fvalue / denom;
    }
    throw convergence_error("lambert_w: Halley iteration did not converge; last iterate " +
                            w.to_string(12));
}

} // namespace stieltjes
