#pragma once

#include <cmath>

#include "stieltjes/bernoulli.hpp"
#include "stieltjes/big_complex.hpp"
#include "stieltjes/precision.hpp"

namespace stieltjes {

inline bool is_nonpositive_integer(const BigReal& x) {
    return mpfr_integer_p(x.raw()) != 0 && x.sign() <= 0;
}

inline bool is_nonpositive_integer(const BigComplex& z) {
    return z.im.is_zero() && is_nonpositive_integer(z.re);
}

namespace detail {

// Smallest |z| at which the Stirling series reaches `wb` bits even for
// arguments close to the imaginary axis (|arg z| up to pi/2).
inline double stirling_radius(long wb) { return 0.17 * static_cast<double>(wb) + 10.0; }

// log Gamma(z) for Re z >= 0.5 and |z| >= stirling_radius(wb):
//   (z - 1/2) log z - z + log(2 pi)/2 + sum B_{2k} / ((2k)(2k-1) z^{2k-1})
inline BigComplex loggamma_series(const BigComplex& z, long wb) {
    BigComplex lg = (z - BigReal::from_double(0.5, wb)) * log(z) - z;
    lg.re += log(const_pi(wb) * 2L) / 2;
    BigComplex zinv = 1L / z;
    BigComplex zinv2 = zinv * zinv;
    BigComplex w = zinv;
    double tol_log10 = -0.30103 * static_cast<double>(wb) - 3;
    double prev = HUGE_VAL;
    long kmax = 32 + wb;
    for (long k = 1; k <= kmax; ++k) {
        mpq_class c = bernoulli(2 * static_cast<unsigned long>(k));
        c /= mpq_class(2 * k * (2 * k - 1));
        BigComplex term = w * BigReal::from_mpq(c, wb);
        lg = lg + term;
        double mag = abs(term).log10_abs();
        if (mag < tol_log10) return lg;
        if (mag > prev)
            throw convergence_error("loggamma: asymptotic series diverging before tolerance");
        prev = mag;
        w = w * zinv2;
    }
    throw convergence_error("loggamma: series did not reach tolerance");
}

// Shift count so that |z + m| is inside the asymptotic regime.
inline long stirling_shift(const BigComplex& z, long wb) {
    double r = stirling_radius(wb);
    double az = std::hypot(z.re.to_double(), z.im.to_double());
    if (az >= r) return 0;
    double need = r - z.re.to_double();
    return need <= 0 ? 0 : static_cast<long>(std::ceil(need));
}

BigComplex gamma_positive(const BigComplex& z, long wb);

inline BigComplex gamma_reflect(const BigComplex& z, long wb) {
    // Gamma(z) = pi / (sin(pi z) Gamma(1 - z))
    BigReal pi = const_pi(wb);
    BigComplex s = sin(BigComplex{z.re * pi, z.im * pi});
    if (s.is_zero()) throw pole_error("gamma: pole at non-positive integer",
                                      z.re.to_double() < -1e17 ? 0 : z.re.to_long());
    return BigComplex(pi) / (s * gamma_positive(1L - z, wb));
}

inline BigComplex gamma_positive(const BigComplex& z, long wb) {
    long m = stirling_shift(z, wb);
    BigComplex zs = z + m;
    BigComplex g = exp(loggamma_series(zs, wb));
    if (m > 0) {
        BigComplex prod = z;
        for (long j = 1; j < m; ++j) prod = prod * (z + j);
        g = g / prod;
    }
    return g;
}

} // namespace detail

// Gamma function for complex argument. Poles at the non-positive integers.
inline BigComplex gamma(const BigComplex& z, const PrecisionContext& ctx) {
    long wb = ctx.bits() + 24;
    if (is_nonpositive_integer(z))
        throw pole_error("gamma: pole at non-positive integer", z.re.to_long());
    if (z.im.is_zero()) {
        BigReal r(wb);
        mpfr_gamma(r.raw(), z.re.at_prec(wb).raw(), MPFR_RNDN);
        return BigComplex(std::move(r));
    }
    BigComplex zw{z.re.at_prec(wb), z.im.at_prec(wb)};
    BigComplex g = z.re.to_double() < 0.5 ? detail::gamma_reflect(zw, wb)
                                          : detail::gamma_positive(zw, wb);
    g.check_finite("gamma");
    return g;
}

inline BigComplex gamma(const BigReal& x, const PrecisionContext& ctx) {
    return gamma(BigComplex(x), ctx);
}

namespace detail {

// psi(z) asymptotic: log z - 1/(2z) - sum B_{2k}/(2k) z^{-2k}
inline BigComplex digamma_series(const BigComplex& z, long wb) {
    BigComplex r = log(z);
    BigComplex zinv = 1L / z;
    r = r - zinv / 2;
    BigComplex zinv2 = zinv * zinv;
    BigComplex w = zinv2;
    double tol_log10 = -0.30103 * static_cast<double>(wb) - 3;
    long kmax = 32 + wb;
    for (long k = 1; k <= kmax; ++k) {
        mpq_class c = bernoulli(2 * static_cast<unsigned long>(k));
        c /= mpq_class(2 * k);
        BigComplex term = w * BigReal::from_mpq(c, wb);
        r = r - term;
        if (abs(term).log10_abs() < tol_log10) return r;
        w = w * zinv2;
    }
    throw convergence_error("digamma: series did not reach tolerance");
}

// psi'(z) asymptotic: 1/z + 1/(2z^2) + sum B_{2k} z^{-2k-1}
inline BigComplex trigamma_series(const BigComplex& z, long wb) {
    BigComplex zinv = 1L / z;
    BigComplex zinv2 = zinv * zinv;
    BigComplex r = zinv + zinv2 / 2;
    BigComplex w = zinv * zinv2;
    double tol_log10 = -0.30103 * static_cast<double>(wb) - 3;
    long kmax = 32 + wb;
    for (long k = 1; k <= kmax; ++k) {
        BigComplex term = w * BigReal::from_mpq(bernoulli(2 * static_cast<unsigned long>(k)), wb);
        r = r + term;
        if (abs(term).log10_abs() < tol_log10) return r;
        w = w * zinv2;
    }
    throw convergence_error("trigamma: series did not reach tolerance");
}

template <class Series, class ShiftTerm>
BigComplex polygamma_shifted(const BigComplex& z, long wb, Series series, ShiftTerm shift_term) {
    long m = stirling_shift(z, wb);
    BigComplex r = series(z + m, wb);
    for (long j = 0; j < m; ++j)
        r = r + shift_term(z + j);
    return r;
}

} // namespace detail

// Digamma for complex argument; poles at the non-positive integers.
inline BigComplex digamma(const BigComplex& z, const PrecisionContext& ctx) {
    long wb = ctx.bits() + 24;
    if (is_nonpositive_integer(z))
        throw pole_error("digamma: pole at non-positive integer", z.re.to_long());
    if (z.im.is_zero() && z.re.sign() > 0) {
        BigReal r(wb);
        mpfr_digamma(r.raw(), z.re.at_prec(wb).raw(), MPFR_RNDN);
        return BigComplex(std::move(r));
    }
    BigComplex zw{z.re.at_prec(wb), z.im.at_prec(wb)};
    if (zw.re.to_double() < 0.5) {
        // psi(z) = psi(1-z) - pi cot(pi z)
        BigReal pi = const_pi(wb);
        BigComplex pz{zw.re * pi, zw.im * pi};
        BigComplex cot = cos(pz) / sin(pz);
        return digamma(1L - zw, ctx) - BigComplex(pi) * cot;
    }
    BigComplex r = detail::polygamma_shifted(
        zw, wb, detail::digamma_series,
        [](const BigComplex& u) { return -(1L / u); });
    r.check_finite("digamma");
    return r;
}

// Trigamma (first derivative of digamma) for complex argument.
inline BigComplex trigamma(const BigComplex& z, const PrecisionContext& ctx) {
    long wb = ctx.bits() + 24;
    if (is_nonpositive_integer(z))
        throw pole_error("trigamma: pole at non-positive integer", z.re.to_long());
    BigComplex zw{z.re.at_prec(wb), z.im.at_prec(wb)};
    if (zw.re.to_double() < 0.5) {
        // psi'(z) = pi^2 / sin^2(pi z) - psi'(1 - z)
        BigReal pi = const_pi(wb);
        BigComplex s = sin(BigComplex{zw.re * pi, zw.im * pi});
        return BigComplex(pi * pi) / (s * s) - trigamma(1L - zw, ctx);
    }
    BigComplex r = detail::polygamma_shifted(
        zw, wb, detail::trigamma_series,
        [](const BigComplex& u) { return 1L / (u * u); });
    r.check_finite("trigamma");
    return r;
}

} // namespace stieltjes
