#pragma once

#include <string>

#include "stieltjes/lambert_w.hpp"
#include "stieltjes/norlund_rice.hpp"

namespace stieltjes {

enum class Branch { plus, minus };

// A saddle of the log-integrand. `residual` is |d omega/ds| at `location`
// under the exact saddle equation (full zeta terms).
struct SaddlePoint {
    long n_or_k = 0;
    mpq_class epsilon;
    Branch branch = Branch::plus;
    BigComplex location;
    BigReal residual;
};

// p_k(s,eps) = psi(s) - psi(s+k+1)
//              + eps/2 (psi(s eps/2) + psi((1-s eps)/2) - 2 log pi)
inline BigComplex p_fun(const BigComplex& s, long k, const mpq_class& eps,
                        const PrecisionContext& ctx) {
    long wb = ctx.bits() + 16;
    BigComplex sw{s.re.at_prec(wb), s.im.at_prec(wb)};
    BigReal e = BigReal::from_mpq(eps, wb);
    BigComplex se{sw.re * e, sw.im * e};
    BigComplex r = digamma(sw, ctx) - digamma(sw + (k + 1), ctx);
    BigComplex inner = digamma(se / 2, ctx) + digamma((1L - se) / 2, ctx)
                       - BigComplex(log(const_pi(wb)) * 2);
    return r + inner * (e / 2);
}

// p_k^(1)(s,eps) = psi'(s) - psi'(s+k+1)
//                  + (eps/2)^2 (psi'(s eps/2) - psi'((1-s eps)/2))
inline BigComplex p1_fun(const BigComplex& s, long k, const mpq_class& eps,
                         const PrecisionContext& ctx) {
    long wb = ctx.bits() + 16;
    BigComplex sw{s.re.at_prec(wb), s.im.at_prec(wb)};
    BigReal e = BigReal::from_mpq(eps, wb);
    BigComplex se{sw.re * e, sw.im * e};
    BigComplex r = trigamma(sw, ctx) - trigamma(sw + (k + 1), ctx);
    BigComplex inner = trigamma(se / 2, ctx) - trigamma((1L - se) / 2, ctx);
    BigReal e2 = (e / 2) * (e / 2);
    return r + inner * e2;
}

// d omega/ds = p_k + eps zeta'(eps s)/zeta(eps s). Equal to f_k^(1)/f_k.
inline BigComplex omega_d1(const BigComplex& s, long k, const mpq_class& eps,
                           const PrecisionContext& ctx) {
    long wb = ctx.bits() + 16;
    BigReal e = BigReal::from_mpq(eps, wb);
    BigComplex se{s.re.at_prec(wb) * e, s.im.at_prec(wb) * e};
    ZetaTriple zt = zeta_all(se, ctx, 1);
    return p_fun(s, k, eps, ctx) + (zt.v1 / zt.v0) * e;
}

// d^2 omega/ds^2 = p_k^(1) + eps^2 (zeta''/zeta - (zeta'/zeta)^2) at eps s.
inline BigComplex omega_d2(const BigComplex& s, long k, const mpq_class& eps,
                           const PrecisionContext& ctx) {
    long wb = ctx.bits() + 16;
    BigReal e = BigReal::from_mpq(eps, wb);
    BigComplex se{s.re.at_prec(wb) * e, s.im.at_prec(wb) * e};
    ZetaTriple zt = zeta_all(se, ctx, 2);
    BigComplex ratio1 = zt.v1 / zt.v0;
    return p1_fun(s, k, eps, ctx) + (zt.v2 / zt.v0 - ratio1 * ratio1) * (e * e);
}

// Closed-form first derivative of the integrand: g_k (p_k zeta + eps zeta').
inline BigComplex f_d1(const BigComplex& s, long k, const mpq_class& eps,
                       const PrecisionContext& ctx) {
    long wb = ctx.bits() + 16;
    BigReal e = BigReal::from_mpq(eps, wb);
    BigComplex se{s.re.at_prec(wb) * e, s.im.at_prec(wb) * e};
    ZetaTriple zt = zeta_all(se, ctx, 1);
    return integrand_g(s, static_cast<int>(k), eps, ctx) *
           (p_fun(s, k, eps, ctx) * zt.v0 + zt.v1 * e);
}

// Second derivative: g_k (q_k zeta + q_k^(1) zeta' + eps^2 zeta''),
// q_k = p_k^2 + p_k^(1), q_k^(1) = 2 eps p_k.
inline BigComplex f_d2(const BigComplex& s, long k, const mpq_class& eps,
                       const PrecisionContext& ctx) {
    long wb = ctx.bits() + 16;
    BigReal e = BigReal::from_mpq(eps, wb);
    BigComplex se{s.re.at_prec(wb) * e, s.im.at_prec(wb) * e};
    ZetaTriple zt = zeta_all(se, ctx, 2);
    BigComplex p = p_fun(s, k, eps, ctx);
    BigComplex q = p * p + p1_fun(s, k, eps, ctx);
    BigComplex q1 = p * (e * 2);
    return integrand_g(s, static_cast<int>(k), eps, ctx) *
           (q * zt.v0 + q1 * zt.v1 + zt.v2 * (e * e));
}

namespace detail {

inline BigComplex saddle_w_argument(long k, Branch branch, long wb) {
    // (k + 3/2)/(2 pi i) = -i (k + 3/2)/(2 pi); conjugate for the minus branch
    BigReal mag = (BigReal::from_long(k, wb) + BigReal::from_double(1.5, wb)) /
                  (const_pi(wb) * 2);
    return branch == Branch::plus ? BigComplex{BigReal(wb), -mag}
                                  : BigComplex{BigReal(wb), mag};
}

} // namespace detail

// Closed-form saddle s_k = (k + 3/2)/(eps W(+-(k+3/2)/(2 pi i))).
// The plus branch (principal W of the argument on the negative imaginary
// axis) has Im s_k > 0; the minus branch is its complex conjugate.
inline SaddlePoint saddle_closed(long k, const mpq_class& eps, Branch branch,
                                 const PrecisionContext& ctx, bool with_residual = true) {
    if (k < 0) throw domain_error("saddle_closed: k must be >= 0");
    long wb = ctx.bits() + 16;
    BigComplex w = lambert_w(detail::saddle_w_argument(k, branch, wb), 0, ctx);
    BigReal num = BigReal::from_long(k, wb) + BigReal::from_double(1.5, wb);
    BigComplex s = BigComplex(num) / (w * BigReal::from_mpq(eps, wb));
    SaddlePoint sp{k, eps, branch, s, BigReal(wb)};
    if (with_residual) sp.residual = abs(omega_d1(s, k, eps, ctx));
    return sp;
}

// Saddle of the final (eps-free) formula: s_n = (n + 3/2)/W(+-(n+3/2)/(2 pi i)).
inline SaddlePoint saddle_for_n(long n, Branch branch, const PrecisionContext& ctx,
                                bool with_residual = true) {
    if (n < 1) throw domain_error("saddle_for_n: n must be >= 1");
    SaddlePoint sp = saddle_closed(n, mpq_class(1), branch, ctx, with_residual);
    return sp;
}

// Newton iteration on the exact saddle equation
//   F(s) = p_k(s,eps) zeta(eps s) + eps zeta'(eps s) = 0,
// with F' = p_k^(1) zeta + eps p_k zeta' + eps^2 zeta''.
inline SaddlePoint saddle_refine(const SaddlePoint& start, const PrecisionContext& ctx) {
    long wb = ctx.bits() + 16;
    const mpq_class& eps = start.epsilon;
    long k = start.n_or_k;
    BigReal e = BigReal::from_mpq(eps, wb);
    BigComplex s{start.location.re.at_prec(wb), start.location.im.at_prec(wb)};
    double target = -0.5 * static_cast<double>(ctx.digits);
    std::string trajectory = s.to_string(10);
    for (int it = 0; it < 60; ++it) {
        BigComplex se{s.re * e, s.im * e};
        ZetaTriple zt = zeta_all(se, ctx, 2);
        BigComplex p = p_fun(s, k, eps, ctx);
        BigComplex f = p * zt.v0 + zt.v1 * e;
        BigComplex fp = p1_fun(s, k, eps, ctx) * zt.v0 + p * zt.v1 * e + zt.v2 * (e * e);
        BigComplex step = f / fp;
        s = s - step;
        trajectory += " -> " + s.to_string(10);
        double rel_step = abs(step).log10_abs() - abs(s).log10_abs();
        double moved = abs(s - start.location).log10_abs() - abs(start.location).log10_abs();
        if (moved > -0.3) // wandered ~half a magnitude away: basin left
            throw convergence_error("saddle_refine: diverged; trajectory " + trajectory);
        if (rel_step < target - 4) {
            SaddlePoint out{k, eps, start.branch, s, abs(omega_d1(s, k, eps, ctx))};
            if (out.residual.log10_abs() >= target)
                throw convergence_error("saddle_refine: residual target missed; trajectory " +
                                        trajectory);
            return out;
        }
    }
    throw convergence_error("saddle_refine: no convergence; trajectory " + trajectory);
}

} // namespace stieltjes
