#pragma once

#include <cmath>
#include <string>

#include "stieltjes/quadrature.hpp"
#include "stieltjes/stieltjes_exact.hpp"

namespace stieltjes {

// Contour description for the a_k integral representations.
struct ContourSpec {
    enum class Kind { rectangle, vertical_line };
    Kind kind = Kind::rectangle;
    double delta = 0.5;             // rectangle margin; must sit in (0,1)
    double line_abscissa = 0.5;     // Re s for the vertical line
    double truncation_height = 0.0; // vertical line cut at |Im s| = T; 0 = auto
};

namespace detail {

// distance from s to the nearest non-positive integer >= -k
inline double pole_distance(const BigComplex& s, long k) {
    double re = s.re.to_double(), im = s.im.to_double();
    double nearest = std::round(re);
    if (nearest > 0) nearest = 0;
    if (nearest < -static_cast<double>(k)) nearest = -static_cast<double>(k);
    return std::hypot(re - nearest, im);
}

} // namespace detail

// g_k(s,eps) = pi^{1/2 - s eps} Gamma(s eps/2)/Gamma((1-s eps)/2)
//              * Gamma(s)/Gamma(s+k+1).
// The last ratio is evaluated as 1/((s)(s+1)...(s+k)); identical by the
// recurrence and immune to the huge-|Gamma| cancellation high on the line.
inline BigComplex integrand_g(const BigComplex& s, int k, const mpq_class& eps,
                              const PrecisionContext& ctx) {
    long wb = ctx.bits() + 16;
    BigComplex sw{s.re.at_prec(wb), s.im.at_prec(wb)};
    if (detail::pole_distance(sw, k) < 1e-8)
        throw domain_error("integrand_g: s within 1e-8 of a Gamma(s) pole");
    BigReal e = BigReal::from_mpq(eps, wb);
    BigComplex se{sw.re * e, sw.im * e};
    if (is_nonpositive_integer(se / 2))
        throw domain_error("integrand_g: s eps/2 at a Gamma pole");
    BigReal pi = const_pi(wb);
    BigComplex pre = exp(log(BigComplex(pi)) * (BigReal::from_double(0.5, wb) - se.re)
                         - mul_i(BigComplex(log(pi) * se.im)));
    BigComplex poch = sw;
    for (int i = 1; i <= k; ++i) poch = poch * (sw + i);
    return pre * gamma(se / 2, ctx) / gamma((1L - se) / 2, ctx) / poch;
}

inline BigComplex integrand_f(const BigComplex& s, int k, const mpq_class& eps,
                              const PrecisionContext& ctx) {
    long wb = ctx.bits() + 16;
    BigReal e = BigReal::from_mpq(eps, wb);
    BigComplex se{s.re.at_prec(wb) * e, s.im.at_prec(wb) * e};
    return integrand_g(s, k, eps, ctx) * zeta(se, ctx);
}

// a_k by the Noerlund-Rice rectangle: (-1)^k k!/(2 pi i) times the closed
// contour integral of phi(1+s eps)/prod_{i=0}^{k}(s-i) around 0..k.
inline BigReal rect_contour_integral(int k, const mpq_class& eps, const ContourSpec& spec,
                                     const PrecisionContext& ctx) {
    if (spec.kind != ContourSpec::Kind::rectangle)
        throw domain_error("rect_contour_integral: spec.kind must be rectangle");
    if (!(spec.delta > 0.0 && spec.delta < 1.0))
        throw domain_error("rect_contour_integral: delta must lie in (0,1)");
    long wb = ctx.bits() + 16;
    BigReal e = BigReal::from_mpq(eps, wb);
    auto f = [&](const BigComplex& s) {
        BigComplex denom = s;
        for (int i = 1; i <= k; ++i) denom = denom * (s - i);
        BigComplex arg{1L + s.re * e, s.im * e};
        return phi(arg, ctx) / denom;
    };
    BigReal d = BigReal::from_double(spec.delta, wb);
    BigComplex tl{-d, d}, bl{-d, -d};
    BigComplex br{BigReal::from_long(k, wb) + d, -d}, tr{BigReal::from_long(k, wb) + d, d};
    // absolute tolerance for the raw contour integral so the k!-scaled
    // result is good to the requested digits
    double lfact = std::lgamma(static_cast<double>(k) + 1.0) / std::log(10.0);
    double tol = -(static_cast<double>(ctx.digits) + 2) + 0.798 - lfact; // log10(2 pi) = 0.798
    SegmentIntegrator qi(wb);
    BigComplex total = qi.integrate(f, tl, bl, tol);
    total = total + qi.integrate(f, bl, br, tol);
    total = total + qi.integrate(f, br, tr, tol);
    total = total + qi.integrate(f, tr, tl, tol);
    // (-1)^k k!/(2 pi i): the counterclockwise circuit of a real-valued sum
    mpz_class kf;
    mpz_fac_ui(kf.get_mpz_t(), static_cast<unsigned long>(k));
    BigComplex scaled = total * BigReal::from_mpz(kf, wb) / (const_pi(wb) * 2);
    if (k % 2 != 0) scaled = -scaled;
    // divide by i: value = Im(scaled) + trace of imaginary residue
    BigReal value = scaled.im;
    value.check_finite("rect_contour_integral");
    return value;
}

// Residue check data for the integrand of the shifted-line representation.
struct ResidueCheck {
    BigReal closed_form; // (gamma eps + H_k)/(eps k!)
    BigReal quadrature;  // Laurent coefficient by small-circle trapezoid
    double abs_diff_log10;
};

inline ResidueCheck residue_check(int k, const mpq_class& eps, const PrecisionContext& ctx) {
    if (k < 0) throw domain_error("residue_at_zero: k must be >= 0");
    if (eps <= 0) throw domain_error("residue_at_zero: eps must be > 0");
    long wb = ctx.bits() + 16;
    BigReal closed = (const_euler(wb) * BigReal::from_mpq(eps, wb) +
                      BigReal::from_mpq(harmonic(k), wb));
    mpz_class kf;
    mpz_fac_ui(kf.get_mpz_t(), static_cast<unsigned long>(k));
    mpq_class den = eps * mpq_class(kf);
    closed = closed / BigReal::from_mpq(den, wb);

    auto f = [&](const BigComplex& s) { return integrand_f(s, k, eps, ctx); };
    BigReal radius = BigReal::from_double(0.3, wb);
    double tol = -(static_cast<double>(ctx.digits) + 4);
    BigComplex res = circle_residue(f, BigComplex(wb), radius, wb, tol);
    ResidueCheck out{closed, res.re, abs(res - BigComplex(closed)).log10_abs()};
    return out;
}

// Closed-form residue, verified against the quadrature route before return.
inline BigReal residue_at_zero(int k, const mpq_class& eps, const PrecisionContext& ctx) {
    ResidueCheck c = residue_check(k, eps, ctx);
    double tol = -static_cast<double>(std::min(ctx.digits - 5, 30));
    if (c.abs_diff_log10 > tol + c.closed_form.log10_abs())
        throw consistency_error("residue_at_zero: closed form and quadrature disagree");
    return c.closed_form;
}

struct LineIntegralResult {
    BigReal value;
    double tail_bound_log10;    // reported bound on the dropped |Im s| > T part
    double truncation_height;   // T actually used
};

// a_k = k!/(2 pi i) * int_{sigma - i inf}^{sigma + i inf} f_k ds, evaluated as
// (k!/pi) Re int_0^T f_k(sigma + it) dt by conjugate symmetry. The tail beyond
// T decays only polynomially (t^{-(k+3/2-sigma eps)}); it is estimated from the
// theoretical power and reported, never ignored.
inline LineIntegralResult vertical_line_integral(int k, const mpq_class& eps,
                                                 const ContourSpec& spec,
                                                 const PrecisionContext& ctx) {
    if (spec.kind != ContourSpec::Kind::vertical_line)
        throw domain_error("vertical_line_integral: spec.kind must be vertical_line");
    double sigma = spec.line_abscissa;
    double eps_d = mpq_class(eps).get_d();
    if (sigma <= 0.0 || sigma >= 0.5 / eps_d)
        throw domain_error("vertical_line_integral: abscissa must lie in (0, 1/(2 eps))");
    long wb = ctx.bits() + 16;
    BigReal sig = BigReal::from_double(sigma, wb);
    auto f = [&](const BigComplex& s) { return integrand_f(s, k, eps, ctx); };

    double lfact = std::lgamma(static_cast<double>(k) + 1.0) / std::log(10.0);
    double tol = -(static_cast<double>(ctx.digits) + 2) + 0.497 - lfact; // log10(pi)
    double alpha = static_cast<double>(k) + 1.5 - sigma * eps_d - 0.5;   // decay power margin
    SegmentIntegrator qi(wb);

    BigComplex acc(wb);
    double T = 16.0;
    double tail_log10 = HUGE_VAL;
    auto tail_estimate = [&](double at) {
        BigComplex ft = f(BigComplex{sig, BigReal::from_double(at, wb)});
        return abs(ft).log10_abs() + std::log10(at / (alpha - 1.0));
    };
    for (;;) {
        acc = acc + qi.integrate(f, BigComplex{sig, BigReal(wb)},
                                 BigComplex{sig, BigReal::from_double(T, wb)}, tol);
        // integrate upward in doubling blocks until the tail estimate is in
        for (;;) {
            tail_log10 = tail_estimate(T);
            bool explicit_T = spec.truncation_height > 0;
            if (explicit_T && T >= spec.truncation_height) break;
            if (!explicit_T && (tail_log10 < tol || T >= 65536.0)) break;
            acc = acc + qi.integrate(f, BigComplex{sig, BigReal::from_double(T, wb)},
                                     BigComplex{sig, BigReal::from_double(2 * T, wb)}, tol);
            T *= 2;
        }
        break;
    }
    mpz_class kf;
    mpz_fac_ui(kf.get_mpz_t(), static_cast<unsigned long>(k));
    BigReal kfac = BigReal::from_mpz(kf, wb);
    LineIntegralResult out{acc.re * kfac / const_pi(wb),
                           tail_log10 + lfact - 0.497, T};
    out.value.check_finite("vertical_line_integral");
    return out;
}

// Verification report for the Lemma-1 identity (CLI-facing JSON payload).
struct NrReport {
    int k = 0;
    std::string epsilon;
    std::string sum_value;
    std::string integral_value;
    double abs_error_log10 = 0;
    double rel_error_log10 = 0;
    double tail_bound_log10 = -HUGE_VAL;
};

inline NrReport verify_norlund_rice(int k, const mpq_class& eps, const PrecisionContext& ctx) {
    AkTable ak = a_coefficients(eps, k, ctx.with_digits(ctx.digits + k / 3 + 10));
    BigReal integral = rect_contour_integral(k, eps, ContourSpec{}, ctx);
    BigReal diff = abs(ak.values[k] - integral);
    NrReport rep;
    rep.k = k;
    rep.epsilon = eps.get_str();
    rep.sum_value = ak.values[k].to_string(ctx.digits);
    rep.integral_value = integral.to_string(ctx.digits);
    rep.abs_error_log10 = diff.log10_abs();
    rep.rel_error_log10 = diff.log10_abs() - abs(ak.values[k]).log10_abs();
    return rep;
}

} // namespace stieltjes
