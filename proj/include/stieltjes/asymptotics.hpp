#pragma once

#include <string>

#include "stieltjes/saddle.hpp"

namespace stieltjes {

// Index spec for sign queries: an exact integer, possibly given as a pure
// power of ten ("10^M" / "1eM"), which is kept symbolic so that n = 10^1000000
// never has to materialize through a parser accident.
struct NSpec {
    mpz_class value;        // exact n when !is_pow10
    bool is_pow10 = false;
    long pow10_exp = 0;
    std::string description;

    long decimal_digits() const {
        if (is_pow10) return pow10_exp + 1;
        return static_cast<long>(mpz_sizeinbase(value.get_mpz_t(), 10));
    }

    static NSpec from_long(long n) {
        NSpec s;
        s.value = n;
        s.description = std::to_string(n);
        return s;
    }

    static NSpec parse(const std::string& text) {
        NSpec s;
        s.description = text;
        auto caret = text.find("^");
        auto epos = text.find_first_of("eE");
        if (caret != std::string::npos) {
            if (text.substr(0, caret) != "10")
                throw domain_error("n spec: only 10^M power form is accepted");
            s.is_pow10 = true;
            s.pow10_exp = std::stol(text.substr(caret + 1));
        } else if (epos != std::string::npos) {
            std::string mant = text.substr(0, epos);
            long expo = std::stol(text.substr(epos + 1));
            if (mant.empty() || mant == "1") {
                s.is_pow10 = true;
                s.pow10_exp = expo;
            } else {
                mpz_class m(mant);
                if (m <= 0) throw domain_error("n spec: mantissa must be a positive integer");
                mpz_class p;
                mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(expo));
                s.value = m * p;
            }
        } else {
            s.value = mpz_class(text);
        }
        if (s.is_pow10 && s.pow10_exp < 0)
            throw domain_error("n spec: exponent must be non-negative");
        if (!s.is_pow10 && s.value <= 0)
            throw domain_error("n spec: n must be positive");
        return s;
    }
};

// Complex phase phi_n with its certified sign.
struct PhaseResult {
    std::string n_description;
    BigComplex phase_value;
    BigReal im_mod_2pi;
    int sign = 0;
    int im_mod_2pi_digits = 0;
    bool certified = false;
    int working_digits = 0;
};

enum class AsyVariant { full, refined, phase };

struct AsymptoticEstimate {
    long n = 0;
    BigReal value;
    AsyVariant variant = AsyVariant::full;
    SaddlePoint saddle;
};

namespace detail {

// c = log(2 pi i) = log(2 pi) + (pi/2) i
inline BigComplex log_2pi_i(long wb) {
    BigReal pi = const_pi(wb);
    return {log(pi * 2), pi / 2};
}

struct phase_run {
    BigComplex phi;
    BigReal im_mod; // Im phi mod 2 pi, in [0, 2 pi)
    int sign;
    double dist_to_cos_zero; // in radians
};

inline phase_run phase_once(const NSpec& n, int digits) {
    PrecisionContext ctx(digits, 10);
    long wb = ctx.bits();
    BigReal pi = const_pi(wb);

    BigReal nr(wb);
    BigReal ln_n(wb);
    if (n.is_pow10) {
        BigReal ln10(wb);
        mpfr_log_ui(ln10.raw(), 10, MPFR_RNDN);
        ln_n = ln10 * n.pow10_exp;
        mpfr_ui_pow_ui(nr.raw(), 10, static_cast<unsigned long>(n.pow10_exp), MPFR_RNDN);
    } else {
        nr = BigReal::from_mpz(n.value, wb);
        ln_n = log(nr);
    }

    BigReal half = BigReal::from_double(0.5, wb);
    BigReal n32 = nr + half * 3L;
    BigComplex w = lambert_w(BigComplex{BigReal(wb), -(n32 / (pi * 2))}, 0, ctx);
    BigComplex s = BigComplex(n32) / w;

    BigComplex c = log_2pi_i(wb);
    // phi_n = ln(8 pi)/2 - n + (n + 1/2) ln n + (s - n - 1/2) log s
    //         - log(n + s)/2 - (c + 1) s
    BigComplex phi = BigComplex(log(pi * 8) / 2 - nr + (nr + half) * ln_n);
    phi = phi + (s - BigComplex(nr + half)) * log(s);
    phi = phi - log(s + nr) / 2;
    phi = phi - (c + 1L) * s;

    BigReal twopi = pi * 2;
    BigReal m = fmod(phi.im, twopi);
    if (m.sign() < 0) m += twopi;

    phase_run r{phi, m, 0, 0.0};
    double md = m.to_double();
    double pid = twopi.to_double() / 2;
    r.sign = (md < pid / 2 || md > 1.5 * pid) ? +1 : -1;
    double d1 = std::fabs(md - pid / 2);
    double d2 = std::fabs(md - 1.5 * pid);
    r.dist_to_cos_zero = std::min(d1, d2);
    return r;
}

} // namespace detail

// The paper's phase formula. Works for exact n or the 10^M power form; the
// sign is sign(cos(Im phi_n)) and is certified by a dual-precision run plus
// a safe distance from the cosine zeros.
inline PhaseResult phase(const NSpec& n, const PrecisionContext& ctx) {
    if (!n.is_pow10 && n.value < 1)
        throw domain_error("phase: n must be >= 1");
    long need = n.decimal_digits() + 40;
    int digits = static_cast<int>(std::max<long>(ctx.digits, need));
    detail::phase_run lo = detail::phase_once(n, digits);
    detail::phase_run hi = detail::phase_once(n, digits + 20);

    PhaseResult out;
    out.n_description = n.description;
    out.phase_value = hi.phi;
    out.im_mod_2pi = hi.im_mod;
    out.working_digits = digits;
    // angular agreement between the two runs (wrap-aware)
    BigReal twopi = const_pi(hi.im_mod.prec()) * 2;
    BigReal diff = abs(lo.im_mod.at_prec(hi.im_mod.prec()) - hi.im_mod);
    if (diff > twopi / 2) diff = twopi - diff;
    double reldiff = diff.log10_abs() - twopi.log10_abs();
    out.im_mod_2pi_digits = diff.is_zero() ? digits : agreement_digits(reldiff, 0.0);
    out.sign = hi.sign;
    double uncertainty = std::pow(10.0, -static_cast<double>(out.im_mod_2pi_digits));
    out.certified = out.im_mod_2pi_digits >= 5 && lo.sign == hi.sign &&
                    hi.dist_to_cos_zero > 10.0 * uncertainty;
    return out;
}

// Sign of gamma_n for very large n via the phase formula. Asymptotic validity
// floor n >= 20; smaller n belongs to the exact engine.
inline PhaseResult sign_gamma(const NSpec& n, const PrecisionContext& ctx) {
    if (!n.is_pow10 && n.value < 20)
        throw domain_error("sign_gamma: n < 20 is below the asymptotic floor; "
                           "use the exact engine");
    PrecisionContext c = ctx;
    for (int round = 0;; ++round) {
        PhaseResult r = phase(n, c);
        if (r.certified || round >= 2) return r;
        c = c.with_digits(r.working_digits + 40);
    }
}

// Final asymptotic formula:
// gamma_n ~ sqrt(2/pi) n! Re[ Gamma(s_n) e^{-c s_n} / (s_n^n sqrt(n+s_n+3/2)) ]
inline AsymptoticEstimate gamma_asymptotic(long n, const PrecisionContext& ctx) {
    if (n < 1) throw domain_error("gamma_asymptotic: n must be >= 1");
    PrecisionContext c = ctx.with_guard(ctx.guard + 10);
    long wb = c.bits();
    SaddlePoint sp = saddle_for_n(n, Branch::plus, c, false);
    const BigComplex& s = sp.location;
    BigComplex num = gamma(s, c) * exp(-(detail::log_2pi_i(wb) * s));
    BigComplex den = pow_si(s, n) * sqrt(s + BigReal::from_double(n + 1.5, wb));
    BigReal val = (num / den).re;
    val *= factorial_real(static_cast<unsigned long>(n), wb);
    val *= sqrt(BigReal::from_long(2, wb) / const_pi(wb));
    val.check_finite("gamma_asymptotic");
    return {n, val, AsyVariant::full, sp};
}

// Variant after the higher-order Stirling replacement of Gamma(s_n):
// gamma_n ~ 2 n! Re[ s^{s-n-3/2} (s + 1/12) e^{-(c+1)s} / sqrt(n+s+3/2) ]
inline AsymptoticEstimate gamma_asymptotic_refined(long n, const PrecisionContext& ctx) {
    if (n < 1) throw domain_error("gamma_asymptotic_refined: n must be >= 1");
    PrecisionContext c = ctx.with_guard(ctx.guard + 10);
    long wb = c.bits();
    SaddlePoint sp = saddle_for_n(n, Branch::plus, c, false);
    const BigComplex& s = sp.location;
    BigComplex expo = (s - BigReal::from_double(n + 1.5, wb)) * log(s);
    BigComplex num = exp(expo) * (s + BigReal::from_mpq(mpq_class(1, 12), wb));
    num = num * exp(-((detail::log_2pi_i(wb) + 1L) * s));
    BigComplex den = sqrt(s + BigReal::from_double(n + 1.5, wb));
    BigReal val = (num / den).re * 2;
    val *= factorial_real(static_cast<unsigned long>(n), wb);
    val.check_finite("gamma_asymptotic_refined");
    return {n, val, AsyVariant::refined, sp};
}

// Saddle-point approximation of a_k itself:
// a_k ~ -Re[ (k!/(pi i)) sqrt(2 pi / -omega''(s_k)) f_k(s_k) ],
// evaluated at the Newton-refined saddle of the exact saddle equation.
inline BigReal a_k_asymptotic(long k, const mpq_class& eps, const PrecisionContext& ctx) {
    if (k < 10) throw domain_error("a_k_asymptotic: asymptotic regime needs k >= 10");
    PrecisionContext c = ctx.with_guard(ctx.guard + 10);
    long wb = c.bits();
    SaddlePoint sp = saddle_refine(saddle_closed(k, eps, Branch::plus, c, false), c);
    const BigComplex& s = sp.location;
    BigComplex om2 = omega_d2(s, k, eps, c);
    BigComplex root = sqrt((const_pi(wb) * 2) / (-om2));
    BigComplex x = root * integrand_f(s, static_cast<int>(k), eps, c);
    // -Re[(k!/(pi i)) X] = -(k!/pi) Im X
    BigReal val = -(x.im * factorial_real(static_cast<unsigned long>(k), wb) / const_pi(wb));
    val.check_finite("a_k_asymptotic");
    return val;
}

} // namespace stieltjes
