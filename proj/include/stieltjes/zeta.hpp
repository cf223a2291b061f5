#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "stieltjes/bernoulli.hpp"
#include "stieltjes/big_complex.hpp"
#include "stieltjes/special.hpp"

namespace stieltjes {

// Value and first two s-derivatives at one point.
struct ZetaTriple {
    BigComplex v0, v1, v2;
    int order = 2;
};

namespace detail {

// Shared table of ln(1), ln(2), ... at a fixed bit precision.
inline std::shared_ptr<const std::vector<BigReal>> log_table(long n, long wb) {
    static std::mutex mu;
    static std::map<long, std::shared_ptr<std::vector<BigReal>>> tables;
    std::lock_guard<std::mutex> lock(mu);
    auto& tab = tables[wb];
    if (!tab) tab = std::make_shared<std::vector<BigReal>>();
    if (static_cast<long>(tab->size()) < n + 1) {
        auto grown = std::make_shared<std::vector<BigReal>>(*tab);
        grown->reserve(n + 1);
        while (static_cast<long>(grown->size()) < n + 1) {
            long i = static_cast<long>(grown->size());
            BigReal l(wb);
            if (i >= 1) mpfr_log_ui(l.raw(), static_cast<unsigned long>(i), MPFR_RNDN);
            grown->push_back(std::move(l));
        }
        tab = grown;
    }
    return tab;
}

// (N^{1-s} - 1)/(s - 1) and its first two s-derivatives, stable across the
// removable point s = 1. h = s-1, L = ln N; A = (e^{-hL} - 1)/h.
struct pole_free_term {
    BigComplex a0, a1, a2;
};

inline pole_free_term integral_minus_pole(const BigComplex& h, const BigReal& L, long wb, int order) {
    pole_free_term r{BigComplex(wb), BigComplex(wb), BigComplex(wb)};
    double hl = abs(h).to_double() * L.to_double();
    if (hl < 0.5) {
        // A = sum_{j>=0} c_j h^j, c_j = (-L)^{j+1}/(j+1)!
        BigComplex hj = BigComplex::from_long(1, 0, wb);
        BigReal c = -L;
        double tol = -0.302 * static_cast<double>(wb) - 5;
        for (long j = 0;; ++j) {
            BigComplex term = hj * c;
            r.a0 = r.a0 + term;
            if (order >= 1 && j >= 1) r.a1 = r.a1 + term * j / h;
            if (order >= 2 && j >= 2) r.a2 = r.a2 + term * j * (j - 1) / (h * h);
            if (j > 1 && abs(term).log10_abs() < tol) break;
            if (j > wb + 64) throw convergence_error("integral_minus_pole: series stall");
            hj = hj * h;
            c = c * (-L) / (j + 2);
        }
        // h = 0 exactly: the derivative terms above vanish by construction,
        // but the true limits are c_1 and 2 c_2.
        if (h.is_zero()) {
            if (order >= 1) r.a1 = BigComplex(L * L / 2);
            if (order >= 2) r.a2 = BigComplex(-(L * L * L) / 3);
        }
        return r;
    }
    BigComplex em1 = expm1(-(BigComplex{h.re * L, h.im * L})); // e^{-hL} - 1
    BigComplex e = em1 + 1L;
    r.a0 = em1 / h;
    if (order >= 1) r.a1 = (-(e * L) - r.a0) / h;
    if (order >= 2) r.a2 = ((e * (L * L)) * h + e * (2 * L) + r.a0 * 2L) / (h * h);
    return r;
}

struct em_result {
    ZetaTriple phi;
    double bound_log10[3]; // first-omitted-term bounds per order
};

// One Euler-Maclaurin pass for phi(s) = zeta(s) - 1/(s-1) with N Dirichlet
// terms and M Bernoulli corrections.
inline em_result em_phi_pass(const BigComplex& s, long wb, int order, long N, long M) {
    auto logs = log_table(N, wb);
    BigComplex S0(wb), S1(wb), S2(wb);

    // Dirichlet block: sum n^{-s} (and log-weighted variants)
    for (long n = 1; n < N; ++n) {
        const BigReal& ln = (*logs)[n];
        BigComplex e = n == 1 ? BigComplex::from_long(1, 0, wb)
                              : exp(BigComplex{-(s.re * ln), -(s.im * ln)});
        S0 = S0 + e;
        if (order >= 1) S1 = S1 - e * ln;
        if (order >= 2) S2 = S2 + e * (ln * ln);
    }

    const BigReal& L = (*logs)[N];
    BigComplex h = s - 1L;
    pole_free_term A = integral_minus_pole(h, L, wb, order);
    S0 = S0 + A.a0;
    if (order >= 1) S1 = S1 + A.a1;
    if (order >= 2) S2 = S2 + A.a2;

    BigComplex EN = exp(BigComplex{-(s.re * L), -(s.im * L)}); // N^{-s}
    S0 = S0 + EN / 2;
    if (order >= 1) S1 = S1 - EN * L / 2;
    if (order >= 2) S2 = S2 + EN * (L * L) / 2;

    // Correction terms T_k = B_{2k}/(2k)! * P_k(s) * N^{1-s-2k},
    // P_k(s) = prod_{j=0}^{2k-2} (s+j), with derivative tracking.
    BigComplex P = BigComplex::from_long(1, 0, wb), P1(wb), P2(wb);
    BigReal invN2 = BigReal::from_long(1, wb) / BigReal::from_long(N * N, wb);
    BigComplex W = EN * BigReal::from_long(N, wb) * invN2; // N^{1-s-2}
    long next_factor = 0;
    auto mul_factor = [&](long a) {
        BigComplex f = s + a;
        P2 = P2 * f + P1 * 2L;
        P1 = P1 * f + P;
        P = P * f;
    };
    em_result out{{BigComplex(wb), BigComplex(wb), BigComplex(wb), order}, {0, 0, 0}};
    for (long k = 1; k <= M + 1; ++k) {
        while (next_factor <= 2 * k - 2) mul_factor(next_factor++);
        mpz_class fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * k));
        mpq_class coeff = bernoulli(2 * static_cast<unsigned long>(k)) / mpq_class(fact);
        BigComplex base = W * BigReal::from_mpq(coeff, wb);
        BigComplex t0 = base * P;
        BigComplex t1 = order >= 1 ? base * (P1 - P * L) : BigComplex(wb);
        BigComplex t2 = order >= 2 ? base * (P2 - P1 * (2 * L) + P * (L * L)) : BigComplex(wb);
        if (k <= M) {
            S0 = S0 + t0;
            if (order >= 1) S1 = S1 + t1;
            if (order >= 2) S2 = S2 + t2;
            W = W * invN2;
        } else {
            // first omitted term, scaled by the classical tail factor
            double sig = s.re.to_double();
            double c = std::hypot(sig + 2 * M + 1, s.im.to_double()) /
                       std::max(1e-30, sig + 2 * M + 1);
            out.bound_log10[0] = abs(t0).log10_abs() + std::log10(std::max(1.0, c));
            out.bound_log10[1] = order >= 1 ? abs(t1).log10_abs() + std::log10(std::max(1.0, c)) : -1e300;
            out.bound_log10[2] = order >= 2 ? abs(t2).log10_abs() + std::log10(std::max(1.0, c)) : -1e300;
        }
    }
    out.phi.v0 = S0;
    out.phi.v1 = S1;
    out.phi.v2 = S2;
    return out;
}

inline void em_choose_params(long wb, double im_abs, long& N, long& M) {
    M = static_cast<long>(0.20 * static_cast<double>(wb) + 0.55 * im_abs) + 6;
    N = 2 * M + 20;
}

} // namespace detail

// phi(s) = zeta(s) - 1/(s-1) (entire; phi(1) = Euler's constant) together
// with derivatives up to `order`. Euler-Maclaurin parameters are chosen from
// the precision and |Im s|, then certified against the first omitted term;
// on a failed bound the term counts are doubled.
inline ZetaTriple phi_all(const BigComplex& s, const PrecisionContext& ctx, int order = 2) {
    long wb = ctx.bits() + 24;
    BigComplex sw{s.re.at_prec(wb), s.im.at_prec(wb)};
    long N, M;
    detail::em_choose_params(wb, std::fabs(s.im.to_double()), N, M);
    for (int round = 0;; ++round) {
        detail::em_result r = detail::em_phi_pass(sw, wb, order, N, M);
        double target0 = abs(r.phi.v0).log10_abs();
        bool ok = true;
        for (int o = 0; o <= order; ++o) {
            double scale = std::max(0.0, target0);
            if (r.bound_log10[o] > scale - 0.301 * (ctx.bits() - 2))
                ok = false;
        }
        if (ok) {
            r.phi.v0.check_finite("phi");
            r.phi.order = order;
            return r.phi;
        }
        if (round >= 6)
            throw convergence_error("phi: Euler-Maclaurin bound not met after escalation");
        N *= 2;
        M += M / 2 + 8;
    }
}

inline BigComplex phi(const BigComplex& s, const PrecisionContext& ctx) {
    return phi_all(s, ctx, 0).v0;
}

inline BigReal phi_real(const BigReal& x, const PrecisionContext& ctx) {
    return phi(BigComplex(x), ctx).re;
}

inline bool is_one(const BigComplex& s) {
    return s.im.is_zero() && mpfr_cmp_si(s.re.raw(), 1) == 0;
}

// zeta and its derivatives from phi plus the pole part.
inline ZetaTriple zeta_all(const BigComplex& s, const PrecisionContext& ctx, int order = 2) {
    if (is_one(s)) throw pole_error("zeta: pole at s = 1", 1);
    ZetaTriple t = phi_all(s, ctx, order);
    long wb = t.v0.prec();
    BigComplex h = BigComplex{s.re.at_prec(wb), s.im.at_prec(wb)} - 1L;
    BigComplex hinv = 1L / h;
    t.v0 = t.v0 + hinv;
    if (order >= 1) t.v1 = t.v1 - hinv * hinv;
    if (order >= 2) t.v2 = t.v2 + hinv * hinv * hinv * 2L;
    return t;
}

inline BigComplex zeta(const BigComplex& s, const PrecisionContext& ctx) {
    return zeta_all(s, ctx, 0).v0;
}

inline BigComplex zeta_deriv(const BigComplex& s, int order, const PrecisionContext& ctx) {
    if (order != 1 && order != 2)
        throw domain_error("zeta_deriv: order must be 1 or 2");
    ZetaTriple t = zeta_all(s, ctx, order);
    return order == 1 ? t.v1 : t.v2;
}

// Relative residual of the functional equation written as an identity in z:
//   zeta(1+z) = pi^{1/2+z} Gamma(-z/2)/Gamma((1+z)/2) zeta(-z)
inline BigReal functional_eq_residual(const BigComplex& z, const PrecisionContext& ctx) {
    if (is_nonpositive_integer(-(z / 2)))
        throw domain_error("functional_eq_residual: Gamma(-z/2) pole");
    if (is_nonpositive_integer((z + 1L) / 2))
        throw domain_error("functional_eq_residual: Gamma((1+z)/2) pole");
    if (z.is_zero() || is_one(-z) || is_one(z + 1L))
        throw domain_error("functional_eq_residual: zeta pole on one side");
    long wb = ctx.bits() + 16;
    BigComplex zw{z.re.at_prec(wb), z.im.at_prec(wb)};
    BigComplex lhs = zeta(zw + 1L, ctx);
    BigReal pi = const_pi(wb);
    BigComplex pref = exp(log(BigComplex(pi)) * (zw + BigReal::from_double(0.5, wb)));
    BigComplex rhs = pref * gamma(-(zw / 2), ctx) / gamma((zw + 1L) / 2, ctx) * zeta(-zw, ctx);
    return abs(lhs - rhs) / abs(lhs);
}

} // namespace stieltjes
