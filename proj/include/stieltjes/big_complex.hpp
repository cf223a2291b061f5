#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include "stieltjes/big_real.hpp"

namespace stieltjes {

// Complex scalar over BigReal components. All multivalued functions
// (log, sqrt, pow) take the principal branch; arg() lands in (-pi, pi].
struct BigComplex {
    BigReal re, im;

    explicit BigComplex(long prec = 64) : re(prec), im(prec) {}
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(BigReal r) : re(std::move(r)), im(re.prec()) {}

    static BigComplex from_long(long r, long i, long prec) {
        return {BigReal::from_long(r, prec), BigReal::from_long(i, prec)};
    }

    long prec() const { return std::max(re.prec(), im.prec()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }
    bool is_finite() const { return re.is_finite() && im.is_finite(); }

    void check_finite(const char* where) const {
        re.check_finite(where);
        im.check_finite(where);
    }

    std::string to_string(int digits = 20) const {
        return "(" + re.to_string(digits) + ", " + im.to_string(digits) + ")";
    }

    friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigReal d = b.re * b.re + b.im * b.im;
        if (d.is_zero()) throw domain_error("BigComplex: division by zero");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }

    friend BigComplex operator+(const BigComplex& a, const BigReal& b) { return {a.re + b, a.im}; }
    friend BigComplex operator+(const BigReal& b, const BigComplex& a) { return a + b; }
    friend BigComplex operator-(const BigComplex& a, const BigReal& b) { return {a.re - b, a.im}; }
    friend BigComplex operator-(const BigReal& b, const BigComplex& a) { return {b - a.re, -a.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigReal& b) { return {a.re * b, a.im * b}; }
    friend BigComplex operator*(const BigReal& b, const BigComplex& a) { return a * b; }
    friend BigComplex operator/(const BigComplex& a, const BigReal& b) { return {a.re / b, a.im / b}; }
    friend BigComplex operator/(const BigReal& a, const BigComplex& b) {
        return BigComplex(a) / b;
    }

    friend BigComplex operator+(const BigComplex& a, long b) { return {a.re + b, a.im}; }
    friend BigComplex operator+(long b, const BigComplex& a) { return a + b; }
    friend BigComplex operator-(const BigComplex& a, long b) { return {a.re - b, a.im}; }
    friend BigComplex operator-(long b, const BigComplex& a) { return {b - a.re, -a.im}; }
    friend BigComplex operator*(const BigComplex& a, long b) { return {a.re * b, a.im * b}; }
    friend BigComplex operator*(long b, const BigComplex& a) { return a * b; }
    friend BigComplex operator/(const BigComplex& a, long b) { return {a.re / b, a.im / b}; }
    friend BigComplex operator/(long a, const BigComplex& b) {
        return BigComplex(BigReal::from_long(a, b.prec())) / b;
    }
};

inline BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

inline BigReal abs(const BigComplex& z) { return hypot(z.re, z.im); }

inline BigReal norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }

inline BigReal arg(const BigComplex& z) {
    if (z.is_zero()) throw domain_error("BigComplex: arg of zero");
    return atan2(z.im, z.re);
}

// Multiply by the imaginary unit.
inline BigComplex mul_i(const BigComplex& z) { return {-z.im, z.re}; }

inline BigComplex exp(const BigComplex& z) {
    BigReal m = exp(z.re);
    if (z.im.is_zero()) return {m, BigReal(z.prec())};
    BigReal c(z.im.prec()), s(z.im.prec());
    mpfr_sin_cos(s.raw(), c.raw(), z.im.raw(), MPFR_RNDN);
    return {m * c, m * s};
}

// Principal branch: Im(log z) in (-pi, pi].
inline BigComplex log(const BigComplex& z) {
    if (z.is_zero()) throw domain_error("BigComplex: log of zero");
    return {log(abs(z)), z.is_real() && z.re.sign() > 0 ? BigReal(z.prec()) : arg(z)};
}

inline BigComplex sqrt(const BigComplex& z) {
    if (z.is_zero()) return BigComplex(z.prec());
    if (z.is_real() && z.re.sign() > 0) return BigComplex(sqrt(z.re));
    BigComplex h = log(z);
    return exp(BigComplex{h.re / 2, h.im / 2});
}

// Principal power z^w = exp(w log z).
inline BigComplex pow(const BigComplex& z, const BigComplex& w) {
    return exp(w * log(z));
}

inline BigComplex pow(const BigComplex& z, const BigReal& w) {
    return exp(log(z) * w);
}

// Integer power by binary exponentiation (cheaper and branch-free).
inline BigComplex pow_si(BigComplex base, long n) {
    if (n == 0) return BigComplex::from_long(1, 0, base.prec());
    bool inv = n < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-(n + 1)) + 1UL
                          : static_cast<unsigned long>(n);
    BigComplex acc = BigComplex::from_long(1, 0, base.prec());
    while (k) {
        if (k & 1UL) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    if (inv) acc = 1L / acc;
    return acc;
}

// exp(z) - 1, stable for small |z|.
inline BigComplex expm1(const BigComplex& z) {
    if (z.im.is_zero()) return {expm1(z.re), BigReal(z.prec())};
    // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2);  e^x sin y
    BigReal ex = expm1(z.re);
    BigReal cy = cos(z.im);
    BigReal sh = sin(z.im / 2);
    return {ex * cy - 2 * (sh * sh), (ex + 1) * sin(z.im)};
}

inline BigComplex sin(const BigComplex& z) {
    if (z.im.is_zero()) return {sin(z.re), BigReal(z.prec())};
    return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}

inline BigComplex cos(const BigComplex& z) {
    if (z.im.is_zero()) return {cos(z.re), BigReal(z.prec())};
    return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))};
}

// tan via exponentials. Written so the exponential argument always has
// non-positive real part, which cannot overflow however far up or down
// the imaginary axis z sits.
inline BigComplex tan(const BigComplex& z) {
    if (z.im.is_zero()) return {tan(z.re), BigReal(z.prec())};
    long p = z.prec();
    BigComplex one = BigComplex::from_long(1, 0, p);
    if (z.im.sign() > 0) {
        // w = e^{2iz}, |w| = e^{-2 Im z} <= 1;  tan z = -i (w-1)/(w+1)
        BigComplex w = exp(mul_i(z) * 2L);
        return -mul_i((w - one) / (w + one));
    }
    // w = e^{-2iz}, |w| = e^{2 Im z} <= 1;  tan z = -i (1-w)/(1+w)
    BigComplex w = exp(mul_i(z) * -2L);
    return -mul_i((one - w) / (one + w));
}

inline int matching_digits(const BigComplex& a, const BigComplex& b) {
    BigReal d = abs(a - b);
    if (d.is_zero()) return 1'000'000'000;
    double scale = std::max(abs(a).log10_abs(), abs(b).log10_abs());
    if (scale == -HUGE_VAL) return 1'000'000'000;
    return agreement_digits(d.log10_abs(), scale);
}

} // namespace stieltjes
