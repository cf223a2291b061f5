#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cmath>
#include <cstring>
#include <string>
#include <utility>

#include "stieltjes/errors.hpp"
#include "stieltjes/precision.hpp"

namespace stieltjes {

// Arbitrary-precision real scalar (value semantics over mpfr_t).
// Every value carries its own precision; binary operations produce results
// at the larger of the two operand precisions, rounded to nearest.
class BigReal {
public:
    explicit BigReal(long prec_bits = 64) {
        mpfr_init2(v_, clamp(prec_bits));
        mpfr_set_zero(v_, 1);
    }

    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }

    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigReal& operator=(BigReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }

    ~BigReal() { mpfr_clear(v_); }

    static BigReal from_long(long x, long prec) {
        BigReal r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }

    static BigReal from_double(double x, long prec) {
        BigReal r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }

    static BigReal from_string(const std::string& s, long prec) {
        BigReal r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw domain_error("BigReal: unparsable decimal literal: " + s);
        return r;
    }

    static BigReal from_mpz(const mpz_class& z, long prec) {
        BigReal r(prec);
        mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
        return r;
    }

    static BigReal from_mpq(const mpq_class& q, long prec) {
        BigReal r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }

    long prec() const { return mpfr_get_prec(v_); }

    // Round (or pad) the stored value to a new precision.
    BigReal at_prec(long prec) const {
        BigReal r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    void check_finite(const char* where) const {
        if (!is_finite())
            throw numeric_error(std::string("non-finite value in ") + where);
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    long to_long() const {
        if (!mpfr_fits_slong_p(v_, MPFR_RNDN))
            throw domain_error("BigReal: value does not fit a long");
        return mpfr_get_si(v_, MPFR_RNDN);
    }

    // Estimate of log10|x|; -HUGE_VAL for zero. Exact enough for precision
    // bookkeeping (uses the binary exponent plus the leading limb).
    double log10_abs() const {
        if (is_zero()) return -HUGE_VAL;
        if (!is_finite()) return HUGE_VAL;
        long e = mpfr_get_exp(v_);
        BigReal m = *this;
        mpfr_abs(m.v_, m.v_, MPFR_RNDN);
        mpfr_div_2si(m.v_, m.v_, e, MPFR_RNDN); // mantissa in [1/2, 1)
        return (static_cast<double>(e) * 0.30102999566398120) +
               std::log10(mpfr_get_d(m.v_, MPFR_RNDN));
    }

    // Canonical scientific notation with `digits` significant digits,
    // e.g. "-7.28158454836767e-2". Deterministic for fixed (value, digits).
    std::string to_string(int digits = 20) const {
        if (digits < 2) digits = 2;
        if (!is_finite()) return "nan";
        if (is_zero()) return "0";
        mpfr_exp_t e;
        char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
        std::string mant(raw);
        mpfr_free_str(raw);
        std::string sgn;
        if (!mant.empty() && mant[0] == '-') {
            sgn = "-";
            mant = mant.substr(1);
        }
        // mpfr convention: value = 0.mant * 10^e
        std::string out = sgn + mant.substr(0, 1) + "." + mant.substr(1);
        long dec_exp = static_cast<long>(e) - 1;
        out += "e";
        if (dec_exp >= 0) out += "+";
        out += std::to_string(dec_exp);
        return out;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    // ---- arithmetic ----
    friend BigReal operator-(const BigReal& a) {
        BigReal r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

#define STIELTJES_BINOP(op, fn)                                            \
    friend BigReal operator op(const BigReal& a, const BigReal& b) {       \
        BigReal r(std::max(a.prec(), b.prec()));                           \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                   \
        return r;                                                          \
    }                                                                      \
    friend BigReal operator op(const BigReal& a, long b) {                 \
        BigReal r(a.prec());                                               \
        fn##_si(r.v_, a.v_, b, MPFR_RNDN);                                 \
        return r;                                                          \
    }                                                                      \
    BigReal& operator op##=(const BigReal& b) {                            \
        if (b.prec() > prec()) *this = at_prec(b.prec());                  \
        fn(v_, v_, b.v_, MPFR_RNDN);                                       \
        return *this;                                                      \
    }

    STIELTJES_BINOP(+, mpfr_add)
    STIELTJES_BINOP(-, mpfr_sub)
    STIELTJES_BINOP(*, mpfr_mul)
#undef STIELTJES_BINOP

    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        if (b.is_zero()) throw domain_error("BigReal: division by zero");
        BigReal r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(const BigReal& a, long b) {
        if (b == 0) throw domain_error("BigReal: division by zero");
        BigReal r(a.prec());
        mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(long a, const BigReal& b) {
        if (b.is_zero()) throw domain_error("BigReal: division by zero");
        BigReal r(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    BigReal& operator/=(const BigReal& b) { return *this = *this / b; }

    friend BigReal operator+(long a, const BigReal& b) { return b + a; }
    friend BigReal operator*(long a, const BigReal& b) { return b * a; }
    friend BigReal operator-(long a, const BigReal& b) {
        BigReal r(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator<(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }

private:
    static long clamp(long p) { return p < MPFR_PREC_MIN ? 64 : p; }
    mpfr_t v_;
};

// ---- elementary functions ----

#define STIELTJES_UNARY(name, fn)                   \
    inline BigReal name(const BigReal& a) {         \
        BigReal r(a.prec());                        \
        fn(r.raw(), a.raw(), MPFR_RNDN);            \
        return r;                                   \
    }

STIELTJES_UNARY(abs, mpfr_abs)
STIELTJES_UNARY(sqrt, mpfr_sqrt)
STIELTJES_UNARY(exp, mpfr_exp)
STIELTJES_UNARY(expm1, mpfr_expm1)
STIELTJES_UNARY(sin, mpfr_sin)
STIELTJES_UNARY(cos, mpfr_cos)
STIELTJES_UNARY(tan, mpfr_tan)
STIELTJES_UNARY(sinh, mpfr_sinh)
STIELTJES_UNARY(cosh, mpfr_cosh)
#undef STIELTJES_UNARY

inline BigReal floor(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_rint(r.raw(), a.raw(), MPFR_RNDD);
    return r;
}

inline BigReal log(const BigReal& a) {
    if (a.sign() <= 0) throw domain_error("BigReal: log of non-positive value");
    BigReal r(a.prec());
    mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

inline BigReal atan2(const BigReal& y, const BigReal& x) {
    BigReal r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

inline BigReal hypot(const BigReal& x, const BigReal& y) {
    BigReal r(std::max(y.prec(), x.prec()));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

inline BigReal pow(const BigReal& a, const BigReal& b) {
    BigReal r(std::max(a.prec(), b.prec()));
    mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

inline BigReal pow_si(const BigReal& a, long n) {
    BigReal r(a.prec());
    mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
    return r;
}

inline BigReal fmod(const BigReal& a, const BigReal& m) {
    BigReal r(std::max(a.prec(), m.prec()));
    mpfr_fmod(r.raw(), a.raw(), m.raw(), MPFR_RNDN);
    return r;
}

// ---- constants at a given bit precision ----

inline BigReal const_pi(long prec) {
    BigReal r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

inline BigReal const_euler(long prec) {
    BigReal r(prec);
    mpfr_const_euler(r.raw(), MPFR_RNDN);
    return r;
}

inline BigReal const_log2(long prec) {
    BigReal r(prec);
    mpfr_const_log2(r.raw(), MPFR_RNDN);
    return r;
}

// n! as an exact integer rounded at `prec` bits.
inline BigReal factorial_real(unsigned long n, long prec) {
    BigReal r(prec);
    mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
    return r;
}

// Decimal digits to which a and b agree, measured relative to |a|.
inline int matching_digits(const BigReal& a, const BigReal& b) {
    BigReal d = a - b;
    if (d.is_zero()) return 1'000'000'000;
    double scale = std::max(a.log10_abs(), b.log10_abs());
    if (scale == -HUGE_VAL) return 1'000'000'000;
    return agreement_digits(d.log10_abs(), scale);
}

} // namespace stieltjes
