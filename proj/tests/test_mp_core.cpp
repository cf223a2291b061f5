#include <gtest/gtest.h>

#include <random>

#include "stieltjes/bernoulli.hpp"
#include "stieltjes/special.hpp"

using namespace stieltjes;

namespace {

const PrecisionContext ctx(50);

BigComplex rand_complex(std::mt19937& rng, double logmag_lo, double logmag_hi, long wb) {
    std::uniform_real_distribution<double> mag(logmag_lo, logmag_hi);
    std::uniform_real_distribution<double> ang(-3.14159, 3.14159);
    double m = std::pow(10.0, mag(rng));
    double a = ang(rng);
    return {BigReal::from_double(m * std::cos(a), wb),
            BigReal::from_double(m * std::sin(a), wb)};
}

double rel_err_log10(const BigComplex& got, const BigComplex& want) {
    return abs(got - want).log10_abs() - abs(want).log10_abs();
}

} // namespace

TEST(BigReal, StringRoundTrip) {
    BigReal x = BigReal::from_string("-7.2815845483676724861e-2", 200);
    EXPECT_EQ(x.to_string(20), "-7.2815845483676724861e-2");
    EXPECT_EQ(BigReal(64).to_string(10), "0");
    BigReal big = BigReal::from_string("1.25e100", 64);
    EXPECT_EQ(big.to_string(3), "1.25e+100");
}

TEST(BigReal, Log10Abs) {
    BigReal x = BigReal::from_double(3.0e-7, 64);
    EXPECT_NEAR(x.log10_abs(), std::log10(3.0e-7), 1e-12);
    EXPECT_EQ(BigReal(64).log10_abs(), -HUGE_VAL);
}

TEST(BigComplex, LogPrincipalBranch) {
    long wb = ctx.bits();
    // log(1) = 0
    BigComplex one = BigComplex::from_long(1, 0, wb);
    EXPECT_TRUE(log(one).is_zero());
    // log(i) = i pi/2
    BigComplex li = log(BigComplex::from_long(0, 1, wb));
    EXPECT_TRUE(li.re.is_zero());
    EXPECT_LT(abs(li - BigComplex{BigReal(wb), const_pi(wb) / 2}).log10_abs(), -45);
    // log(2 pi i) = ln(2 pi) + i pi/2  (the paper's constant c)
    BigComplex c = log(BigComplex{BigReal(wb), const_pi(wb) * 2});
    EXPECT_LT(abs(c.re - log(const_pi(wb) * 2)).log10_abs(), -45);
    EXPECT_LT(abs(c.im - const_pi(wb) / 2).log10_abs(), -45);
    EXPECT_THROW(log(BigComplex(wb)), domain_error);
}

TEST(BigComplex, ExpLogRoundTripRandom) {
    std::mt19937 rng(20260810);
    long wb = ctx.bits();
    for (int i = 0; i < 60; ++i) {
        BigComplex z = rand_complex(rng, -6, 6, wb);
        BigComplex back = exp(log(z));
        EXPECT_LT(rel_err_log10(back, z), -static_cast<double>(ctx.digits) + 3)
            << "z = " << z.to_string(8);
        double imlog = log(z).im.to_double();
        EXPECT_GT(imlog, -3.1415926535898);
        EXPECT_LE(imlog, 3.1415926535898);
    }
}

TEST(Bernoulli, KnownValues) {
    EXPECT_EQ(bernoulli(0), mpq_class(1));
    EXPECT_EQ(bernoulli(1), mpq_class(-1, 2));
    EXPECT_EQ(bernoulli(2), mpq_class(1, 6));
    EXPECT_EQ(bernoulli(4), mpq_class(-1, 30));
    EXPECT_EQ(bernoulli(6), mpq_class(1, 42));
    EXPECT_EQ(bernoulli(8), mpq_class(-1, 30));
    EXPECT_EQ(bernoulli(10), mpq_class(5, 66));
    EXPECT_EQ(bernoulli(12), mpq_class(-691, 2730));
    EXPECT_EQ(bernoulli(20), mpq_class(-174611, 330));
    EXPECT_EQ(bernoulli(7), mpq_class(0));
}

TEST(Bernoulli, MatchesDefiningRecurrence) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
    for (int m = 1; m <= 60; ++m) {
        mpq_class acc(0);
        for (int j = 0; j <= m; ++j)
            acc += mpq_class(binomial(m + 1, j)) * bernoulli(j);
        EXPECT_EQ(acc, mpq_class(0)) << "m = " << m;
    }
}

TEST(Gamma, FactorialAndHalf) {
    long wb = ctx.bits();
    BigComplex g5 = gamma(BigComplex::from_long(5, 0, wb), ctx);
    EXPECT_LT(abs(g5 - BigComplex::from_long(24, 0, wb)).log10_abs(), -45);
    BigComplex gh = gamma(BigComplex{BigReal::from_double(0.5, wb), BigReal(wb)}, ctx);
    EXPECT_LT(rel_err_log10(gh, BigComplex(sqrt(const_pi(wb)))), -45);
}

TEST(Gamma, ModulusIdentityOnVerticalLine) {
    // |Gamma(1+iy)|^2 = pi y / sinh(pi y)
    long wb = ctx.bits();
    for (double y : {0.5, 3.0, 10.0, 35.0}) {
        BigComplex g = gamma(BigComplex{BigReal::from_long(1, wb), BigReal::from_double(y, wb)}, ctx);
        BigReal lhs = norm(g);
        BigReal py = const_pi(wb) * BigReal::from_double(y, wb);
        BigReal rhs = py / sinh(py);
        EXPECT_LT((abs(lhs - rhs) / rhs).log10_abs(), -static_cast<double>(ctx.digits) + 4)
            << "y = " << y;
    }
}

TEST(Gamma, RecurrenceRandom) {
    std::mt19937 rng(7);
    long wb = ctx.bits();
    for (int i = 0; i < 25; ++i) {
        BigComplex z = rand_complex(rng, -1, 1.7, wb);
        if (z.im.is_zero()) continue;
        BigComplex lhs = gamma(z + 1L, ctx);
        BigComplex rhs = z * gamma(z, ctx);
        EXPECT_LT(rel_err_log10(lhs, rhs), -static_cast<double>(ctx.digits) + 4)
            << "z = " << z.to_string(8);
    }
}

TEST(Gamma, PoleErrors) {
    long wb = ctx.bits();
    EXPECT_THROW(gamma(BigComplex(wb), ctx), pole_error);
    EXPECT_THROW(gamma(BigComplex::from_long(-3, 0, wb), ctx), pole_error);
    try {
        gamma(BigComplex::from_long(-3, 0, wb), ctx);
    } catch (const pole_error& e) {
        EXPECT_EQ(e.at, -3);
    }
}

TEST(Digamma, ClassicalValues) {
    long wb = ctx.bits();
    // psi(1) = -gamma
    BigComplex p1 = digamma(BigComplex::from_long(1, 0, wb), ctx);
    EXPECT_LT(abs(p1 + BigComplex(const_euler(wb))).log10_abs(), -45);
    // psi(1)(1) = pi^2/6
    BigComplex t1 = trigamma(BigComplex::from_long(1, 0, wb), ctx);
    BigReal pisq6 = const_pi(wb) * const_pi(wb) / 6;
    EXPECT_LT(rel_err_log10(t1, BigComplex(pisq6)), -45);
    // psi(6) - psi(1) = H_5 = 137/60
    BigComplex d = digamma(BigComplex::from_long(6, 0, wb), ctx) - p1;
    EXPECT_LT(rel_err_log10(d, BigComplex(BigReal::from_mpq(mpq_class(137, 60), wb))), -45);
}

TEST(Digamma, RecurrencesRandom) {
    std::mt19937 rng(99);
    long wb = ctx.bits();
    for (int i = 0; i < 20; ++i) {
        BigComplex z = rand_complex(rng, -0.5, 1.5, wb);
        if (is_nonpositive_integer(z) || is_nonpositive_integer(z + 1L)) continue;
        // psi(z+1) = psi(z) + 1/z
        EXPECT_LT(rel_err_log10(digamma(z + 1L, ctx), digamma(z, ctx) + 1L / z),
                  -static_cast<double>(ctx.digits) + 5) << z.to_string(8);
        // psi'(z+1) = psi'(z) - 1/z^2
        EXPECT_LT(rel_err_log10(trigamma(z + 1L, ctx), trigamma(z, ctx) - 1L / (z * z)),
                  -static_cast<double>(ctx.digits) + 5) << z.to_string(8);
    }
}

TEST(Precision, GuardDoublingStable) {
    // doubling guard digits moves certified output by < 10^-digits
    PrecisionContext a(40, 10), b(40, 20);
    BigComplex z{BigReal::from_double(2.5, b.bits()), BigReal::from_double(7.0, b.bits())};
    BigComplex ga = gamma(z, a), gb = gamma(z, b);
    EXPECT_LT(rel_err_log10(ga, gb), -40.0);
    BigComplex da = digamma(z, a), db = digamma(z, b);
    EXPECT_LT(rel_err_log10(da, db), -40.0);
}

TEST(ComplexTan, GuardedForLargeImag) {
    long wb = ctx.bits();
    // tan(x + iy) -> +- i as y -> +-inf; no overflow on the way
    BigComplex t1 = tan(BigComplex{BigReal::from_double(0.3, wb), BigReal::from_double(900.0, wb)});
    EXPECT_LT(abs(t1 - BigComplex::from_long(0, 1, wb)).log10_abs(), -100);
    BigComplex t2 = tan(BigComplex{BigReal::from_double(-4.0, wb), BigReal::from_double(-2000.0, wb)});
    EXPECT_LT(abs(t2 + BigComplex::from_long(0, 1, wb)).log10_abs(), -100);
    // and matches sin/cos where both are safe
    BigComplex z{BigReal::from_double(1.1, wb), BigReal::from_double(0.7, wb)};
    EXPECT_LT(rel_err_log10(tan(z), sin(z) / cos(z)), -45);
}
