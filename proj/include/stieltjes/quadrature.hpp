#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "stieltjes/big_complex.hpp"

namespace stieltjes {

namespace detail {

struct gl_rule {
    std::vector<BigReal> nodes;   // on (0, 1), symmetric pairs stored fully
    std::vector<BigReal> weights; // matching weights, sum = 1
};

// Gauss-Legendre nodes on [-1,1] by Newton iteration on P_n, seeded with the
// Chebyshev approximation; mapped to [0,1]. Cached per (order, precision).
inline std::shared_ptr<const gl_rule> gauss_legendre(int n, long wb) {
    static std::mutex mu;
    static std::map<std::pair<int, long>, std::shared_ptr<gl_rule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& entry = cache[{n, wb}];
    if (entry) return entry;
    auto rule = std::make_shared<gl_rule>();
    rule->nodes.reserve(n);
    rule->weights.reserve(n);
    BigReal pi = const_pi(wb);
    BigReal one = BigReal::from_long(1, wb);
    for (int i = 0; i < n; ++i) {
        // seed
        BigReal x = cos(pi * BigReal::from_double(i + 0.75, wb) / BigReal::from_double(n + 0.5, wb));
        BigReal dp(wb);
        for (int it = 0; it < 80; ++it) {
            // evaluate P_n(x) and P_n'(x) by the three-term recurrence
            BigReal p0 = one, p1 = x;
            for (int j = 2; j <= n; ++j) {
                BigReal p2 = (x * p1 * (2 * j - 1) - p0 * (j - 1)) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = (x * p1 - p0) * n / (x * x - one);
            BigReal dx = p1 / dp;
            x -= dx;
            if (dx.is_zero() || dx.log10_abs() < -0.302 * static_cast<double>(wb) - 2) break;
        }
        // weight = 2 / ((1-x^2) P_n'(x)^2), halved by the [0,1] map
        BigReal w = one / ((one - x * x) * dp * dp);
        rule->nodes.push_back((one - x) / 2); // descending x -> ascending node
        rule->weights.push_back(std::move(w));
    }
    entry = rule;
    return entry;
}

} // namespace detail

// Integral of f along the straight segment from a to b in the complex plane,
// adaptive Gauss-Legendre with panel bisection to an absolute tolerance.
class SegmentIntegrator {
public:
    explicit SegmentIntegrator(long wb, int order = 32, int max_depth = 24)
        : wb_(wb), order_(order), max_depth_(max_depth) {}

    template <class F>
    BigComplex integrate(F&& f, const BigComplex& a, const BigComplex& b,
                         double tol_log10) const {
        BigComplex whole = panel(f, a, b);
        return refine(f, a, b, whole, tol_log10, 0);
    }

private:
    template <class F>
    BigComplex panel(F&& f, const BigComplex& a, const BigComplex& b) const {
        auto rule = detail::gauss_legendre(order_, wb_);
        BigComplex d = b - a;
        BigComplex acc(wb_);
        for (int i = 0; i < order_; ++i) {
            BigComplex s = a + d * rule->nodes[i];
            acc = acc + f(s) * rule->weights[i];
        }
        return acc * d;
    }

    template <class F>
    BigComplex refine(F&& f, const BigComplex& a, const BigComplex& b,
                      const BigComplex& whole, double tol_log10, int depth) const {
        BigComplex mid = (a + b) / 2;
        BigComplex left = panel(f, a, mid);
        BigComplex right = panel(f, mid, b);
        BigComplex sum = left + right;
        double err = abs(sum - whole).log10_abs();
        if (err < tol_log10 || depth >= max_depth_) {
            if (depth >= max_depth_ && err >= tol_log10)
                throw convergence_error("quadrature: panel bisection hit depth limit");
            return sum;
        }
        return refine(f, a, mid, left, tol_log10 - 0.4, depth + 1) +
               refine(f, mid, b, right, tol_log10 - 0.4, depth + 1);
    }

    long wb_;
    int order_;
    int max_depth_;
};

// (1/2 pi i) * contour integral of f around a circle |s - c| = r, i.e. the
// Laurent coefficient of 1/(s-c). Trapezoid rule with point doubling; the
// trapezoid sum converges geometrically for f meromorphic away from c.
template <class F>
BigComplex circle_residue(F&& f, const BigComplex& center, const BigReal& radius,
                          long wb, double tol_log10, int q_start = 64, int q_max = 65536) {
    BigReal pi2 = const_pi(wb) * 2;
    auto sample_sum = [&](int q, int stride_offset, int stride) {
        BigComplex acc(wb);
        for (int i = stride_offset; i < q; i += stride) {
            BigReal theta = pi2 * i / q;
            BigReal c(wb), s(wb);
            mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
            BigComplex e{radius * c, radius * s};
            acc = acc + f(center + e) * e;
        }
        return acc;
    };
    int q = q_start;
    BigComplex total = sample_sum(q, 0, 1);
    for (;;) {
        BigComplex finer = total + sample_sum(2 * q, 1, 2);
        q *= 2;
        BigComplex prev_avg = total / (q / 2);
        BigComplex avg = finer / q;
        if (abs(avg - prev_avg).log10_abs() < tol_log10) return avg;
        if (q >= q_max)
            throw convergence_error("circle_residue: trapezoid did not converge");
        total = finer;
    }
}

} // namespace stieltjes
