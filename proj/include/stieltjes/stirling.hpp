#pragma once

#include <gmpxx.h>

#include <vector>

#include "stieltjes/errors.hpp"

namespace stieltjes {

// Signed Stirling numbers of the first kind: x(x-1)...(x-k+1) = sum_n S_k^(n) x^n.
// Exact big-integer triangle, built once per k_max.
class Stirling1Matrix {
public:
    explicit Stirling1Matrix(int k_max) : k_max_(k_max), rows_(k_max + 1) {
        if (k_max < 0) throw domain_error("stirling1: k_max must be >= 0");
        rows_[0] = {mpz_class(1)};
        for (int k = 0; k < k_max; ++k) {
            rows_[k + 1].assign(k + 2, mpz_class(0));
            for (int n = 0; n <= k + 1; ++n) {
                // S_{k+1}^(n) = S_k^(n-1) - k * S_k^(n)
                mpz_class v;
                if (n >= 1) v = rows_[k][n - 1];
                if (n <= k) v -= k * rows_[k][n];
                rows_[k + 1][n] = v;
            }
        }
    }

    int k_max() const { return k_max_; }

    const mpz_class& operator()(int k, int n) const {
        static const mpz_class zero(0);
        if (k < 0 || k > k_max_) throw domain_error("stirling1: k out of range");
        if (n < 0 || n > k) return zero;
        return rows_[k][n];
    }

    // Falling factorial x(x-1)...(x-k+1) evaluated exactly at integer x.
    mpz_class falling_factorial_at(int k, long x) const {
        mpz_class acc(0), xp(1);
        for (int n = 0; n <= k; ++n) {
            acc += rows_[k][n] * xp;
            xp *= x;
        }
        return acc;
    }

private:
    int k_max_;
    std::vector<std::vector<mpz_class>> rows_;
};

inline Stirling1Matrix stirling1(int k_max) { return Stirling1Matrix(k_max); }

} // namespace stieltjes
