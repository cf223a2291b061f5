#pragma once

#include <gmpxx.h>

#include <mutex>
#include <vector>

#include "stieltjes/errors.hpp"

namespace stieltjes {

namespace detail {

// Tangent numbers T_1=1, T_2=2, T_3=16, ... (tan x = sum T_n x^{2n-1}/(2n-1)!)
// via the in-place integer recurrence; O(n^2) big-integer additions.
inline std::vector<mpz_class> tangent_numbers(std::size_t n) {
    std::vector<mpz_class> t(n + 1);
    if (n == 0) return t;
    t[1] = 1;
    for (std::size_t k = 2; k <= n; ++k) t[k] = (k - 1) * t[k - 1];
    for (std::size_t k = 2; k <= n; ++k)
        for (std::size_t j = k; j <= n; ++j)
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
    return t;
}

struct bernoulli_cache {
    std::mutex mu;
    std::vector<mpq_class> even; // even[k] = B_{2k}

    void ensure(std::size_t kmax) {
        if (even.size() > kmax) return;
        std::size_t target = std::max<std::size_t>(kmax + 1, even.size() * 2);
        std::vector<mpz_class> t = tangent_numbers(target);
        std::vector<mpq_class> fresh(target + 1);
        fresh[0] = 1;
        mpz_class four_n = 1;
        for (std::size_t k = 1; k <= target; ++k) {
            four_n *= 4;
            // B_{2k} = (-1)^{k-1} * 2k * T_k / (4^k (4^k - 1))
            mpq_class b(mpz_class(2 * static_cast<unsigned long>(k)) * t[k],
                        four_n * (four_n - 1));
            b.canonicalize();
            fresh[k] = (k % 2 == 0) ? mpq_class(-b) : b;
        }
        even.swap(fresh);
    }
};

inline bernoulli_cache& bernoulli_store() {
    static bernoulli_cache c;
    return c;
}

} // namespace detail

// Bernoulli number B_n as an exact rational (B_1 = -1/2 convention).
// Cached; safe for concurrent callers.
inline mpq_class bernoulli(unsigned long n) {
    if (n == 0) return mpq_class(1);
    if (n == 1) return mpq_class(-1, 2);
    if (n % 2 == 1) return mpq_class(0);
    auto& store = detail::bernoulli_store();
    std::lock_guard<std::mutex> lock(store.mu);
    store.ensure(n / 2);
    return store.even[n / 2];
}

// H_k = 1 + 1/2 + ... + 1/k as an exact rational; H_0 = 0.
inline mpq_class harmonic(unsigned long k) {
    mpq_class h(0);
    for (unsigned long i = 1; i <= k; ++i)
        h += mpq_class(1, i);
    h.canonicalize();
    return h;
}

// Binomial coefficient as an exact integer.
inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

} // namespace stieltjes
