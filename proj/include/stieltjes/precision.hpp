#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "stieltjes/errors.hpp"

namespace stieltjes {

// Decimal working precision threaded through every numeric operation.
// `digits` is what the caller wants certified; `guard` is carried on top
// internally to absorb rounding and mild cancellation.
struct PrecisionContext {
    int digits = 50;
    int guard = 20;
    long ceiling = default_ceiling();

    PrecisionContext() = default;
    explicit PrecisionContext(int digits_, int guard_ = 20)
        : digits(digits_), guard(guard_) {
        if (digits < 20) throw domain_error("PrecisionContext: digits must be >= 20");
        if (guard < 0) throw domain_error("PrecisionContext: guard must be >= 0");
    }

    // Total decimal digits actually carried.
    int work_digits() const { return digits + guard; }

    // mpfr bit count for the working precision.
    long bits() const { return bits_for_digits(work_digits()); }

    PrecisionContext with_guard(int g) const {
        PrecisionContext c(*this);
        c.guard = g;
        return c;
    }

    PrecisionContext with_digits(int d) const {
        PrecisionContext c(*this);
        c.digits = std::max(20, d);
        return c;
    }

    // Escalation for the certify-by-recompute loop. Doubling, capped.
    PrecisionContext escalated() const {
        long next = 2L * digits;
        if (next > ceiling)
            throw precision_error("precision ceiling reached during escalation");
        PrecisionContext c(*this);
        c.digits = static_cast<int>(next);
        return c;
    }

    static long bits_for_digits(long d) {
        // log2(10) = 3.3219...; small additive pad for intermediate rounding.
        return static_cast<long>(std::ceil(d * 3.3219280948873623)) + 16;
    }

    static long default_ceiling() {
        if (const char* env = std::getenv("STIELTJES_MAX_DIGITS")) {
            long v = std::atol(env);
            if (v >= 100) return v;
        }
        return 4'000'000L;
    }
};

// Rough decimal digit agreement between two magnitudes: the number of
// leading digits to which a and b coincide, given |a - b| and scale.
inline int agreement_digits(double log10_absdiff, double log10_scale) {
    double d = log10_scale - log10_absdiff;
    if (d < 0) return 0;
    if (d > 1e9) return 1'000'000'000;
    return static_cast<int>(d);
}

} // namespace stieltjes
