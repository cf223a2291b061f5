#pragma once

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stieltjes/stirling.hpp"
#include "stieltjes/zeta.hpp"

namespace stieltjes {

// Coefficients a_k(eps) = sum_j (-1)^j C(k,j) phi(1 + j eps), k = 0..k_max.
struct AkTable {
    mpq_class epsilon;
    int k_max = 0;
    std::vector<BigReal> values;
    int digits_certified = 0; // working digits the values were computed at
};

struct StieltjesResult {
    long n = 0;
    BigReal value;
    mpq_class epsilon;
    int k_truncation = 0;
    int digits_certified = 0;
    bool certified = false; // digits_certified >= requested digits
};

// The phi(1+j eps) grid. Grid abscissas are exact binary rationals for the
// default eps = 2^-5 family, so no representation error enters.
inline std::vector<BigReal> phi_grid(const mpq_class& eps, int j_max, const PrecisionContext& ctx) {
    if (eps <= 0) throw domain_error("phi_grid: epsilon must be positive");
    long wb = ctx.bits();
    std::vector<BigReal> grid;
    grid.reserve(j_max + 1);
    for (int j = 0; j <= j_max; ++j) {
        mpq_class s = 1 + j * eps;
        grid.push_back(phi_real(BigReal::from_mpq(s, wb), ctx));
    }
    return grid;
}

// Alternating binomial sums over a precomputed grid. Exact binomials; the
// cancellation is what the caller's working precision must absorb.
inline AkTable a_coefficients_from_grid(const mpq_class& eps, int k_max,
                                        const std::vector<BigReal>& grid,
                                        const PrecisionContext& ctx) {
    AkTable t;
    t.epsilon = eps;
    t.k_max = k_max;
    t.digits_certified = ctx.work_digits();
    t.values.reserve(k_max + 1);
    long wb = ctx.bits();
    std::vector<mpz_class> binom{mpz_class(1)}; // Pascal row for current k
    for (int k = 0; k <= k_max; ++k) {
        BigReal acc(wb);
        for (int j = 0; j <= k; ++j) {
            BigReal term = BigReal::from_mpz(binom[j], wb) * grid[j];
            if (j % 2 == 0)
                acc += term;
            else
                acc -= term;
        }
        acc.check_finite("a_coefficients");
        t.values.push_back(std::move(acc));
        // next Pascal row
        binom.push_back(mpz_class(1));
        for (int j = k; j >= 1; --j) binom[j] += binom[j - 1];
    }
    return t;
}

inline AkTable a_coefficients(const mpq_class& eps, int k_max, const PrecisionContext& ctx) {
    return a_coefficients_from_grid(eps, k_max, phi_grid(eps, k_max, ctx), ctx);
}

// ---- phi grid cache file (decimal text, version tagged) ----

inline void save_phi_grid(const std::string& path, const mpq_class& eps,
                          const std::vector<BigReal>& grid, int digits) {
    std::ofstream out(path);
    if (!out) throw numeric_error("phi grid cache: cannot write " + path);
    out << "stieltjes-phi-grid v1\n";
    out << "epsilon " << eps.get_num() << "/" << eps.get_den() << "\n";
    out << "digits " << digits << "\n";
    out << "count " << grid.size() << "\n";
    for (std::size_t j = 0; j < grid.size(); ++j)
        out << j << " " << grid[j].to_string(digits + 10) << "\n";
}

inline std::optional<std::vector<BigReal>> load_phi_grid(const std::string& path,
                                                         const mpq_class& eps,
                                                         int j_max, int digits_needed,
                                                         long wb) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string header;
    std::getline(in, header);
    if (header != "stieltjes-phi-grid v1") return std::nullopt;
    std::string key, value;
    mpq_class file_eps;
    long file_digits = 0, count = 0;
    for (int i = 0; i < 3; ++i) {
        in >> key >> value;
        if (key == "epsilon") file_eps = mpq_class(value);
        else if (key == "digits") file_digits = std::stol(value);
        else if (key == "count") count = std::stol(value);
    }
    file_eps.canonicalize();
    if (file_eps != eps || file_digits < digits_needed || count < j_max + 1)
        return std::nullopt;
    std::vector<BigReal> grid;
    grid.reserve(j_max + 1);
    for (long j = 0; j <= j_max; ++j) {
        long idx;
        std::string num;
        if (!(in >> idx >> num) || idx != j) return std::nullopt;
        grid.push_back(BigReal::from_string(num, wb));
    }
    return grid;
}

// ---- the exact engine ----

// Working-precision policy for gamma_n: the binomial sums lose about
// k_max*log10(2) digits to cancellation and the n!/eps^n prefactor amplifies
// absolute error by n*log10(1/eps) more.
inline int gamma_exact_policy_digits(int target_digits, long n, int k_max, const mpq_class& eps) {
    double log10_inv_eps = -std::log10(mpq_class(eps).get_d());
    double extra = std::ceil(k_max * 0.30102999566398120) +
                   std::ceil(static_cast<double>(n) * std::max(0.0, log10_inv_eps));
    return target_digits + static_cast<int>(extra) + 30;
}

inline int default_k_max(long n) {
    return static_cast<int>(std::max<long>(4 * n, n + 80));
}

// Computes gamma_n for all n up to n_max from shared a_k/Stirling tables,
// certifying digits by a dual run at P and P+20 working digits.
class StieltjesEngine {
public:
    StieltjesEngine(int target_digits, long n_max, mpq_class eps = mpq_class(1, 32),
                    int k_max_override = 0, std::string cache_path = {})
        : target_(target_digits), n_max_(n_max), eps_(std::move(eps)),
          cache_path_(std::move(cache_path)) {
        if (target_digits < 1) throw domain_error("StieltjesEngine: digits must be >= 1");
        if (n_max < 0) throw domain_error("StieltjesEngine: n must be >= 0");
        if (eps_ <= 0) throw domain_error("StieltjesEngine: epsilon must be positive");
        k_max_ = k_max_override > 0 ? k_max_override : default_k_max(n_max);
        if (k_max_ < n_max) throw domain_error("StieltjesEngine: k_max must be >= n");
        stirling_ = std::make_unique<Stirling1Matrix>(k_max_);
        base_digits_ = gamma_exact_policy_digits(target_, n_max_, k_max_, eps_);
    }

    StieltjesResult compute(long n) {
        if (n < 0 || n > n_max_) throw domain_error("StieltjesEngine: n out of range");
        int digits = base_digits_;
        PrecisionContext probe(std::max(20, target_ + 10));
        for (int round = 0;; ++round) {
            const AkTable& lo = table_at(digits);
            const AkTable& hi = table_at(digits + 20);
            double tail_rel_lo;
            BigReal v_lo = assemble(n, lo, &tail_rel_lo);
            BigReal v_hi = assemble(n, hi, nullptr);
            StieltjesResult r;
            r.n = n;
            r.epsilon = eps_;
            r.k_truncation = k_max_;
            r.digits_certified = std::min(matching_digits(v_lo, v_hi), digits);
            r.value = v_hi;
            bool tail_ok = tail_rel_lo < std::pow(10.0, -(target_ + 5));
            r.certified = tail_ok && r.digits_certified >= target_;
            if (r.certified || round >= 4) return r;
            if (!tail_ok) return r; // larger k_max needed; escalating digits cannot help
            long next = static_cast<long>(digits) + (target_ - r.digits_certified) + 20;
            if (next > probe.ceiling) return r;
            digits = static_cast<int>(next);
        }
    }

    int k_max() const { return k_max_; }
    int base_digits() const { return base_digits_; }
    const Stirling1Matrix& stirling() const { return *stirling_; }

    const AkTable& table_at(int digits) {
        for (auto& t : tables_)
            if (t->digits_certified == digits) return *t;
        PrecisionContext ctx(digits, 10);
        std::vector<BigReal> grid;
        bool from_cache = false;
        if (!cache_path_.empty()) {
            auto loaded = load_phi_grid(cache_path_, eps_, k_max_, ctx.work_digits(), ctx.bits());
            if (loaded) {
                grid = std::move(*loaded);
                from_cache = true;
            }
        }
        if (grid.empty()) grid = phi_grid(eps_, k_max_, ctx);
        if (!cache_path_.empty() && !from_cache)
            save_phi_grid(cache_path_, eps_, grid, ctx.work_digits());
        tables_.push_back(std::make_unique<AkTable>(
            a_coefficients_from_grid(eps_, k_max_, grid, ctx)));
        tables_.back()->digits_certified = digits;
        return *tables_.back();
    }

private:
    // gamma_n = n!/eps^n sum_{k=n}^{k_max} (-1)^k/k! a_k S_k^(n).
    // Also reports the worst relative contribution of the last 5 terms.
    BigReal assemble(long n, const AkTable& t, double* tail_rel) const {
        long wb = PrecisionContext::bits_for_digits(t.digits_certified + 10);
        BigReal sum(wb);
        mpz_class kfact(1);
        for (long j = 2; j <= n; ++j) kfact *= j; // build k! incrementally from k = n
        if (n >= 1) { /* kfact = n! now */ }
        mpz_class fact = kfact;
        double max_tail = 0;
        double sum_mag_log = -HUGE_VAL;
        for (int k = static_cast<int>(n); k <= t.k_max; ++k) {
            if (k > n) fact *= k;
            const mpz_class& s1 = (*stirling_)(k, static_cast<int>(n));
            if (s1 != 0) {
                BigReal term = t.values[k] * BigReal::from_mpq(mpq_class(s1, fact), wb);
                if (k % 2 != 0) term = -term;
                sum += term;
                if (k > t.k_max - 5) {
                    double smag = sum.log10_abs();
                    sum_mag_log = std::max(sum_mag_log, smag);
                    double rel = std::pow(10.0, term.log10_abs() - smag);
                    max_tail = std::max(max_tail, rel);
                }
            }
        }
        if (tail_rel) *tail_rel = max_tail;
        // n! / eps^n prefactor, exact
        mpq_class pref(kfact);
        mpq_class en(1);
        for (long j = 0; j < n; ++j) en *= eps_;
        pref /= en;
        return sum * BigReal::from_mpq(pref, wb);
    }

    int target_;
    long n_max_;
    mpq_class eps_;
    std::string cache_path_;
    int k_max_ = 0;
    int base_digits_ = 0;
    std::unique_ptr<Stirling1Matrix> stirling_;
    std::vector<std::unique_ptr<AkTable>> tables_;
};

// One-shot form of the boxed series for a single n.
inline StieltjesResult gamma_exact(long n, const mpq_class& eps, int k_max,
                                   const PrecisionContext& ctx) {
    StieltjesEngine eng(ctx.digits, n, eps, k_max);
    return eng.compute(n);
}

} // namespace stieltjes
