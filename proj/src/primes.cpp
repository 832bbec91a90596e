#include "derandom/primes.hpp"

#include <algorithm>
#include <cmath>

#include "derandom/error.hpp"
#include "derandom/numeric.hpp"

namespace derandom {

std::vector<std::int64_t> sieve(std::int64_t limit) {
    if (limit < 2) fail(Errc::limit_too_small, "sieve limit must be at least 2");
    if (limit > (std::int64_t{1} << 28)) fail(Errc::bad_params, "sieve limit too large");
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (std::int64_t q = p * p; q <= limit; q += p) composite[q] = true;
    }
    return primes;
}

std::int64_t required_prime_count(std::int64_t n, std::int64_t k) {
    if (k < 2 || n < k) fail(Errc::bad_params, "required_prime_count needs n >= k >= 2");
    auto eval = [&](auto one) {
        using T = decltype(one);
        T log2n = std::log2(static_cast<T>(n));
        T denom = 4 * std::log(static_cast<T>(k)) + 2 * std::log(log2n) - 2 * std::log(T(2));
        return static_cast<T>(k) * (k - 1) * log2n / denom;
    };
    return boundary_checked_ceil(eval(double(1)), [&] { return eval((long double)(1)); });
}

PrimeWindow prime_window(int n, int k, int ell) {
    if (k < 2 || n < k) fail(Errc::bad_params, "prime_window needs n >= k >= 2");
    PrimeWindow w;
    w.n = n;
    w.k = k;
    w.ell = ell;
    mpz_ui_pow_ui(w.required.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(static_cast<std::int64_t>(k) * (k - 1) / 2));
    w.capacity = 1;
    if (ell <= 2)
        fail(Errc::insufficient_primes, "no primes strictly below " + std::to_string(ell));

    std::vector<std::int64_t> primes = sieve(ell - 1);
    for (auto it = primes.rbegin(); it != primes.rend() && w.capacity < w.required; ++it) {
        w.moduli.push_back(*it);
        w.capacity *= static_cast<unsigned long>(*it);
    }
    if (w.capacity < w.required)
        fail(Errc::insufficient_primes, "primes below " + std::to_string(ell) +
                                            " cannot reach capacity n^(k(k-1)/2)");
    std::sort(w.moduli.begin(), w.moduli.end());
    w.r = static_cast<int>(w.moduli.size());

    // Analyzed regime: k >= 8, ell >= k^2 log2 n, and no more moduli than
    // ceil(k^2 log2 n / log2 ell).
    bool in_regime = k >= 8;
    if (in_regime) {
        long double cutoff = (long double)k * k * std::log2((long double)n);
        in_regime = (long double)ell >= cutoff;
    }
    if (in_regime) {
        auto eval = [&](auto one) {
            using T = decltype(one);
            return static_cast<T>(k) * k * std::log2(static_cast<T>(n)) /
                   std::log2(static_cast<T>(ell));
        };
        std::int64_t bound =
            boundary_checked_ceil(eval(double(1)), [&] { return eval((long double)(1)); });
        in_regime = w.r <= bound;
    }
    w.out_of_regime = !in_regime;
    return w;
}

bool check_crt_capacity(const PrimeWindow& window, int n, int k) {
    std::int64_t e = k >= 2 ? static_cast<std::int64_t>(k) * (k - 1) / 2 : 0;
    mpz_class required;
    mpz_ui_pow_ui(required.get_mpz_t(), static_cast<unsigned long>(n < 0 ? 0 : n),
                  static_cast<unsigned long>(e));
    mpz_class prod = 1;
    for (std::int64_t m : window.moduli) prod *= static_cast<unsigned long>(m);
    return prod >= required;
}

} // namespace derandom
