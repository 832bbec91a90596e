#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace derandom {

// All primes in [2, limit], ascending (sieve of Eratosthenes).
std::vector<std::int64_t> sieve(std::int64_t limit);

// r = ceil( k(k-1) log2(n) / (4 ln k + 2 ln log2(n) - 2 ln 2) ).
// log is base 2 throughout, ln is natural.
std::int64_t required_prime_count(std::int64_t n, std::int64_t k);

// Moduli for the modulo splitter: descending primes below the cutoff until
// the product covers n^(k(k-1)/2).
struct PrimeWindow {
    std::vector<std::int64_t> moduli;  // ascending
    int r = 0;                         // count
    mpz_class capacity;                // exact product of moduli
    mpz_class required;                // n^(k(k-1)/2)
    int n = 0, k = 0, ell = 0;
    bool out_of_regime = false;
};

// Selects the largest primes strictly below ell, adding until the product
// reaches n^(k(k-1)/2).  In the analyzed regime (k >= 8, ell >= k^2 log2 n) the
// count stays within ceil(k^2 log2 n / log2 ell); below those thresholds the
// window keeps growing downward and is flagged out-of-regime.  Throws
// InsufficientPrimes when even all primes below ell fall short.
PrimeWindow prime_window(int n, int k, int ell);

// True iff prod(moduli) >= n^(k(k-1)/2), in exact arithmetic.
bool check_crt_capacity(const PrimeWindow& window, int n, int k);

} // namespace derandom
