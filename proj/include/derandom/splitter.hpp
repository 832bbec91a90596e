#pragma once

#include <vector>

#include "derandom/config.hpp"
#include "derandom/family.hpp"
#include "derandom/primes.hpp"

namespace derandom {

// One function x -> x mod m per window modulus.  For ell >= n the identity
// embedding alone is emitted instead.  Every member is uniform; validity
// follows from the CRT capacity of the window.
Family modulo_splitter(int n, int k, int ell, const BuildConfig& cfg = {});

// Two-level composition: an (n,k,ell')-splitter with ell' = floor(2^(ell/k^2))
// capped at n, composed with an (m',k,ell)-splitter per intermediate image
// size m'.  Degenerates to modulo_splitter when ell' <= ell.
Family composed_splitter(int n, int k, int ell, const BuildConfig& cfg = {});

// Greedy cover over balanced functions [t] -> [ell]; strongly uniform.
// When `subsets` is non-null only those k-subsets must be split.
Family brute_force_splitter(int t, int k, int ell, const BuildConfig& cfg = {},
                            const std::vector<std::vector<int>>* subsets = nullptr);

// The two-dimensional table of one function used by the smoothing step:
// column i lists f^-1(i) ascending; the first k stripes partition row range
// [0, h), the last stripe holds all rows above the minimum column height h.
struct SmoothingTable {
    std::vector<std::int32_t> column_of;        // image value per column index
    std::vector<std::vector<std::int32_t>> columns;
    int h = 0;
    struct Stripe { int row_begin = 0; int row_end = 0; };
    std::vector<Stripe> stripes;  // k+1 entries

    static SmoothingTable build(const Function& f, int k);
};

// Smoothing step: from an a-uniform splitter, emit k+1 functions per input
// (one per stripe, redistributing that stripe to equalize column heights).
// Requires n >= a*ell*(k+1) and measured nonuniformity <= a.
Family smooth(const Family& family, int a, const BuildConfig& cfg = {});

// Dispatcher over the construction cases; `goal` selects the uniformity
// class the result must satisfy.
Family build_splitter(int n, int k, int ell, Uniformity goal, const BuildConfig& cfg = {});

} // namespace derandom
