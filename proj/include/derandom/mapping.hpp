#pragma once

#include <vector>

#include "derandom/bisector.hpp"
#include "derandom/config.hpp"
#include "derandom/family.hpp"

namespace derandom {

// Greedy cover over exact-ones functions: (S0, S1) is covered when
// S0 is all-zero and exactly ceil(beta*k1) elements of S1 map to 1.
Family base_mapping_family(int m, int k0, int k1, const Rational& ones_fraction,
                           const Rational& beta, const BuildConfig& cfg = {});

// Composes each function of a uniform splitter with the members of a mapping
// family on the splitter codomain, then emits k+1 repaired variants per
// composition to restore the exact ones-count.
Family lift_mapping_family(int n, int k, int k0, int k1, const Rational& beta,
                           const Family& splitter, const Family& base,
                           const BuildConfig& cfg = {});

// Per-iteration targets ceil(beta_i * k_i) of the iterated construction:
// geometric profile beta_{i-1} k_{i-1} = beta_i k_i e^(1/sqrt(k)), ceilings
// applied, the final target absorbing the residue so the sum is exactly k1.
struct BetaSchedule {
    int k = 0;
    int k1 = 0;
    Rational alpha{0, 1};
    int t = 0;
    std::vector<int> targets;    // t entries, sum == k1
    std::vector<int> residuals;  // t+1 entries: k_1 = k1 down to 0
};

BetaSchedule beta_schedule(int k, int k1, const Rational& alpha);

// t stages of mapping families applied to the surviving zero set; the result
// is an (n, k0, k1, alpha, 1)-mapping family.
Family iterated_mapping_family(int n, int k0, int k1, const Rational& alpha,
                               const BuildConfig& cfg = {});

// Interval-decomposition version with merged S0/S1 interval plans.
Family interval_mapping_family(int n, int k0, int k1, const Rational& alpha,
                               const BuildConfig& cfg = {});

// Union over k0 + k1 = k of (n, k0, k1, alpha, 1)-mapping families; exact
// duplicates dropped, first occurrence wins.
Family universal_set(int n, int k, const Rational& alpha, const BuildConfig& cfg = {});

} // namespace derandom
