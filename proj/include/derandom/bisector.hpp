#pragma once

#include <utility>
#include <vector>

#include "derandom/config.hpp"
#include "derandom/family.hpp"

namespace derandom {

// Greedy cover over functions [m] -> {0,1} with exactly ceil(fraction*m)
// ones; every k-subset of [m] ends up all-zero under some member.
Family base_bisector(int m, int k, const Rational& ones_fraction, const BuildConfig& cfg = {});

// Extends a bisector from [n] to [n+d] via k+1 disjoint forbidden blocks of
// size d; size grows by the factor k+1 (d = 0 returns the input unchanged).
Family extend_by_d(const Family& family, int d, int k, const BuildConfig& cfg = {});

// Pulls a bisector on [n2] back through x -> x mod n2 onto [n1], then extends
// by the remainder d = n1 mod n2.
Family extend_modulo(const Family& family, int n1, int k, const BuildConfig& cfg = {});

// t = ceil( sqrt(k) * ln(1/(1-alpha)) ).
int iteration_count(int k, const Rational& alpha);

// Iterated bisector: compose stages of fraction 1/sqrt(k) applied to the
// surviving zero set until exactly ceil(alpha*n) elements map to 1.
Family alpha_bisector(int n, int k, const Rational& alpha, const BuildConfig& cfg = {});

// Interval guess for the decomposition construction: disjoint ranges with
// per-interval element budgets, plus a reservoir range sliced into the
// augmented per-interval universes.
struct IntervalRange {
    int begin = 0;
    int end = 0;
    int length() const { return end - begin; }
};

struct IntervalPlan {
    std::vector<IntervalRange> intervals;
    std::vector<int> budget0;  // elements of S (or S0) per interval
    std::vector<int> budget1;  // elements of S1 per interval (mapping version)
    IntervalRange reservoir;
    std::vector<std::vector<std::int32_t>> augmented;  // element lists, pairwise disjoint
};

// Union over interval guesses of per-guess product families.
Family interval_bisector(int n, int k, const Rational& alpha, const BuildConfig& cfg = {});

// Greedy adversary: k times pick the element mapped to 1 by the most
// surviving functions.  Returns the witness subset and how many functions map
// it entirely to 0 (>= 1 for every valid bisector).
std::pair<std::vector<int>, std::int64_t> adversary_lower_bound(const Family& family, int k);

} // namespace derandom
