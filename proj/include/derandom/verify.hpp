#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "derandom/family.hpp"

namespace derandom {

// Brute-force oracle verdict.  checked counts target objects examined
// (subsets, (S0,S1) pairs, or split instances).  On failure, witness holds
// the uncovered subset (or S0 followed by S1), or witness_function the index
// of the offending function for per-function checks.  stats maps cover
// multiplicity -> number of targets covered that many times.
struct VerifyReport {
    bool valid = true;
    std::int64_t checked = 0;
    std::optional<std::vector<int>> witness;
    std::optional<int> witness_function;
    std::map<std::int64_t, std::int64_t> stats;

    std::int64_t min_multiplicity() const {
        return stats.empty() ? 0 : stats.begin()->first;
    }
};

// Every k-subset of [n] must be split into ell parts of size between
// floor(k/ell) and ceil(k/ell) by some member (injectivity when ell >= k).
// Exhaustive over all C(n,k) subsets, colexicographic order.
VerifyReport verify_splitter(const Family& family, int k);

struct UniformityMode {
    Uniformity kind = Uniformity::uniform;
    int a = 0;

    static UniformityMode uniform() { return {Uniformity::uniform, 0}; }
    static UniformityMode a_uniform(int a) { return {Uniformity::a_uniform, a}; }
    static UniformityMode strong() { return {Uniformity::strong, 0}; }
};

// Per-function preimage-size check against the selected definition.
VerifyReport verify_uniformity(const Family& family, UniformityMode mode);

// Exact ones-count ceil(alpha*n) per function, and every k-subset mapped
// entirely to 0 by some member.
VerifyReport verify_bisector(const Family& family, int k, const Rational& alpha);

// Exact ones-count, and for every disjoint (S0,S1) with |S0|=k0, |S1|=k1 some
// member has S0 in f^-1(0) and exactly ceil(beta*k1) elements of S1 in f^-1(1).
VerifyReport verify_mapping_family(const Family& family, int k0, int k1,
                                   const Rational& alpha, const Rational& beta);

// Exact ones-count, and every 0/1 split of every k-subset realized by some
// member; checked counts C(n,k) * 2^k split instances.
VerifyReport verify_universal(const Family& family, int k, const Rational& alpha);

} // namespace derandom
