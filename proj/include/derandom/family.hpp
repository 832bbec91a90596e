#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "derandom/function.hpp"
#include "derandom/rational.hpp"

namespace derandom {

enum class FamilyKind { splitter, bisector, mapping, universal };

enum class Uniformity { none, a_uniform, uniform, strong };

const char* kind_name(FamilyKind k);
FamilyKind parse_kind(const std::string& s);

// One greedy iteration: how much of the pool was scanned, the best coverage
// found, and how many targets were still uncovered before the pick.
struct GreedyLogEntry {
    std::int64_t pool_scanned = 0;
    std::int64_t best_cover = 0;
    std::int64_t remaining_before = 0;
};

// Ordered list of functions plus the parameters it was built for.  Builders
// append in construction order; serialization preserves the order.
struct Family {
    FamilyKind kind = FamilyKind::splitter;
    int n = 0;
    int k = 0;
    int ell = 2;                 // splitter kinds; 2 for binary kinds
    Rational alpha{0, 1};        // binary kinds
    Rational beta{0, 1};         // mapping kind
    int k0 = 0;                  // mapping kind
    int k1 = 0;                  // mapping kind
    Uniformity uniformity = Uniformity::none;
    int uniformity_a = 0;        // the a of a_uniform
    bool out_of_regime = false;
    std::string builder;         // provenance: which construction produced this
    std::uint64_t seed = 0;      // greedy sample seed (0 when pool was exhaustive)
    bool sampled_pool = false;

    std::vector<Function> functions;

    // Build diagnostics; not serialized.
    std::vector<GreedyLogEntry> coverage_log;
    std::vector<std::int64_t> guess_sizes;

    std::size_t size() const { return functions.size(); }

    // Structural invariants: shared n/ell, and exact ones-count ceil(alpha*n)
    // for binary kinds.  Throws on violation.
    void validate() const;
};

std::string uniformity_str(Uniformity u, int a);
void parse_uniformity(const std::string& s, Uniformity& u, int& a);

// Measures the family and tags uniformity/uniformity_a accordingly:
// strong if every function is balanced over all of [ell], uniform if every
// nonuniformity is <= 1, else a_uniform with the measured maximum.
void tag_measured_uniformity(Family& fam);

} // namespace derandom
