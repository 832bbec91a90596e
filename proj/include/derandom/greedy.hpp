#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "derandom/config.hpp"
#include "derandom/family.hpp"

namespace derandom {

// Candidate pool for the greedy cover engine: a flat row-major matrix of
// image sequences, lexicographically sorted and de-duplicated so that "first
// row achieving the maximum" is also "lexicographically smallest".
struct CandidatePool {
    int width = 0;
    std::size_t count = 0;
    std::vector<std::uint16_t> data;
    bool sampled = false;
    std::uint64_t seed = 0;

    const std::uint16_t* row(std::size_t i) const { return data.data() + i * width; }
    void push_row(const std::uint16_t* r) { data.insert(data.end(), r, r + width); ++count; }
    void canonicalize();  // sort rows lexicographically, drop duplicates
};

// All functions [m] -> {0,1} with exactly `ones` ones, or a seeded sample of
// them when C(m, ones) exceeds cfg.full_pool_limit.
CandidatePool exact_ones_pool(int m, int ones, const BuildConfig& cfg);

// All balanced functions [t] -> [ell] (every preimage of size floor(t/ell) or
// ceil(t/ell)), or a seeded sample.
CandidatePool balanced_pool(int t, int ell, const BuildConfig& cfg);

// Same pool behind a small most-recently-used cache, so back-to-back builds
// on the same universe reuse it.
std::shared_ptr<const CandidatePool> balanced_pool_cached(int t, int ell,
                                                          const BuildConfig& cfg);

// Flat list of targets for the cover predicate; each target is `width`
// int32 values.
struct TargetSet {
    int width = 0;
    std::size_t count = 0;
    std::vector<std::int32_t> data;

    const std::int32_t* row(std::size_t i) const { return data.data() + i * width; }
    void push(const std::int32_t* r) { data.insert(data.end(), r, r + width); ++count; }
};

// All k-subsets of [n] in colexicographic order.
TargetSet all_subsets(int n, int k);

// All disjoint (S0, S1) pairs with |S0| = k0, |S1| = k1; rows hold S0 then S1.
TargetSet all_disjoint_pairs(int n, int k0, int k1);

// In-progress state of a greedy cover run; the bisector, mapping, and
// brute-force splitter builders all instantiate this engine with different
// predicates.
struct GreedyCoverState {
    TargetSet uncovered;
    std::vector<Function> chosen;
    std::vector<GreedyLogEntry> log;
};

namespace detail {

struct ScanResult {
    std::int64_t best_cover = -1;
    std::size_t best_index = 0;
};

// Scans candidates [begin, end) and returns the smallest index attaining the
// maximum coverage of the remaining targets.
template <class Covers>
ScanResult scan_range(const CandidatePool& pool, const TargetSet& targets, Covers covers,
                      std::size_t begin, std::size_t end, std::int64_t stop_at) {
    ScanResult r;
    for (std::size_t i = begin; i < end; ++i) {
        const std::uint16_t* cand = pool.row(i);
        std::int64_t c = 0;
        for (std::size_t t = 0; t < targets.count; ++t)
            if (covers(cand, targets.row(t))) ++c;
        if (c > r.best_cover) {
            r.best_cover = c;
            r.best_index = i;
            if (c == stop_at) break;  // nothing can beat full coverage
        }
    }
    return r;
}

ScanResult parallel_scan_merge(const std::vector<ScanResult>& parts);

void run_parallel(int threads, std::size_t total,
                  const std::function<void(int, std::size_t, std::size_t)>& work);

} // namespace detail

// Greedy cover specialized to the "injective on the target's k positions"
// predicate, scanning a column-major copy of the pool so the per-target inner
// loop vectorizes.  Same selection rule and results as greedy_cover.
GreedyCoverState greedy_cover_injective(const CandidatePool& pool, TargetSet targets, int k,
                                        int out_ell, int threads);

// Repeatedly picks the candidate covering the most uncovered targets
// (ties: lexicographically smallest image row, which is the lowest index in
// the canonical pool) until every target is covered.  Throws PoolExhausted if
// the best candidate covers nothing while targets remain.
template <class Covers>
GreedyCoverState greedy_cover(const CandidatePool& pool, TargetSet targets, Covers covers,
                              int out_ell, int threads) {
    GreedyCoverState st;
    st.uncovered = std::move(targets);
    while (st.uncovered.count > 0) {
        detail::ScanResult best;
        std::int64_t remaining = static_cast<std::int64_t>(st.uncovered.count);
        if (threads <= 1 || pool.count < 1024) {
            best = detail::scan_range(pool, st.uncovered, covers, 0, pool.count, remaining);
        } else {
            std::vector<detail::ScanResult> parts(threads);
            detail::run_parallel(threads, pool.count,
                                 [&](int w, std::size_t lo, std::size_t hi) {
                                     parts[w] = detail::scan_range(pool, st.uncovered, covers,
                                                                   lo, hi, remaining);
                                 });
            best = detail::parallel_scan_merge(parts);
        }
        if (best.best_cover <= 0)
            fail(Errc::pool_exhausted,
                 "no candidate covers any remaining target; grow the pool budget");
        st.log.push_back({static_cast<std::int64_t>(pool.count), best.best_cover, remaining});

        const std::uint16_t* win = pool.row(best.best_index);
        std::vector<std::int32_t> images(win, win + pool.width);
        st.chosen.emplace_back(pool.width, out_ell, std::move(images));

        TargetSet next;
        next.width = st.uncovered.width;
        for (std::size_t t = 0; t < st.uncovered.count; ++t)
            if (!covers(win, st.uncovered.row(t))) next.push(st.uncovered.row(t));
        st.uncovered = std::move(next);
    }
    return st;
}

} // namespace derandom
