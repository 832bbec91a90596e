#include "derandom/greedy.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <mutex>
#include <tuple>
#include <numeric>
#include <thread>

#include <gmpxx.h>

namespace derandom {
namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t limit = max - max % n;
    std::uint64_t x;
    do { x = rng(); } while (x >= limit);
    return x % n;
}

// first `take` entries of a seeded Fisher-Yates pass over [m], sorted
std::vector<int> sample_positions(std::mt19937_64& rng, int m, int take) {
    std::vector<int> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < take; ++i) {
        int j = i + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(m - i)));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(take);
    std::sort(idx.begin(), idx.end());
    return idx;
}

mpz_class binomial(int m, int o) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(o));
    return r;
}

mpz_class balanced_count(int t, int ell) {
    int flo = t / ell, rem = t % ell;
    mpz_class r, fact;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(t));
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(flo + 1));
    for (int i = 0; i < rem; ++i) r /= fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(flo));
    for (int i = 0; i < ell - rem; ++i) r /= fact;
    return r * binomial(ell, rem);
}

} // namespace

void CandidatePool::canonicalize() {
    // sort keyed on a packed prefix so full row comparisons stay rare
    auto prefix = [&](std::size_t i) {
        const std::uint16_t* r = row(i);
        std::uint64_t key = 0;
        for (int p = 0; p < 4; ++p) key = key << 16 | (p < width ? r[p] : 0);
        return key;
    };
    std::vector<std::pair<std::uint64_t, std::uint32_t>> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = {prefix(i), static_cast<std::uint32_t>(i)};
    auto less = [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return std::lexicographical_compare(row(a.second), row(a.second) + width, row(b.second),
                                            row(b.second) + width);
    };
    auto eq = [&](const auto& a, const auto& b) {
        return a.first == b.first && std::equal(row(a.second), row(a.second) + width, row(b.second));
    };
    std::sort(order.begin(), order.end(), less);
    order.erase(std::unique(order.begin(), order.end(), eq), order.end());
    std::vector<std::uint16_t> sorted;
    sorted.reserve(order.size() * width);
    for (auto [key, i] : order) sorted.insert(sorted.end(), row(i), row(i) + width);
    data = std::move(sorted);
    count = order.size();
}

CandidatePool exact_ones_pool(int m, int ones, const BuildConfig& cfg) {
    if (m < 1 || ones < 0 || ones > m)
        fail(Errc::bad_params, "exact_ones_pool needs 0 <= ones <= m");
    if (m > cfg.max_pool_width)
        fail(Errc::pool_exhausted, "pool universe wider than the configured budget");
    CandidatePool pool;
    pool.width = m;
    std::vector<std::uint16_t> row(m, 0);

    if (binomial(m, ones) <= cfg.full_pool_limit) {
        // all one-position combinations
        std::vector<int> pos(ones);
        std::iota(pos.begin(), pos.end(), 0);
        while (true) {
            std::fill(row.begin(), row.end(), 0);
            for (int p : pos) row[p] = 1;
            pool.push_row(row.data());
            int i = ones - 1;
            while (i >= 0 && pos[i] == m - ones + i) --i;
            if (i < 0) break;
            ++pos[i];
            for (int j = i + 1; j < ones; ++j) pos[j] = pos[j - 1] + 1;
        }
    } else {
        pool.sampled = true;
        pool.seed = cfg.seed;
        std::mt19937_64 rng(cfg.seed);
        for (std::int64_t s = 0; s < cfg.sample_size; ++s) {
            std::fill(row.begin(), row.end(), 0);
            for (int p : sample_positions(rng, m, ones)) row[p] = 1;
            pool.push_row(row.data());
        }
    }
    pool.canonicalize();
    return pool;
}

CandidatePool balanced_pool(int t, int ell, const BuildConfig& cfg) {
    if (t < 1 || ell < 1) fail(Errc::bad_params, "balanced_pool needs t >= 1, ell >= 1");
    if (ell > 65535) fail(Errc::bad_params, "pool codomain too large");
    if (t > cfg.max_pool_width)
        fail(Errc::pool_exhausted, "pool universe wider than the configured budget");
    CandidatePool pool;
    pool.width = t;
    int flo = t / ell, rem = t % ell;

    if (balanced_count(t, ell) <= cfg.full_pool_limit) {
        // which classes get the extra element, then all multiset permutations
        std::vector<int> ceil_classes(rem);
        std::iota(ceil_classes.begin(), ceil_classes.end(), 0);
        while (true) {
            std::vector<std::uint16_t> row;
            row.reserve(t);
            std::size_t ci = 0;
            for (int c = 0; c < ell; ++c) {
                int reps = flo + (ci < ceil_classes.size() &&
                                          ceil_classes[ci] == c
                                      ? (++ci, 1)
                                      : 0);
                for (int r = 0; r < reps; ++r) row.push_back(static_cast<std::uint16_t>(c));
            }
            do {
                pool.push_row(row.data());
            } while (std::next_permutation(row.begin(), row.end()));
            int i = rem - 1;
            while (i >= 0 && ceil_classes[i] == ell - rem + i) --i;
            if (i < 0) break;
            ++ceil_classes[i];
            for (int j = i + 1; j < rem; ++j) ceil_classes[j] = ceil_classes[j - 1] + 1;
        }
    } else {
        pool.sampled = true;
        pool.seed = cfg.seed;
        std::mt19937_64 rng(cfg.seed);
        std::vector<std::uint16_t> row(t);
        for (std::int64_t s = 0; s < cfg.sample_size; ++s) {
            std::vector<int> ceil_classes = sample_positions(rng, ell, rem);
            std::size_t ci = 0, at = 0;
            for (int c = 0; c < ell; ++c) {
                int reps = flo + (ci < ceil_classes.size() && ceil_classes[ci] == c ? (++ci, 1) : 0);
                for (int r = 0; r < reps; ++r) row[at++] = static_cast<std::uint16_t>(c);
            }
            for (int i = t - 1; i > 0; --i) {
                int j = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(i + 1)));
                std::swap(row[i], row[j]);
            }
            pool.push_row(row.data());
        }
    }
    pool.canonicalize();
    return pool;
}

std::shared_ptr<const CandidatePool> balanced_pool_cached(int t, int ell,
                                                          const BuildConfig& cfg) {
    using Key = std::tuple<int, int, std::int64_t, std::int64_t, std::uint64_t, std::int64_t>;
    Key key{t, ell, cfg.full_pool_limit, cfg.sample_size, cfg.seed, cfg.max_pool_width};
    static std::mutex mu;
    static std::deque<std::pair<Key, std::shared_ptr<const CandidatePool>>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        for (auto& [k2, pool] : cache)
            if (k2 == key) return pool;
    }
    auto pool = std::make_shared<const CandidatePool>(balanced_pool(t, ell, cfg));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace_back(key, pool);
    if (cache.size() > 16) cache.pop_front();
    return pool;
}

TargetSet all_subsets(int n, int k) {
    TargetSet ts;
    ts.width = k;
    if (k == 0) {
        ++ts.count;  // the empty subset
        return ts;
    }
    if (k > n) return ts;
    std::vector<std::int32_t> s(k);
    std::iota(s.begin(), s.end(), 0);
    while (true) {
        ts.push(s.data());
        int i = 0;
        while (i < k) {
            std::int32_t limit = (i + 1 < k) ? s[i + 1] : n;
            if (s[i] + 1 < limit) break;
            ++i;
        }
        if (i == k) break;
        ++s[i];
        for (int j = 0; j < i; ++j) s[j] = j;
    }
    return ts;
}

TargetSet all_disjoint_pairs(int n, int k0, int k1) {
    int k = k0 + k1;
    TargetSet ts;
    ts.width = k;
    if (k == 0) {
        ++ts.count;
        return ts;
    }
    TargetSet subsets = all_subsets(n, k);
    TargetSet picks = all_subsets(k, k1);
    std::vector<std::int32_t> rowbuf(k);
    for (std::size_t si = 0; si < subsets.count; ++si) {
        const std::int32_t* s = subsets.row(si);
        for (std::size_t pi = 0; pi < picks.count; ++pi) {
            const std::int32_t* pick = picks.row(pi);
            std::vector<bool> in_s1(k, false);
            for (int j = 0; j < k1; ++j) in_s1[pick[j]] = true;
            int i0 = 0, i1 = k0;
            for (int i = 0; i < k; ++i) rowbuf[in_s1[i] ? i1++ : i0++] = s[i];
            ts.push(rowbuf.data());
        }
    }
    return ts;
}

namespace {

// Column-major pool view: cols[pos] is the pos-th image value of every
// candidate, so a per-target scan walks contiguous memory.
struct ColumnPool {
    std::size_t count = 0;
    int width = 0;
    std::vector<std::uint16_t> data;

    explicit ColumnPool(const CandidatePool& pool)
        : count(pool.count), width(pool.width), data(pool.data.size()) {
        for (std::size_t i = 0; i < count; ++i)
            for (int p = 0; p < width; ++p) data[p * count + i] = pool.row(i)[p];
    }
    const std::uint16_t* col(int p) const { return data.data() + p * count; }
};

constexpr std::size_t kScanBlock = 4096;

// counts[i] += [candidate lo+i is injective on the target positions]
void accumulate_block(const ColumnPool& cp, const TargetSet& targets, int k, std::size_t lo,
                      std::size_t len, std::int32_t* counts) {
    for (std::size_t t = 0; t < targets.count; ++t) {
        const std::int32_t* s = targets.row(t);
        if (k == 2) {
            const std::uint16_t* a = cp.col(s[0]) + lo;
            const std::uint16_t* b = cp.col(s[1]) + lo;
            for (std::size_t i = 0; i < len; ++i) counts[i] += a[i] != b[i];
        } else if (k == 3) {
            const std::uint16_t* a = cp.col(s[0]) + lo;
            const std::uint16_t* b = cp.col(s[1]) + lo;
            const std::uint16_t* c = cp.col(s[2]) + lo;
            for (std::size_t i = 0; i < len; ++i)
                counts[i] += (a[i] != b[i]) & (a[i] != c[i]) & (b[i] != c[i]);
        } else {
            const std::uint16_t* ptrs[16];
            for (int j = 0; j < k; ++j) ptrs[j] = cp.col(s[j]) + lo;
            for (std::size_t i = 0; i < len; ++i) {
                int ok = 1;
                for (int x = 1; x < k && ok; ++x)
                    for (int y = 0; y < x; ++y)
                        if (ptrs[x][i] == ptrs[y][i]) { ok = 0; break; }
                counts[i] += ok;
            }
        }
    }
}

detail::ScanResult scan_columns(const ColumnPool& cp, const TargetSet& targets, int k,
                                std::size_t begin, std::size_t end) {
    detail::ScanResult r;
    std::vector<std::int32_t> counts(kScanBlock);
    for (std::size_t lo = begin; lo < end; lo += kScanBlock) {
        std::size_t len = std::min(kScanBlock, end - lo);
        std::fill(counts.begin(), counts.begin() + len, 0);
        accumulate_block(cp, targets, k, lo, len, counts.data());
        for (std::size_t i = 0; i < len; ++i)
            if (counts[i] > r.best_cover) {
                r.best_cover = counts[i];
                r.best_index = lo + i;
            }
    }
    return r;
}

} // namespace

GreedyCoverState greedy_cover_injective(const CandidatePool& pool, TargetSet targets, int k,
                                        int out_ell, int threads) {
    if (k == 1) {
        // every candidate splits singletons; the lex-smallest row covers all
        GreedyCoverState st;
        st.uncovered.width = targets.width;
        if (targets.count > 0) {
            st.log.push_back({static_cast<std::int64_t>(pool.count),
                              static_cast<std::int64_t>(targets.count),
                              static_cast<std::int64_t>(targets.count)});
            const std::uint16_t* win = pool.row(0);
            st.chosen.emplace_back(pool.width, out_ell,
                                   std::vector<std::int32_t>(win, win + pool.width));
        }
        return st;
    }
    ColumnPool cp(pool);
    auto injective = [k](const std::uint16_t* cand, const std::int32_t* s) {
        for (int i = 1; i < k; ++i)
            for (int j = 0; j < i; ++j)
                if (cand[s[i]] == cand[s[j]]) return false;
        return true;
    };
    GreedyCoverState st;
    st.uncovered = std::move(targets);
    while (st.uncovered.count > 0) {
        std::int64_t remaining = static_cast<std::int64_t>(st.uncovered.count);
        detail::ScanResult best;
        if (threads <= 1 || pool.count < 2 * kScanBlock) {
            best = scan_columns(cp, st.uncovered, k, 0, pool.count);
        } else {
            std::vector<detail::ScanResult> parts(threads);
            detail::run_parallel(threads, pool.count,
                                 [&](int w, std::size_t lo, std::size_t hi) {
                                     parts[w] = scan_columns(cp, st.uncovered, k, lo, hi);
                                 });
            best = detail::parallel_scan_merge(parts);
        }
        if (best.best_cover <= 0)
            fail(Errc::pool_exhausted,
                 "no candidate covers any remaining target; grow the pool budget");
        st.log.push_back({static_cast<std::int64_t>(pool.count), best.best_cover, remaining});
        const std::uint16_t* win = pool.row(best.best_index);
        st.chosen.emplace_back(pool.width, out_ell,
                               std::vector<std::int32_t>(win, win + pool.width));
        TargetSet next;
        next.width = st.uncovered.width;
        for (std::size_t t = 0; t < st.uncovered.count; ++t)
            if (!injective(win, st.uncovered.row(t))) next.push(st.uncovered.row(t));
        st.uncovered = std::move(next);
    }
    return st;
}

namespace detail {

// parts are ordered by ascending index range, so keeping the first part that
// attains the maximum also keeps the smallest winning index.
ScanResult parallel_scan_merge(const std::vector<ScanResult>& parts) {
    ScanResult best;
    for (const ScanResult& p : parts)
        if (p.best_cover > best.best_cover) best = p;
    return best;
}

void run_parallel(int threads, std::size_t total,
                  const std::function<void(int, std::size_t, std::size_t)>& work) {
    std::vector<std::thread> pool;
    std::size_t chunk = (total + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        std::size_t lo = std::min(total, w * chunk);
        std::size_t hi = std::min(total, lo + chunk);
        pool.emplace_back(work, w, lo, hi);
    }
    for (std::thread& th : pool) th.join();
}

} // namespace detail

} // namespace derandom
