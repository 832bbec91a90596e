#include "derandom/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <gmpxx.h>

#include "derandom/greedy.hpp"
#include "derandom/numeric.hpp"
#include "derandom/verify.hpp"

namespace derandom {
namespace {

void require_oracle(const Family& fam, int k, const BuildConfig& cfg) {
    bool needed = fam.out_of_regime || fam.sampled_pool;
    if (!needed || !cfg.oracle_check) return;
    VerifyReport rep = verify_splitter(fam, k);
    if (!rep.valid)
        fail(Errc::oracle_failed, "out-of-regime splitter build failed the exhaustive oracle");
}

// floor(2^(ell / ksq)), verified exactly: c is the answer iff
// c^ksq <= 2^ell < (c+1)^ksq.
std::int64_t floor_pow2_ratio(std::int64_t ell, std::int64_t ksq) {
    long double e = (long double)ell / (long double)ksq;
    if (e >= 62.0L) return std::int64_t{1} << 62;
    auto fits = [&](std::int64_t c) {  // c^ksq <= 2^ell
        if (c <= 0) return true;
        mpz_class lhs, rhs;
        mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(c),
                      static_cast<unsigned long>(ksq));
        mpz_ui_pow_ui(rhs.get_mpz_t(), 2ul, static_cast<unsigned long>(ell));
        return lhs <= rhs;
    };
    auto c = static_cast<std::int64_t>(std::floor(std::pow(2.0L, e)));
    while (!fits(c)) --c;
    while (fits(c + 1)) ++c;
    return c;
}

// exact test for k >= log2(log2(n))
bool k_at_least_loglog(int k, int n) {
    if (k >= 6) return true;  // 2^(2^6) dwarfs any feasible n
    unsigned long long tower = 1ull << (1ull << k);
    return tower >= static_cast<unsigned long long>(n);
}

Family identity_family(int n, int ell) {
    Family fam;
    fam.kind = FamilyKind::splitter;
    fam.n = n;
    fam.ell = ell;
    fam.builder = "identity";
    fam.functions.push_back(identity_function(n, ell));
    tag_measured_uniformity(fam);
    return fam;
}

} // namespace

Family modulo_splitter(int n, int k, int ell, const BuildConfig& cfg) {
    if (k < 2) fail(Errc::bad_params, "modulo_splitter needs k >= 2");
    if (ell < k) fail(Errc::bad_params, "ell < k cannot split injectively");
    if (n < k) fail(Errc::bad_params, "need n >= k");

    if (ell >= n) {
        Family fam = identity_family(n, ell);
        fam.k = k;
        return fam;
    }

    PrimeWindow window = prime_window(n, k, ell);
    Family fam;
    fam.kind = FamilyKind::splitter;
    fam.n = n;
    fam.k = k;
    fam.ell = ell;
    fam.builder = "modulo";
    fam.out_of_regime = window.out_of_regime;
    for (std::int64_t m : window.moduli)
        fam.functions.push_back(modulo_function(n, static_cast<int>(m), ell));
    tag_measured_uniformity(fam);
    require_oracle(fam, k, cfg);
    return fam;
}

Family composed_splitter(int n, int k, int ell, const BuildConfig& cfg) {
    if (k < 2 || ell < k || n < k) fail(Errc::bad_params, "composed_splitter parameter check");
    bool in_regime = static_cast<std::int64_t>(k) * k * k <= ell && k >= 8;
    if (!in_regime && !cfg.allow_out_of_regime)
        fail(Errc::bad_params, "ell < k^3 needs out-of-regime mode");

    if (ell >= n) {
        Family fam = identity_family(n, ell);
        fam.k = k;
        return fam;
    }

    std::int64_t lp = cfg.ell_prime_override > 0
                          ? cfg.ell_prime_override
                          : std::min<std::int64_t>(
                                {static_cast<std::int64_t>(n),
                                 floor_pow2_ratio(ell, static_cast<std::int64_t>(k) * k),
                                 cfg.ell_prime_cap});
    if (lp <= ell) {
        Family fam = modulo_splitter(n, k, ell, cfg);
        fam.builder = "composed:" + fam.builder;
        fam.out_of_regime = fam.out_of_regime || !in_regime;
        require_oracle(fam, k, cfg);
        return fam;
    }

    Family inner = modulo_splitter(n, k, static_cast<int>(lp), cfg);
    Family outer = modulo_splitter(static_cast<int>(lp), k, ell, cfg);

    Family fam;
    fam.kind = FamilyKind::splitter;
    fam.n = n;
    fam.k = k;
    fam.ell = ell;
    fam.builder = "composed";
    fam.out_of_regime = !in_regime || inner.out_of_regime || outer.out_of_regime;
    for (const Function& fi : inner.functions)
        for (const Function& fo : outer.functions) fam.functions.push_back(compose(fo, fi));
    tag_measured_uniformity(fam);

    if (in_regime && cfg.ell_prime_override == 0 && lp < cfg.ell_prime_cap && lp < n) {
        // analytic bound on the composed nonuniformity, asserted only in-regime
        long double denom = (long double)lp - (long double)k * k * std::log2((long double)n) / 2;
        if (denom > 0) {
            auto bound = static_cast<std::int64_t>(std::ceil((long double)n / denom));
            int worst = 0;
            for (const Function& f : fam.functions) worst = std::max(worst, nonuniformity(f));
            if (worst > bound)
                fail(Errc::nonuniformity_exceeded,
                     "composed splitter exceeds the in-regime uniformity bound");
        }
    }
    require_oracle(fam, k, cfg);
    return fam;
}

Family brute_force_splitter(int t, int k, int ell, const BuildConfig& cfg,
                            const std::vector<std::vector<int>>* subsets) {
    if (k < 1 || ell < k || t < k) fail(Errc::bad_params, "brute_force_splitter parameter check");
    bool in_regime = static_cast<std::int64_t>(k) * k <= ell;
    if (!in_regime && !cfg.allow_out_of_regime)
        fail(Errc::bad_params, "ell < k^2 needs out-of-regime mode");

    std::shared_ptr<const CandidatePool> pool_ptr = balanced_pool_cached(t, ell, cfg);
    const CandidatePool& pool = *pool_ptr;
    TargetSet targets;
    if (subsets) {
        targets.width = k;
        for (const std::vector<int>& s : *subsets) {
            if (static_cast<int>(s.size()) != k)
                fail(Errc::bad_params, "target subset of wrong size");
            std::vector<std::int32_t> row(s.begin(), s.end());
            targets.push(row.data());
        }
    } else {
        targets = all_subsets(t, k);
    }

    GreedyCoverState st =
        greedy_cover_injective(pool, std::move(targets), k, ell, resolve_threads(cfg));

    Family fam;
    fam.kind = FamilyKind::splitter;
    fam.n = t;
    fam.k = k;
    fam.ell = ell;
    fam.builder = "brute-force";
    fam.seed = pool.seed;
    fam.sampled_pool = pool.sampled;
    fam.out_of_regime = !in_regime;
    fam.coverage_log = std::move(st.log);
    fam.functions = std::move(st.chosen);
    if (fam.functions.empty() && pool.count > 0) {
        // no targets to cover; a single balanced function suffices vacuously
        const std::uint16_t* r = pool.row(0);
        fam.functions.emplace_back(t, ell, std::vector<std::int32_t>(r, r + t));
    }
    tag_measured_uniformity(fam);
    if (!subsets) require_oracle(fam, k, cfg);
    return fam;
}

SmoothingTable SmoothingTable::build(const Function& f, int k) {
    SmoothingTable tab;
    std::vector<std::vector<std::int32_t>> by_value(f.ell());
    for (int x = 0; x < f.n(); ++x) by_value[f(x)].push_back(x);
    for (int v = 0; v < f.ell(); ++v) {
        if (by_value[v].empty()) continue;
        tab.column_of.push_back(v);
        tab.columns.push_back(std::move(by_value[v]));
    }
    int max_h = 0;
    tab.h = static_cast<int>(tab.columns.front().size());
    for (const auto& col : tab.columns) {
        tab.h = std::min<int>(tab.h, static_cast<int>(col.size()));
        max_h = std::max<int>(max_h, static_cast<int>(col.size()));
    }
    int base = tab.h / k, extra = tab.h % k, row = 0;
    for (int i = 0; i < k; ++i) {
        int height = base + (i < extra ? 1 : 0);
        tab.stripes.push_back({row, row + height});
        row += height;
    }
    tab.stripes.push_back({tab.h, max_h});
    return tab;
}

Family smooth(const Family& family, int a, const BuildConfig& cfg) {
    int n = family.n, ell = family.ell, k = family.k;
    if (k < 1 || family.functions.empty()) fail(Errc::bad_params, "smooth needs k >= 1 and a nonempty family");
    if (static_cast<std::int64_t>(a) * ell * (k + 1) > n)
        fail(Errc::precondition_failed, "smooth needs n >= a*ell*(k+1)");
    for (const Function& f : family.functions)
        if (nonuniformity(f) > a)
            fail(Errc::nonuniformity_exceeded, "family nonuniformity exceeds the declared a");

    Family out;
    out.kind = FamilyKind::splitter;
    out.n = n;
    out.k = k;
    out.ell = ell;
    out.builder = "smooth(" + family.builder + ")";
    out.out_of_regime = family.out_of_regime;
    out.seed = family.seed;
    out.sampled_pool = family.sampled_pool;

    for (const Function& f : family.functions) {
        SmoothingTable tab = SmoothingTable::build(f, k);
        std::size_t cols = tab.columns.size();
        auto l = static_cast<std::int64_t>(cols);
        std::int64_t flo = n / l, rem = n % l;

        for (const auto& stripe : tab.stripes) {
            // fixed part: everything of each column outside the stripe
            std::vector<std::int64_t> fixed(cols);
            std::vector<std::int32_t> moved;
            for (std::size_t c = 0; c < cols; ++c) {
                auto height = static_cast<int>(tab.columns[c].size());
                int lo = std::min(stripe.row_begin, height);
                int hi = std::min(stripe.row_end, height);
                fixed[c] = height - (hi - lo);
                for (int r = lo; r < hi; ++r) moved.push_back(tab.columns[c][r]);
            }
            std::sort(moved.begin(), moved.end());

            // target heights flo or flo+1, respecting what already sits below
            std::vector<std::int64_t> target(cols, flo);
            std::int64_t cei_left = rem;
            for (std::size_t c = 0; c < cols; ++c)
                if (fixed[c] > flo) {
                    if (fixed[c] > flo + 1 || cei_left == 0)
                        fail(Errc::precondition_failed, "stripe redistribution infeasible");
                    target[c] = flo + 1;
                    --cei_left;
                }
            for (std::size_t c = 0; c < cols && cei_left > 0; ++c)
                if (target[c] == flo) { target[c] = flo + 1; --cei_left; }

            std::vector<std::int32_t> images(f.images().begin(), f.images().end());
            std::size_t col = 0;
            for (std::int32_t x : moved) {
                while (col < cols && fixed[col] >= target[col]) ++col;
                if (col == cols) fail(Errc::precondition_failed, "stripe redistribution infeasible");
                images[x] = tab.column_of[col];
                ++fixed[col];
            }
            out.functions.emplace_back(n, ell, std::move(images));
        }
    }
    tag_measured_uniformity(out);
    require_oracle(out, k, cfg);
    return out;
}

Family build_splitter(int n, int k, int ell, Uniformity goal, const BuildConfig& cfg) {
    if (k < 1 || ell < k || n < k) fail(Errc::bad_params, "build_splitter parameter check");
    bool in_regime = static_cast<std::int64_t>(k) * k * k <= ell;
    if (!in_regime && !cfg.allow_out_of_regime)
        fail(Errc::bad_params, "ell < k^3 needs out-of-regime mode");

    Family fam;
    if (ell >= n) {
        fam = identity_family(n, ell);
        fam.k = k;
        fam.builder = "dispatch:identity";
    } else if (k == 1) {
        fam = brute_force_splitter(n, 1, ell, cfg);
        fam.builder = "dispatch:" + fam.builder;
    } else if (k_at_least_loglog(k, n)) {
        try {
            fam = composed_splitter(n, k, ell, cfg);
        } catch (const Error& e) {
            if (e.code() != Errc::insufficient_primes) throw;
            fam = brute_force_splitter(n, k, ell, cfg);
        }
        fam.builder = "dispatch:" + fam.builder;
    } else {
        std::int64_t lp = cfg.dispatcher_lp_override > 0 ? cfg.dispatcher_lp_override : 0;
        if (lp == 0) {
            auto eval = [&](auto one) {
                using T = decltype(one);
                T ll = std::log2(std::log2(static_cast<T>(n)));
                return ll * ll * ll * ll * ll * ll;
            };
            lp = boundary_checked_ceil(eval(double(1)), [&] { return eval((long double)(1)); });
            lp = std::min<std::int64_t>(lp, cfg.dispatcher_lp_cap);
        }
        lp = std::min<std::int64_t>(lp, n);
        if (lp <= ell || lp >= n) {
            fam = brute_force_splitter(n, k, ell, cfg);
            fam.builder = "dispatch:" + fam.builder;
        } else {
            Family inner;
            bool have_inner = true;
            try {
                inner = composed_splitter(n, k, static_cast<int>(lp), cfg);
            } catch (const Error& e) {
                if (e.code() != Errc::insufficient_primes) throw;
                have_inner = false;
            }
            if (!have_inner) {
                fam = brute_force_splitter(n, k, ell, cfg);
                fam.builder = "dispatch:" + fam.builder;
            } else {
                Family outer = brute_force_splitter(static_cast<int>(lp), k, ell, cfg);
                fam.kind = FamilyKind::splitter;
                fam.n = n;
                fam.k = k;
                fam.ell = ell;
                fam.builder = "dispatch:composed+brute-force";
                fam.seed = outer.seed;
                fam.sampled_pool = outer.sampled_pool;
                fam.out_of_regime = inner.out_of_regime || outer.out_of_regime || !in_regime;
                for (const Function& fi : inner.functions)
                    for (const Function& fo : outer.functions)
                        fam.functions.push_back(compose(fo, fi));
                tag_measured_uniformity(fam);
            }
        }
    }
    fam.out_of_regime = fam.out_of_regime || !in_regime;

    if (goal == Uniformity::strong && fam.uniformity != Uniformity::strong) {
        fam = brute_force_splitter(n, k, ell, cfg);
        fam.builder = "dispatch:strong-fallback:" + fam.builder;
        fam.out_of_regime = fam.out_of_regime || !in_regime;
    } else if (goal == Uniformity::uniform && fam.uniformity != Uniformity::uniform &&
               fam.uniformity != Uniformity::strong) {
        int a = fam.uniformity_a;
        if (static_cast<std::int64_t>(a) * ell * (k + 1) <= n) {
            fam = smooth(fam, a, cfg);
            fam.builder = "dispatch:" + fam.builder;
        } else {
            fam = brute_force_splitter(n, k, ell, cfg);
            fam.builder = "dispatch:uniform-fallback:" + fam.builder;
        }
        fam.out_of_regime = fam.out_of_regime || !in_regime;
    }

    if (goal == Uniformity::strong && fam.uniformity != Uniformity::strong)
        fail(Errc::oracle_failed, "dispatcher could not reach the strong uniformity goal");
    if (goal == Uniformity::uniform && fam.uniformity == Uniformity::a_uniform)
        fail(Errc::oracle_failed, "dispatcher could not reach the uniform goal");
    require_oracle(fam, k, cfg);
    return fam;
}

} // namespace derandom
