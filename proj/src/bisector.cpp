#include "derandom/bisector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "derandom/greedy.hpp"
#include "derandom/numeric.hpp"
#include "derandom/verify.hpp"

namespace derandom {

namespace detail_bisector {

void require_bisector_oracle(const Family& fam, int k, const BuildConfig& cfg) {
    bool needed = fam.out_of_regime || fam.sampled_pool;
    if (!needed || !cfg.oracle_check) return;
    VerifyReport rep = verify_bisector(fam, k, fam.alpha);
    if (!rep.valid)
        fail(Errc::oracle_failed, "out-of-regime bisector build failed the exhaustive oracle");
}

Family all_zeros_family(int n, int k, const Rational& alpha) {
    Family fam;
    fam.kind = FamilyKind::bisector;
    fam.n = n;
    fam.k = k;
    fam.ell = 2;
    fam.alpha = alpha;
    fam.builder = "all-zeros";
    fam.functions.emplace_back(n, 2, std::vector<std::int32_t>(n, 0));
    return fam;
}

// Stage composition: apply each stage function to the zero set of each parent
// function (positions matched in ascending order).
Family attach_to_zero_sets(const Family& parent, const Family& stage) {
    Family out = parent;
    out.functions.clear();
    for (const Function& f : parent.functions) {
        std::vector<std::int32_t> zero_pos;
        for (int x = 0; x < f.n(); ++x)
            if (f(x) == 0) zero_pos.push_back(x);
        if (static_cast<int>(zero_pos.size()) != stage.n)
            fail(Errc::size_mismatch, "stage universe does not match the parent zero set");
        for (const Function& h : stage.functions) {
            std::vector<std::int32_t> images(f.images().begin(), f.images().end());
            for (int j = 0; j < stage.n; ++j)
                if (h(j) == 1) images[zero_pos[j]] = 1;
            out.functions.emplace_back(f.n(), 2, std::move(images));
        }
    }
    out.coverage_log.insert(out.coverage_log.end(), stage.coverage_log.begin(),
                            stage.coverage_log.end());
    out.sampled_pool = out.sampled_pool || stage.sampled_pool;
    out.out_of_regime = out.out_of_regime || stage.out_of_regime;
    return out;
}

} // namespace detail_bisector

using namespace detail_bisector;

namespace {

struct CoversAllZero {
    bool operator()(const std::uint16_t* cand, const std::int32_t* s) const {
        for (int i = 0; i < k; ++i)
            if (cand[s[i]] != 0) return false;
        return true;
    }
    int k;
};

} // namespace

Family base_bisector(int m, int k, const Rational& ones_fraction, const BuildConfig& cfg) {
    if (m < 1 || k < 0 || k > m) fail(Errc::bad_params, "base_bisector needs 0 <= k <= m");
    if (ones_fraction.num < 0 || Rational(1, 1) < ones_fraction)
        fail(Errc::bad_params, "ones fraction outside [0, 1]");
    std::int64_t ones = ceil_mul(ones_fraction, m);
    if (k > 0 && ones > m - k)
        fail(Errc::bad_params, "too many ones to leave any k-subset all-zero");

    CandidatePool pool = exact_ones_pool(m, static_cast<int>(ones), cfg);
    GreedyCoverState st = greedy_cover(pool, all_subsets(m, k), CoversAllZero{k}, 2,
                                       resolve_threads(cfg));

    Family fam;
    fam.kind = FamilyKind::bisector;
    fam.n = m;
    fam.k = k;
    fam.ell = 2;
    fam.alpha = ones_fraction;
    fam.builder = "greedy-bisector";
    fam.seed = pool.seed;
    fam.sampled_pool = pool.sampled;
    fam.out_of_regime = k < 16;  // the coverage probability bound needs k >= 16
    fam.coverage_log = std::move(st.log);
    fam.functions = std::move(st.chosen);
    if (fam.functions.empty() && pool.count > 0) {
        const std::uint16_t* r = pool.row(0);
        fam.functions.emplace_back(m, 2, std::vector<std::int32_t>(r, r + m));
    }
    require_bisector_oracle(fam, k, cfg);
    return fam;
}

Family extend_by_d(const Family& family, int d, int k, const BuildConfig& cfg) {
    if (d < 0) fail(Errc::bad_params, "negative d");
    if (d == 0) return family;  // nothing to forbid
    int n = family.n;
    if (static_cast<std::int64_t>(d) * (k + 1) >= n)
        fail(Errc::precondition_failed, "extend_by_d needs d*(k+1) < n");

    int n2 = n + d;
    std::int64_t want = ceil_mul(family.alpha, n2);
    std::int64_t have = ceil_mul(family.alpha, n);
    std::int64_t delta = want - have;
    if (delta < 0 || delta > d) fail(Errc::size_mismatch, "ones delta outside [0, d]");

    Family out = family;
    out.n = n2;
    out.builder = "extend_by_d(" + family.builder + ")";
    out.functions.clear();
    for (int j = 0; j <= k; ++j) {
        int block_begin = j * d;
        for (const Function& f : family.functions) {
            std::vector<std::int32_t> images(n2, 0);
            for (int x = 0; x < n; ++x)
                images[x < block_begin ? x : x + d] = f(x);
            for (int b = 0; b < delta; ++b) images[block_begin + b] = 1;
            out.functions.emplace_back(n2, 2, std::move(images));
        }
    }
    require_bisector_oracle(out, k, cfg);
    return out;
}

Family extend_modulo(const Family& family, int n1, int k, const BuildConfig& cfg) {
    int n2 = family.n;
    if (!(k <= n2 && n2 <= n1)) fail(Errc::bad_params, "extend_modulo needs k <= n2 <= n1");
    if (n1 == n2) return family;

    int c = n1 / n2, d = n1 % n2, m = c * n2;
    std::int64_t want = ceil_mul(family.alpha, m);

    Family pulled = family;
    pulled.n = m;
    pulled.builder = "extend_modulo(" + family.builder + ")";
    pulled.functions.clear();
    for (const Function& f : family.functions) {
        std::vector<std::int32_t> images(m);
        for (int x = 0; x < m; ++x) images[x] = f(x % n2);
        // flipping surplus ones back to zero only grows the zero set
        std::int64_t excess =
            static_cast<std::int64_t>(c) * f.ones_count() - want;
        for (int x = m - 1; x >= 0 && excess > 0; --x)
            if (images[x] == 1) { images[x] = 0; --excess; }
        pulled.functions.emplace_back(m, 2, std::move(images));
    }
    if (d == 0) {
        require_bisector_oracle(pulled, k, cfg);
        return pulled;
    }
    return extend_by_d(pulled, d, k, cfg);
}

int iteration_count(int k, const Rational& alpha) {
    if (k < 1) fail(Errc::bad_params, "iteration_count needs k >= 1");
    if (alpha.num < 0 || !(alpha < Rational(1, 1)))
        fail(Errc::bad_params, "iteration_count needs 0 <= alpha < 1");
    if (alpha.num == 0) return 0;
    auto eval = [&](auto one) {
        using T = decltype(one);
        T frac = static_cast<T>(alpha.den) / static_cast<T>(alpha.den - alpha.num);
        return std::sqrt(static_cast<T>(k)) * std::log(frac);
    };
    return static_cast<int>(
        boundary_checked_ceil(eval(double(1)), [&] { return eval((long double)(1)); }));
}

Family alpha_bisector(int n, int k, const Rational& alpha, const BuildConfig& cfg) {
    if (n < 1 || k < 0 || k > n) fail(Errc::bad_params, "alpha_bisector needs 0 <= k <= n");
    if (alpha.num < 0 || Rational(1, 1) < alpha) fail(Errc::bad_params, "alpha outside [0, 1]");
    std::int64_t target_ones = ceil_mul(alpha, n);
    if (k > 0 && target_ones > n - k)
        fail(Errc::bad_params, "ceil(alpha*n) leaves no room for a zero k-subset");
    bool in_regime =
        k >= 16 && static_cast<std::int64_t>(n) >= static_cast<std::int64_t>(k) * k * k * k;
    if (!in_regime && !cfg.allow_out_of_regime)
        fail(Errc::bad_params, "below the n >= k^4, k >= 16 regime");

    std::int64_t z_end = n - target_ones;
    Family result;
    bool first = true;
    std::int64_t z = n;
    while (z > z_end) {
        std::int64_t o = std::min(ceil_div_sqrt(z, std::max(k, 1)), z - z_end);
        Family stage = base_bisector(static_cast<int>(z), k, Rational(o, z), cfg);
        if (first) {
            result = std::move(stage);
            first = false;
        } else {
            result = attach_to_zero_sets(result, stage);
        }
        z -= o;
    }
    if (first) result = all_zeros_family(n, k, alpha);
    result.alpha = alpha;
    result.k = k;
    result.builder = "alpha-bisector";
    result.out_of_regime = result.out_of_regime || !in_regime;
    result.validate();
    require_bisector_oracle(result, k, cfg);
    return result;
}

std::pair<std::vector<int>, std::int64_t> adversary_lower_bound(const Family& family, int k) {
    int n = family.n;
    if (family.functions.empty() || k > n)
        fail(Errc::bad_params, "adversary_lower_bound needs a nonempty family and k <= n");
    std::vector<std::size_t> surviving(family.functions.size());
    std::iota(surviving.begin(), surviving.end(), std::size_t{0});
    std::vector<bool> taken(n, false);
    std::vector<int> witness;
    for (int step = 0; step < k; ++step) {
        int best_x = -1;
        std::int64_t best_cnt = -1;
        for (int x = 0; x < n; ++x) {
            if (taken[x]) continue;
            std::int64_t cnt = 0;
            for (std::size_t fi : surviving) cnt += family.functions[fi](x);
            if (cnt > best_cnt) { best_cnt = cnt; best_x = x; }
        }
        taken[best_x] = true;
        witness.push_back(best_x);
        std::vector<std::size_t> next;
        for (std::size_t fi : surviving)
            if (family.functions[fi](best_x) == 0) next.push_back(fi);
        surviving = std::move(next);
    }
    std::sort(witness.begin(), witness.end());
    return {witness, static_cast<std::int64_t>(surviving.size())};
}

} // namespace derandom
