#include "derandom/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "derandom/greedy.hpp"
#include "derandom/numeric.hpp"
#include "derandom/verify.hpp"
#include "interval_core.hpp"

namespace derandom {

namespace detail_bisector {
Family attach_to_zero_sets(const Family& parent, const Family& stage);
Family all_zeros_family(int n, int k, const Rational& alpha);
} // namespace detail_bisector

namespace {

void require_mapping_oracle(const Family& fam, int k0, int k1, const Rational& beta,
                            const BuildConfig& cfg) {
    bool needed = fam.out_of_regime || fam.sampled_pool;
    if (!needed || !cfg.oracle_check) return;
    VerifyReport rep = verify_mapping_family(fam, k0, k1, fam.alpha, beta);
    if (!rep.valid)
        fail(Errc::oracle_failed, "out-of-regime mapping family failed the exhaustive oracle");
}

struct CoversPair {
    bool operator()(const std::uint16_t* cand, const std::int32_t* s) const {
        for (int i = 0; i < k0; ++i)
            if (cand[s[i]] != 0) return false;
        std::int64_t ones = 0;
        for (int i = k0; i < k0 + k1; ++i) ones += cand[s[i]];
        return ones == want;
    }
    int k0;
    int k1;
    std::int64_t want;
};

Family exact_ones_singleton(int n, const Rational& alpha, FamilyKind kind) {
    std::int64_t ones = ceil_mul(alpha, n);
    Family fam;
    fam.kind = kind;
    fam.n = n;
    fam.ell = 2;
    fam.alpha = alpha;
    std::vector<std::int32_t> images(n, 0);
    for (int x = n - static_cast<int>(ones); x < n; ++x) images[x] = 1;
    fam.functions.emplace_back(n, 2, std::move(images));
    return fam;
}

} // namespace

Family base_mapping_family(int m, int k0, int k1, const Rational& ones_fraction,
                           const Rational& beta, const BuildConfig& cfg) {
    if (m < 1 || k0 < 0 || k1 < 0 || k0 + k1 > m)
        fail(Errc::bad_params, "base_mapping_family needs 0 <= k0+k1 <= m");
    if (beta.num < 0 || Rational(1, 1) < beta) fail(Errc::bad_params, "beta outside [0, 1]");
    if (ones_fraction.num < 0 || Rational(1, 1) < ones_fraction)
        fail(Errc::bad_params, "ones fraction outside [0, 1]");
    std::int64_t ones = ceil_mul(ones_fraction, m);
    std::int64_t want = ceil_mul(beta, k1);
    if (ones < want) fail(Errc::bad_params, "fewer ones than ceil(beta*k1)");
    if (m - ones < k0 + (k1 - want))
        fail(Errc::bad_params, "not enough zeros for S0 and the zero part of S1");

    CandidatePool pool = exact_ones_pool(m, static_cast<int>(ones), cfg);
    GreedyCoverState st = greedy_cover(pool, all_disjoint_pairs(m, k0, k1),
                                       CoversPair{k0, k1, want}, 2, resolve_threads(cfg));

    Family fam;
    fam.kind = FamilyKind::mapping;
    fam.n = m;
    fam.k = k0 + k1;
    fam.k0 = k0;
    fam.k1 = k1;
    fam.ell = 2;
    fam.alpha = ones_fraction;
    fam.beta = beta;
    fam.builder = "greedy-mapping";
    fam.seed = pool.seed;
    fam.sampled_pool = pool.sampled;
    fam.out_of_regime = k0 + k1 < 16;
    fam.coverage_log = std::move(st.log);
    fam.functions = std::move(st.chosen);
    if (fam.functions.empty() && pool.count > 0) {
        const std::uint16_t* r = pool.row(0);
        fam.functions.emplace_back(m, 2, std::vector<std::int32_t>(r, r + m));
    }
    require_mapping_oracle(fam, k0, k1, beta, cfg);
    return fam;
}

Family lift_mapping_family(int n, int k, int k0, int k1, const Rational& beta,
                           const Family& splitter, const Family& base,
                           const BuildConfig& cfg) {
    if (splitter.n != n) fail(Errc::size_mismatch, "splitter universe != n");
    if (base.n != splitter.ell)
        fail(Errc::size_mismatch, "base family universe != splitter codomain");
    if (k < k0 + k1 || k < 1) fail(Errc::bad_params, "lift needs k >= k0+k1 >= 0, k >= 1");
    if (!verify_uniformity(splitter, UniformityMode::uniform()).valid)
        fail(Errc::uniformity_required, "lift needs a uniform splitter");

    std::int64_t target = ceil_mul(base.alpha, n);
    Family fam;
    fam.kind = FamilyKind::mapping;
    fam.n = n;
    fam.k = k;
    fam.k0 = k0;
    fam.k1 = k1;
    fam.ell = 2;
    fam.alpha = base.alpha;
    fam.beta = beta;
    fam.builder = "lift(" + base.builder + ")";
    fam.seed = base.seed;
    fam.sampled_pool = base.sampled_pool;
    fam.out_of_regime = true;  // the splitter-lift threshold is never certified at desk scale

    for (const Function& f : splitter.functions) {
        for (const Function& h : base.functions) {
            Function g = compose(h, f);
            std::int64_t delta = target - g.ones_count();
            // flip inside one of k+1 blocks of the source side; some block
            // always avoids any k-subset
            std::int32_t source_value = delta >= 0 ? 0 : 1;
            std::vector<std::int32_t> source;
            for (int x = 0; x < n; ++x)
                if (g(x) == source_value) source.push_back(x);
            std::int64_t flips = delta >= 0 ? delta : -delta;
            auto blocks = static_cast<std::int64_t>(k) + 1;
            if (flips > 0 && static_cast<std::int64_t>(source.size()) / blocks < flips)
                fail(Errc::size_mismatch, "ones repair does not fit inside the flip blocks");
            for (std::int64_t b = 0; b < blocks; ++b) {
                std::vector<std::int32_t> images(g.images().begin(), g.images().end());
                if (flips > 0) {
                    std::size_t lo = (source.size() * b) / blocks;
                    for (std::int64_t j = 0; j < flips; ++j)
                        images[source[lo + j]] = 1 - source_value;
                }
                fam.functions.emplace_back(n, 2, std::move(images));
            }
        }
    }
    fam.validate();
    require_mapping_oracle(fam, k0, k1, beta, cfg);
    return fam;
}

BetaSchedule beta_schedule(int k, int k1, const Rational& alpha) {
    if (k < 1 || k1 < 0 || k1 > k) fail(Errc::bad_params, "beta_schedule needs 0 <= k1 <= k");
    if (alpha.num < 0 || !(alpha < Rational(1, 1)))
        fail(Errc::bad_params, "beta_schedule needs 0 <= alpha < 1");
    BetaSchedule sched;
    sched.k = k;
    sched.k1 = k1;
    sched.alpha = alpha;
    sched.t = iteration_count(k, alpha);
    if (sched.t == 0 && k1 > 0)
        fail(Errc::bad_params, "alpha too small to ever map S1 to 1");

    sched.residuals.push_back(k1);
    int rem = k1;
    for (int i = 1; i <= sched.t; ++i) {
        int target;
        if (i == sched.t || rem == 0) {
            target = rem;  // beta_t = 1: everything left goes to 1
        } else {
            auto eval = [&](auto one) {
                using T = decltype(one);
                T rk = std::sqrt(static_cast<T>(k));
                return k1 * (std::exp(1 / rk) - 1) /
                       (alpha.to_long_double() * std::exp(static_cast<T>(i) / rk));
            };
            auto profile =
                boundary_checked_ceil(eval(double(1)), [&] { return eval((long double)(1)); });
            target = static_cast<int>(std::min<std::int64_t>(profile, rem));
        }
        sched.targets.push_back(target);
        rem -= target;
        sched.residuals.push_back(rem);
    }
    return sched;
}

Family iterated_mapping_family(int n, int k0, int k1, const Rational& alpha,
                               const BuildConfig& cfg) {
    int k = k0 + k1;
    if (n < 1 || k0 < 0 || k1 < 0 || k > n)
        fail(Errc::bad_params, "iterated_mapping_family needs 0 <= k0+k1 <= n");
    if (alpha.num < 0 || Rational(1, 1) < alpha) fail(Errc::bad_params, "alpha outside [0, 1]");
    std::int64_t target_ones = ceil_mul(alpha, n);
    if (target_ones < k1 || n - target_ones < k0)
        fail(Errc::bad_params, "ceil(alpha*n) cannot accommodate the (k0, k1) budgets");
    bool in_regime =
        k >= 16 && static_cast<std::int64_t>(n) >= static_cast<std::int64_t>(k) * k * k * k;
    if (!in_regime && !cfg.allow_out_of_regime)
        fail(Errc::bad_params, "below the n >= k^4 regime");

    if (k == 0) {
        Family fam = exact_ones_singleton(n, alpha, FamilyKind::mapping);
        fam.builder = "iterated-mapping";
        return fam;
    }

    BetaSchedule sched = k1 > 0 ? beta_schedule(k, k1, alpha) : BetaSchedule{};
    std::int64_t z_end = n - target_ones;
    std::int64_t z = n;
    int rem1 = k1;
    int stage_idx = 0;
    Family result;
    bool first = true;
    while (z > z_end) {
        std::int64_t o = std::min(ceil_div_sqrt(z, k), z - z_end);
        bool last = o == z - z_end;
        int guide = stage_idx < static_cast<int>(sched.targets.size())
                        ? sched.targets[stage_idx]
                        : 0;
        auto b_cap = static_cast<int>(std::min<std::int64_t>(rem1, o));
        int b_min = static_cast<int>(
            std::max<std::int64_t>(0, (k0 + rem1) - (z - o)));
        int b = last ? rem1 : std::clamp(guide, b_min, b_cap);
        if (b < b_min || b > b_cap)
            fail(Errc::bad_params, "stage ones budget cannot host the S1 targets");

        Family stage = base_mapping_family(static_cast<int>(z), k0, rem1, Rational(o, z),
                                           rem1 > 0 ? Rational(b, rem1) : Rational(0, 1), cfg);
        if (first) {
            result = std::move(stage);
            first = false;
        } else {
            result = detail_bisector::attach_to_zero_sets(result, stage);
        }
        z -= o;
        rem1 -= b;
        ++stage_idx;
    }
    if (first) result = exact_ones_singleton(n, alpha, FamilyKind::mapping);
    if (rem1 != 0) fail(Errc::bad_params, "iteration ended with S1 targets left over");

    result.kind = FamilyKind::mapping;
    result.alpha = alpha;
    result.beta = Rational(1, 1);
    result.k = k;
    result.k0 = k0;
    result.k1 = k1;
    result.builder = "iterated-mapping";
    result.out_of_regime = result.out_of_regime || !in_regime;
    result.validate();
    require_mapping_oracle(result, k0, k1, Rational(1, 1), cfg);
    return result;
}

Family interval_mapping_family(int n, int k0, int k1, const Rational& alpha,
                               const BuildConfig& cfg) {
    Family fam = detail_intervals::build_interval_family(n, k0, k1, alpha, cfg);
    fam.builder = "interval-mapping";
    return fam;
}

Family universal_set(int n, int k, const Rational& alpha, const BuildConfig& cfg) {
    if (n < 1 || k < 0 || k > n) fail(Errc::bad_params, "universal_set needs 0 <= k <= n");
    if (alpha.num < 0 || Rational(1, 1) < alpha) fail(Errc::bad_params, "alpha outside [0, 1]");
    bool in_regime = static_cast<std::int64_t>(n) >=
                        4 * static_cast<std::int64_t>(k) * k * k * k * k * k;
    if (!in_regime && !cfg.allow_out_of_regime)
        fail(Errc::bad_params, "below the n >= 4k^6 regime");

    Family fam;
    fam.kind = FamilyKind::universal;
    fam.n = n;
    fam.k = k;
    fam.ell = 2;
    fam.alpha = alpha;
    fam.builder = "universal-union";
    fam.out_of_regime = !in_regime;

    if (k == 0) {
        Family single = exact_ones_singleton(n, alpha, FamilyKind::universal);
        fam.functions = std::move(single.functions);
        return fam;
    }

    std::set<std::vector<std::int32_t>> seen;
    for (int k0 = 0; k0 <= k; ++k0) {
        Family part = iterated_mapping_family(n, k0, k - k0, alpha, cfg);
        fam.sampled_pool = fam.sampled_pool || part.sampled_pool;
        fam.seed = fam.seed ? fam.seed : part.seed;
        for (Function& f : part.functions) {
            std::vector<std::int32_t> key(f.images().begin(), f.images().end());
            if (seen.insert(std::move(key)).second) fam.functions.push_back(std::move(f));
        }
        fam.coverage_log.insert(fam.coverage_log.end(), part.coverage_log.begin(),
                                part.coverage_log.end());
    }
    fam.validate();
    if ((fam.out_of_regime || fam.sampled_pool) && cfg.oracle_check) {
        VerifyReport rep = verify_universal(fam, k, alpha);
        if (!rep.valid)
            fail(Errc::oracle_failed, "universal set failed the exhaustive oracle");
    }
    return fam;
}

} // namespace derandom
