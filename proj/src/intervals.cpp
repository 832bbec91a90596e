#include "interval_core.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "derandom/mapping.hpp"
#include "derandom/verify.hpp"

namespace derandom::detail_intervals {
namespace {

struct Grid {
    int n = 0;
    int g = 1;       // granularity: cell width
    int cells = 0;
    int rcells = 1;  // reservoir run length, in cells

    int cell_begin(int c) const { return c * g; }
    int cell_end(int c) const { return std::min(n, (c + 1) * g); }
    int cell_size(int c) const { return cell_end(c) - cell_begin(c); }
};

struct Guess {
    std::vector<int> cells;  // one cell per interval, ascending
    std::vector<int> b0;     // per-interval S0 budget
    std::vector<int> b1;     // per-interval S1 budget
    int reservoir = 0;       // start cell of the reservoir run
};

// Every way of distributing (rem0, rem1) over intervals idx..t-1 with
// 1 <= b0+b1 <= cap per interval.
template <class Emit>
void rec_budgets(const Grid& grid, const std::vector<int>& cells, std::size_t idx, int rem0,
                 int rem1, std::vector<int>& cur0, std::vector<int>& cur1, Emit&& emit) {
    std::size_t t = cells.size();
    if (idx == t) {
        if (rem0 == 0 && rem1 == 0) emit();
        return;
    }
    int left = static_cast<int>(t - idx - 1);  // intervals after this one need >= 1 each
    int cap = std::min(grid.cell_size(cells[idx]), rem0 + rem1 - left);
    for (int a = 0; a <= std::min(cap, rem0); ++a) {
        for (int b = (a == 0 ? 1 : 0); a + b <= cap && b <= rem1; ++b) {
            cur0.push_back(a);
            cur1.push_back(b);
            rec_budgets(grid, cells, idx + 1, rem0 - a, rem1 - b, cur0, cur1, emit);
            cur0.pop_back();
            cur1.pop_back();
        }
    }
}

template <class Visit>
bool for_each_guess(const Grid& grid, int k0, int k1, Visit&& visit) {
    int k = k0 + k1;
    int tmax = std::min(k, grid.cells);
    std::vector<int> chosen;
    std::vector<int> cur0, cur1;

    for (int t = 1; t <= tmax; ++t) {
        chosen.assign(t, 0);
        for (int i = 0; i < t; ++i) chosen[i] = i;
        while (true) {
            // reservoir runs of rcells consecutive cells disjoint from chosen
            for (int rs = 0; rs + grid.rcells <= grid.cells; ++rs) {
                bool free = true;
                for (int c : chosen)
                    if (c >= rs && c < rs + grid.rcells) { free = false; break; }
                if (!free) continue;
                bool keep_going = true;
                rec_budgets(grid, chosen, 0, k0, k1, cur0, cur1, [&] {
                    if (!keep_going) return;
                    Guess guess;
                    guess.cells = chosen;
                    guess.b0 = cur0;
                    guess.b1 = cur1;
                    guess.reservoir = rs;
                    keep_going = visit(guess);
                });
                if (!keep_going) return false;
            }
            int i = t - 1;
            while (i >= 0 && chosen[i] == grid.cells - t + i) --i;
            if (i < 0) break;
            ++chosen[i];
            for (int j = i + 1; j < t; ++j) chosen[j] = chosen[j - 1] + 1;
        }
    }
    return true;
}

Family trivial_exact_ones(int n, std::int64_t ones, FamilyKind kind) {
    Family fam;
    fam.kind = kind;
    fam.n = n;
    fam.ell = 2;
    std::vector<std::int32_t> images(n, 0);
    for (int x = n - static_cast<int>(ones); x < n; ++x) images[x] = 1;
    fam.functions.emplace_back(n, 2, std::move(images));
    return fam;
}

} // namespace

Family build_interval_family(int n, int k0, int k1, const Rational& alpha,
                             const BuildConfig& cfg) {
    int k = k0 + k1;
    if (n < 1 || k0 < 0 || k1 < 0 || k > n)
        fail(Errc::bad_params, "interval builder needs 0 <= k0+k1 <= n");
    if (alpha.num < 0 || Rational(1, 1) < alpha) fail(Errc::bad_params, "alpha outside [0, 1]");
    std::int64_t target_ones = ceil_mul(alpha, n);
    if (target_ones < k1 || n - target_ones < k0)
        fail(Errc::bad_params, "ceil(alpha*n) cannot accommodate the (k0, k1) budgets");

    FamilyKind kind = k1 > 0 ? FamilyKind::mapping : FamilyKind::bisector;
    if (k == 0) {
        Family fam = trivial_exact_ones(n, target_ones, kind);
        fam.alpha = alpha;
        fam.builder = "interval";
        return fam;
    }

    Grid grid;
    grid.n = n;
    grid.g = cfg.full_interval_enumeration ? 1
             : cfg.granularity > 0         ? cfg.granularity
                                           : (n + 4 * k - 1) / (4 * k);
    grid.cells = (n + grid.g - 1) / grid.g;
    int max_run = (grid.cells - k) / (k + 1);
    if (max_run < 1)
        fail(Errc::bad_params, "n below the configured minimum for interval guessing");
    // asymptotic reservoir scale: k^4 elements (2k^5 for the mapping version)
    std::int64_t scale_elems = k1 > 0 ? 2 * static_cast<std::int64_t>(k) * k * k * k * k
                                      : static_cast<std::int64_t>(k) * k * k * k;
    auto scale_cells = static_cast<int>(std::min<std::int64_t>(
        (scale_elems + grid.g - 1) / grid.g, grid.cells));
    grid.rcells = std::clamp(scale_cells, 1, max_run);

    std::int64_t guesses = 0;
    bool within = for_each_guess(grid, k0, k1, [&](const Guess&) {
        return ++guesses <= cfg.guess_budget;
    });
    if (!within)
        fail(Errc::guess_space_too_large,
             "interval guess enumeration exceeds the configured budget");

    Family fam;
    fam.kind = kind;
    fam.n = n;
    fam.k = k;
    fam.k0 = k0;
    fam.k1 = k1;
    fam.ell = 2;
    fam.alpha = alpha;
    fam.beta = k1 > 0 ? Rational(1, 1) : Rational(0, 1);
    fam.builder = "interval";
    fam.out_of_regime = true;  // desk scale sits below the n >= k^5 / 4k^6 regimes

    BuildConfig sub = cfg;
    std::map<std::tuple<int, int, int, std::int64_t>, Family> cache;

    for_each_guess(grid, k0, k1, [&](const Guess& guess) {
        std::size_t t = guess.cells.size();
        IntervalPlan plan;
        plan.budget0 = guess.b0;
        plan.budget1 = guess.b1;
        plan.reservoir = {grid.cell_begin(guess.reservoir),
                          grid.cell_end(guess.reservoir + grid.rcells - 1)};
        std::vector<std::int32_t> reservoir_elems;
        for (int x = plan.reservoir.begin; x < plan.reservoir.end; ++x)
            reservoir_elems.push_back(x);
        std::size_t slice = reservoir_elems.size() / t;

        // augmented ranges: the cell plus a distinct slice of the reservoir
        plan.augmented.resize(t);
        std::vector<bool> inside(n, false);
        for (std::size_t i = 0; i < t; ++i) {
            plan.intervals.push_back(
                {grid.cell_begin(guess.cells[i]), grid.cell_end(guess.cells[i])});
            for (int x = plan.intervals[i].begin; x < plan.intervals[i].end; ++x)
                plan.augmented[i].push_back(x);
            for (std::size_t j = i * slice; j < (i + 1) * slice; ++j)
                plan.augmented[i].push_back(reservoir_elems[j]);
            std::sort(plan.augmented[i].begin(), plan.augmented[i].end());
            for (std::int32_t x : plan.augmented[i]) inside[x] = true;
        }
        const std::vector<std::vector<std::int32_t>>& augmented = plan.augmented;
        std::vector<std::int32_t> outside;
        for (int x = 0; x < n; ++x)
            if (!inside[x]) outside.push_back(x);

        // per-interval ones: floor(alpha * n') clamped to feasibility, then
        // adjusted so the outside fill can absorb the remainder
        std::vector<std::int64_t> ones(t);
        std::int64_t total = 0;
        for (std::size_t i = 0; i < t; ++i) {
            auto ni = static_cast<std::int64_t>(augmented[i].size());
            ones[i] = std::clamp<std::int64_t>(floor_mul(alpha, ni), guess.b1[i],
                                               ni - guess.b0[i]);
            total += ones[i];
        }
        std::int64_t delta = target_ones - total;
        for (std::size_t i = 0; delta < 0 && i < t; ++i) {
            std::int64_t cut = std::min(-delta, ones[i] - guess.b1[i]);
            ones[i] -= cut;
            delta += cut;
        }
        for (std::size_t i = 0; delta > static_cast<std::int64_t>(outside.size()) && i < t;
             ++i) {
            std::int64_t room = static_cast<std::int64_t>(augmented[i].size()) -
                                guess.b0[i] - ones[i];
            std::int64_t add = std::min(delta - static_cast<std::int64_t>(outside.size()), room);
            ones[i] += add;
            delta -= add;
        }
        if (delta < 0 || delta > static_cast<std::int64_t>(outside.size()))
            fail(Errc::bad_params, "interval ones budget infeasible for these parameters");

        std::vector<const Family*> parts(t);
        for (std::size_t i = 0; i < t; ++i) {
            auto ni = static_cast<int>(augmented[i].size());
            auto key = std::make_tuple(ni, guess.b0[i], guess.b1[i], ones[i]);
            auto it = cache.find(key);
            if (it == cache.end()) {
                Family sub_fam =
                    guess.b1[i] > 0
                        ? iterated_mapping_family(ni, guess.b0[i], guess.b1[i],
                                                  Rational(ones[i], ni), sub)
                        : alpha_bisector(ni, guess.b0[i], Rational(ones[i], ni), sub);
                it = cache.emplace(key, std::move(sub_fam)).first;
            }
            parts[i] = &it->second;
        }

        // all combinations of per-interval members
        std::vector<std::size_t> pick(t, 0);
        std::int64_t combo_count = 0;
        while (true) {
            std::vector<std::int32_t> images(n, 0);
            for (std::int64_t j = 0; j < delta; ++j)
                images[outside[outside.size() - 1 - j]] = 1;
            for (std::size_t i = 0; i < t; ++i) {
                const Function& h = parts[i]->functions[pick[i]];
                for (std::size_t j = 0; j < augmented[i].size(); ++j)
                    images[augmented[i][j]] = h(static_cast<int>(j));
            }
            fam.functions.emplace_back(n, 2, std::move(images));
            ++combo_count;
            std::size_t i = 0;
            while (i < t && ++pick[i] == parts[i]->functions.size()) pick[i++] = 0;
            if (i == t) break;
        }
        fam.guess_sizes.push_back(combo_count);
        return true;
    });

    fam.validate();
    if (cfg.oracle_check) {
        VerifyReport rep = k1 > 0
                               ? verify_mapping_family(fam, k0, k1, alpha, Rational(1, 1))
                               : verify_bisector(fam, k, alpha);
        if (!rep.valid)
            fail(Errc::oracle_failed, "interval construction failed the exhaustive oracle");
    }
    return fam;
}

} // namespace derandom::detail_intervals

namespace derandom {

Family interval_bisector(int n, int k, const Rational& alpha, const BuildConfig& cfg) {
    Family fam = detail_intervals::build_interval_family(n, k, 0, alpha, cfg);
    fam.builder = "interval-bisector";
    return fam;
}

} // namespace derandom

