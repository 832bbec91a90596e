#include "derandom/verify.hpp"

#include <algorithm>

namespace derandom {
namespace {

// Colexicographic k-subset enumeration, the fixed order every oracle uses so
// witness reporting is deterministic.
class ColexSubsets {
public:
    ColexSubsets(int n, int k) : n_(n), k_(k), current_(k) {
        done_ = k > n || k < 0;
        for (int i = 0; i < k; ++i) current_[i] = i;
    }

    bool done() const { return done_; }
    const std::vector<int>& get() const { return current_; }

    void next() {
        if (k_ == 0) { done_ = true; return; }
        int i = 0;
        while (i < k_) {
            int limit = (i + 1 < k_) ? current_[i + 1] : n_;
            if (current_[i] + 1 < limit) break;
            ++i;
        }
        if (i == k_) { done_ = true; return; }
        ++current_[i];
        for (int j = 0; j < i; ++j) current_[j] = j;
    }

private:
    int n_, k_;
    bool done_ = false;
    std::vector<int> current_;
};

bool splits_evenly(const Function& f, const std::vector<int>& subset, int ell) {
    int k = static_cast<int>(subset.size());
    int flo = k / ell;
    int cei = (k + ell - 1) / ell;
    std::vector<std::int32_t> vals;
    vals.reserve(subset.size());
    for (int x : subset) vals.push_back(f(x));
    std::sort(vals.begin(), vals.end());
    int classes = 0;
    for (std::size_t i = 0; i < vals.size();) {
        std::size_t j = i;
        while (j < vals.size() && vals[j] == vals[i]) ++j;
        int run = static_cast<int>(j - i);
        if (run < flo || run > cei) return false;
        ++classes;
        i = j;
    }
    // classes never hit by S have |f^-1(i) cap S| = 0
    if (classes < ell && flo > 0) return false;
    return true;
}

std::optional<int> find_ones_violation(const Family& family, const Rational& alpha) {
    std::int64_t want = ceil_mul(alpha, family.n);
    for (std::size_t i = 0; i < family.functions.size(); ++i)
        if (family.functions[i].ones_count() != want) return static_cast<int>(i);
    return std::nullopt;
}

} // namespace

VerifyReport verify_splitter(const Family& family, int k) {
    VerifyReport rep;
    int n = family.n;
    int ell = family.ell;
    for (ColexSubsets it(n, k); !it.done(); it.next()) {
        ++rep.checked;
        std::int64_t mult = 0;
        for (const Function& f : family.functions)
            if (splits_evenly(f, it.get(), ell)) ++mult;
        ++rep.stats[mult];
        if (mult == 0 && rep.valid) {
            rep.valid = false;
            rep.witness = it.get();
        }
    }
    return rep;
}

VerifyReport verify_uniformity(const Family& family, UniformityMode mode) {
    VerifyReport rep;
    for (std::size_t idx = 0; idx < family.functions.size(); ++idx) {
        const Function& f = family.functions[idx];
        ++rep.checked;
        std::vector<std::int64_t> counts(f.ell(), 0);
        for (std::int32_t v : f.images()) ++counts[v];

        bool ok = true;
        if (mode.kind == Uniformity::strong) {
            std::int64_t flo = f.n() / f.ell();
            std::int64_t cei = (f.n() + f.ell() - 1) / f.ell();
            for (std::int64_t c : counts)
                if (c < flo || c > cei) { ok = false; break; }
        } else {
            std::int64_t image_size = 0, lo = -1, hi = 0;
            for (std::int64_t c : counts) {
                if (c == 0) continue;
                ++image_size;
                if (lo < 0 || c < lo) lo = c;
                if (c > hi) hi = c;
            }
            if (image_size > 0) {
                std::int64_t flo = f.n() / image_size;
                std::int64_t cei = (f.n() + image_size - 1) / image_size;
                int a = mode.kind == Uniformity::a_uniform ? mode.a : 0;
                ok = lo >= flo - a && hi <= cei + a;
                if (ok && mode.kind == Uniformity::a_uniform) ok = hi - lo <= a;
            }
        }
        if (!ok && rep.valid) {
            rep.valid = false;
            rep.witness_function = static_cast<int>(idx);
        }
    }
    return rep;
}

VerifyReport verify_bisector(const Family& family, int k, const Rational& alpha) {
    VerifyReport rep;
    if (auto bad = find_ones_violation(family, alpha)) {
        rep.valid = false;
        rep.witness_function = bad;
        return rep;
    }
    for (ColexSubsets it(family.n, k); !it.done(); it.next()) {
        ++rep.checked;
        std::int64_t mult = 0;
        for (const Function& f : family.functions) {
            bool zeroed = true;
            for (int x : it.get())
                if (f(x) != 0) { zeroed = false; break; }
            if (zeroed) ++mult;
        }
        ++rep.stats[mult];
        if (mult == 0 && rep.valid) {
            rep.valid = false;
            rep.witness = it.get();
        }
    }
    return rep;
}

VerifyReport verify_mapping_family(const Family& family, int k0, int k1,
                                   const Rational& alpha, const Rational& beta) {
    VerifyReport rep;
    if (auto bad = find_ones_violation(family, alpha)) {
        rep.valid = false;
        rep.witness_function = bad;
        return rep;
    }
    int k = k0 + k1;
    std::int64_t want_ones = ceil_mul(beta, k1);
    std::vector<int> s0(k0), s1(k1);
    for (ColexSubsets sub(family.n, k); !sub.done(); sub.next()) {
        const std::vector<int>& s = sub.get();
        // all ways of marking k1 of the subset's positions as S1
        for (ColexSubsets pick(k, k1); !pick.done(); pick.next()) {
            ++rep.checked;
            std::vector<bool> in_s1(k, false);
            for (int p : pick.get()) in_s1[p] = true;
            int i0 = 0, i1 = 0;
            for (int i = 0; i < k; ++i) (in_s1[i] ? s1[i1++] : s0[i0++]) = s[i];

            std::int64_t mult = 0;
            for (const Function& f : family.functions) {
                bool ok = true;
                for (int x : s0)
                    if (f(x) != 0) { ok = false; break; }
                if (ok) {
                    std::int64_t ones = 0;
                    for (int x : s1) ones += f(x);
                    ok = ones == want_ones;
                }
                if (ok) ++mult;
            }
            ++rep.stats[mult];
            if (mult == 0 && rep.valid) {
                rep.valid = false;
                std::vector<int> wit = s0;
                wit.insert(wit.end(), s1.begin(), s1.end());
                rep.witness = std::move(wit);
            }
        }
    }
    return rep;
}

VerifyReport verify_universal(const Family& family, int k, const Rational& alpha) {
    VerifyReport rep;
    if (auto bad = find_ones_violation(family, alpha)) {
        rep.valid = false;
        rep.witness_function = bad;
        return rep;
    }
    for (ColexSubsets sub(family.n, k); !sub.done(); sub.next()) {
        const std::vector<int>& s = sub.get();
        for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            ++rep.checked;
            std::int64_t mult = 0;
            for (const Function& f : family.functions) {
                bool ok = true;
                for (int i = 0; i < k; ++i) {
                    std::int32_t want = (mask >> i) & 1u;
                    if (f(s[i]) != want) { ok = false; break; }
                }
                if (ok) ++mult;
            }
            ++rep.stats[mult];
            if (mult == 0 && rep.valid) {
                rep.valid = false;
                std::vector<int> wit;
                for (int i = 0; i < k; ++i)
                    if (((mask >> i) & 1u) == 0) wit.push_back(s[i]);
                for (int i = 0; i < k; ++i)
                    if ((mask >> i) & 1u) wit.push_back(s[i]);
                rep.witness = std::move(wit);
            }
        }
    }
    return rep;
}

} // namespace derandom
