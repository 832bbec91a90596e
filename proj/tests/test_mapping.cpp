#include <doctest.h>

#include "derandom/mapping.hpp"
#include "derandom/splitter.hpp"
#include "derandom/verify.hpp"

using namespace derandom;

TEST_CASE("base_mapping_family covers every ordered pair") {
    BuildConfig cfg;
    Family fam = base_mapping_family(8, 1, 1, Rational(1, 2), Rational(1, 1), cfg);
    VerifyReport rep = verify_mapping_family(fam, 1, 1, Rational(1, 2), Rational(1, 1));
    CHECK(rep.valid);
    CHECK(rep.checked == 56);
    for (const Function& f : fam.functions) CHECK(f.ones_count() == 4);
}

TEST_CASE("beta = 0 collapses to bisector coverage") {
    BuildConfig cfg;
    Family fam = base_mapping_family(8, 1, 1, Rational(1, 2), Rational(0, 1), cfg);
    CHECK(verify_mapping_family(fam, 1, 1, Rational(1, 2), Rational(0, 1)).valid);
    // covering (S0, S1) with zero S1-ones is covering S0 u S1 by zeros
    CHECK(verify_bisector(fam, 2, Rational(1, 2)).valid);
}

TEST_CASE("k1 = 0 collapses to the bisector predicate") {
    BuildConfig cfg;
    Family fam = base_mapping_family(8, 2, 0, Rational(1, 2), Rational(1, 1), cfg);
    CHECK(verify_mapping_family(fam, 2, 0, Rational(1, 2), Rational(1, 1)).valid);
    CHECK(verify_bisector(fam, 2, Rational(1, 2)).valid);
}

TEST_CASE("base_mapping_family parameter checks") {
    BuildConfig cfg;
    // ones below ceil(beta*k1)
    CHECK_THROWS_AS(base_mapping_family(8, 0, 3, Rational(1, 8), Rational(1, 1), cfg), Error);
    // zeros cannot host S0
    CHECK_THROWS_AS(base_mapping_family(4, 3, 0, Rational(1, 2), Rational(0, 1), cfg), Error);
}

TEST_CASE("beta_schedule follows the geometric profile with exact sums") {
    BetaSchedule s = beta_schedule(16, 4, Rational(1, 2));
    CHECK(s.t == 3);
    CHECK(s.targets == std::vector<int>{2, 2, 0});
    CHECK(s.residuals == std::vector<int>{4, 2, 0, 0});

    BetaSchedule empty = beta_schedule(16, 0, Rational(1, 2));
    CHECK(empty.t == 3);
    CHECK(empty.targets == std::vector<int>{0, 0, 0});

    BetaSchedule one = beta_schedule(4, 2, Rational(1, 4));  // t = 1 forces beta_1 = 1
    CHECK(one.t == 1);
    CHECK(one.targets == std::vector<int>{2});

    for (int k : {4, 9, 16, 25}) {
        for (int k1 = 0; k1 <= k; ++k1) {
            for (Rational a : {Rational(1, 4), Rational(1, 2)}) {
                BetaSchedule sched = beta_schedule(k, k1, a);
                int sum = 0;
                for (int t : sched.targets) {
                    CHECK(t >= 0);
                    sum += t;
                }
                CHECK(sum == k1);
                CHECK(sched.residuals.front() == k1);
                CHECK(sched.residuals.back() == 0);
                for (std::size_t i = 1; i < sched.residuals.size(); ++i)
                    CHECK(sched.residuals[i] <= sched.residuals[i - 1]);
            }
        }
    }
}

namespace {

// two uniform functions with full image [8]; any colliding pair differs
// in the other coordinate
Family full_image_splitter(int n) {
    Family fam;
    fam.kind = FamilyKind::splitter;
    fam.n = n;
    fam.ell = 8;
    fam.k = 2;
    std::vector<std::int32_t> blocks(n), residues(n);
    for (int x = 0; x < n; ++x) {
        blocks[x] = static_cast<std::int32_t>((static_cast<std::int64_t>(x) * 8) / n);
        residues[x] = x % 8;
    }
    fam.functions.emplace_back(n, 8, blocks);
    fam.functions.emplace_back(n, 8, residues);
    return fam;
}

} // namespace

TEST_CASE("lift_mapping_family composes a uniform splitter with a base family") {
    BuildConfig cfg;
    Family splitter = full_image_splitter(16);
    REQUIRE(verify_splitter(splitter, 2).valid);
    REQUIRE(verify_uniformity(splitter, UniformityMode::uniform()).valid);
    Family base = base_mapping_family(8, 1, 1, Rational(1, 2), Rational(1, 1), cfg);
    Family lifted = lift_mapping_family(16, 2, 1, 1, Rational(1, 1), splitter, base, cfg);
    CHECK(lifted.size() == splitter.size() * base.size() * 3);
    CHECK(verify_mapping_family(lifted, 1, 1, Rational(1, 2), Rational(1, 1)).valid);
    for (const Function& f : lifted.functions) CHECK(f.ones_count() == 8);
}

TEST_CASE("lift repairs drifting ones-counts inside the flip blocks") {
    BuildConfig cfg;
    Family splitter = full_image_splitter(20);  // class sizes 2 and 3
    REQUIRE(verify_splitter(splitter, 2).valid);
    Family base = base_mapping_family(8, 1, 1, Rational(1, 2), Rational(1, 1), cfg);
    Family lifted = lift_mapping_family(20, 2, 1, 1, Rational(1, 1), splitter, base, cfg);
    CHECK(lifted.size() == splitter.size() * base.size() * 3);
    for (const Function& f : lifted.functions) CHECK(f.ones_count() == 10);
    CHECK(verify_mapping_family(lifted, 1, 1, Rational(1, 2), Rational(1, 1)).valid);
}

TEST_CASE("lift with an identity splitter reduces to repaired copies of the base") {
    BuildConfig cfg;
    Family splitter;
    splitter.kind = FamilyKind::splitter;
    splitter.n = 8;
    splitter.ell = 8;
    splitter.k = 2;
    splitter.functions.push_back(identity_function(8, 8));
    Family base = base_mapping_family(8, 1, 1, Rational(1, 2), Rational(1, 1), cfg);
    Family lifted = lift_mapping_family(8, 2, 1, 1, Rational(1, 1), splitter, base, cfg);
    CHECK(lifted.size() == base.size() * 3);
    CHECK(verify_mapping_family(lifted, 1, 1, Rational(1, 2), Rational(1, 1)).valid);
}

TEST_CASE("lift rejects non-uniform splitters") {
    BuildConfig cfg;
    Family bad;
    bad.kind = FamilyKind::splitter;
    bad.n = 8;
    bad.ell = 4;
    bad.k = 2;
    bad.functions.emplace_back(8, 4, std::vector<std::int32_t>{0, 0, 0, 0, 0, 1, 2, 3});
    Family base = base_mapping_family(4, 1, 1, Rational(1, 2), Rational(1, 1), cfg);
    CHECK_THROWS_AS(lift_mapping_family(8, 2, 1, 1, Rational(1, 1), bad, base, cfg), Error);
    try {
        lift_mapping_family(8, 2, 1, 1, Rational(1, 1), bad, base, cfg);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::uniformity_required);
    }
}

TEST_CASE("iterated_mapping_family") {
    BuildConfig cfg;
    Family fam = iterated_mapping_family(16, 1, 1, Rational(1, 2), cfg);
    CHECK(verify_mapping_family(fam, 1, 1, Rational(1, 2), Rational(1, 1)).valid);
    for (const Function& f : fam.functions) CHECK(f.ones_count() == 8);

    // k1 = 0 agrees with the bisector definition
    Family bis = iterated_mapping_family(12, 2, 0, Rational(1, 2), cfg);
    CHECK(verify_bisector(bis, 2, Rational(1, 2)).valid);

    // infeasible budgets
    CHECK_THROWS_AS(iterated_mapping_family(14, 0, 9, Rational(1, 2), cfg), Error);
}

TEST_CASE("iterated_mapping_family runs multiple stages for k = 6") {
    BuildConfig cfg;
    Family fam = iterated_mapping_family(12, 5, 1, Rational(1, 2), cfg);
    CHECK(verify_mapping_family(fam, 5, 1, Rational(1, 2), Rational(1, 1)).valid);
    CHECK(fam.coverage_log.size() >= 2);
    for (const Function& f : fam.functions) CHECK(f.ones_count() == 6);
}

TEST_CASE("interval_mapping_family") {
    BuildConfig cfg;
    Family fam = interval_mapping_family(32, 1, 1, Rational(1, 2), cfg);
    CHECK(verify_mapping_family(fam, 1, 1, Rational(1, 2), Rational(1, 1)).valid);
    CHECK_FALSE(fam.guess_sizes.empty());

    // k1 = 0 reduces to the interval bisector path
    Family bis = interval_mapping_family(32, 2, 0, Rational(1, 2), cfg);
    CHECK(verify_bisector(bis, 2, Rational(1, 2)).valid);

    // k0 = 0: only the S1 side constrains the guesses
    Family ones_only = interval_mapping_family(24, 0, 1, Rational(1, 2), cfg);
    CHECK(verify_mapping_family(ones_only, 0, 1, Rational(1, 2), Rational(1, 1)).valid);
}

TEST_CASE("universal_set") {
    BuildConfig cfg;
    Family fam = universal_set(8, 2, Rational(1, 2), cfg);
    VerifyReport rep = verify_universal(fam, 2, Rational(1, 2));
    CHECK(rep.valid);
    CHECK(rep.checked == 112);  // C(8,2) * 2^2
    CHECK(fam.size() >= 4);
    for (const Function& f : fam.functions) CHECK(f.ones_count() == 4);
    // the all-zeros split side makes it a bisector as well
    CHECK(verify_bisector(fam, 2, Rational(1, 2)).valid);

    Family singles = universal_set(8, 1, Rational(1, 2), cfg);
    CHECK(verify_universal(singles, 1, Rational(1, 2)).valid);

    Family trivial = universal_set(8, 0, Rational(1, 2), cfg);
    CHECK(trivial.size() == 1);
    CHECK(trivial.functions[0].ones_count() == 4);
}
