#include <doctest.h>

#include "derandom/bisector.hpp"
#include "derandom/verify.hpp"

using namespace derandom;

TEST_CASE("base_bisector covers every pair with exact ones") {
    BuildConfig cfg;
    Family fam = base_bisector(8, 2, Rational(1, 2), cfg);
    VerifyReport rep = verify_bisector(fam, 2, Rational(1, 2));
    CHECK(rep.valid);
    CHECK(rep.checked == 28);
    CHECK(fam.size() >= 4);  // 2^k lower bound
    for (const Function& f : fam.functions) CHECK(f.ones_count() == 4);
    // full pool: the best pick must reach the hypergeometric average
    // C(m-k, ones)/C(m, ones) = C(6,4)/C(8,4) = 15/70
    CHECK_FALSE(fam.sampled_pool);
    for (const GreedyLogEntry& e : fam.coverage_log)
        CHECK(e.best_cover * 70 >= e.remaining_before * 15);
    // uncovered strictly decreases
    for (std::size_t i = 1; i < fam.coverage_log.size(); ++i)
        CHECK(fam.coverage_log[i].remaining_before < fam.coverage_log[i - 1].remaining_before);
}

TEST_CASE("base_bisector degenerate cases") {
    BuildConfig cfg;
    Family vac = base_bisector(5, 0, Rational(2, 5), cfg);
    CHECK(vac.size() == 1);
    CHECK(vac.functions[0].ones_count() == 2);

    Family zeros = base_bisector(6, 2, Rational(0, 1), cfg);
    CHECK(zeros.size() == 1);
    CHECK(zeros.functions[0].ones_count() == 0);

    CHECK_THROWS_AS(base_bisector(4, 3, Rational(1, 2), cfg), Error);  // 2 ones > m - k
}

TEST_CASE("extend_by_d") {
    BuildConfig cfg;
    Family base = base_bisector(12, 2, Rational(1, 2), cfg);
    Family ext = extend_by_d(base, 1, 2, cfg);
    CHECK(ext.n == 13);
    CHECK(ext.size() == 3 * base.size());
    for (const Function& f : ext.functions) CHECK(f.ones_count() == 7);  // ceil(13/2)
    CHECK(verify_bisector(ext, 2, Rational(1, 2)).valid);

    CHECK(extend_by_d(base, 0, 2, cfg).size() == base.size());  // d = 0 shortcut

    Family small = base_bisector(6, 2, Rational(1, 3), cfg);
    CHECK_THROWS_AS(extend_by_d(small, 2, 2, cfg), Error);  // 2*3 >= 6
}

TEST_CASE("extend_modulo") {
    BuildConfig cfg;
    Family base = base_bisector(8, 2, Rational(1, 2), cfg);

    Family doubled = extend_modulo(base, 16, 2, cfg);
    CHECK(doubled.n == 16);
    CHECK(doubled.size() == base.size());  // pure pullback
    CHECK(verify_bisector(doubled, 2, Rational(1, 2)).valid);

    Family same = extend_modulo(base, 8, 2, cfg);
    CHECK(same.size() == base.size());

    Family odd = extend_modulo(base, 17, 2, cfg);
    CHECK(odd.n == 17);
    CHECK(odd.size() == 3 * base.size());
    CHECK(verify_bisector(odd, 2, Rational(1, 2)).valid);
}

TEST_CASE("extend_modulo renormalizes the ones count") {
    BuildConfig cfg;
    // ceil(10/4) = 3 ones; doubling gives 6 > ceil(20/4) = 5, one flip per function
    Family base = base_bisector(10, 2, Rational(1, 4), cfg);
    Family big = extend_modulo(base, 20, 2, cfg);
    for (const Function& f : big.functions) CHECK(f.ones_count() == 5);
    CHECK(verify_bisector(big, 2, Rational(1, 4)).valid);
}

TEST_CASE("sampled base bisector extends through the modulo route") {
    BuildConfig cfg;
    cfg.full_pool_limit = 1000;  // C(16,10) = 8008 forces the sampled path
    cfg.sample_size = 4000;
    // ceil(16/sqrt(3)) = 10 ones
    Family base = base_bisector(16, 3, Rational(10, 16), cfg);
    CHECK(base.sampled_pool);
    REQUIRE(verify_bisector(base, 3, Rational(5, 8)).valid);

    Family tripled = extend_modulo(base, 48, 3, cfg);  // 48 = 3*16: pure pullback
    CHECK(tripled.size() == base.size());
    CHECK(verify_bisector(tripled, 3, Rational(5, 8)).valid);

    Family odd = extend_modulo(base, 49, 3, cfg);  // remainder 1: four forbidden blocks
    CHECK(odd.size() == 4 * base.size());
    CHECK(verify_bisector(odd, 3, Rational(5, 8)).valid);
}

TEST_CASE("iteration_count") {
    CHECK(iteration_count(16, Rational(1, 2)) == 3);  // ceil(4 ln 2) = ceil(2.7726)
    CHECK(iteration_count(16, Rational(0, 1)) == 0);
    CHECK(iteration_count(4, Rational(3, 4)) == 3);  // ceil(2 ln 4)
    CHECK(iteration_count(2, Rational(1, 2)) == 1);  // ceil(0.9803)
    CHECK(iteration_count(9, Rational(1, 2)) == 3);  // ceil(2.0794)
    CHECK_THROWS_AS(iteration_count(4, Rational(1, 1)), Error);
}

TEST_CASE("alpha_bisector") {
    BuildConfig cfg;
    Family fam = alpha_bisector(16, 2, Rational(1, 2), cfg);
    CHECK(verify_bisector(fam, 2, Rational(1, 2)).valid);
    CHECK(fam.size() >= 4);
    for (const Function& f : fam.functions) CHECK(f.ones_count() == 8);

    // one stage reaches alpha here, so the run degenerates to the base greedy
    Family base = base_bisector(16, 2, Rational(1, 2), cfg);
    REQUIRE(fam.size() == base.size());
    for (std::size_t i = 0; i < fam.size(); ++i) CHECK(fam.functions[i] == base.functions[i]);

    Family zeros = alpha_bisector(16, 2, Rational(0, 1), cfg);
    CHECK(zeros.size() == 1);
    CHECK(zeros.functions[0].ones_count() == 0);
}

TEST_CASE("alpha_bisector composes stages when one stage cannot reach alpha") {
    BuildConfig cfg;
    // stage fraction 1/sqrt(2) < 5/6, so a second trimmed stage is needed
    Family fam = alpha_bisector(12, 2, Rational(5, 6), cfg);
    CHECK(verify_bisector(fam, 2, Rational(5, 6)).valid);
    for (const Function& f : fam.functions) CHECK(f.ones_count() == 10);
    CHECK(fam.coverage_log.size() >= 2);  // logs from both stages

    // infeasible: 7 ones leave only 5 zeros for a 9-subset
    CHECK_THROWS_AS(alpha_bisector(14, 9, Rational(1, 2), cfg), Error);
}

TEST_CASE("adversary_lower_bound") {
    BuildConfig cfg;
    Family fam = base_bisector(8, 2, Rational(1, 2), cfg);
    auto [witness, surviving] = adversary_lower_bound(fam, 2);
    CHECK(witness.size() == 2);
    CHECK(surviving >= 1);
    // halving certificate: surviving >= 1 after k halvings means |F| >= 2^k
    CHECK(fam.size() >= 4);

    Family zeros;
    zeros.kind = FamilyKind::bisector;
    zeros.n = 6;
    zeros.ell = 2;
    zeros.functions.emplace_back(6, 2, std::vector<std::int32_t>(6, 0));
    auto [w2, s2] = adversary_lower_bound(zeros, 3);
    CHECK(s2 == 1);

    // an invalid family: the greedy picks the heavy element and nothing survives
    Family broken;
    broken.kind = FamilyKind::bisector;
    broken.n = 4;
    broken.ell = 2;
    broken.alpha = Rational(1, 2);
    broken.functions.emplace_back(4, 2, std::vector<std::int32_t>{1, 1, 0, 0});
    auto [w3, s3] = adversary_lower_bound(broken, 1);
    CHECK(s3 == 0);
    CHECK(w3 == std::vector<int>{0});
}

TEST_CASE("interval_bisector unions guessed decompositions") {
    BuildConfig cfg;
    Family fam = interval_bisector(32, 2, Rational(1, 2), cfg);
    CHECK(verify_bisector(fam, 2, Rational(1, 2)).valid);
    CHECK_FALSE(fam.guess_sizes.empty());
    for (const Function& f : fam.functions) CHECK(f.ones_count() == 16);

    Family single = interval_bisector(16, 1, Rational(1, 2), cfg);
    CHECK(verify_bisector(single, 1, Rational(1, 2)).valid);

    CHECK_THROWS_AS(interval_bisector(3, 2, Rational(1, 2), cfg), Error);

    BuildConfig tight = cfg;
    tight.guess_budget = 2;
    CHECK_THROWS_AS(interval_bisector(32, 2, Rational(1, 2), tight), Error);

    // boundaries at every position instead of the coarse grid
    BuildConfig full = cfg;
    full.full_interval_enumeration = true;
    Family fine = interval_bisector(12, 2, Rational(1, 2), full);
    CHECK(verify_bisector(fine, 2, Rational(1, 2)).valid);
}
