#include <doctest.h>

#include "derandom/verify.hpp"

using namespace derandom;

namespace {

Family splitter_family(int n, int ell, std::vector<std::vector<std::int32_t>> fns) {
    Family fam;
    fam.kind = FamilyKind::splitter;
    fam.n = n;
    fam.ell = ell;
    for (auto& images : fns) fam.functions.emplace_back(n, ell, std::move(images));
    return fam;
}

Family binary_family(int n, FamilyKind kind, const Rational& alpha,
                     std::vector<std::vector<std::int32_t>> fns) {
    Family fam;
    fam.kind = kind;
    fam.n = n;
    fam.ell = 2;
    fam.alpha = alpha;
    for (auto& images : fns) fam.functions.emplace_back(n, 2, std::move(images));
    return fam;
}

} // namespace

TEST_CASE("verify_splitter") {
    Family ident = splitter_family(4, 4, {{0, 1, 2, 3}});
    CHECK(verify_splitter(ident, 2).valid);
    CHECK(verify_splitter(ident, 3).valid);

    Family mod2 = splitter_family(4, 2, {{0, 1, 0, 1}});
    VerifyReport rep = verify_splitter(mod2, 2);
    CHECK_FALSE(rep.valid);
    REQUIRE(rep.witness.has_value());
    CHECK(*rep.witness == std::vector<int>{0, 2});  // first uncovered pair in colex order
    CHECK(rep.checked == 6);

    // ell < k: the general even-split condition
    Family even = splitter_family(4, 2, {{0, 0, 0, 1}});
    VerifyReport rep3 = verify_splitter(even, 3);
    CHECK_FALSE(rep3.valid);  // {0,1,2} lands 3-0, outside the floor/ceil band
    REQUIRE(rep3.witness.has_value());
    CHECK(*rep3.witness == std::vector<int>{0, 1, 2});
    Family mixed = splitter_family(4, 2, {{0, 0, 1, 1}});
    CHECK(verify_splitter(mixed, 3).valid);  // every 3-subset splits 2-1

    // multiplicity stats add up
    VerifyReport rep4 = verify_splitter(mixed, 3);
    std::int64_t total = 0;
    for (auto& [mult, cnt] : rep4.stats) total += cnt;
    CHECK(total == rep4.checked);
    CHECK(rep4.min_multiplicity() >= 1);
}

TEST_CASE("verify_uniformity") {
    Family mod5 = splitter_family(10, 5, {{0, 1, 2, 3, 4, 0, 1, 2, 3, 4}});
    CHECK(verify_uniformity(mod5, UniformityMode::uniform()).valid);
    CHECK(verify_uniformity(mod5, UniformityMode::strong()).valid);

    Family skew = splitter_family(4, 2, {{0, 0, 0, 1}});
    VerifyReport rep = verify_uniformity(skew, UniformityMode::a_uniform(1));
    CHECK_FALSE(rep.valid);
    CHECK(rep.witness_function == 0);
    CHECK(verify_uniformity(skew, UniformityMode::a_uniform(2)).valid);

    // uniform over the image but not strongly uniform over [ell]
    Family gap = splitter_family(4, 4, {{0, 1, 0, 1}});
    CHECK(verify_uniformity(gap, UniformityMode::uniform()).valid);
    CHECK_FALSE(verify_uniformity(gap, UniformityMode::strong()).valid);
}

TEST_CASE("verify_bisector") {
    Family zeros = binary_family(5, FamilyKind::bisector, Rational(0, 1),
                                 {{0, 0, 0, 0, 0}});
    CHECK(verify_bisector(zeros, 2, Rational(0, 1)).valid);
    CHECK(verify_bisector(zeros, 3, Rational(0, 1)).valid);

    Family spike = binary_family(5, FamilyKind::bisector, Rational(1, 5),
                                 {{1, 0, 0, 0, 0}});
    VerifyReport rep = verify_bisector(spike, 1, Rational(1, 5));
    CHECK_FALSE(rep.valid);
    REQUIRE(rep.witness.has_value());
    CHECK(*rep.witness == std::vector<int>{0});

    // wrong ones-count is reported with the function index
    Family off = binary_family(4, FamilyKind::bisector, Rational(1, 2),
                               {{0, 0, 1, 1}, {1, 1, 1, 0}});
    VerifyReport rep2 = verify_bisector(off, 1, Rational(1, 2));
    CHECK_FALSE(rep2.valid);
    CHECK(rep2.witness_function == 1);
}

TEST_CASE("verify_mapping_family and constructed failure") {
    Family fam = binary_family(4, FamilyKind::mapping, Rational(1, 2),
                               {{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0},
                                {1, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}});
    VerifyReport rep = verify_mapping_family(fam, 1, 1, Rational(1, 2), Rational(1, 1));
    CHECK(rep.valid);
    CHECK(rep.checked == 12);

    // drop every function with f(0)=0, f(1)=1: (S0,S1) = ({0},{1}) goes uncovered
    Family broken = binary_family(4, FamilyKind::mapping, Rational(1, 2),
                                  {{0, 0, 1, 1}, {1, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}});
    VerifyReport rep2 = verify_mapping_family(broken, 1, 1, Rational(1, 2), Rational(1, 1));
    CHECK_FALSE(rep2.valid);
    REQUIRE(rep2.witness.has_value());
    CHECK(*rep2.witness == std::vector<int>{0, 1});  // S0 = {0}, S1 = {1}
}

TEST_CASE("verify_universal") {
    Family bis = binary_family(4, FamilyKind::universal, Rational(1, 2), {{0, 0, 1, 1}});
    VerifyReport rep = verify_universal(bis, 1, Rational(1, 2));
    CHECK_FALSE(rep.valid);  // no function maps 0 to 1

    Family full = binary_family(4, FamilyKind::universal, Rational(1, 2),
                                {{0, 0, 1, 1}, {1, 1, 0, 0}, {0, 1, 0, 1},
                                 {1, 0, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}});
    VerifyReport rep2 = verify_universal(full, 2, Rational(1, 2));
    CHECK(rep2.valid);
    CHECK(rep2.checked == 24);  // C(4,2) * 4

    // k = 0 needs only the exact ones-count and a nonempty family
    CHECK(verify_universal(full, 0, Rational(1, 2)).valid);
}
