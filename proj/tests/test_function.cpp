#include <doctest.h>

#include <random>

#include "derandom/function.hpp"
#include "derandom/rational.hpp"

using namespace derandom;

namespace {

Function random_function(std::mt19937_64& rng, int n, int ell) {
    std::vector<std::int32_t> images(n);
    for (auto& v : images) v = static_cast<std::int32_t>(rng() % ell);
    return Function(n, ell, std::move(images));
}

} // namespace

TEST_CASE("make_function validates and caches ones") {
    Function f = make_function(4, 2, {0, 1, 0, 1});
    CHECK(f.ones_count() == 2);
    CHECK(f.n() == 4);
    CHECK(f.ell() == 2);

    CHECK_THROWS_AS(make_function(3, 2, {0, 1}), Error);
    CHECK_THROWS_AS(make_function(3, 2, {0, 2, 0}), Error);
    try {
        make_function(3, 2, {0, 1});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::length_mismatch);
    }
    try {
        make_function(3, 2, {0, 2, 0});
    } catch (const Error& e) {
        CHECK(e.code() == Errc::image_out_of_range);
    }
}

TEST_CASE("compose basics") {
    Function inner = identity_function(5, 5);
    Function outer = modulo_function(5, 2, 2);
    Function c = compose(outer, inner);
    CHECK(std::vector<std::int32_t>(c.images().begin(), c.images().end()) ==
          std::vector<std::int32_t>{0, 1, 0, 1, 0});

    Function inner2 = modulo_function(6, 3, 3);
    Function outer2 = make_function(3, 2, {1, 0, 0});
    Function c2 = compose(outer2, inner2);
    CHECK(std::vector<std::int32_t>(c2.images().begin(), c2.images().end()) ==
          std::vector<std::int32_t>{1, 0, 0, 1, 0, 0});

    Function inner3 = make_function(3, 4, {0, 1, 2});
    Function outer3 = make_function(5, 2, {0, 1, 0, 1, 0});
    CHECK_THROWS_AS(compose(outer3, inner3), Error);
}

TEST_CASE("compose is associative on random triples") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng() % 6);
        int m1 = 1 + static_cast<int>(rng() % 6);
        int m2 = 1 + static_cast<int>(rng() % 6);
        int m3 = 1 + static_cast<int>(rng() % 6);
        Function f = random_function(rng, n, m1);
        Function g = random_function(rng, m1, m2);
        Function h = random_function(rng, m2, m3);
        CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
    }
}

TEST_CASE("nonuniformity") {
    CHECK(nonuniformity(modulo_function(10, 5, 5)) == 0);
    CHECK(nonuniformity(modulo_function(10, 3, 3)) == 1);
    CHECK(nonuniformity(make_function(4, 2, {0, 0, 0, 1})) == 2);
    // constant image
    CHECK(nonuniformity(make_function(5, 3, {1, 1, 1, 1, 1})) == 0);
}

TEST_CASE("image_histogram") {
    CHECK(image_histogram(modulo_function(7, 3, 3)) == std::vector<std::int64_t>{3, 2, 2});
    CHECK(image_histogram(make_function(5, 2, {0, 0, 0, 0, 0})) ==
          std::vector<std::int64_t>{5, 0});
    CHECK(image_histogram(identity_function(4, 4)) == std::vector<std::int64_t>{1, 1, 1, 1});
}

TEST_CASE("histogram sums to n, nonuniformity zero iff equal preimages") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng() % 12);
        int ell = 1 + static_cast<int>(rng() % 6);
        Function f = random_function(rng, n, ell);
        auto hist = image_histogram(f);
        std::int64_t sum = 0;
        std::int64_t lo = -1, hi = 0;
        for (std::int64_t c : hist) {
            sum += c;
            if (c == 0) continue;
            if (lo < 0 || c < lo) lo = c;
            hi = std::max(hi, c);
        }
        CHECK(sum == n);
        CHECK((nonuniformity(f) == 0) == (lo == hi));
    }
}

TEST_CASE("rational arithmetic is exact") {
    Rational half(1, 2);
    CHECK(ceil_mul(half, 13) == 7);
    CHECK(floor_mul(half, 13) == 6);
    CHECK(Rational(2, 4) == half);
    CHECK(Rational(-1, -2) == half);
    CHECK(Rational::parse("3/6") == half);
    CHECK(Rational::parse("2") == Rational(2, 1));
    CHECK(half.str() == "1/2");
    CHECK(Rational(1, 4) < half);
    CHECK_THROWS_AS(Rational(1, 0), Error);
    CHECK_THROWS_AS(Rational::parse("x/2"), Error);
    // ceilings hit exact boundaries
    CHECK(ceil_mul(Rational(1, 4), 8) == 2);
    CHECK(ceil_mul(Rational(1, 4), 9) == 3);
    CHECK(ceil_mul(Rational(0, 1), 9) == 0);
}
