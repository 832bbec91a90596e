#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "derandom/error.hpp"

namespace derandom {

// Exact rational, always normalized (gcd 1, positive denominator).  Used for
// the alpha/beta parameters so that ceil(alpha * n) is platform independent.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) fail(Errc::bad_params, "rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return (__int128)a.num * b.den < (__int128)b.num * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a == b || a < b; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    long double to_long_double() const {
        return static_cast<long double>(num) / static_cast<long double>(den);
    }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

    static Rational parse(const std::string& text);
};

// ceil(r * m) for r >= 0, m >= 0, computed exactly.
inline std::int64_t ceil_mul(const Rational& r, std::int64_t m) {
    if (r.num < 0 || m < 0) fail(Errc::bad_params, "ceil_mul expects non-negative operands");
    __int128 p = (__int128)r.num * m;
    return static_cast<std::int64_t>((p + r.den - 1) / r.den);
}

// floor(r * m) for r >= 0, m >= 0.
inline std::int64_t floor_mul(const Rational& r, std::int64_t m) {
    if (r.num < 0 || m < 0) fail(Errc::bad_params, "floor_mul expects non-negative operands");
    __int128 p = (__int128)r.num * m;
    return static_cast<std::int64_t>(p / r.den);
}

} // namespace derandom
