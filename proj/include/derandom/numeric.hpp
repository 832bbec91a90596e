#pragma once

#include <cmath>
#include <cstdint>

namespace derandom {

// Ceiling of a transcendental expression, deterministic across platforms:
// evaluate in double, and when the result sits within 1e-6 of an integer
// boundary re-evaluate with the higher-precision functor before rounding.
template <class Precise>
std::int64_t boundary_checked_ceil(double coarse, Precise&& precise) {
    double nearest = std::nearbyint(coarse);
    if (std::fabs(coarse - nearest) < 1e-6) {
        long double fine = static_cast<long double>(precise());
        long double near_l = std::nearbyint(fine);
        if (fine - near_l < 1e-9L && near_l - fine < 1e-9L)
            return static_cast<std::int64_t>(near_l);
        return static_cast<std::int64_t>(std::ceil(fine));
    }
    return static_cast<std::int64_t>(std::ceil(coarse));
}

// ceil(z / sqrt(k)) in exact integer arithmetic: the smallest c with
// c^2 * k >= z^2.
inline std::int64_t ceil_div_sqrt(std::int64_t z, std::int64_t k) {
    if (z <= 0) return 0;
    auto ge = [&](std::int64_t c) {
        return (__int128)c * c * k >= (__int128)z * z;
    };
    auto c = static_cast<std::int64_t>(std::ceil(z / std::sqrt((long double)k)));
    while (c > 0 && ge(c - 1)) --c;
    while (!ge(c)) ++c;
    return c;
}

} // namespace derandom
