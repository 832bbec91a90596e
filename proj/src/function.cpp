#include "derandom/function.hpp"

#include <algorithm>
#include <numeric>

#include "derandom/rational.hpp"

namespace derandom {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::bad_params: return "BadParams";
        case Errc::length_mismatch: return "LengthMismatch";
        case Errc::image_out_of_range: return "ImageOutOfRange";
        case Errc::codomain_mismatch: return "CodomainMismatch";
        case Errc::limit_too_small: return "LimitTooSmall";
        case Errc::insufficient_primes: return "InsufficientPrimes";
        case Errc::pool_exhausted: return "PoolExhausted";
        case Errc::precondition_failed: return "PreconditionFailed";
        case Errc::nonuniformity_exceeded: return "NonuniformityExceeded";
        case Errc::uniformity_required: return "UniformityRequired";
        case Errc::size_mismatch: return "SizeMismatch";
        case Errc::guess_space_too_large: return "GuessSpaceTooLarge";
        case Errc::oracle_failed: return "OracleFailed";
        case Errc::parse_error: return "ParseError";
    }
    return "Error";
}

Rational Rational::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text), 1);
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
        fail(Errc::parse_error, "bad rational '" + text + "'");
    }
}

Function::Function(int n, int ell, std::vector<std::int32_t> images)
    : n_(n), ell_(ell), images_(std::move(images)) {
    if (n <= 0 || ell < 1) fail(Errc::bad_params, "function needs n >= 1 and ell >= 1");
    if (images_.size() != static_cast<std::size_t>(n))
        fail(Errc::length_mismatch, "expected " + std::to_string(n) + " images, got " +
                                        std::to_string(images_.size()));
    for (std::int32_t v : images_)
        if (v < 0 || v >= ell)
            fail(Errc::image_out_of_range,
                 "image value " + std::to_string(v) + " outside [0, " + std::to_string(ell) + ")");
    if (ell_ == 2)
        ones_ = static_cast<int>(std::count(images_.begin(), images_.end(), 1));
}

int Function::ones_count() const {
    if (ones_ >= 0) return ones_;
    return static_cast<int>(std::count(images_.begin(), images_.end(), 1));
}

Function Function::with_codomain(int ell) const {
    return Function(n_, ell, images_);
}

Function make_function(int n, int ell, std::vector<std::int32_t> images) {
    return Function(n, ell, std::move(images));
}

Function identity_function(int n, int ell) {
    if (ell < n) fail(Errc::bad_params, "identity embedding needs ell >= n");
    std::vector<std::int32_t> images(n);
    std::iota(images.begin(), images.end(), 0);
    return Function(n, ell, std::move(images));
}

Function modulo_function(int n, int m, int ell) {
    if (m < 1 || ell < m) fail(Errc::bad_params, "modulo function needs 1 <= m <= ell");
    std::vector<std::int32_t> images(n);
    for (int x = 0; x < n; ++x) images[x] = x % m;
    return Function(n, ell, std::move(images));
}

Function compose(const Function& outer, const Function& inner) {
    if (inner.ell() != outer.n())
        fail(Errc::codomain_mismatch, "inner codomain " + std::to_string(inner.ell()) +
                                          " != outer universe " + std::to_string(outer.n()));
    std::vector<std::int32_t> images(inner.n());
    for (int x = 0; x < inner.n(); ++x) images[x] = outer(inner(x));
    return Function(inner.n(), outer.ell(), std::move(images));
}

int nonuniformity(const Function& f) {
    std::vector<std::int64_t> counts = image_histogram(f);
    std::int64_t lo = -1, hi = 0;
    for (std::int64_t c : counts) {
        if (c == 0) continue;  // only i in Im(f)
        if (lo < 0 || c < lo) lo = c;
        if (c > hi) hi = c;
    }
    return lo < 0 ? 0 : static_cast<int>(hi - lo);
}

std::vector<std::int64_t> image_histogram(const Function& f) {
    std::vector<std::int64_t> counts(f.ell(), 0);
    for (std::int32_t v : f.images()) ++counts[v];
    return counts;
}

} // namespace derandom
