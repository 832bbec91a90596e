#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "derandom/error.hpp"

namespace derandom {

// Total map [n] -> [ell], stored as the image sequence.  Immutable after
// construction.  Universes are 0-based throughout: [n] = {0, ..., n-1}.
class Function {
public:
    Function() = default;
    Function(int n, int ell, std::vector<std::int32_t> images);

    int n() const { return n_; }
    int ell() const { return ell_; }
    std::int32_t operator()(int x) const { return images_[static_cast<std::size_t>(x)]; }
    std::span<const std::int32_t> images() const { return images_; }

    // Number of entries equal to 1; cached for binary functions, counted on
    // demand otherwise.
    int ones_count() const;

    // Same images re-declared with a different codomain; every image value
    // must already be < ell.
    Function with_codomain(int ell) const;

    friend bool operator==(const Function& a, const Function& b) {
        return a.n_ == b.n_ && a.ell_ == b.ell_ && a.images_ == b.images_;
    }

private:
    int n_ = 0;
    int ell_ = 1;
    int ones_ = -1;
    std::vector<std::int32_t> images_;
};

Function make_function(int n, int ell, std::vector<std::int32_t> images);

// Identity embedding [n] -> [ell] for ell >= n.
Function identity_function(int n, int ell);

// x -> x mod m, declared with codomain ell >= m.
Function modulo_function(int n, int m, int ell);

// result(x) = outer(inner(x)); requires inner.ell == outer.n.
Function compose(const Function& outer, const Function& inner);

// Smallest a such that | |f^-1(i)| - |f^-1(j)| | <= a over i, j in Im(f).
int nonuniformity(const Function& f);

// counts[i] = |f^-1(i)| for i in [ell]; sums to n.
std::vector<std::int64_t> image_histogram(const Function& f);

} // namespace derandom
