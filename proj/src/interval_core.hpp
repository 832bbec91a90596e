#pragma once

#include "derandom/bisector.hpp"
#include "derandom/config.hpp"
#include "derandom/family.hpp"

namespace derandom::detail_intervals {

// Shared engine behind interval_bisector (k1 = 0) and
// interval_mapping_family: enumerates interval plans on the boundary grid,
// builds a per-interval family on each augmented range, and unions the
// per-guess combination products.
Family build_interval_family(int n, int k0, int k1, const Rational& alpha,
                             const BuildConfig& cfg);

} // namespace derandom::detail_intervals
