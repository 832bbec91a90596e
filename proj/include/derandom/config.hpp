#pragma once

#include <cstdint>

namespace derandom {

// Knobs shared by the builders.  Defaults are sized for desk-scale runs where
// every construction is certified by the exhaustive oracle.
struct BuildConfig {
    std::uint64_t seed = 0;                  // RNG seed for sampled pools
    std::int64_t full_pool_limit = 1'000'000; // enumerate pool exhaustively at or below
    std::int64_t sample_size = 100'000;       // sampled-pool size above the limit
    std::int64_t max_pool_width = 2048;       // widest universe a pool row may have

    bool allow_out_of_regime = true;  // accept parameters below the analyzed thresholds
    bool oracle_check = true;         // verify out-of-regime outputs before returning

    int threads = 0;  // 0 = DERANDOM_THREADS env (0/unset = hardware)

    // composed_splitter: override / cap for the intermediate codomain.
    int ell_prime_override = 0;
    int ell_prime_cap = 4096;

    // build_splitter, small-k branch: cap on ceil((log log n)^6) and optional
    // override, so the brute-force stage stays enumerable.
    int dispatcher_lp_cap = 64;
    int dispatcher_lp_override = 0;

    // interval builders
    int granularity = 0;                 // 0 = auto ceil(n / (4k))
    std::int64_t guess_budget = 200'000; // cap on interval-plan enumeration
    bool full_interval_enumeration = false; // boundaries at every position, not the grid
};

// Worker count: config.threads if positive, else DERANDOM_THREADS env,
// else hardware concurrency; always >= 1.
int resolve_threads(const BuildConfig& cfg);

} // namespace derandom
