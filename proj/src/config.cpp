#include "derandom/config.hpp"

#include <cstdlib>
#include <thread>

namespace derandom {

int resolve_threads(const BuildConfig& cfg) {
    long t = cfg.threads;
    if (t <= 0) {
        if (const char* env = std::getenv("DERANDOM_THREADS")) t = std::strtol(env, nullptr, 10);
    }
    if (t <= 0) t = static_cast<long>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    if (t > 64) t = 64;
    return static_cast<int>(t);
}

} // namespace derandom
