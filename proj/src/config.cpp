#include "orekit/config.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace orekit {

namespace {
std::atomic<bool> g_parallel{true};
std::atomic<std::size_t> g_parallel_threshold{1u << 12};
std::atomic<std::size_t> g_gcd_threshold{512};
}  // namespace

void set_parallel_enabled(bool on) { g_parallel.store(on, std::memory_order_relaxed); }
bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }

void set_parallel_threshold(std::size_t pairs) { g_parallel_threshold.store(pairs, std::memory_order_relaxed); }
std::size_t parallel_threshold() { return g_parallel_threshold.load(std::memory_order_relaxed); }

void set_gcd_threshold(std::size_t terms) { g_gcd_threshold.store(terms, std::memory_order_relaxed); }
std::size_t gcd_threshold() { return g_gcd_threshold.load(std::memory_order_relaxed); }

int default_truncation(std::uint64_t characteristic) {
    if (const char* env = std::getenv("OREKIT_TRUNCATION")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    std::uint64_t p = characteristic;
    std::uint64_t n = p ? p * p + p : 0;
    return n > 16 ? static_cast<int>(n) : 16;
}

}  // namespace orekit
