#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace pci {

// splitmix64 finalizer; used for seed derivation.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic per-work-item seed, independent of thread schedule.
inline uint64_t derive_seed(uint64_t master, uint64_t stage, uint64_t part) {
    return mix64(mix64(mix64(master) ^ stage) ^ (part + 0x51ed270b4d2f4c21ull));
}

// mt19937_64 (engine output is pinned by the standard) with a fixed bit
// mapping to doubles, so streams are identical across platforms.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Strictly inside (0,1).
    double uniform() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Integer in [0, n), n >= 1; unbiased by rejection.
    uint64_t below(uint64_t n);

private:
    std::mt19937_64 gen_;
};

// Runs fn(i) for i in [0, count). With threads <= 1 (or count <= 1) the loop is
// sequential; otherwise a bounded pool of workers pulls indices from a shared
// counter. Work items must be independent.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

// Resolves 0 (auto) to hardware concurrency.
int resolve_threads(int requested);

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Level comes from the PCI_LOG environment variable (error|warn|info|debug).
LogLevel log_level();
void log(LogLevel level, const std::string& msg);

// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);

}  // namespace pci
