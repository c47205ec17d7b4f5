#pragma once

#include "netspread/network.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace netspread {

/// SplitMix64 stream. Replicate substreams are derived deterministically
/// from (seed, replicate), so results do not depend on worker count.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t state) : state_(state) {}

    static SplitMix64 substream(uint64_t seed, uint64_t replicate) {
        // Two mixing rounds decorrelate nearby (seed, replicate) pairs.
        uint64_t s = mix(seed + 0x9E3779B97F4A7C15ull * (replicate + 1));
        return SplitMix64(mix(s));
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        return mix_out(z);
    }

    /// Uniform in (0, 1].
    double uniform() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    double exponential();

private:
    static uint64_t mix(uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        return mix_out(z);
    }
    static uint64_t mix_out(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    uint64_t state_;
};

/// One realization: nodes seeded at t=0 and the sorted adoption events.
struct EventLog {
    std::vector<int> seeds;
    std::vector<std::pair<double, int>> events; // (time, node), strictly increasing times
};

struct EnsembleResult {
    std::vector<double> grid;
    std::vector<double> mean_f;
    std::vector<double> std_err;
    long replicates = 0;
    uint64_t seed = 0;
};

/// Exact sampling of the jump process by integrated-hazard inversion;
/// constant/affine schedules make the inverse closed-form per segment.
EventLog simulate_once(const GeneralForm& net, double horizon, SplitMix64& rng);

/// Monte-Carlo estimate of f(t). Bit-identical for fixed (net, horizon,
/// grid, replicates, seed) regardless of thread count (0 = auto, or
/// NETSPREAD_THREADS).
EnsembleResult estimate_f(const GeneralForm& net, double horizon,
                          const std::vector<double>& grid, long replicates,
                          uint64_t seed, int threads = 0);

} // namespace netspread
