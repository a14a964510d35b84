#pragma once

#include <cstdint>

namespace greenlink {

// Counter-based stream: draw i is splitmix64_mix(key + i * 0x9e3779b97f4a7c15)
// with key = splitmix64_mix(seed ^ splitmix64_mix(stream_id)). Pure integer
// arithmetic, so the sequence is the same on every platform.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();
    // ((x >> 11) + 1) * 2^-53, so never 0 (safe under log).
    double uniform();
    // Box-Muller, second variate of each pair cached.
    double normal();
    // Binomial(n, 1/2) as the popcount of n random bits.
    long binomial_half(long n);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace greenlink
