#include "greenlink/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "greenlink/errors.hpp"

namespace greenlink {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), key_(splitmix64_mix(seed ^ splitmix64_mix(stream_id))) {}

std::uint64_t RngStream::next_u64() {
    ++counter_;
    return splitmix64_mix(key_ + counter_ * kGolden);
}

double RngStream::uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * std::numbers::pi * uniform();
    spare_normal_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

long RngStream::binomial_half(long n) {
    if (n < 0) throw DomainError("binomial_half: n must be >= 0");
    long count = 0;
    long left = n;
    while (left >= 64) {
        count += std::popcount(next_u64());
        left -= 64;
    }
    if (left > 0) {
        const std::uint64_t mask = (std::uint64_t{1} << left) - 1;
        count += std::popcount(next_u64() & mask);
    }
    return count;
}

}  // namespace greenlink
