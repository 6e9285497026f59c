#include "cure/rng.hpp"

#include "cure/stats.hpp"

namespace cure {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose) {
    // Chain the three key components through SplitMix64 so that nearby
    // (seed, index) pairs land in unrelated states.
    std::uint64_t k = seed;
    std::uint64_t h = splitmix64(k);
    k = h ^ (index * 0x9e3779b97f4a7c15ULL);
    h = splitmix64(k);
    k = h ^ (static_cast<std::uint64_t>(purpose) * 0xbf58476d1ce4e5b9ULL);
    for (auto& s : s_) s = splitmix64(k);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::next_uniform() {
    // 53-bit mantissa, offset by half an ulp so 0 and 1 are never returned.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_normal() {
    return norm_ppf(next_uniform());
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t k = seed;
    std::uint64_t h = splitmix64(k);
    k = h ^ (index * 0x9e3779b97f4a7c15ULL);
    return splitmix64(k);
}

} // namespace cure
