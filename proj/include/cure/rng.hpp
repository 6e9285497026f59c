#pragma once

#include <cstdint>

namespace cure {

//! Purpose tag for deterministic stream splitting. Streams derived from the
//! same (seed, index) but different purposes are statistically independent.
enum class StreamPurpose : std::uint64_t {
    covariates = 1,
    errors = 2,
    cure = 3,
    censoring = 4,
    resample = 5,
    tie_jitter = 6,
};

//! xoshiro256++ stream, seeded via SplitMix64 from (seed, index, purpose).
//!
//! All randomized code in this library draws from streams keyed by a user
//! seed, a task index (run or replicate) and a purpose tag, so results are
//! bit-identical regardless of execution order or worker count.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose);

    std::uint64_t next_u64();

    //! Uniform draw in the open interval (0, 1).
    double next_uniform();

    //! Standard normal draw by inverse transform.
    double next_normal();

private:
    std::uint64_t s_[4];
};

//! SplitMix64 step; used for key derivation.
std::uint64_t splitmix64(std::uint64_t& state);

//! Derived 64-bit key for nested seeding (e.g. per-replicate tie jitter).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace cure
