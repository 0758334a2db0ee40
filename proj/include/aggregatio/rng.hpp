#pragma once

#include <array>
#include <cstdint>

namespace aggregatio::rng {

/// Philox4x32-10 counter-based generator. The key is the 64-bit seed; the
/// 128-bit counter is laid out as (draw, sample low, sample high, shard),
/// giving every (seed, shard, sample) its own substream independently of
/// scheduling. Draw sequences are reproducible bit-for-bit.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint32_t shard);

    /// Position the generator at the start of a sample's substream.
    void start_sample(std::uint64_t sample_index);

    /// Next uniform double in [0, 1); consumes one counter tick.
    double uniform();

    /// Next raw 64-bit draw.
    std::uint64_t next_u64();

private:
    std::array<std::uint32_t, 4> block() const;

    std::uint32_t key0_;
    std::uint32_t key1_;
    std::uint32_t shard_;
    std::uint32_t sample_lo_ = 0;
    std::uint32_t sample_hi_ = 0;
    std::uint32_t draw_ = 0;
};

}  // namespace aggregatio::rng
