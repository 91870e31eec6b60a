#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace zgof {

/// Counter-based Philox4x32-10 stream.
///
/// The key is the master seed; the upper half of the 128-bit counter holds the
/// stream id, so streams with different ids never overlap. Satisfies
/// UniformRandomBitGenerator with 64-bit output.
class RngStream {
public:
    using result_type = std::uint64_t;
    using Block = std::array<std::uint32_t, 4>;

    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    /// Stream id for an (index, group) pair, e.g. (replication, alternative).
    static constexpr std::uint64_t stream_id(std::uint32_t index, std::uint32_t group) {
        return (static_cast<std::uint64_t>(group) << 32) | index;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1): never returns an endpoint.
    double uniform_open();

    /// Raw Philox4x32-10 bijection, exposed for known-answer tests.
    static Block philox(Block counter, std::array<std::uint32_t, 2> key);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    Block counter_;
    Block buffer_{};
    int used_ = 4;
};

} // namespace zgof
