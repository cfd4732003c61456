#pragma once

#include <array>
#include <cstdint>
#include <utility>

/// Counter-based random numbers: every draw is a pure function of (seed, trial, block),
/// so a trial's randomness does not depend on which thread runs it or in what order.
namespace wva::rng {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., Random123).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// SplitMix64 finaliser.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for an independent substream, e.g. one sweep point identified by `stream_id`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) noexcept;

/// Maps 64 random bits to a double strictly inside (0, 1).
double uniform_open01(std::uint64_t bits) noexcept;

/// The draws of one trial. Counter = (trial_lo, trial_hi, block, 0), key = seed.
class TrialStream {
public:
    TrialStream(std::uint64_t seed, std::uint64_t trial) noexcept;

    double uniform() noexcept;

    /// Two independent standard normals (Box–Muller, exact).
    std::pair<double, double> normal_pair() noexcept;

private:
    void refill() noexcept;

    PhiloxKey key_;
    std::uint64_t trial_;
    std::uint32_t block_ = 0;
    PhiloxCounter buffer_{};
    int used_ = 4;  // in 32-bit words
};

}  // namespace wva::rng
