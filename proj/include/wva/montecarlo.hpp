#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wva/quantum.hpp"
#include "wva/stochastic.hpp"

/// Trial-level simulation of the stochastic-optics experiment.
///
/// Trial i draws all of its randomness from the Philox substream (seed, i). Trials are
/// grouped into fixed chunks of kChunkTrials; per-chunk partial sums are reduced in
/// chunk order. The worker count therefore changes only which thread computes a chunk,
/// never the bits of the result.
namespace wva::mc {

enum class Estimator { Rejection, Weighted };

std::string_view to_string(Estimator estimator);
Estimator parse_estimator(std::string_view text);

inline constexpr std::uint64_t kChunkTrials = std::uint64_t{1} << 15;
inline constexpr std::uint64_t kMinAccepted = 100;
inline constexpr std::uint64_t kMinWeightedTrials = 10'000;

/// Environment variable overriding the default worker count.
inline constexpr const char* kWorkersEnv = "WVA_WORKERS";

struct ShiftEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_trials = 0;
    std::uint64_t n_accepted = 0;  ///< clicked trials
    Estimator method = Estimator::Rejection;
    std::uint64_t seed = 0;
    double eta = 0.0;
    bool degenerate_error = false;  ///< std_error is zero, e.g. σ = 0
};

struct TrialOutcome {
    double E1;
    double E2;
    bool clicked;
};

/// One experimental run: E₁ (and E₂ when σ₂ > 0) from the prior, then a Bernoulli click
/// with probability min(1, η(tE₁ − rE₂)²).
TrialOutcome run_trial(std::uint64_t seed, std::uint64_t trial, const InterferometerParams& params,
                       const stochastic::NoisePrior& prior);

struct RunOptions {
    std::uint64_t n_trials = 1'000'000;
    std::uint64_t seed = 1;
    int workers = 0;  ///< 0: $WVA_WORKERS, else the OpenMP default
};

int resolve_workers(int requested);

/// η·(E₀²δ² + t²σ² + r²σ₂²) for a balanced prior, ignoring the clamp.
double analytic_click_probability(const InterferometerParams& params, const stochastic::NoisePrior& prior);

/// Mean E₁² over clicked trials minus the analytic ⟨E₁⟩² + σ².
/// Throws StatisticsError below kMinAccepted clicks.
ShiftEstimate estimate_shift_rejection(const InterferometerParams& params, const stochastic::NoisePrior& prior,
                                       const RunOptions& options);

/// Σwᵢ E₁ᵢ²/Σwᵢ − (1/n)Σ E₁ᵢ² with wᵢ the click probability of trial i. Uses every trial;
/// the standard error comes from the delta-method influence of the ratio estimator.
ShiftEstimate estimate_shift_weighted(const InterferometerParams& params, const stochastic::NoisePrior& prior,
                                      const RunOptions& options);

ShiftEstimate estimate_shift(Estimator estimator, const InterferometerParams& params,
                             const stochastic::NoisePrior& prior, const RunOptions& options);

/// Serial, unchunked versions kept as the test reference for the parallel kernels.
/// They agree with the kernels up to floating-point summation order.
namespace reference {
ShiftEstimate estimate_shift_rejection(const InterferometerParams& params, const stochastic::NoisePrior& prior,
                                       std::uint64_t n_trials, std::uint64_t seed);
ShiftEstimate estimate_shift_weighted(const InterferometerParams& params, const stochastic::NoisePrior& prior,
                                      std::uint64_t n_trials, std::uint64_t seed);
}  // namespace reference

struct GridPoint {
    std::uint64_t id;  ///< seeds the point's substream; independent of position in the grid
    InterferometerParams params;
    stochastic::NoisePrior prior;
};

struct PointResult {
    std::uint64_t id;
    std::optional<ShiftEstimate> estimate;
    std::string error;  ///< set when estimate is empty
};

/// Runs every point with seed derive_seed(seed, id); failures are recorded per point.
std::vector<PointResult> sweep_mc(std::span<const GridPoint> grid, Estimator estimator, std::uint64_t n_trials,
                                  std::uint64_t seed, int workers = 0);

}  // namespace wva::mc
