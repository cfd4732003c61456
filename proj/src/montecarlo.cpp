#include "wva/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include <omp.h>

#include "wva/errors.hpp"
#include "wva/rng.hpp"

namespace wva::mc {

namespace {

using stochastic::NoisePrior;

// One trial reduced to what the estimators need: y = E₁² − ⟨E₁⟩², the click
// probability w and the click outcome.
struct Sample {
    double y;
    double w;
    bool clicked;
};

inline Sample draw(std::uint64_t seed, std::uint64_t trial, const InterferometerParams& params,
                   const NoisePrior& prior) noexcept {
    rng::TrialStream stream(seed, trial);
    const auto [z1, z2] = stream.normal_pair();
    const double x = prior.sigma * z1;
    const double e1 = prior.mean_E1 + x;
    const double e2 = prior.mean_E2() + prior.sigma2 * z2;
    const double field = stochastic::dark_port_field(e1, e2, params);
    const double w = std::min(1.0, params.eta * field * field);
    const bool clicked = stream.uniform() < w;
    return {2.0 * prior.mean_E1 * x + x * x, w, clicked};
}

// Evaluates `body(first, last)` for each fixed-size chunk and returns the partials in chunk order.
template <typename Partial, typename Body>
std::vector<Partial> over_chunks(std::uint64_t n_trials, int workers, Body body) {
    const std::uint64_t n_chunks = (n_trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<Partial> partials(n_chunks);
    const auto count = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for schedule(static) num_threads(workers)
    for (std::int64_t c = 0; c < count; ++c) {
        const std::uint64_t first = static_cast<std::uint64_t>(c) * kChunkTrials;
        const std::uint64_t last = std::min(n_trials, first + kChunkTrials);
        partials[static_cast<std::size_t>(c)] = body(first, last);
    }
    return partials;
}

void require_trials(std::uint64_t n_trials) {
    if (n_trials == 0) throw DomainError("n_trials must be positive");
}

}  // namespace

std::string_view to_string(Estimator estimator) {
    return estimator == Estimator::Rejection ? "rejection" : "weighted";
}

Estimator parse_estimator(std::string_view text) {
    if (text == "rejection") return Estimator::Rejection;
    if (text == "weighted") return Estimator::Weighted;
    throw DomainError("unknown estimator '" + std::string(text) + "'");
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv(kWorkersEnv)) {
        const int from_env = std::atoi(env);
        if (from_env > 0) return from_env;
    }
    return std::max(1, omp_get_max_threads());
}

TrialOutcome run_trial(std::uint64_t seed, std::uint64_t trial, const InterferometerParams& params,
                       const NoisePrior& prior) {
    rng::TrialStream stream(seed, trial);
    const auto [z1, z2] = stream.normal_pair();
    const double e1 = prior.mean_E1 + prior.sigma * z1;
    const double e2 = prior.mean_E2() + prior.sigma2 * z2;
    const double field = stochastic::dark_port_field(e1, e2, params);
    const double p = std::min(1.0, params.eta * field * field);
    return {e1, e2, stream.uniform() < p};
}

double analytic_click_probability(const InterferometerParams& params, const NoisePrior& prior) {
    const double mean_field = stochastic::dark_port_field(prior.mean_E1, prior.mean_E2(), params);
    return params.eta * (mean_field * mean_field + params.t * params.t * prior.sigma * prior.sigma +
                         params.r * params.r * prior.sigma2 * prior.sigma2);
}

ShiftEstimate estimate_shift_rejection(const InterferometerParams& params, const NoisePrior& prior,
                                       const RunOptions& options) {
    require_trials(options.n_trials);
    const int workers = resolve_workers(options.workers);
    const std::uint64_t seed = options.seed;

    struct Sums {
        std::uint64_t accepted = 0;
        double y = 0.0;
    };
    const auto first_pass = over_chunks<Sums>(options.n_trials, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        Sums s;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Sample smp = draw(seed, i, params, prior);
            if (smp.clicked) {
                ++s.accepted;
                s.y += smp.y;
            }
        }
        return s;
    });
    Sums total;
    for (const Sums& s : first_pass) {
        total.accepted += s.accepted;
        total.y += s.y;
    }
    if (total.accepted < kMinAccepted) {
        throw StatisticsError("only " + std::to_string(total.accepted) + " accepted trials (need " +
                                  std::to_string(kMinAccepted) + ")",
                              total.accepted);
    }
    const double mean_y = total.y / static_cast<double>(total.accepted);

    const auto second_pass = over_chunks<double>(options.n_trials, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        double dev2 = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Sample smp = draw(seed, i, params, prior);
            if (smp.clicked) dev2 += (smp.y - mean_y) * (smp.y - mean_y);
        }
        return dev2;
    });
    double dev2 = 0.0;
    for (double d : second_pass) dev2 += d;

    const auto n = static_cast<double>(total.accepted);
    ShiftEstimate est;
    // The unconditioned moment ⟨E₁⟩² + σ² is known exactly and adds no variance.
    est.value = mean_y - prior.sigma * prior.sigma;
    est.std_error = std::sqrt(dev2 / (n - 1.0) / n);
    est.n_trials = options.n_trials;
    est.n_accepted = total.accepted;
    est.method = Estimator::Rejection;
    est.seed = seed;
    est.eta = params.eta;
    est.degenerate_error = !(est.std_error > 0.0);
    return est;
}

ShiftEstimate estimate_shift_weighted(const InterferometerParams& params, const NoisePrior& prior,
                                      const RunOptions& options) {
    if (options.n_trials < kMinWeightedTrials) {
        throw DomainError("weighted estimator needs at least " + std::to_string(kMinWeightedTrials) + " trials");
    }
    const int workers = resolve_workers(options.workers);
    const std::uint64_t seed = options.seed;

    struct Sums {
        std::uint64_t clicked = 0;
        double w = 0.0;
        double wy = 0.0;
        double y = 0.0;
    };
    const auto first_pass = over_chunks<Sums>(options.n_trials, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        Sums s;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Sample smp = draw(seed, i, params, prior);
            s.clicked += smp.clicked ? 1 : 0;
            s.w += smp.w;
            s.wy += smp.w * smp.y;
            s.y += smp.y;
        }
        return s;
    });
    Sums total;
    for (const Sums& s : first_pass) {
        total.clicked += s.clicked;
        total.w += s.w;
        total.wy += s.wy;
        total.y += s.y;
    }
    if (!(total.w > 0.0)) {
        throw StatisticsError("all click weights are zero", total.clicked);
    }
    const auto n = static_cast<double>(options.n_trials);
    const double ratio = total.wy / total.w;
    const double mean_w = total.w / n;
    const double mean_y = total.y / n;

    const auto second_pass = over_chunks<double>(options.n_trials, workers, [&](std::uint64_t lo, std::uint64_t hi) {
        double psi2 = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const Sample smp = draw(seed, i, params, prior);
            const double psi = smp.w * (smp.y - ratio) / mean_w - (smp.y - mean_y);
            psi2 += psi * psi;
        }
        return psi2;
    });
    double psi2 = 0.0;
    for (double p : second_pass) psi2 += p;

    ShiftEstimate est;
    est.value = ratio - mean_y;
    est.std_error = std::sqrt(psi2 / (n * (n - 1.0)));
    est.n_trials = options.n_trials;
    est.n_accepted = total.clicked;
    est.method = Estimator::Weighted;
    est.seed = seed;
    est.eta = params.eta;
    est.degenerate_error = !(est.std_error > 0.0);
    return est;
}

ShiftEstimate estimate_shift(Estimator estimator, const InterferometerParams& params, const NoisePrior& prior,
                             const RunOptions& options) {
    return estimator == Estimator::Rejection ? estimate_shift_rejection(params, prior, options)
                                             : estimate_shift_weighted(params, prior, options);
}

std::vector<PointResult> sweep_mc(std::span<const GridPoint> grid, Estimator estimator, std::uint64_t n_trials,
                                  std::uint64_t seed, int workers) {
    std::vector<PointResult> results;
    results.reserve(grid.size());
    for (const GridPoint& point : grid) {
        PointResult res{point.id, std::nullopt, {}};
        try {
            res.estimate = estimate_shift(estimator, point.params, point.prior,
                                          {n_trials, rng::derive_seed(seed, point.id), workers});
        } catch (const std::exception& e) {
            res.error = e.what();
        }
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace wva::mc
