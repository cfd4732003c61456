#include <cmath>
#include <string>
#include <vector>

#include "wva/errors.hpp"
#include "wva/montecarlo.hpp"

namespace wva::mc::reference {

namespace {

struct Draw {
    double e1;
    double w;
    bool clicked;
};

std::vector<Draw> simulate(const InterferometerParams& params, const stochastic::NoisePrior& prior,
                           std::uint64_t n_trials, std::uint64_t seed) {
    std::vector<Draw> draws;
    draws.reserve(n_trials);
    for (std::uint64_t i = 0; i < n_trials; ++i) {
        const TrialOutcome out = run_trial(seed, i, params, prior);
        const double field = stochastic::dark_port_field(out.E1, out.E2, params);
        draws.push_back({out.E1, std::min(1.0, params.eta * field * field), out.clicked});
    }
    return draws;
}

}  // namespace

ShiftEstimate estimate_shift_rejection(const InterferometerParams& params, const stochastic::NoisePrior& prior,
                                       std::uint64_t n_trials, std::uint64_t seed) {
    const auto draws = simulate(params, prior, n_trials, seed);
    const double m = prior.mean_E1;
    std::vector<double> excess;
    for (const Draw& d : draws) {
        if (d.clicked) excess.push_back((d.e1 - m) * (d.e1 + m));
    }
    if (excess.size() < kMinAccepted) {
        throw StatisticsError("too few accepted trials", excess.size());
    }
    const auto n = static_cast<double>(excess.size());
    double mean = 0.0;
    for (double y : excess) mean += y;
    mean /= n;
    double var = 0.0;
    for (double y : excess) var += (y - mean) * (y - mean);
    var /= n - 1.0;

    ShiftEstimate est;
    est.value = mean - prior.sigma * prior.sigma;
    est.std_error = std::sqrt(var / n);
    est.n_trials = n_trials;
    est.n_accepted = excess.size();
    est.method = Estimator::Rejection;
    est.seed = seed;
    est.eta = params.eta;
    est.degenerate_error = !(est.std_error > 0.0);
    return est;
}

ShiftEstimate estimate_shift_weighted(const InterferometerParams& params, const stochastic::NoisePrior& prior,
                                      std::uint64_t n_trials, std::uint64_t seed) {
    const auto draws = simulate(params, prior, n_trials, seed);
    const double m = prior.mean_E1;
    const auto n = static_cast<double>(n_trials);
    double sw = 0.0, swy = 0.0, sy = 0.0;
    std::uint64_t clicked = 0;
    for (const Draw& d : draws) {
        const double y = (d.e1 - m) * (d.e1 + m);
        sw += d.w;
        swy += d.w * y;
        sy += y;
        clicked += d.clicked ? 1 : 0;
    }
    if (!(sw > 0.0)) throw StatisticsError("all click weights are zero", clicked);
    const double ratio = swy / sw;
    const double mean_w = sw / n;
    const double mean_y = sy / n;
    double psi2 = 0.0;
    for (const Draw& d : draws) {
        const double y = (d.e1 - m) * (d.e1 + m);
        const double psi = d.w * (y - ratio) / mean_w - (y - mean_y);
        psi2 += psi * psi;
    }

    ShiftEstimate est;
    est.value = ratio - mean_y;
    est.std_error = std::sqrt(psi2 / (n * (n - 1.0)));
    est.n_trials = n_trials;
    est.n_accepted = clicked;
    est.method = Estimator::Weighted;
    est.seed = seed;
    est.eta = params.eta;
    est.degenerate_error = !(est.std_error > 0.0);
    return est;
}

}  // namespace wva::mc::reference
