#include "wva/quantum.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wva/errors.hpp"

namespace wva {

namespace {

void require_delta(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw DomainError("imbalance delta must be positive and finite, got " + std::to_string(delta));
    }
}

}  // namespace

std::string_view to_string(BeamSplitterMode mode) {
    return mode == BeamSplitterMode::FirstOrder ? "first-order" : "exact";
}

BeamSplitterMode parse_bs_mode(std::string_view text) {
    if (text == "first-order" || text == "first_order" || text == "FirstOrder") {
        return BeamSplitterMode::FirstOrder;
    }
    if (text == "exact" || text == "exact-unitary" || text == "exact_unitary" || text == "ExactUnitary") {
        return BeamSplitterMode::ExactUnitary;
    }
    throw DomainError("unknown beamsplitter mode '" + std::string(text) + "'");
}

BeamSplitterCoefficients bs_coefficients(double delta, BeamSplitterMode mode) {
    if (!(delta > 0.0) || delta > 1.0) {
        throw DomainError("imbalance delta must lie in (0, 1], got " + std::to_string(delta));
    }
    constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    if (mode == BeamSplitterMode::FirstOrder) {
        return {(1.0 + delta) * inv_sqrt2, (1.0 - delta) * inv_sqrt2};
    }
    // t − r = s and t² + r² = 1  =>  t, r = (±s + √(2 − s²))/2
    const double s = std::numbers::sqrt2 * delta;
    const double root = std::sqrt(2.0 - 2.0 * delta * delta);
    return {0.5 * (s + root), 0.5 * (root - s)};
}

InterferometerParams InterferometerParams::make(double delta, BeamSplitterMode mode, double eta) {
    if (!(eta >= 0.0) || eta > 1.0) {
        throw DomainError("detector efficiency must lie in [0, 1], got " + std::to_string(eta));
    }
    const auto [t, r] = bs_coefficients(delta, mode);
    return {delta, mode, t, r, eta};
}

CoherentAmplitude::CoherentAmplitude(double alpha) : alpha_(alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha * alpha)) {
        throw DomainError("coherent amplitude must be real, finite and non-negative");
    }
}

namespace quantum {

bool first_order_valid(double delta) noexcept { return delta > 0.0 && delta <= kFirstOrderDeltaLimit; }

double weak_value_fock(double delta) {
    require_delta(delta);
    return 0.5 + 1.0 / (2.0 * delta);
}

double arm2_weak_value_fock(double delta) { return 1.0 - weak_value_fock(delta); }

double weak_value_coherent(CoherentAmplitude alpha, double delta) {
    require_delta(delta);
    if (alpha.value() == 0.0) {
        throw DegeneratePostSelection("coherent weak value undefined at alpha = 0: dark-port amplitude vanishes");
    }
    return 0.5 * alpha.photon_number() + 0.5 + 1.0 / (2.0 * delta);
}

double arm2_weak_value_coherent(CoherentAmplitude alpha, double delta) {
    return alpha.photon_number() + 1.0 - weak_value_coherent(alpha, delta);
}

double mean_photons_arm1(CoherentAmplitude alpha) noexcept { return 0.5 * alpha.photon_number(); }

double quantum_shift(double delta) {
    require_delta(delta);
    return 0.5 + 1.0 / (2.0 * delta);
}

double quantum_shift_all_orders(const InterferometerParams& params) {
    require_delta(params.delta);
    return params.t / (std::numbers::sqrt2 * params.delta);
}

bool is_anomalous(double alpha, double delta) {
    require_delta(delta);
    if (!(alpha >= 0.0)) {
        throw DomainError("coherent amplitude must be non-negative");
    }
    return alpha * alpha + 1.0 <= 1.0 / delta;
}

}  // namespace quantum
}  // namespace wva
