#pragma once

#include <string_view>

namespace wva {

/// How the final beamsplitter's (t, r) follow from the imbalance δ.
///
/// Both modes satisfy t − r = √2·δ. FirstOrder uses t = (1+δ)/√2,
/// r = (1−δ)/√2 verbatim; ExactUnitary additionally enforces t² + r² = 1
/// with t ≥ |r|, which is what makes δ = 1 (r = −t) meaningful.
enum class BeamSplitterMode { FirstOrder, ExactUnitary };

std::string_view to_string(BeamSplitterMode mode);
BeamSplitterMode parse_bs_mode(std::string_view text);

struct BeamSplitterCoefficients {
    double t;
    double r;
};

BeamSplitterCoefficients bs_coefficients(double delta, BeamSplitterMode mode);

struct InterferometerParams {
    double delta = 0.1;
    BeamSplitterMode bs_mode = BeamSplitterMode::FirstOrder;
    double t = 0.0;
    double r = 0.0;
    double eta = 1.0;  ///< detector efficiency in (0, 1]; 0 models a dead detector

    static InterferometerParams make(double delta, BeamSplitterMode mode, double eta = 1.0);
};

/// Real, non-negative coherent amplitude α; |α|² is a photon number.
class CoherentAmplitude {
public:
    explicit CoherentAmplitude(double alpha);

    double value() const noexcept { return alpha_; }
    double photon_number() const noexcept { return alpha_ * alpha_; }

private:
    double alpha_;
};

namespace quantum {

/// δ above which the O(δ) corrections exceed ~10% of the 1/(2δ) term.
inline constexpr double kFirstOrderDeltaLimit = 0.2;

bool first_order_valid(double delta) noexcept;

/// ⟨n̂₁⟩_w for a single photon, first order in δ: 1/2 + 1/(2δ).
double weak_value_fock(double delta);

/// ⟨n̂₂⟩_w = 1 − ⟨n̂₁⟩_w; negative for every δ < 1.
double arm2_weak_value_fock(double delta);

/// ⟨n̂₁⟩_w for a coherent input, first order in δ: |α|²/2 + 1/2 + 1/(2δ).
/// α = 0 is rejected: the dark-port amplitude αδ vanishes.
double weak_value_coherent(CoherentAmplitude alpha, double delta);

/// ⟨n̂₂⟩_w = |α|² + 1 − ⟨n̂₁⟩_w for a coherent input (photon-addition sum rule).
double arm2_weak_value_coherent(CoherentAmplitude alpha, double delta);

/// Unconditioned ⟨n̂₁⟩ = |α|²/2.
double mean_photons_arm1(CoherentAmplitude alpha) noexcept;

/// D_I = ⟨n̂₁⟩_w − ⟨n̂₁⟩ ≈ 1/2 + 1/(2δ), independent of α.
double quantum_shift(double delta);

/// D_I without the first-order expansion: t/(√2δ) for the given coefficients.
/// Equals quantum_shift in FirstOrder mode and the base shift 1/2 at δ = 1 (ExactUnitary).
double quantum_shift_all_orders(const InterferometerParams& params);

/// True iff |α|² + 1 ≤ 1/δ, i.e. the arm-2 weak value is ≤ 0.
bool is_anomalous(double alpha, double delta);

}  // namespace quantum
}  // namespace wva
