#pragma once

#include <string_view>

#include "wva/quantum.hpp"

/// Stochastic-optics model of the interferometer.
///
/// The arm-1 field E₁ is a real Gaussian variable around ⟨E₁⟩ (arm 2 optionally
/// too); a square-law dark-port detector clicks with probability ∝ (tE₁ − rE₂)².
/// Units are chosen so that E² is a photon number, which makes E₀ play the role
/// of the coherent amplitude α.
namespace wva::stochastic {

/// Field fluctuation width matching coherent-state (vacuum) noise.
inline constexpr double kVacuumSigma = 0.5;

/// Half-width, in units of σ, of every quadrature window and clamp check.
inline constexpr double kWindowSigmas = 12.0;

struct NoisePrior {
    double E0 = 0.0;      ///< input amplitude, ≥ 0
    double mean_E1 = 0.0; ///< ⟨E₁⟩, normally E₀/√2
    double sigma = kVacuumSigma;
    double sigma2 = 0.0;  ///< arm-2 width; 0 keeps E₂ = E₀/√2 fixed

    /// ⟨E₁⟩ = E₀/√2.
    static NoisePrior centered(double E0, double sigma, double sigma2 = 0.0);
    static NoisePrior vacuum(double E0) { return centered(E0, kVacuumSigma); }
    /// Arbitrary ⟨E₁⟩; the posterior is then normalised numerically.
    static NoisePrior with_mean(double E0, double mean_E1, double sigma, double sigma2 = 0.0);

    double mean_E2() const noexcept;
    bool balanced() const noexcept;
};

enum class Regime { Valid, Marginal, Broken };

std::string_view to_string(Regime regime);

inline constexpr double kValidRatioLimit = 0.05;
inline constexpr double kMarginalRatioLimit = 0.5;

/// (σ/(δE₀))²; Valid below 0.05, Marginal below 0.5, Broken otherwise.
struct ValidityReport {
    double ratio;
    Regime regime;
};

ValidityReport validity(const InterferometerParams& params, const NoisePrior& prior);
Regime classify_ratio(double ratio) noexcept;

double prior_pdf(double E1, const NoisePrior& prior);

/// Field amplitude reaching the dark port.
inline double dark_port_field(double E1, double E2, const InterferometerParams& params) noexcept {
    return params.t * E1 - params.r * E2;
}

/// min(1, η·(tE₁ − rE₀/√2)²), arm 2 at its mean.
double click_likelihood(double E1, const InterferometerParams& params, const NoisePrior& prior);

/// Click weight with η dropped and arm 2 averaged out: (tE₁ − r⟨E₂⟩)² + r²σ₂².
double click_weight(double E1, const InterferometerParams& params, const NoisePrior& prior) noexcept;

/// ∫ click_weight · P(E₁) dE₁. Closed form E₀²δ² + t²σ² + r²σ₂² when ⟨E₁⟩ = E₀/√2,
/// numerical over ±12σ otherwise.
double posterior_normalizer(const InterferometerParams& params, const NoisePrior& prior);

/// P(E₁ | click), η omitted (it cancels).
double posterior_pdf(double E1, const InterferometerParams& params, const NoisePrior& prior);

/// Where the click likelihood vanishes: E₁ = (r/t)·⟨E₂⟩.
double likelihood_zero(const InterferometerParams& params, const NoisePrior& prior);

/// Mean shift of the approximate posterior, 2tσ²/(E₀δ).
double approx_mean_shift(const InterferometerParams& params, const NoisePrior& prior);

struct ApproxPosterior {
    double density;
    ValidityReport validity;
};

/// Normalised Gaussian of width σ centred at ⟨E₁⟩ + 2tσ²/(E₀δ). The regime flag travels
/// with the value; a Broken regime still returns a density.
ApproxPosterior posterior_gaussian_approx(double E1, const InterferometerParams& params, const NoisePrior& prior);

/// Same shifted Gaussian carrying the literal prefactor exp[−2t²σ²/(E₀²δ²)] (not normalised).
double posterior_gaussian_approx_unnormalized(double E1, const InterferometerParams& params,
                                              const NoisePrior& prior);

/// Closed-form post-selected intensity shift and its (1+B)/(1+A) decomposition:
///   D = 4σ²t/(√2δ) · (1+B)/(1+A),  A = t²σ²/(E₀δ)²,  B = tσ²/(√2E₀²δ).
struct ShiftTerms {
    double value;
    double A;
    double B;
};

ShiftTerms intensity_shift_exact_terms(const InterferometerParams& params, const NoisePrior& prior);
double intensity_shift_exact(const InterferometerParams& params, const NoisePrior& prior);

/// Closed form with arm-2 fluctuations; the denominator gains r²σ₂²/(E₀δ)².
double intensity_shift_two_arm(const InterferometerParams& params, const NoisePrior& prior);

/// 2σ²(1+δ)/δ, valid when the ratio and δ are both small.
double intensity_shift_approx(const InterferometerParams& params, const NoisePrior& prior);

/// σ = 1/2 specialisation: (1/2)(1 + 1/δ).
double intensity_shift_vacuum(double delta);

/// ∫P(E₁|click)E₁² − ∫P(E₁)E₁², both integrals done numerically over ±12σ.
/// Valid at any δ and any ratio; includes σ₂ by marginalising arm 2.
double intensity_shift_quadrature(const InterferometerParams& params, const NoisePrior& prior,
                                  double rel_tol = 1e-10);

/// Posterior moments by quadrature.
double posterior_integral(const InterferometerParams& params, const NoisePrior& prior);
double posterior_mean_quadrature(const InterferometerParams& params, const NoisePrior& prior);
double posterior_cdf(double E1, const InterferometerParams& params, const NoisePrior& prior);

/// Largest η for which η·(tE₁ − rE₂)² ≤ 1 over the ±12σ window (both arms).
double clamp_free_eta(const InterferometerParams& params, const NoisePrior& prior);

/// min(0.9, 0.25/normaliser, clamp_free_eta): ≤ 25% mean click rate, clamp never engaged.
double default_eta(const InterferometerParams& params, const NoisePrior& prior);

/// True when params.eta keeps the saturation clamp off everywhere in the window.
bool clamp_inactive(const InterferometerParams& params, const NoisePrior& prior);

}  // namespace wva::stochastic
