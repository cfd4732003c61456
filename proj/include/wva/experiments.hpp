#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wva/montecarlo.hpp"
#include "wva/quantum.hpp"
#include "wva/stochastic.hpp"

namespace wva::experiments {

enum class Method { Quantum, Exact, Approx, Quadrature, MonteCarlo };

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

inline constexpr std::string_view kTheoryLabel = "theory";
inline constexpr std::string_view kReconstructedLabel = "reconstructed";

struct ScenarioPoint {
    double delta = 0.1;
    double E0 = 10.0;
    double sigma = stochastic::kVacuumSigma;
    double sigma2 = 0.0;
    BeamSplitterMode bs_mode = BeamSplitterMode::FirstOrder;
    std::string label{kTheoryLabel};
    std::uint64_t id = 0;  ///< Monte Carlo substream id
};

struct McSettings {
    std::uint64_t n_trials = 200'000;
    std::uint64_t seed = 20180101;
    mc::Estimator estimator = mc::Estimator::Weighted;
};

struct ScenarioSpec {
    std::string name;
    std::vector<ScenarioPoint> grid;
    std::vector<Method> methods;
    McSettings mc;
    std::vector<std::pair<std::string, std::string>> metadata;

    bool runs(Method method) const;
};

/// Throws DomainError for an empty grid or invalid parameters.
void validate(const ScenarioSpec& spec);

struct SweepRow {
    std::size_t index = 0;
    std::string label;
    double delta = 0.0;
    double E0 = 0.0;
    double sigma = 0.0;
    double sigma2 = 0.0;
    BeamSplitterMode bs_mode = BeamSplitterMode::FirstOrder;
    double darkport_intensity = 0.0;  ///< δ²E₀², equal to δ²α²
    std::optional<double> D_quantum;  ///< t/(√2δ): the first-order weak value shift in FirstOrder mode
    std::optional<double> D_exact;    ///< closed form (two-arm form when σ₂ > 0)
    std::optional<double> D_approx;
    std::optional<double> D_quadrature;
    std::optional<double> D_mc;
    std::optional<double> D_mc_stderr;
    double validity_ratio = 0.0;
    stochastic::Regime regime = stochastic::Regime::Valid;
    bool first_order_valid = true;
    bool amplifying = true;  ///< all-orders quantum shift exceeds the base shift 1/2
    std::string error;       ///< per-row failures, "method: message; ..."
};

/// Rows in grid order. Theory columns are computed in parallel across rows, Monte Carlo
/// points through mc::sweep_mc; a failing method marks its row and never aborts the run.
std::vector<SweepRow> run_scenario(const ScenarioSpec& spec, int workers = 0);

// ---- reconstructed experimental settings -------------------------------------------

/// Validity ratios [σ/(δα)]² of the five reference measurements.
inline constexpr double kReportedRatios[5] = {0.16, 0.18, 0.19, 0.21, 0.01};

/// δα = σ/√ratio.
double reconstructed_delta_alpha(double ratio, double sigma = stochastic::kVacuumSigma);

struct ExperimentalSetting {
    double delta;
    double photon_number;  ///< |α|², rounded to an integer
    double target_ratio;
};

/// Only the ratios of the five (δ, |α|²) pairs are known. These are chosen with δ² spread over
/// [0.01, 0.1] (plus δ = 1) and |α|² = round((δα)²/δ²) inside [10, 95].
std::vector<ExperimentalSetting> reconstructed_settings(double sigma = stochastic::kVacuumSigma);

// ---- figure scenarios ----------------------------------------------------------------

ScenarioSpec scenario_fig2();
ScenarioSpec scenario_fig3();

enum class Fig4Axis { VsDelta, VsDarkportIntensity };
ScenarioSpec scenario_fig4(Fig4Axis axis);

struct DensitySample {
    double E1;
    double prior;
    double likelihood;  ///< click weight relative to its value at ⟨E₁⟩, i.e. /(δE₀)²
    double posterior;
    double approx;      ///< normalised shifted Gaussian
};

struct DensityPanel {
    double delta = 0.0;
    double prior_mean = 0.0;
    double posterior_mean = 0.0;
    double likelihood_zero = 0.0;
    double likelihood_zero_first_order = 0.0;  ///< ⟨E₁⟩(1−δ)/(1+δ)
    double kolmogorov_distance = 0.0;          ///< sup |F_post − F_approx|
    stochastic::ValidityReport validity{};
    std::vector<DensitySample> samples;
};

/// One panel per grid point: densities on a common E₁ grid plus the three markers.
std::vector<DensityPanel> fig3_densities(const ScenarioSpec& spec, std::size_t n_grid = 241);

/// sup over E₁ of |CDF of the exact posterior − CDF of the shifted Gaussian|.
double kolmogorov_distance(const InterferometerParams& params, const stochastic::NoisePrior& prior,
                           std::size_t n_points = 2001);

}  // namespace wva::experiments
