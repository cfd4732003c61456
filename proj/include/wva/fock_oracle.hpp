#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

#include "wva/quantum.hpp"

/// Brute-force truncated two-mode Fock space.
///
/// Used only as an oracle: every weak value here is computed as a literal
/// ratio ⟨f|Ô|i⟩/⟨f|i⟩ of dense vectors, with no expansion in δ, so the
/// closed forms in `wva::quantum` can be checked against it.
namespace wva::fock {

/// Largest per-mode cutoff accepted; two-mode operators are dense (N+1)² × (N+1)².
inline constexpr int kMaxCutoff = 60;

/// Truncation leakage 1 − ⟨ψ|ψ⟩ tolerated for coherent states.
inline constexpr double kMaxLeakage = 1e-8;

/// Amplitudes over |n_first, n_second⟩ with 0 ≤ n ≤ cutoff in each mode.
/// Flattened index is n_first·(cutoff+1) + n_second. Norm is tracked, not forced to 1.
class TwoModeState {
public:
    explicit TwoModeState(int cutoff);

    int cutoff() const noexcept { return cutoff_; }
    Eigen::Index dim() const noexcept { return amps_.size(); }
    Eigen::Index index(int n_first, int n_second) const;

    std::complex<double> amplitude(int n_first, int n_second) const;
    void set_amplitude(int n_first, int n_second, std::complex<double> value);

    const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
    double norm_squared() const { return amps_.squaredNorm(); }
    double leakage() const { return 1.0 - norm_squared(); }

private:
    int cutoff_;
    Eigen::VectorXcd amps_;
};

enum class OperatorTag { ArmOne, ArmTwo, Bright, Dark, NumberArmOne, NumberArmTwo };

std::string_view to_string(OperatorTag tag);

/// A dense real two-mode operator together with what it represents.
struct ModeOperator {
    OperatorTag tag;
    Eigen::MatrixXd matrix;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& state) const;
    Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& state) const;
};

/// Single-mode annihilation matrix: a[n−1, n] = √n.
Eigen::MatrixXd annihilation_matrix(int cutoff);

/// a_B ⊗ 1 and 1 ⊗ a_D on the (bright, dark) output-port space.
ModeOperator bright_annihilation(int cutoff);
ModeOperator dark_annihilation(int cutoff);

/// Arm operators through the beamsplitter relation
///   a₂ = t·a_B − r·a_D,   a₁ = r·a_B + t·a_D.
ModeOperator arm_annihilation(int arm, BeamSplitterCoefficients bs, int cutoff);

/// n̂ = a†a for an arm, expanded termwise so no dense matrix product is needed.
ModeOperator arm_number(int arm, BeamSplitterCoefficients bs, int cutoff);

/// Product coherent state |α_B⟩|α_D⟩ in the output-port basis.
/// Rejects α² > cutoff/4 in either mode and any leakage ≥ kMaxLeakage.
TwoModeState coherent_two_mode(double alpha_bright, double alpha_dark, int cutoff);

/// Output-port amplitudes used for a coherent input α: α_D = α(t−r)/√2 = αδ, and α_B
/// chosen so that a₁'s amplitude r·α_B + t·α_D equals α/√2. In ExactUnitary mode this
/// is α_B = α(t+r)/√2.
struct PortAmplitudes {
    double bright;
    double dark;
};
PortAmplitudes port_amplitudes(double alpha, BeamSplitterCoefficients bs, double delta);

/// ⟨i|â_D n̂_arm|i⟩ / ⟨i|â_D|i⟩, i.e. post-selection on an extra dark-port photon.
double weak_value_exact(double alpha, double delta, BeamSplitterMode mode, int cutoff, int arm = 1);

/// ⟨n̂₁⟩_w + ⟨n̂₂⟩_w; |α|² + 1 in ExactUnitary mode.
double weak_value_sum(double alpha, double delta, BeamSplitterMode mode, int cutoff);

/// Single-photon weak value ⟨f|n̂_arm|i⟩/⟨f|i⟩ with |i⟩ = (|1,0⟩ + |0,1⟩)/√2 and
/// |f⟩ = t|1,0⟩ − r|0,1⟩ in the arm basis; returns t/(t−r) for arm 1.
double weak_value_single_photon(double delta, BeamSplitterMode mode, int arm = 1);

}  // namespace wva::fock
