#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "wva/errors.hpp"
#include "wva/fock_oracle.hpp"
#include "wva/quantum.hpp"

namespace {

using namespace wva;

// Normal-ordering identity for a coherent product state:
// ⟨n̂₁⟩_w = |α₁|² + t·α₁/α_D with α₁ = α/√2, α_D = αδ.
double normal_ordered_weak_value(double alpha, double delta, BeamSplitterMode mode) {
    const auto bs = bs_coefficients(delta, mode);
    const double a1 = alpha / std::numbers::sqrt2;
    return a1 * a1 + bs.t * a1 / (alpha * delta);
}

TEST(FockSpace, AnnihilationMatrix) {
    const auto a = fock::annihilation_matrix(4);
    ASSERT_EQ(a.rows(), 5);
    for (int n = 1; n <= 4; ++n) EXPECT_DOUBLE_EQ(a(n - 1, n), std::sqrt(n));
    EXPECT_DOUBLE_EQ(a.diagonal().cwiseAbs().sum(), 0.0);
}

TEST(FockSpace, StateIndexing) {
    fock::TwoModeState s(3);
    EXPECT_EQ(s.dim(), 16);
    EXPECT_EQ(s.index(2, 1), 9);
    s.set_amplitude(2, 1, {0.6, 0.0});
    s.set_amplitude(0, 0, {0.0, 0.8});
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
    EXPECT_THROW(s.index(4, 0), DomainError);
}

TEST(FockSpace, CoherentNormFromPoissonWeights) {
    const auto s = fock::coherent_two_mode(2.0, 0.2, 40);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-8);
    // |⟨n_B = 4, n_D = 0|ψ⟩|² = e^{-|α_B|²}|α_B|^8/4! · e^{-|α_D|²}
    const double pb = std::exp(-4.0) * std::pow(4.0, 4) / 24.0;
    const double pd = std::exp(-0.04);
    EXPECT_NEAR(std::norm(s.amplitude(4, 0)), pb * pd, 1e-14);
}

TEST(FockSpace, CutoffGuards) {
    EXPECT_THROW(fock::coherent_two_mode(4.0, 0.0, 40), CutoffTooSmall);
    EXPECT_THROW(fock::coherent_two_mode(1.0, 0.0, fock::kMaxCutoff + 1), DomainError);
    EXPECT_THROW(fock::coherent_two_mode(1.0, 0.0, 0), DomainError);
}

TEST(FockSpace, ArmNumberMatchesOperatorProduct) {
    const auto bs = bs_coefficients(0.2, BeamSplitterMode::ExactUnitary);
    const int cutoff = 20;
    const auto psi = fock::coherent_two_mode(1.0, 0.3, cutoff).amplitudes();
    for (int arm : {1, 2}) {
        const auto a = fock::arm_annihilation(arm, bs, cutoff);
        const auto n = fock::arm_number(arm, bs, cutoff);
        const Eigen::VectorXcd direct = a.apply_adjoint(a.apply(psi));
        EXPECT_LT((n.apply(psi) - direct).norm(), 1e-12);
        EXPECT_LT((n.matrix - n.matrix.transpose()).norm(), 1e-12);
    }
}

TEST(FockWeakValue, FirstOrderReproducesClosedForm) {
    EXPECT_NEAR(fock::weak_value_exact(2.0, 0.05, BeamSplitterMode::FirstOrder, 40), 12.5, 1e-6);
    for (double a : {0.5, 1.0, 2.0}) {
        for (double d : {0.05, 0.1, 0.3, 0.5}) {
            EXPECT_NEAR(fock::weak_value_exact(a, d, BeamSplitterMode::FirstOrder, 40),
                        quantum::weak_value_coherent(CoherentAmplitude(a), d), 1e-6)
                << a << ' ' << d;
        }
    }
}

TEST(FockWeakValue, ExactModeMatchesNormalOrdering) {
    for (double a : {0.5, 1.0, 2.0}) {
        for (double d : {0.05, 0.1, 0.3, 0.5, 1.0}) {
            const double fock_value = fock::weak_value_exact(a, d, BeamSplitterMode::ExactUnitary, 40);
            EXPECT_NEAR(fock_value, normal_ordered_weak_value(a, d, BeamSplitterMode::ExactUnitary), 1e-6);
            if (d <= 0.5) {
                EXPECT_LE(std::abs(fock_value - quantum::weak_value_coherent(CoherentAmplitude(a), d)), d);
            }
        }
    }
    EXPECT_NEAR(fock::weak_value_exact(1.0, 1.0, BeamSplitterMode::ExactUnitary, 30), 1.0, 1e-8);
}

TEST(FockWeakValue, SumRuleInExactMode) {
    EXPECT_NEAR(fock::weak_value_sum(2.0, 0.1, BeamSplitterMode::ExactUnitary, 40), 5.0, 1e-6);
    EXPECT_NEAR(fock::weak_value_sum(1.0, 1.0, BeamSplitterMode::ExactUnitary, 30), 2.0, 1e-6);
    for (double a : {0.5, 1.5, 3.0}) {
        for (double d : {0.05, 0.2, 0.6, 1.0}) {
            EXPECT_NEAR(fock::weak_value_sum(a, d, BeamSplitterMode::ExactUnitary, 40), a * a + 1.0, 1e-6);
        }
    }
}

TEST(FockWeakValue, CutoffConvergence) {
    for (double a : {0.5, 1.0, 2.0}) {
        const double lo = fock::weak_value_exact(a, 0.1, BeamSplitterMode::ExactUnitary, 25);
        const double hi = fock::weak_value_exact(a, 0.1, BeamSplitterMode::ExactUnitary, 50);
        EXPECT_LT(std::abs(hi - lo), 1e-8) << a;
    }
}

TEST(FockWeakValue, VanishingDarkAmplitudeIsDegenerate) {
    EXPECT_THROW(fock::weak_value_exact(0.0, 0.1, BeamSplitterMode::ExactUnitary, 20), DegeneratePostSelection);
}

TEST(FockWeakValue, SinglePhoton) {
    EXPECT_NEAR(fock::weak_value_single_photon(0.1, BeamSplitterMode::FirstOrder), 5.5, 1e-12);
    EXPECT_NEAR(fock::weak_value_single_photon(1.0, BeamSplitterMode::ExactUnitary), 0.5, 1e-12);
    for (double d : {0.05, 0.3, 0.8}) {
        const double sum = fock::weak_value_single_photon(d, BeamSplitterMode::ExactUnitary, 1) +
                           fock::weak_value_single_photon(d, BeamSplitterMode::ExactUnitary, 2);
        EXPECT_NEAR(sum, 1.0, 1e-12);
    }
}

}  // namespace
