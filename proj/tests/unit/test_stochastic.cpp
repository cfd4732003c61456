#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "wva/errors.hpp"
#include "wva/quantum.hpp"
#include "wva/stochastic.hpp"

namespace {

using namespace wva;
using stochastic::NoisePrior;

InterferometerParams first_order(double delta) { return InterferometerParams::make(delta, BeamSplitterMode::FirstOrder); }
InterferometerParams exact(double delta) { return InterferometerParams::make(delta, BeamSplitterMode::ExactUnitary); }

// Composite Simpson on a uniform grid, kept separate from the adaptive quadrature under test.
double simpson_shift(const InterferometerParams& p, const NoisePrior& prior) {
    const int n = 20000;
    const double lo = prior.mean_E1 - 14 * prior.sigma;
    const double hi = prior.mean_E1 + 14 * prior.sigma;
    const double h = (hi - lo) / n;
    double z = 0.0, m2 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double e = lo + i * h;
        const double c = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double g = std::exp(-0.5 * std::pow((e - prior.mean_E1) / prior.sigma, 2));
        const double f = p.t * e - p.r * prior.E0 / std::numbers::sqrt2;
        z += c * g * f * f;
        m2 += c * g * f * f * e * e;
    }
    return m2 / z - (prior.mean_E1 * prior.mean_E1 + prior.sigma * prior.sigma);
}

TEST(Validity, RatioAndRegimes) {
    const auto v = stochastic::validity(first_order(0.1), NoisePrior::vacuum(10.0));
    EXPECT_NEAR(v.ratio, 0.25, 1e-15);
    EXPECT_EQ(v.regime, stochastic::Regime::Marginal);
    EXPECT_EQ(stochastic::classify_ratio(0.049), stochastic::Regime::Valid);
    EXPECT_EQ(stochastic::classify_ratio(0.05), stochastic::Regime::Marginal);
    EXPECT_EQ(stochastic::classify_ratio(0.5), stochastic::Regime::Broken);
    EXPECT_EQ(stochastic::validity(first_order(0.1), NoisePrior::centered(10.0, 0.0)).ratio, 0.0);
    EXPECT_TRUE(std::isinf(stochastic::validity(first_order(0.1), NoisePrior::vacuum(0.0)).ratio));
}

TEST(Prior, RejectsBadWidths) {
    EXPECT_THROW(NoisePrior::centered(10.0, -0.1), DomainError);
    EXPECT_THROW(NoisePrior::centered(-1.0, 0.5), DomainError);
    EXPECT_THROW(NoisePrior::centered(10.0, 0.5, -1.0), DomainError);
    EXPECT_THROW(stochastic::prior_pdf(1.0, NoisePrior::centered(10.0, 0.0)), DomainError);
}

TEST(Likelihood, ZeroLocation) {
    const auto p = first_order(0.1);
    const auto prior = NoisePrior::vacuum(10.0);
    const double z = stochastic::likelihood_zero(p, prior);
    EXPECT_NEAR(z, p.r / p.t * 10.0 / std::numbers::sqrt2, 1e-12);
    EXPECT_NEAR(stochastic::click_weight(z, p, prior), 0.0, 1e-24);
    // First order: ⟨E₁⟩(1−δ)/(1+δ).
    EXPECT_NEAR(z, prior.mean_E1 * 0.9 / 1.1, 1e-12);
    const auto pe = exact(0.1);
    EXPECT_NEAR(stochastic::likelihood_zero(pe, prior), prior.mean_E1 * 0.9 / 1.1, 0.02 * prior.mean_E1);
}

TEST(Likelihood, ClampAndEfficiency) {
    auto p = InterferometerParams::make(0.5, BeamSplitterMode::FirstOrder, 1.0);
    const auto prior = NoisePrior::vacuum(10.0);
    EXPECT_EQ(stochastic::click_likelihood(30.0, p, prior), 1.0);
    p = InterferometerParams::make(0.5, BeamSplitterMode::FirstOrder, 0.0);
    EXPECT_EQ(stochastic::click_likelihood(30.0, p, prior), 0.0);
}

TEST(Posterior, NormalisedOverGrid) {
    for (double d : {0.05, 0.2, 1.0}) {
        for (double e0 : {2.0, 10.0, 100.0}) {
            for (double s : {0.1, 0.5, 2.0}) {
                const auto p = d < 1.0 ? first_order(d) : exact(d);
                const auto prior = NoisePrior::centered(e0, s);
                EXPECT_NEAR(stochastic::posterior_integral(p, prior), 1.0, 1e-8) << d << ' ' << e0 << ' ' << s;
            }
        }
    }
}

TEST(Posterior, NumericNormaliserForOffsetMean) {
    const auto p = first_order(0.1);
    const auto prior = NoisePrior::with_mean(10.0, 6.0, 0.5);
    EXPECT_NEAR(stochastic::posterior_integral(p, prior), 1.0, 1e-8);
    EXPECT_THROW(stochastic::intensity_shift_exact(p, prior), DomainError);
}

TEST(Posterior, ApproxMeanShiftInValidRegime) {
    const auto p = first_order(0.1);
    const auto prior = NoisePrior::vacuum(100.0);
    const double mean = stochastic::posterior_mean_quadrature(p, prior);
    const double shift = stochastic::approx_mean_shift(p, prior);
    EXPECT_NEAR(mean - prior.mean_E1, shift, 0.05 * shift);
}

TEST(Posterior, UnnormalisedApproxCarriesPrefactor) {
    const auto p = first_order(0.1);
    const auto prior = NoisePrior::vacuum(10.0);
    const double e = prior.mean_E1 + 0.3;
    const double a = p.t * 0.5 / (10.0 * 0.1);
    EXPECT_NEAR(stochastic::posterior_gaussian_approx_unnormalized(e, p, prior),
                std::exp(-2 * a * a) * stochastic::posterior_gaussian_approx(e, p, prior).density, 1e-15);
}

TEST(Shift, ExactClosedFormAgainstReferenceValues) {
    // Reference values: 30-digit quadrature of the posterior second moment.
    EXPECT_NEAR(stochastic::intensity_shift_exact(first_order(0.1), NoisePrior::vacuum(10.0)), 4.8431053203040172,
                1e-12);
    EXPECT_NEAR(stochastic::intensity_shift_exact(first_order(0.05), NoisePrior::vacuum(3.0)), 1.9035087719298246,
                1e-12);
    EXPECT_NEAR(stochastic::intensity_shift_exact(first_order(0.2), NoisePrior::vacuum(30.0)), 2.9875621890547262,
                1e-12);
    EXPECT_NEAR(stochastic::intensity_shift_exact(exact(0.3), NoisePrior::centered(5.0, 1.0)), 6.7128561958197215,
                1e-12);
    EXPECT_NEAR(stochastic::intensity_shift_two_arm(first_order(0.1), NoisePrior::centered(10.0, 0.5, 0.3)),
                4.69447250989307, 1e-10);
}

TEST(Shift, ExactAgainstSimpson) {
    for (double d : {0.03, 0.1, 0.4}) {
        for (double e0 : {3.0, 20.0}) {
            const auto p = first_order(d);
            const auto prior = NoisePrior::vacuum(e0);
            const double closed = stochastic::intensity_shift_exact(p, prior);
            EXPECT_NEAR(closed, simpson_shift(p, prior), 1e-8 * std::abs(closed));
        }
    }
}

TEST(Shift, QuadratureMatchesClosedForm) {
    for (double d : {0.05, 0.1, 0.3, 1.0}) {
        for (double e0 : {2.0, 10.0, 100.0}) {
            for (double s : {0.1, 0.5, 2.0}) {
                const auto p = d < 1.0 ? first_order(d) : exact(d);
                const auto prior = NoisePrior::centered(e0, s);
                const double closed = stochastic::intensity_shift_exact(p, prior);
                EXPECT_NEAR(stochastic::intensity_shift_quadrature(p, prior), closed, 1e-6 * std::abs(closed));
            }
        }
    }
}

TEST(Shift, TwoArmReducesAndMatchesQuadrature) {
    const auto p = first_order(0.1);
    EXPECT_DOUBLE_EQ(stochastic::intensity_shift_two_arm(p, NoisePrior::vacuum(10.0)),
                     stochastic::intensity_shift_exact(p, NoisePrior::vacuum(10.0)));
    const auto prior = NoisePrior::centered(10.0, 0.5, 0.4);
    EXPECT_NEAR(stochastic::intensity_shift_quadrature(p, prior), stochastic::intensity_shift_two_arm(p, prior),
                1e-8);
}

TEST(Shift, BaseShiftAtFullImbalance) {
    for (double e0 : {1.0, 10.0, 50.0}) {
        EXPECT_NEAR(stochastic::intensity_shift_exact(exact(1.0), NoisePrior::vacuum(e0)), 0.5, 1e-12);
        EXPECT_NEAR(stochastic::intensity_shift_quadrature(exact(1.0), NoisePrior::vacuum(e0)), 0.5, 1e-8);
    }
}

TEST(Shift, VacuumIdentity) {
    EXPECT_DOUBLE_EQ(stochastic::intensity_shift_vacuum(0.1), 5.5);
    EXPECT_DOUBLE_EQ(stochastic::intensity_shift_approx(first_order(0.1), NoisePrior::vacuum(10.0)), 5.5);
    EXPECT_THROW(stochastic::intensity_shift_vacuum(0.0), DomainError);
}

TEST(Shift, ApproxConvergesWithRatio) {
    for (double d : {0.05, 0.1, 0.2}) {
        for (double e0 : {50.0, 100.0, 400.0}) {
            const auto p = first_order(d);
            const auto prior = NoisePrior::vacuum(e0);
            const double ratio = stochastic::validity(p, prior).ratio;
            if (ratio > 0.05) continue;
            const double ex = stochastic::intensity_shift_exact(p, prior);
            const double ap = stochastic::intensity_shift_approx(p, prior);
            EXPECT_LE(std::abs(ex - ap) / ex, 3.0 * ratio) << d << ' ' << e0;
        }
    }
}

TEST(Shift, DeviationFromWeakValueShrinksWithField) {
    for (double d : {0.05, 0.1, 0.3}) {
        const auto p = first_order(d);
        double previous = INFINITY;
        for (double e0 = 2.0; e0 <= 200.0; e0 *= 1.25) {
            const double dev =
                std::abs(stochastic::intensity_shift_quadrature(p, NoisePrior::vacuum(e0)) - quantum::quantum_shift(d));
            EXPECT_LE(dev, previous * (1 + 1e-9)) << d << ' ' << e0;
            previous = dev;
        }
    }
}

TEST(Shift, PointPriorHasNoShift) {
    EXPECT_EQ(stochastic::intensity_shift_quadrature(first_order(0.1), NoisePrior::centered(10.0, 0.0)), 0.0);
}

TEST(Efficiency, DefaultEtaKeepsClampOff) {
    for (double d : {0.02, 0.1, 0.5}) {
        for (double e0 : {0.0, 3.0, 30.0}) {
            auto p = first_order(d);
            const auto prior = NoisePrior::centered(e0, 0.5, 0.2);
            const double eta = stochastic::default_eta(p, prior);
            EXPECT_LE(eta, 0.9);
            p = InterferometerParams::make(d, p.bs_mode, eta);
            EXPECT_TRUE(stochastic::clamp_inactive(p, prior));
            EXPECT_LE(eta * stochastic::posterior_normalizer(p, prior), 0.25 + 1e-12);
        }
    }
}

}  // namespace
