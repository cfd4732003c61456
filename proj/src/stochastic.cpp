#include "wva/stochastic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wva/errors.hpp"
#include "wva/quadrature.hpp"

namespace wva::stochastic {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;  // 1/√(2π)

void require_sigma_positive(const NoisePrior& prior) {
    if (!(prior.sigma > 0.0)) {
        throw DomainError("fluctuation width sigma must be positive for a density, got " +
                          std::to_string(prior.sigma));
    }
}

void require_closed_form(const InterferometerParams& params, const NoisePrior& prior) {
    if (!(params.delta > 0.0)) {
        throw DomainError("closed-form shift requires delta > 0");
    }
    if (!(prior.E0 > 0.0)) {
        throw DomainError("closed-form shift requires E0 > 0");
    }
    if (!prior.balanced()) {
        throw DomainError("closed-form shift requires <E1> = E0/sqrt(2)");
    }
}

double gaussian(double x, double sigma) noexcept {
    const double z = x / sigma;
    return kInvSqrt2Pi / sigma * std::exp(-0.5 * z * z);
}

// Posterior in the centred variable x = E₁ − ⟨E₁⟩, not normalised.
double weighted_prior(double x, const InterferometerParams& params, const NoisePrior& prior) noexcept {
    return click_weight(prior.mean_E1 + x, params, prior) * gaussian(x, prior.sigma);
}

std::array<double, 1> zero_breakpoint(const InterferometerParams& params, const NoisePrior& prior) {
    if (params.t == 0.0) return {std::numeric_limits<double>::infinity()};
    return {likelihood_zero(params, prior) - prior.mean_E1};
}

}  // namespace

NoisePrior NoisePrior::centered(double E0, double sigma, double sigma2) {
    return with_mean(E0, E0 / std::numbers::sqrt2, sigma, sigma2);
}

NoisePrior NoisePrior::with_mean(double E0, double mean_E1, double sigma, double sigma2) {
    if (!(E0 >= 0.0) || !std::isfinite(E0)) throw DomainError("input amplitude E0 must be finite and >= 0");
    if (!std::isfinite(mean_E1)) throw DomainError("mean field must be finite");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be finite and >= 0");
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) throw DomainError("sigma2 must be finite and >= 0");
    return {E0, mean_E1, sigma, sigma2};
}

double NoisePrior::mean_E2() const noexcept { return E0 / std::numbers::sqrt2; }

bool NoisePrior::balanced() const noexcept {
    const double expected = E0 / std::numbers::sqrt2;
    return std::abs(mean_E1 - expected) <= 1e-12 * std::max(1.0, expected);
}

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::Valid: return "valid";
        case Regime::Marginal: return "marginal";
        case Regime::Broken: return "broken";
    }
    return "?";
}

Regime classify_ratio(double ratio) noexcept {
    if (ratio < kValidRatioLimit) return Regime::Valid;
    if (ratio < kMarginalRatioLimit) return Regime::Marginal;
    return Regime::Broken;
}

ValidityReport validity(const InterferometerParams& params, const NoisePrior& prior) {
    if (!(params.delta > 0.0)) throw DomainError("validity requires delta > 0");
    if (prior.sigma == 0.0) return {0.0, Regime::Valid};
    const double scale = params.delta * prior.E0;
    const double ratio = scale > 0.0 ? (prior.sigma / scale) * (prior.sigma / scale)
                                     : std::numeric_limits<double>::infinity();
    return {ratio, classify_ratio(ratio)};
}

double prior_pdf(double E1, const NoisePrior& prior) {
    require_sigma_positive(prior);
    return gaussian(E1 - prior.mean_E1, prior.sigma);
}

double click_likelihood(double E1, const InterferometerParams& params, const NoisePrior& prior) {
    const double field = dark_port_field(E1, prior.mean_E2(), params);
    return std::min(1.0, params.eta * field * field);
}

double click_weight(double E1, const InterferometerParams& params, const NoisePrior& prior) noexcept {
    const double field = dark_port_field(E1, prior.mean_E2(), params);
    return field * field + params.r * params.r * prior.sigma2 * prior.sigma2;
}

double posterior_normalizer(const InterferometerParams& params, const NoisePrior& prior) {
    require_sigma_positive(prior);
    const double t = params.t;
    const double r = params.r;
    if (prior.balanced()) {
        const double dark = prior.E0 * params.delta;
        return dark * dark + t * t * prior.sigma * prior.sigma + r * r * prior.sigma2 * prior.sigma2;
    }
    const double w = kWindowSigmas * prior.sigma;
    const auto cut = zero_breakpoint(params, prior);
    return quad::integrate([&](double x) { return weighted_prior(x, params, prior); }, -w, w, cut).value;
}

double posterior_pdf(double E1, const InterferometerParams& params, const NoisePrior& prior) {
    const double norm = posterior_normalizer(params, prior);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw DomainError("posterior normaliser is degenerate");
    }
    return click_weight(E1, params, prior) * prior_pdf(E1, prior) / norm;
}

double likelihood_zero(const InterferometerParams& params, const NoisePrior& prior) {
    if (params.t == 0.0) throw DomainError("likelihood zero undefined for t = 0");
    return params.r / params.t * prior.mean_E2();
}

double approx_mean_shift(const InterferometerParams& params, const NoisePrior& prior) {
    if (!(params.delta > 0.0) || !(prior.E0 > 0.0)) {
        throw DomainError("approximate posterior requires delta > 0 and E0 > 0");
    }
    return 2.0 * params.t * prior.sigma * prior.sigma / (prior.E0 * params.delta);
}

ApproxPosterior posterior_gaussian_approx(double E1, const InterferometerParams& params, const NoisePrior& prior) {
    require_sigma_positive(prior);
    const double centre = prior.mean_E1 + approx_mean_shift(params, prior);
    return {gaussian(E1 - centre, prior.sigma), validity(params, prior)};
}

double posterior_gaussian_approx_unnormalized(double E1, const InterferometerParams& params,
                                              const NoisePrior& prior) {
    const double scale = prior.E0 * params.delta;
    const double a = params.t * prior.sigma / scale;
    return std::exp(-2.0 * a * a) * posterior_gaussian_approx(E1, params, prior).density;
}

ShiftTerms intensity_shift_exact_terms(const InterferometerParams& params, const NoisePrior& prior) {
    require_closed_form(params, prior);
    const double t = params.t;
    const double s2 = prior.sigma * prior.sigma;
    const double dark2 = prior.E0 * prior.E0 * params.delta * params.delta;
    const double lead = 4.0 * s2 * t / (std::numbers::sqrt2 * params.delta);
    const double A = t * t * s2 / dark2;
    const double B = t * s2 / (std::numbers::sqrt2 * prior.E0 * prior.E0 * params.delta);
    const double numerator = lead + 2.0 * t * t * s2 * s2 / dark2;
    return {numerator / (1.0 + A), A, B};
}

double intensity_shift_exact(const InterferometerParams& params, const NoisePrior& prior) {
    return intensity_shift_exact_terms(params, prior).value;
}

double intensity_shift_two_arm(const InterferometerParams& params, const NoisePrior& prior) {
    require_closed_form(params, prior);
    const double t = params.t;
    const double r = params.r;
    const double s2 = prior.sigma * prior.sigma;
    const double s22 = prior.sigma2 * prior.sigma2;
    const double dark2 = prior.E0 * prior.E0 * params.delta * params.delta;
    const double numerator = 4.0 * s2 * t / (std::numbers::sqrt2 * params.delta) + 2.0 * t * t * s2 * s2 / dark2;
    return numerator / (1.0 + (t * t * s2 + r * r * s22) / dark2);
}

double intensity_shift_approx(const InterferometerParams& params, const NoisePrior& prior) {
    if (!(params.delta > 0.0)) throw DomainError("approximate shift requires delta > 0");
    return 2.0 * prior.sigma * prior.sigma * (1.0 + params.delta) / params.delta;
}

double intensity_shift_vacuum(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw DomainError("imbalance delta must be positive and finite, got " + std::to_string(delta));
    }
    return 0.5 * (1.0 + 1.0 / delta);
}

double intensity_shift_quadrature(const InterferometerParams& params, const NoisePrior& prior, double rel_tol) {
    if (!(params.delta > 0.0)) throw DomainError("quadrature shift requires delta > 0");
    if (prior.sigma == 0.0) return 0.0;  // point-mass prior: post-selection cannot bias E₁
    require_sigma_positive(prior);

    const double m = prior.mean_E1;
    const double w = kWindowSigmas * prior.sigma;
    const auto cut = zero_breakpoint(params, prior);
    // E₁² − ⟨E₁⟩² = 2⟨E₁⟩x + x²; the ⟨E₁⟩² pieces cancel between the two terms.
    auto excess = [m](double x) { return 2.0 * m * x + x * x; };

    const auto norm = quad::integrate([&](double x) { return weighted_prior(x, params, prior); }, -w, w, cut, rel_tol);
    if (!(norm.value > 0.0)) throw DomainError("posterior normaliser is degenerate");
    const auto post = quad::integrate(
        [&](double x) { return excess(x) * weighted_prior(x, params, prior); }, -w, w, cut, rel_tol);
    const auto unconditioned = quad::integrate(
        [&](double x) { return excess(x) * gaussian(x, prior.sigma); }, -w, w, {}, rel_tol);
    return post.value / norm.value - unconditioned.value;
}

double posterior_integral(const InterferometerParams& params, const NoisePrior& prior) {
    const double w = kWindowSigmas * prior.sigma;
    const std::array<double, 1> cut{likelihood_zero(params, prior)};
    return quad::integrate([&](double e) { return posterior_pdf(e, params, prior); }, prior.mean_E1 - w,
                           prior.mean_E1 + w, cut)
        .value;
}

double posterior_mean_quadrature(const InterferometerParams& params, const NoisePrior& prior) {
    require_sigma_positive(prior);
    const double w = kWindowSigmas * prior.sigma;
    const auto cut = zero_breakpoint(params, prior);
    const auto norm = quad::integrate([&](double x) { return weighted_prior(x, params, prior); }, -w, w, cut);
    const auto first =
        quad::integrate([&](double x) { return x * weighted_prior(x, params, prior); }, -w, w, cut);
    return prior.mean_E1 + first.value / norm.value;
}

double posterior_cdf(double E1, const InterferometerParams& params, const NoisePrior& prior) {
    require_sigma_positive(prior);
    const double w = kWindowSigmas * prior.sigma;
    const double lo = prior.mean_E1 - w;
    if (E1 <= lo) return 0.0;
    const double hi = std::min(E1, prior.mean_E1 + w);
    const std::array<double, 1> cut{likelihood_zero(params, prior)};
    const double norm = posterior_normalizer(params, prior);
    const double mass = quad::integrate(
        [&](double e) { return click_weight(e, params, prior) * prior_pdf(e, prior); }, lo, hi, cut, 1e-10,
        1e-14 * norm)
        .value;
    return std::clamp(mass / norm, 0.0, 1.0);
}

double clamp_free_eta(const InterferometerParams& params, const NoisePrior& prior) {
    const double offset = std::abs(dark_port_field(prior.mean_E1, prior.mean_E2(), params));
    const double spread = kWindowSigmas * (std::abs(params.t) * prior.sigma + std::abs(params.r) * prior.sigma2);
    const double peak = offset + spread;
    if (peak == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (peak * peak);
}

double default_eta(const InterferometerParams& params, const NoisePrior& prior) {
    const double t = params.t;
    const double r = params.r;
    const double mean_field = dark_port_field(prior.mean_E1, prior.mean_E2(), params);
    const double rate = mean_field * mean_field + t * t * prior.sigma * prior.sigma +
                        r * r * prior.sigma2 * prior.sigma2;
    double eta = 0.9;
    if (rate > 0.0) eta = std::min(eta, 0.25 / rate);
    return std::min(eta, clamp_free_eta(params, prior));
}

bool clamp_inactive(const InterferometerParams& params, const NoisePrior& prior) {
    return params.eta <= clamp_free_eta(params, prior);
}

}  // namespace wva::stochastic
