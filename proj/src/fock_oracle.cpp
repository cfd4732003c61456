#include "wva/fock_oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "wva/errors.hpp"

namespace wva::fock {

namespace {

void require_cutoff(int cutoff) {
    if (cutoff < 1 || cutoff > kMaxCutoff) {
        throw DomainError("Fock cutoff must lie in [1, " + std::to_string(kMaxCutoff) + "], got " +
                          std::to_string(cutoff));
    }
}

// (c_B, c_D) such that a_arm = c_B·a_B + c_D·a_D.
std::pair<double, double> arm_weights(int arm, BeamSplitterCoefficients bs) {
    if (arm == 1) return {bs.r, bs.t};
    if (arm == 2) return {bs.t, -bs.r};
    throw DomainError("arm index must be 1 or 2, got " + std::to_string(arm));
}

Eigen::VectorXd coherent_column(double alpha, int cutoff) {
    Eigen::VectorXd c(cutoff + 1);
    c(0) = std::exp(-0.5 * alpha * alpha);
    for (int n = 1; n <= cutoff; ++n) {
        c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    return c;
}

std::complex<double> checked_ratio(std::complex<double> num, std::complex<double> den) {
    if (std::abs(den) < 1e-12) {
        throw DegeneratePostSelection("post-selection overlap vanishes (|<f|i>| < 1e-12)");
    }
    return num / den;
}

}  // namespace

TwoModeState::TwoModeState(int cutoff) : cutoff_(cutoff) {
    require_cutoff(cutoff);
    amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cutoff + 1) * (cutoff + 1));
}

Eigen::Index TwoModeState::index(int n_first, int n_second) const {
    if (n_first < 0 || n_second < 0 || n_first > cutoff_ || n_second > cutoff_) {
        throw DomainError("Fock index outside the truncated space");
    }
    return static_cast<Eigen::Index>(n_first) * (cutoff_ + 1) + n_second;
}

std::complex<double> TwoModeState::amplitude(int n_first, int n_second) const {
    return amps_(index(n_first, n_second));
}

void TwoModeState::set_amplitude(int n_first, int n_second, std::complex<double> value) {
    amps_(index(n_first, n_second)) = value;
}

std::string_view to_string(OperatorTag tag) {
    switch (tag) {
        case OperatorTag::ArmOne: return "a1";
        case OperatorTag::ArmTwo: return "a2";
        case OperatorTag::Bright: return "aB";
        case OperatorTag::Dark: return "aD";
        case OperatorTag::NumberArmOne: return "n1";
        case OperatorTag::NumberArmTwo: return "n2";
    }
    return "?";
}

Eigen::VectorXcd ModeOperator::apply(const Eigen::VectorXcd& state) const {
    Eigen::VectorXcd out(matrix.rows());
    out.real() = matrix * state.real();
    out.imag() = matrix * state.imag();
    return out;
}

Eigen::VectorXcd ModeOperator::apply_adjoint(const Eigen::VectorXcd& state) const {
    Eigen::VectorXcd out(matrix.cols());
    out.real() = matrix.transpose() * state.real();
    out.imag() = matrix.transpose() * state.imag();
    return out;
}

Eigen::MatrixXd annihilation_matrix(int cutoff) {
    require_cutoff(cutoff);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff + 1, cutoff + 1);
    for (int n = 1; n <= cutoff; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

ModeOperator bright_annihilation(int cutoff) {
    const Eigen::MatrixXd a = annihilation_matrix(cutoff);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(cutoff + 1, cutoff + 1);
    return {OperatorTag::Bright, Eigen::kroneckerProduct(a, id).eval()};
}

ModeOperator dark_annihilation(int cutoff) {
    const Eigen::MatrixXd a = annihilation_matrix(cutoff);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(cutoff + 1, cutoff + 1);
    return {OperatorTag::Dark, Eigen::kroneckerProduct(id, a).eval()};
}

ModeOperator arm_annihilation(int arm, BeamSplitterCoefficients bs, int cutoff) {
    const auto [cb, cd] = arm_weights(arm, bs);
    const Eigen::MatrixXd a = annihilation_matrix(cutoff);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(cutoff + 1, cutoff + 1);
    Eigen::MatrixXd m = cb * Eigen::kroneckerProduct(a, id).eval();
    m += cd * Eigen::kroneckerProduct(id, a).eval();
    return {arm == 1 ? OperatorTag::ArmOne : OperatorTag::ArmTwo, std::move(m)};
}

ModeOperator arm_number(int arm, BeamSplitterCoefficients bs, int cutoff) {
    const auto [cb, cd] = arm_weights(arm, bs);
    const Eigen::MatrixXd a = annihilation_matrix(cutoff);
    const Eigen::MatrixXd ad = a.transpose();
    const Eigen::MatrixXd num = ad * a;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(cutoff + 1, cutoff + 1);

    // (c_B a_B + c_D a_D)†(c_B a_B + c_D a_D)
    Eigen::MatrixXd m = (cb * cb) * Eigen::kroneckerProduct(num, id).eval();
    m += (cb * cd) * Eigen::kroneckerProduct(ad, a).eval();
    m += (cb * cd) * Eigen::kroneckerProduct(a, ad).eval();
    m += (cd * cd) * Eigen::kroneckerProduct(id, num).eval();
    return {arm == 1 ? OperatorTag::NumberArmOne : OperatorTag::NumberArmTwo, std::move(m)};
}

TwoModeState coherent_two_mode(double alpha_bright, double alpha_dark, int cutoff) {
    require_cutoff(cutoff);
    const double limit = cutoff / 4.0;
    if (alpha_bright * alpha_bright > limit || alpha_dark * alpha_dark > limit) {
        throw CutoffTooSmall("coherent amplitude too large for cutoff " + std::to_string(cutoff) +
                             " (need alpha^2 <= cutoff/4)");
    }
    const Eigen::VectorXd cb = coherent_column(alpha_bright, cutoff);
    const Eigen::VectorXd cd = coherent_column(alpha_dark, cutoff);

    TwoModeState state(cutoff);
    for (int nb = 0; nb <= cutoff; ++nb) {
        for (int nd = 0; nd <= cutoff; ++nd) {
            state.set_amplitude(nb, nd, cb(nb) * cd(nd));
        }
    }
    if (state.leakage() >= kMaxLeakage) {
        throw CutoffTooSmall("truncation leakage " + std::to_string(state.leakage()) + " exceeds 1e-8 at cutoff " +
                             std::to_string(cutoff));
    }
    return state;
}

PortAmplitudes port_amplitudes(double alpha, BeamSplitterCoefficients bs, double delta) {
    const double arm = alpha / std::numbers::sqrt2;
    const double dark = alpha * delta;
    if (std::abs(bs.r) < 1e-12) {
        throw DomainError("reflectivity vanishes; bright-port amplitude is undetermined");
    }
    return {(arm - bs.t * dark) / bs.r, dark};
}

double weak_value_exact(double alpha, double delta, BeamSplitterMode mode, int cutoff, int arm) {
    if (!(alpha >= 0.0)) {
        throw DomainError("coherent amplitude must be non-negative");
    }
    const BeamSplitterCoefficients bs = bs_coefficients(delta, mode);
    const PortAmplitudes ports = port_amplitudes(alpha, bs, delta);
    const TwoModeState initial = coherent_two_mode(ports.bright, ports.dark, cutoff);

    const ModeOperator dark = dark_annihilation(cutoff);
    const ModeOperator number = arm_number(arm, bs, cutoff);

    const Eigen::VectorXcd& psi = initial.amplitudes();
    const Eigen::VectorXcd post = dark.apply_adjoint(psi);  // |f̃⟩ = â_D†|i⟩
    const std::complex<double> num = post.dot(number.apply(psi));
    const std::complex<double> den = post.dot(psi);
    return checked_ratio(num, den).real();
}

double weak_value_sum(double alpha, double delta, BeamSplitterMode mode, int cutoff) {
    return weak_value_exact(alpha, delta, mode, cutoff, 1) + weak_value_exact(alpha, delta, mode, cutoff, 2);
}

double weak_value_single_photon(double delta, BeamSplitterMode mode, int arm) {
    const BeamSplitterCoefficients bs = bs_coefficients(delta, mode);
    constexpr int cutoff = 2;
    constexpr double h = 1.0 / std::numbers::sqrt2;

    // Arm basis: first mode is arm 1, second is arm 2.
    TwoModeState initial(cutoff);
    initial.set_amplitude(1, 0, h);
    initial.set_amplitude(0, 1, h);
    TwoModeState post(cutoff);
    post.set_amplitude(1, 0, bs.t);
    post.set_amplitude(0, 1, -bs.r);

    const Eigen::MatrixXd a = annihilation_matrix(cutoff);
    const Eigen::MatrixXd num = a.transpose() * a;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(cutoff + 1, cutoff + 1);
    if (arm != 1 && arm != 2) {
        throw DomainError("arm index must be 1 or 2, got " + std::to_string(arm));
    }
    const ModeOperator number{arm == 1 ? OperatorTag::NumberArmOne : OperatorTag::NumberArmTwo,
                              arm == 1 ? Eigen::kroneckerProduct(num, id).eval()
                                       : Eigen::kroneckerProduct(id, num).eval()};

    const std::complex<double> n = post.amplitudes().dot(number.apply(initial.amplitudes()));
    const std::complex<double> d = post.amplitudes().dot(initial.amplitudes());
    return checked_ratio(n, d).real();
}

}  // namespace wva::fock
