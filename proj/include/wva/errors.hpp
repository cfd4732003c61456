#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wva {

/// Input outside the domain of a formula (δ ≤ 0, negative widths, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The post-selection amplitude ⟨f|i⟩ vanishes, so the weak value is undefined.
class DegeneratePostSelection : public DomainError {
public:
    using DomainError::DomainError;
};

/// Fock cutoff too small to hold the requested coherent state.
class CutoffTooSmall : public DomainError {
public:
    using DomainError::DomainError;
};

/// Quadrature failed to converge or produced a non-finite value.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Monte Carlo run accepted too few trials to form an estimate.
class StatisticsError : public NumericalError {
public:
    StatisticsError(const std::string& what, std::uint64_t n_accepted)
        : NumericalError(what), n_accepted_(n_accepted) {}

    std::uint64_t n_accepted() const noexcept { return n_accepted_; }

private:
    std::uint64_t n_accepted_;
};

}  // namespace wva
