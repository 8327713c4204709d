// uncertainty.hpp
//
// Finite-dimensional verifier for the textbook operator inequalities:
// expectations, standard deviations, commutators, the generalized
// uncertainty relation delta_A delta_B >= |<C>|/2 with [A, B] = i C,
// Ehrenfest's theorem, and the energy-time relation. Operators are dense
// complex matrices; the harmonic-oscillator position and momentum are
// represented on a truncated ladder basis.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "whichpath/constants.hpp"

namespace whichpath::uncertainty {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Hermitian matrix acting as an observable.
struct HermitianOperator {
    Matrix m;

    Eigen::Index dim() const { return m.rows(); }

    /// Throws std::invalid_argument unless square, at least 2x2, and
    /// self-adjoint within 1e-12 entrywise.
    void validate() const {
        if (m.rows() != m.cols() || m.rows() < 2)
            throw std::invalid_argument("HermitianOperator: need a square matrix, n >= 2");
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
            throw std::invalid_argument("HermitianOperator: matrix is not self-adjoint");
    }
};

/// Unit-norm state vector.
struct QuantumState {
    Vector psi;

    Eigen::Index dim() const { return psi.size(); }

    /// Throws std::invalid_argument unless normalized within 1e-12.
    void validate() const {
        if (psi.size() < 2)
            throw std::invalid_argument("QuantumState: need dimension >= 2");
        if (std::abs(psi.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("QuantumState: state must be normalized");
    }
};

namespace detail {

inline void require_match(const HermitianOperator& a, const QuantumState& s) {
    a.validate();
    s.validate();
    if (a.dim() != s.dim())
        throw std::invalid_argument("uncertainty: operator/state dimension mismatch");
}

inline void require_match(const HermitianOperator& a, const HermitianOperator& b) {
    a.validate();
    b.validate();
    if (a.dim() != b.dim())
        throw std::invalid_argument("uncertainty: operator dimension mismatch");
}

}  // namespace detail

/// <psi|A|psi>. The value of a Hermitian observable is real; the
/// imaginary residue is asserted below 1e-10 and discarded.
inline double expectation(const HermitianOperator& a, const QuantumState& s) {
    detail::require_match(a, s);
    const complex value = s.psi.dot(a.m * s.psi);
    if (std::abs(value.imag()) > 1e-10)
        throw std::logic_error("expectation: imaginary residue exceeds tolerance");
    return value.real();
}

/// sqrt(<A^2> - <A>^2), the operational standard deviation. <A^2> is
/// evaluated as |A psi|^2, which keeps the variance non-negative up to
/// rounding; a residue below -1e-10 is an internal error, smaller
/// negatives clamp to zero.
inline double std_dev(const HermitianOperator& a, const QuantumState& s) {
    detail::require_match(a, s);
    const double mean = expectation(a, s);
    const double second = (a.m * s.psi).squaredNorm();
    const double variance = second - mean * mean;
    if (variance < -1e-10)
        throw std::logic_error("std_dev: negative variance beyond tolerance");
    return std::sqrt(std::max(0.0, variance));
}

/// The Hermitian C with [A, B] = i C, i.e. C = -i (AB - BA).
inline HermitianOperator commutator_c(const HermitianOperator& a,
                                      const HermitianOperator& b) {
    detail::require_match(a, b);
    const Matrix c = complex(0.0, -1.0) * (a.m * b.m - b.m * a.m);
    if ((c - c.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::logic_error("commutator_c: result lost Hermiticity");
    return {c};
}

/// Outcome of the generalized uncertainty relation
/// delta_A delta_B >= |<C>|/2.
struct UncertaintyCheck {
    double lhs;           ///< delta_A * delta_B
    double rhs;           ///< |<C>| / 2
    bool holds;           ///< lhs >= rhs - 1e-10
    double discriminant;  ///< <C>^2 - 4 delta_A^2 delta_B^2, always <= 0
};

inline UncertaintyCheck uncertainty_check(const HermitianOperator& a,
                                          const HermitianOperator& b,
                                          const QuantumState& s) {
    const double da = std_dev(a, s);
    const double db = std_dev(b, s);
    const double mean_c = expectation(commutator_c(a, b), s);
    const double lhs = da * db;
    const double rhs = 0.5 * std::abs(mean_c);
    return {lhs, rhs, lhs >= rhs - 1e-10, mean_c * mean_c - 4.0 * da * da * db * db};
}

/// Exact unitary evolution by exp(-i H t / hbar), through the
/// eigendecomposition of H.
inline QuantumState evolve(const HermitianOperator& h, const QuantumState& s,
                           double t, double hbar_value = hbar) {
    detail::require_match(h, s);
    if (!(hbar_value > 0.0))
        throw std::invalid_argument("evolve: hbar must be positive");
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.m);
    if (es.info() != Eigen::Success)
        throw std::logic_error("evolve: eigendecomposition failed");
    Vector coeffs = es.eigenvectors().adjoint() * s.psi;
    for (Eigen::Index k = 0; k < coeffs.size(); ++k)
        coeffs[k] *= std::polar(1.0, -es.eigenvalues()[k] * t / hbar_value);
    return {es.eigenvectors() * coeffs};
}

/// Both sides of Ehrenfest's theorem d<A>/dt = <C_AH>/hbar (with
/// [A, H] = i C_AH), the left side from a centered finite difference of
/// the exactly evolved state.
struct EhrenfestCheck {
    double lhs;      ///< centered finite-difference d<A>/dt at t = 0
    double rhs;      ///< <C_AH>/hbar, the commutator form
    double rel_err;  ///< |lhs - rhs| / max(|rhs|, 1e-12)
};

inline EhrenfestCheck ehrenfest_check(const HermitianOperator& a,
                                      const HermitianOperator& h,
                                      const QuantumState& s, double dt,
                                      double hbar_value = hbar) {
    detail::require_match(a, h);
    detail::require_match(a, s);
    if (!(dt > 0.0)) throw std::invalid_argument("ehrenfest_check: dt must be positive");

    const QuantumState forward = evolve(h, s, dt, hbar_value);
    const QuantumState backward = evolve(h, s, -dt, hbar_value);
    const double lhs = (expectation(a, forward) - expectation(a, backward)) / (2.0 * dt);
    const double rhs = expectation(commutator_c(a, h), s) / hbar_value;
    const double scale = std::max(std::abs(rhs), 1e-12);
    return {lhs, rhs, std::abs(lhs - rhs) / scale};
}

/// Energy-time relation delta_E * delta_t >= hbar/2, with
/// delta_t = delta_A / |d<A>/dt|: the time for <A> to move by one
/// standard deviation.
struct EnergyTimeCheck {
    double delta_e;  ///< std_dev of H
    double delta_t;  ///< delta_A / |d<A>/dt|
    bool holds;      ///< delta_e * delta_t >= hbar/2 - 1e-10
};

inline EnergyTimeCheck energy_time_check(const HermitianOperator& a,
                                         const HermitianOperator& h,
                                         const QuantumState& s,
                                         double hbar_value = hbar) {
    const double rate = std::abs(expectation(commutator_c(a, h), s)) / hbar_value;
    if (!(rate > 0.0))
        throw std::domain_error(
            "energy_time_check: <A> is stationary, delta_t is undefined");
    const double delta_e = std_dev(h, s);
    const double delta_t = std_dev(a, s) / rate;
    return {delta_e, delta_t, delta_e * delta_t >= hbar_value / 2.0 - 1e-10};
}

/// Ladder lowering operator a on an n-level truncated oscillator basis:
/// a|k> = sqrt(k)|k-1>.
inline Matrix lowering(int n_levels) {
    if (n_levels < 2) throw std::invalid_argument("lowering: need at least 2 levels");
    Matrix a = Matrix::Zero(n_levels, n_levels);
    for (int k = 1; k < n_levels; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    return a;
}

/// Truncated oscillator position sqrt(hbar/2) (a + a^dag), in units with
/// unit mass and frequency.
inline HermitianOperator oscillator_position(int n_levels, double hbar_value = hbar) {
    const Matrix a = lowering(n_levels);
    return {std::sqrt(hbar_value / 2.0) * (a + a.adjoint())};
}

/// Truncated oscillator momentum i sqrt(hbar/2) (a^dag - a).
inline HermitianOperator oscillator_momentum(int n_levels, double hbar_value = hbar) {
    const Matrix a = lowering(n_levels);
    return {complex(0.0, 1.0) * std::sqrt(hbar_value / 2.0) * (a.adjoint() - a)};
}

/// k-th basis vector (the oscillator number state |k>).
inline QuantumState basis_state(int n_levels, int k) {
    if (n_levels < 2 || k < 0 || k >= n_levels)
        throw std::invalid_argument("basis_state: index out of range");
    Vector v = Vector::Zero(n_levels);
    v[k] = 1.0;
    return {v};
}

}  // namespace whichpath::uncertainty
