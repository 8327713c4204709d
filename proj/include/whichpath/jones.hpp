// jones.hpp
//
// Jones calculus for fully polarized light travelling along +z:
// polarization states, the standard optical elements (waveplates,
// polarizers, mirrors), and the photon spin component along the
// propagation axis.
//
// Conventions: right circular polarization is (1, i)/sqrt(2) and carries
// spin +hbar; a waveplate with fast axis at angle theta from x is the
// rotated retarder R(theta) diag(1, e^{i delta}) R(-theta).

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "whichpath/constants.hpp"

namespace whichpath::jones {

using complex = std::complex<double>;

/// Absolute tolerance below which a state must be normalized.
inline constexpr double norm_tolerance = 1e-12;

/// Transverse field (Ex, Ey) of a plane wave.
struct JonesVector {
    complex ex{};
    complex ey{};

    double norm_sq() const { return std::norm(ex) + std::norm(ey); }
    double norm() const { return std::sqrt(norm_sq()); }

    bool is_normalized(double tol = norm_tolerance) const {
        return std::abs(norm() - 1.0) <= tol;
    }

    /// Unit vector along the same state. Throws on the zero vector.
    JonesVector normalized() const {
        const double n = norm();
        if (n == 0.0)
            throw std::domain_error("JonesVector: cannot normalize the zero vector");
        return {ex / n, ey / n};
    }
};

/// Hermitian inner product <a|b>, conjugate-linear in the first slot.
inline complex inner_product(const JonesVector& a, const JonesVector& b) {
    return std::conj(a.ex) * b.ex + std::conj(a.ey) * b.ey;
}

inline JonesVector operator+(const JonesVector& a, const JonesVector& b) {
    return {a.ex + b.ex, a.ey + b.ey};
}

inline JonesVector operator*(const complex& c, const JonesVector& v) {
    return {c * v.ex, c * v.ey};
}

/// Linear polarization at angle theta from the x axis.
inline JonesVector linear(double theta) {
    return {std::cos(theta), std::sin(theta)};
}

/// Right circular polarization, spin +hbar.
inline JonesVector rcp() {
    const double s = 1.0 / std::sqrt(2.0);
    return {complex(s, 0.0), complex(0.0, s)};
}

/// Left circular polarization, spin -hbar.
inline JonesVector lcp() {
    const double s = 1.0 / std::sqrt(2.0);
    return {complex(s, 0.0), complex(0.0, -s)};
}

/// True when a and b describe the same physical state up to a global
/// phase: | |<a|b>| - |a||b| | <= tol.
inline bool same_up_to_phase(const JonesVector& a, const JonesVector& b,
                             double tol = 1e-10) {
    return std::abs(std::abs(inner_product(a, b)) - a.norm() * b.norm()) <= tol;
}

/// 2x2 complex operator on Jones vectors.
struct JonesMatrix {
    complex xx{}, xy{};
    complex yx{}, yy{};

    static JonesMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }

    JonesMatrix adjoint() const {
        return {std::conj(xx), std::conj(yx), std::conj(xy), std::conj(yy)};
    }

    /// Largest absolute entry of (M^dagger M - I).
    double unitarity_defect() const;
};

inline JonesVector operator*(const JonesMatrix& m, const JonesVector& v) {
    return {m.xx * v.ex + m.xy * v.ey, m.yx * v.ex + m.yy * v.ey};
}

inline JonesMatrix operator*(const JonesMatrix& a, const JonesMatrix& b) {
    return {a.xx * b.xx + a.xy * b.yx, a.xx * b.xy + a.xy * b.yy,
            a.yx * b.xx + a.yy * b.yx, a.yx * b.xy + a.yy * b.yy};
}

inline double JonesMatrix::unitarity_defect() const {
    const JonesMatrix p = adjoint() * (*this);
    double d = std::abs(p.xx - 1.0);
    d = std::max(d, std::abs(p.xy));
    d = std::max(d, std::abs(p.yx));
    return std::max(d, std::abs(p.yy - 1.0));
}

/// Active rotation of the transverse plane by theta.
inline JonesMatrix rotator(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c, -s, s, c};
}

/// Retarder with fast axis at theta and retardance delta:
/// R(theta) diag(1, e^{i delta}) R(-theta).
inline JonesMatrix retarder(double theta, double delta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const complex g = std::polar(1.0, delta);
    return {c * c + g * s * s, c * s * (1.0 - g),
            c * s * (1.0 - g), s * s + g * c * c};
}

/// Quarter-wave plate, fast axis at theta.
inline JonesMatrix qwp(double theta) { return retarder(theta, pi / 2.0); }

/// Half-wave plate, fast axis at theta.
inline JonesMatrix hwp(double theta) { return retarder(theta, pi); }

/// Ideal linear polarizer transmitting the component along theta.
/// Rank-one Hermitian projector.
inline JonesMatrix polarizer(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * c, c * s, c * s, s * s};
}

/// Ideal mirror at normal incidence: reverses the sense of circular
/// polarization (RCP <-> LCP) and leaves x-linear light unchanged.
inline JonesMatrix mirror() { return {1.0, 0.0, 0.0, -1.0}; }

/// Spin angular momentum along z, in units of hbar, for a normalized
/// state: +1 for RCP, -1 for LCP, 0 for any linear state.
inline double spin_z(const JonesVector& v) {
    if (!v.is_normalized())
        throw std::invalid_argument("spin_z: state must be normalized");
    return hbar * (std::norm(inner_product(rcp(), v)) -
                   std::norm(inner_product(lcp(), v)));
}

}  // namespace whichpath::jones
