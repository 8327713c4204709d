// scattering.hpp
//
// Circularly polarized light scattered by two identical particles held a
// fixed distance apart: per-channel angular envelopes, two-path fringe
// amplitudes on a far screen, and detection probabilities when the
// scatterers' final states only partially overlap.
//
// Conventions: the particles sit at x = +-d/2, the incident photon is
// right-circular and travels along +z, and angles are measured from the
// interparticle axis, so theta = pi/2 looks along the propagation
// direction. The screen is the far sphere of radius r0; a screen
// coordinate x maps to theta = acos(x / r0). Channel `plus` keeps the
// photon's handedness, channel `minus` reverses it (depositing 2 hbar of
// angular momentum on the particle that scattered). All lengths in
// micrometres; the absolute SI prefactor is reported separately so every
// relative quantity stays exact.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "whichpath/constants.hpp"

namespace whichpath::scattering {

using complex = std::complex<double>;

/// Two scatterers on the x-axis observed from a far sphere.
struct ScatterGeometry {
    double d;        ///< particle separation (um)
    double alpha;    ///< polarizability (SI, C m^2/V); common prefactor only
    double lambda0;  ///< vacuum wavelength (um)
    double r0;       ///< observation distance (um)

    double wavenumber() const { return 2.0 * pi / lambda0; }

    /// Screen period of the two-path intensity fringes (um).
    double fringe_period() const { return lambda0 * r0 / d; }

    /// Throws std::invalid_argument unless d > 0, lambda0 > 0 and the
    /// screen is in the far field (r0 >= 100 d).
    void validate() const {
        if (!(d > 0.0)) throw std::invalid_argument("ScatterGeometry: d must be positive");
        if (!(lambda0 > 0.0))
            throw std::invalid_argument("ScatterGeometry: lambda0 must be positive");
        if (!(r0 >= 100.0 * d))
            throw std::invalid_argument("ScatterGeometry: far field requires r0 >= 100 d");
    }
};

/// Helicity channel of the scattered photon relative to the incident
/// right-circular photon.
enum class ScatterChannel {
    plus,   ///< handedness preserved
    minus,  ///< handedness reversed
};

/// Overlap <s1|s2> = gamma e^{i phase} between the scatterer states left
/// behind by the two paths. gamma = 1: indistinguishable, full fringes;
/// gamma = 0: orthogonal marker states, no cross term.
struct WhichPathOverlap {
    double gamma = 1.0;
    double phase = 0.0;  ///< radians

    void validate() const {
        if (!(gamma >= 0.0 && gamma <= 1.0))
            throw std::invalid_argument("WhichPathOverlap: gamma must lie in [0, 1]");
    }
};

/// +1 for the handedness-preserving channel, -1 for the reversing one.
inline double channel_sign(ScatterChannel c) {
    return c == ScatterChannel::plus ? 1.0 : -1.0;
}

namespace detail {

inline void require_angle(double theta) {
    if (!(theta >= 0.0 && theta <= pi))
        throw std::domain_error("scattering: theta must lie in [0, pi]");
}

inline void require_on_screen(const ScatterGeometry& g, double x) {
    if (!(std::abs(x) <= g.r0))
        throw std::domain_error("scattering: |x| must not exceed r0");
}

}  // namespace detail

/// Angular factor sin(theta) +- 1 of the chosen channel. The reversing
/// channel vanishes at theta = pi/2: helicity flips are forbidden in the
/// forward direction.
inline double channel_envelope(ScatterChannel c, double theta) {
    detail::require_angle(theta);
    return std::sin(theta) + channel_sign(c);
}

/// Observation angle of the screen coordinate x on the far sphere.
inline double screen_angle(const ScatterGeometry& g, double x) {
    g.validate();
    detail::require_on_screen(g, x);
    return std::acos(x / g.r0);
}

/// Phase difference k0 d cos(theta) between the two scattering paths
/// seen from direction theta.
inline double path_phase_difference(const ScatterGeometry& g, double theta) {
    return g.wavenumber() * g.d * std::cos(theta);
}

/// Half the path phase expressed in screen coordinates:
/// eta = pi d x / (lambda0 r0). The two-path amplitude carries cos(eta),
/// the intensity fringes cos(2 eta).
inline double fringe_phase(const ScatterGeometry& g, double x) {
    return pi * g.d * x / (g.lambda0 * g.r0);
}

/// Amplitude contributed by one particle (1: at +d/2, 2: at -d/2),
/// relative to the incident amplitude and the common prefactor:
/// (sin theta +- 1)/2 times e^{-i eta} or e^{+i eta}.
inline complex particle_amplitude(const ScatterGeometry& g, ScatterChannel c,
                                  double theta, double x, int particle) {
    g.validate();
    detail::require_angle(theta);
    detail::require_on_screen(g, x);
    if (particle != 1 && particle != 2)
        throw std::invalid_argument("particle_amplitude: particle must be 1 or 2");
    const double eta = fringe_phase(g, x);
    const double half_envelope = 0.5 * channel_envelope(c, theta);
    return half_envelope * std::polar(1.0, particle == 1 ? -eta : +eta);
}

/// Coherent two-particle amplitude, the literal sum of the two
/// single-particle terms: (sin theta +- 1) cos(pi d x / (lambda0 r0)).
inline complex scatter_amplitude(const ScatterGeometry& g, ScatterChannel c,
                                 double theta, double x) {
    return particle_amplitude(g, c, theta, x, 1) + particle_amplitude(g, c, theta, x, 2);
}

/// Common dimensional prefactor alpha k0^2 e^{i k0 r0} / (4 pi eps0 r0)
/// in SI units; never needed for relative comparisons.
inline complex scattering_prefactor(const ScatterGeometry& g) {
    g.validate();
    const double k0_si = 2.0 * pi / (g.lambda0 * 1e-6);
    const double r0_si = g.r0 * 1e-6;
    const double magnitude =
        g.alpha * k0_si * k0_si / (4.0 * pi * epsilon0_si * r0_si);
    return std::polar(magnitude, g.wavenumber() * g.r0);
}

/// Reduced density matrix of the path label after tracing the entangled
/// state (|s1>|path 1> + |s2>|path 2>)/sqrt(2) over the scatterer
/// states: 1/2 [[1, gamma e^{-i phase}], [gamma e^{i phase}, 1]].
/// Computed by building the joint state and tracing explicitly.
inline std::array<std::array<complex, 2>, 2> path_density(const WhichPathOverlap& ov) {
    ov.validate();
    // Scatterer states with the requested overlap: s1 along the first
    // basis vector, s2 tilted so that <s1|s2> = gamma e^{i phase}.
    const std::array<complex, 2> s1{complex{1.0, 0.0}, complex{0.0, 0.0}};
    const std::array<complex, 2> s2{std::polar(ov.gamma, ov.phase),
                                    complex{std::sqrt(1.0 - ov.gamma * ov.gamma), 0.0}};

    // Joint state, scatterer index k (fast) times path index j (slow).
    const double w = 1.0 / std::sqrt(2.0);
    std::array<complex, 4> psi{};
    for (int k = 0; k < 2; ++k) {
        psi[0 * 2 + k] = w * s1[k];
        psi[1 * 2 + k] = w * s2[k];
    }

    std::array<std::array<complex, 4>, 4> rho{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) rho[a][b] = psi[a] * std::conj(psi[b]);

    std::array<std::array<complex, 2>, 2> reduced{};
    for (int j = 0; j < 2; ++j)
        for (int jp = 0; jp < 2; ++jp)
            for (int k = 0; k < 2; ++k) reduced[j][jp] += rho[j * 2 + k][jp * 2 + k];

    const double trace = std::real(reduced[0][0] + reduced[1][1]);
    if (std::abs(trace - 1.0) > 1e-12)
        throw std::logic_error("path_density: joint state lost normalization");
    return reduced;
}

/// Detection probability on the screen at x through the path density
/// matrix, scaled so that full overlap (gamma = 1, phase = 0) reproduces
/// |scatter_amplitude|^2 exactly:
/// P = |A1|^2 + |A2|^2 + 2 gamma Re[e^{i phase} A1 A2*].
inline double detection_probability(const ScatterGeometry& g, ScatterChannel c,
                                    double x, const WhichPathOverlap& ov) {
    const double theta = screen_angle(g, x);
    const std::array<complex, 2> a{particle_amplitude(g, c, theta, x, 1),
                                   particle_amplitude(g, c, theta, x, 2)};
    const auto rho = path_density(ov);

    complex p{};
    for (int j = 0; j < 2; ++j)
        for (int jp = 0; jp < 2; ++jp) p += a[j] * std::conj(a[jp]) * rho[jp][j];
    const double value = 2.0 * std::real(p);
    if (value < -1e-9)
        throw std::logic_error("detection_probability: negative probability");
    return std::max(0.0, value);
}

/// Fringe visibility of the detection pattern with the slow angular
/// envelope divided out, evaluated at an exact crest/trough pair one
/// period off centre (where both channel envelopes are nonzero). Equals
/// gamma for every channel and phase. Requires the fringe period to fit
/// the screen: 2 lambda0 r0 / d <= r0.
inline double fringe_visibility(const ScatterGeometry& g, ScatterChannel c,
                                const WhichPathOverlap& ov) {
    g.validate();
    ov.validate();
    const double period = g.fringe_period();
    if (!(2.0 * period <= g.r0))
        throw std::domain_error(
            "fringe_visibility: fringe period too long for the screen (need d >= 2 lambda0)");

    // Intensity ~ envelope^2 (1 + gamma cos(2 eta - phase)): extremal at
    // 2 eta = phase (+ 2 pi) and 2 eta = phase + pi (+ 2 pi).
    const double wrapped = std::remainder(ov.phase, 2.0 * pi);
    double x_max = (wrapped / (2.0 * pi) + 1.0) * period;
    double x_min = (wrapped / (2.0 * pi) + 0.5) * period;
    // Keep both sample points clear of the x = 0 envelope zero of the
    // reversing channel (a full-period shift leaves the fringe factor
    // unchanged).
    if (x_min < 0.25 * period) {
        x_min += period;
        x_max += period;
    }

    const auto normalized = [&](double x) {
        const double env = 0.5 * channel_envelope(c, screen_angle(g, x));
        return detection_probability(g, c, x, ov) / (2.0 * env * env);
    };
    const double top = normalized(x_max);
    const double bot = normalized(x_min);
    if (top + bot <= 0.0) return 0.0;
    return (top - bot) / (top + bot);
}

/// Intensity ratio of the reversing to the preserving channel at
/// observation angle theta: ((sin theta - 1) / (sin theta + 1))^2. The
/// fringe factor is channel-independent and cancels.
inline double envelope_ratio(double theta) {
    const double up = channel_envelope(ScatterChannel::minus, theta);
    const double down = channel_envelope(ScatterChannel::plus, theta);
    return (up / down) * (up / down);
}

/// Spin angular momentum handed to the scattering particle, in units of
/// hbar = 1: zero when the photon keeps its handedness, 2 when it
/// reverses (incident right-circular convention).
inline double angular_momentum_transfer(ScatterChannel c) {
    return c == ScatterChannel::minus ? 2.0 * hbar : 0.0;
}

/// Sampled detection pattern across the screen.
struct DetectionSweep {
    std::vector<double> x;            ///< screen coordinate (um)
    std::vector<double> probability;  ///< relative detection probability
};

/// Evaluate detection_probability on a symmetric n-point grid spanning
/// [-x_max, x_max]. x_max must stay on the screen.
inline DetectionSweep detection_sweep(const ScatterGeometry& g, ScatterChannel c,
                                      const WhichPathOverlap& ov, int n, double x_max) {
    g.validate();
    ov.validate();
    if (n < 2) throw std::invalid_argument("detection_sweep: need at least 2 samples");
    if (!(x_max > 0.0) || !(x_max < g.r0))
        throw std::domain_error("detection_sweep: x_max must lie in (0, r0)");

    DetectionSweep sweep;
    sweep.x.reserve(static_cast<std::size_t>(n));
    sweep.probability.reserve(static_cast<std::size_t>(n));
    const double step = 2.0 * x_max / (n - 1);
    for (int j = 0; j < n; ++j) {
        const double x = step * (j - (n - 1) / 2.0);
        sweep.x.push_back(x);
        sweep.probability.push_back(detection_probability(g, c, x, ov));
    }
    return sweep;
}

}  // namespace whichpath::scattering
