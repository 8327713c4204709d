// interferometer.hpp
//
// Single-photon Mach-Zehnder and Sagnac interferometers with
// polarization-tracking path states.
//
// Conventions: an ideal 50/50 beamsplitter has transmission 1/sqrt(2)
// and reflection i/sqrt(2), acting on path amplitudes only; each mirror
// reflection applies jones::mirror(), reversing circular handedness.
// Port 1 is the constructive port at zero phase difference:
// p1 = cos^2(phi/2), p2 = sin^2(phi/2).

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "whichpath/constants.hpp"
#include "whichpath/jones.hpp"

namespace whichpath::interferometer {

using complex = std::complex<double>;
using jones::JonesMatrix;
using jones::JonesVector;

/// One interferometer branch: a labelled path amplitude with its
/// accumulated propagation phase and polarization state.
struct Branch {
    std::string label;
    complex amp{};      ///< splitter/loss amplitude factors
    double phase{};     ///< accumulated path phase (radians)
    JonesVector pol{};  ///< polarization along this branch

    complex weight() const { return amp * std::polar(1.0, phase); }
};

/// Superposition over branches. For a single photon the branch
/// probabilities must sum to one.
struct PathState {
    std::vector<Branch> branches;

    double total_probability() const {
        double p = 0.0;
        for (const Branch& b : branches) p += std::norm(b.amp) * b.pol.norm_sq();
        return p;
    }

    /// Throws std::logic_error unless probability sums to 1 within tol
    /// and branch labels are unique.
    void validate(double tol = 1e-12) const {
        if (std::abs(total_probability() - 1.0) > tol)
            throw std::logic_error("PathState: branch probabilities must sum to 1");
        for (std::size_t i = 0; i < branches.size(); ++i)
            for (std::size_t j = i + 1; j < branches.size(); ++j)
                if (branches[i].label == branches[j].label)
                    throw std::logic_error("PathState: duplicate branch label");
    }
};

/// Ideal 50/50 beamsplitter: unitary [[t, r], [r, t]] on the two path
/// amplitudes, t = 1/sqrt(2), r = i/sqrt(2). Two reflections and two
/// transmissions differ by a phase of exactly pi.
struct Beamsplitter {
    complex t{1.0 / std::sqrt(2.0), 0.0};
    complex r{0.0, 1.0 / std::sqrt(2.0)};

    /// Largest deviation of [[t, r],[r, t]] from unitarity.
    double unitarity_defect() const {
        const double diag = std::abs(std::norm(t) + std::norm(r) - 1.0);
        const double off = std::abs(t * std::conj(r) + r * std::conj(t));
        return std::max(diag, off);
    }
};

inline Beamsplitter beamsplitter() { return {}; }

/// Mach-Zehnder configuration. The upper arm carries a fold mirror, the
/// lower arm a retroreflector (one polarization-flipping reflection with
/// doubled displacement sensitivity) plus the adjustable phase.
struct MzConfig {
    double phase_diff = 0.0;       ///< lower-arm phase lead (radians)
    bool with_qwps = false;        ///< insert a QWP into each arm
    double qwp_angle_upper = pi / 4;
    double qwp_angle_lower = pi / 4;
    JonesVector input = jones::linear(0.0);
    /// Cross-term weight from the longitudinal wavepacket overlap between
    /// the arms; 1 for perfectly matched path lengths. See
    /// wavepacket_overlap().
    double envelope_overlap = 1.0;

    void validate() const {
        if (!input.is_normalized())
            throw std::invalid_argument("MzConfig: input state must be normalized");
        if (!(envelope_overlap >= 0.0 && envelope_overlap <= 1.0))
            throw std::invalid_argument("MzConfig: envelope_overlap must lie in [0, 1]");
    }
};

/// Output of one Mach-Zehnder evaluation.
struct MzResult {
    double p1;  ///< probability at the constructive port
    double p2;  ///< probability at the complementary port
    JonesVector arm_upper;  ///< polarization reaching the recombiner, upper arm
    JonesVector arm_lower;  ///< polarization reaching the recombiner, lower arm
    /// Set when the two arms reach the recombiner with opposite circular
    /// handedness; the probabilities are still computed.
    bool handedness_mismatch;
};

namespace detail {

/// Propagate the input through splitter 1 and both arms, up to (not
/// including) the recombiner. Returns the two-branch path state.
inline PathState mz_arms(const MzConfig& cfg) {
    cfg.validate();
    const Beamsplitter bs = beamsplitter();
    const JonesMatrix m = jones::mirror();

    // Upper arm: transmitted at splitter 1, one fold mirror.
    Branch up{"upper", bs.t, 0.0, cfg.input};
    // Lower arm: reflected at splitter 1, retroreflector, phase lead.
    Branch low{"lower", bs.r, cfg.phase_diff, cfg.input};

    if (cfg.with_qwps) {
        up.pol = jones::qwp(cfg.qwp_angle_upper) * up.pol;
        low.pol = jones::qwp(cfg.qwp_angle_lower) * low.pol;
    }
    up.pol = m * up.pol;
    low.pol = m * low.pol;

    return PathState{{up, low}};
}

/// Recombine the two arm branches on splitter 2 and read out the port
/// probabilities. extra_phase is added to the lower arm. The cross terms
/// are weighted by the longitudinal envelope overlap.
inline void mz_combine(const PathState& arms, double extra_phase, double overlap,
                       double& p1, double& p2) {
    const Beamsplitter bs = beamsplitter();
    const Branch& up = arms.branches[0];
    const Branch& low = arms.branches[1];

    const complex cu1 = up.weight() * bs.r;   // upper arm reflects into port 1
    const complex cl1 = low.weight() * std::polar(1.0, extra_phase) * bs.t;
    const complex cu2 = up.weight() * bs.t;   // and transmits into port 2
    const complex cl2 = low.weight() * std::polar(1.0, extra_phase) * bs.r;

    const complex cross = jones::inner_product(up.pol, low.pol) * overlap;

    p1 = std::norm(cu1) * up.pol.norm_sq() + std::norm(cl1) * low.pol.norm_sq() +
         2.0 * std::real(std::conj(cu1) * cl1 * cross);
    p2 = std::norm(cu2) * up.pol.norm_sq() + std::norm(cl2) * low.pol.norm_sq() +
         2.0 * std::real(std::conj(cu2) * cl2 * cross);
}

}  // namespace detail

/// Port probabilities of the Mach-Zehnder, computed by propagating the
/// full path state through both splitters and arms. With matched arm
/// polarizations this reduces to p1 = cos^2(phi/2), p2 = sin^2(phi/2).
inline MzResult mz_output(const MzConfig& cfg) {
    const PathState arms = detail::mz_arms(cfg);
    double p1, p2;
    detail::mz_combine(arms, 0.0, cfg.envelope_overlap, p1, p2);

    const JonesVector& u = arms.branches[0].pol;
    const JonesVector& l = arms.branches[1].pol;
    const double su = jones::spin_z(u.normalized());
    const double sl = jones::spin_z(l.normalized());
    const bool mismatch = su * sl < -1e-9;

    return {p1, p2, u, l, mismatch};
}

/// Fringe visibility of port 1 as the lower-arm phase is swept through a
/// full cycle. The port probability is an exact first harmonic of the
/// sweep phase, so the contrast is extracted from the discrete Fourier
/// coefficient at frequency one (exact on a uniform grid, immune to the
/// sampling bias of a max/min search).
inline double fringe_visibility(const MzConfig& cfg, int n_phase = 64) {
    if (n_phase < 4)
        throw std::invalid_argument("fringe_visibility: need at least 4 phase samples");
    const PathState arms = detail::mz_arms(cfg);
    double mean = 0.0;
    complex first{};
    for (int k = 0; k < n_phase; ++k) {
        const double phi = 2.0 * pi * k / n_phase;
        double p1, p2;
        detail::mz_combine(arms, phi, cfg.envelope_overlap, p1, p2);
        mean += p1;
        first += p1 * std::polar(1.0, -phi);
    }
    mean /= n_phase;
    if (mean <= 0.0) return 0.0;
    return std::abs(first) * 2.0 / n_phase / mean;
}

/// Longitudinal wavepacket overlap between the two arms for a photon of
/// centre frequency omega0 and frequency spread delta_omega, when the
/// arm lengths differ by path_mismatch (um). The Gaussian wavepacket has
/// duration delta_t = 1/delta_omega and spatial length delta_x = c
/// delta_t; the amplitude cross term carries exp(-l^2 / (8 delta_x^2)).
struct WavepacketWidths {
    double delta_t;  ///< seconds
    double delta_x;  ///< micrometres
    double overlap;  ///< cross-term weight in [0, 1]
};

inline WavepacketWidths wavepacket_overlap(double omega0, double delta_omega,
                                           double path_mismatch) {
    if (!(omega0 > 0.0) || !(delta_omega > 0.0))
        throw std::invalid_argument("wavepacket_overlap: frequencies must be positive");
    if (!(delta_omega < omega0))
        throw std::invalid_argument(
            "wavepacket_overlap: delta_omega must be small against omega0");
    const double dt = 1.0 / delta_omega;
    const double dx = c_um_per_s * dt;
    const double l = path_mismatch;
    return {dt, dx, std::exp(-(l * l) / (8.0 * dx * dx))};
}

/// Monte-Carlo fringe visibility when the retroreflector position
/// jitters with standard deviation sigma_x (um): each draw displaces the
/// lower arm by delta, adding phase 2 k delta with k = 2 pi / lambda0.
/// Averages mz_output over draws at every sweep phase and returns the
/// contrast of the mean fringe. Converges to exp(-2 k^2 sigma_x^2).
/// Deterministic for a fixed seed.
inline double mirror_jitter_visibility(const MzConfig& cfg, double sigma_x,
                                       double lambda0, int n_mc, std::uint64_t seed,
                                       int n_phase = 64) {
    if (!(lambda0 > 0.0))
        throw std::invalid_argument("mirror_jitter_visibility: lambda0 must be positive");
    if (!(sigma_x >= 0.0))
        throw std::invalid_argument("mirror_jitter_visibility: sigma_x must be non-negative");
    if (n_mc < 1)
        throw std::invalid_argument("mirror_jitter_visibility: n_mc must be positive");

    const PathState arms = detail::mz_arms(cfg);
    const double k = 2.0 * pi / lambda0;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma_x > 0.0 ? sigma_x : 1.0);

    std::vector<double> mean(n_phase, 0.0);
    for (int mc = 0; mc < n_mc; ++mc) {
        const double jitter = sigma_x > 0.0 ? 2.0 * k * gauss(rng) : 0.0;
        for (int j = 0; j < n_phase; ++j) {
            double p1, p2;
            detail::mz_combine(arms, 2.0 * pi * j / n_phase + jitter,
                               cfg.envelope_overlap, p1, p2);
            mean[j] += p1;
        }
    }

    double offset = 0.0;
    complex first{};
    for (int j = 0; j < n_phase; ++j) {
        const double v = mean[j] / n_mc;
        offset += v;
        first += v * std::polar(1.0, -2.0 * pi * j / n_phase);
    }
    offset /= n_phase;
    if (offset <= 0.0) return 0.0;
    return std::abs(first) * 2.0 / n_phase / offset;
}

/// Monte-Carlo fringe visibility when each arm's QWP angle is drawn as
/// nominal +- Gaussian(std delta_phi) per shot. Averages the port-1
/// fringe over draws and returns the contrast of the mean curve.
/// Deterministic for a fixed seed.
inline double qwp_jitter_visibility(const MzConfig& cfg, double delta_phi, int n_mc,
                                    std::uint64_t seed, int n_phase = 16) {
    if (!cfg.with_qwps)
        throw std::invalid_argument("qwp_jitter_visibility: requires with_qwps");
    if (!(delta_phi >= 0.0))
        throw std::invalid_argument("qwp_jitter_visibility: delta_phi must be non-negative");
    if (n_mc < 1)
        throw std::invalid_argument("qwp_jitter_visibility: n_mc must be positive");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, delta_phi > 0.0 ? delta_phi : 1.0);

    std::vector<double> mean(n_phase, 0.0);
    MzConfig draw = cfg;
    for (int mc = 0; mc < n_mc; ++mc) {
        draw.qwp_angle_upper = cfg.qwp_angle_upper + (delta_phi > 0.0 ? gauss(rng) : 0.0);
        draw.qwp_angle_lower = cfg.qwp_angle_lower + (delta_phi > 0.0 ? gauss(rng) : 0.0);
        const PathState arms = detail::mz_arms(draw);
        for (int j = 0; j < n_phase; ++j) {
            double p1, p2;
            detail::mz_combine(arms, 2.0 * pi * j / n_phase, cfg.envelope_overlap, p1, p2);
            mean[j] += p1;
        }
    }

    double offset = 0.0;
    complex first{};
    for (int j = 0; j < n_phase; ++j) {
        const double v = mean[j] / n_mc;
        offset += v;
        first += v * std::polar(1.0, -2.0 * pi * j / n_phase);
    }
    offset /= n_phase;
    if (offset <= 0.0) return 0.0;
    return std::abs(first) * 2.0 / n_phase / offset;
}

/// Angular-momentum / rotation-angle uncertainty gate for a which-path
/// marker: holds when delta_L * delta_phi >= hbar / 2. A marker plate
/// whose angular momentum is known to better than hbar must have a
/// rotation angle uncertain by more than half a radian.
inline bool angular_uncertainty_product(double delta_l, double delta_phi) {
    if (!(delta_l >= 0.0) || !(delta_phi >= 0.0))
        throw std::invalid_argument(
            "angular_uncertainty_product: uncertainties must be non-negative");
    return delta_l * delta_phi >= hbar / 2.0;
}

/// Sagnac configuration: triangular loop (splitter S, mirrors M1, M2)
/// traversed clockwise and counterclockwise, with an optional QWP pair
/// at +45 and -45 degrees inside the loop.
struct SagnacConfig {
    double rotation_phase = 0.0;  ///< CW-CCW phase from loop rotation (radians)
    bool with_qwps = false;
    JonesVector input = jones::linear(0.0);

    void validate() const {
        if (!input.is_normalized())
            throw std::invalid_argument("SagnacConfig: input state must be normalized");
    }
};

/// Probability at the observation port of the Sagnac loop. The clockwise
/// branch is reflected twice at S, the counterclockwise branch
/// transmitted twice, a built-in pi offset that darkens the observation
/// port at zero rotation; the rotation phase then gives
/// P = sin^2(rotation_phase / 2). Each branch passes both loop mirrors
/// (handedness flipped twice) and, when enabled, both QWPs in opposite
/// order; the +-45 degree pair commutes, so both branches reach the port
/// in the same polarization state and the null survives.
inline double sagnac_output(const SagnacConfig& cfg) {
    cfg.validate();
    const Beamsplitter bs = beamsplitter();
    const JonesMatrix m = jones::mirror();
    const JonesMatrix qa = jones::qwp(pi / 4);
    const JonesMatrix qb = jones::qwp(-pi / 4);

    // Around the loop: clockwise enters by reflection and passes
    // QWP_A -> M1 -> M2 -> QWP_B; counterclockwise enters by transmission
    // and passes QWP_B -> M2 -> M1 -> QWP_A.
    const JonesVector pol_cw =
        cfg.with_qwps ? (qb * (m * (m * (qa * cfg.input)))) : (m * (m * cfg.input));
    const JonesVector pol_ccw =
        cfg.with_qwps ? (qa * (m * (m * (qb * cfg.input)))) : (m * (m * cfg.input));

    // Back at S each branch splits once more: towards the observation
    // port (clockwise by a second reflection, counterclockwise by a
    // second transmission) or back towards the source.
    const PathState state{{
        Branch{"cw-observation", bs.r * bs.r, cfg.rotation_phase, pol_cw},
        Branch{"cw-source", bs.r * bs.t, cfg.rotation_phase, pol_cw},
        Branch{"ccw-observation", bs.t * bs.t, 0.0, pol_ccw},
        Branch{"ccw-source", bs.t * bs.r, 0.0, pol_ccw},
    }};
    state.validate(1e-9);

    const JonesVector out = state.branches[0].weight() * state.branches[0].pol +
                            state.branches[2].weight() * state.branches[2].pol;
    return out.norm_sq();
}

}  // namespace whichpath::interferometer
