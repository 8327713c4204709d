// doubleslit.hpp
//
// Fraunhofer model of a two-slit aperture with an optional phase or
// polarization insert in one slit, evaluated on a far screen.
//
// The aperture consists of two slits of width w centred at x = -d/2 and
// x = +d/2; the insert occupies the slit at +d/2. In terms of the
// spatial frequency sigma = x/(lambda L) the far-field amplitude per
// unit incident field is
//
//     none:        2 w sinc(w sigma) cos(pi d sigma)      (both components)
//     pi shifter:  i 2 w sinc(w sigma) sin(pi d sigma)    (both components)
//     half-wave:   cosine form in Ex, sine form in Ey
//
// with sinc(s) = sin(pi s)/(pi s). Lengths are micrometres.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "whichpath/constants.hpp"
#include "whichpath/jones.hpp"

namespace whichpath::doubleslit {

using complex = std::complex<double>;
using jones::JonesVector;

/// Slit-pair geometry. Distances in micrometres.
struct SlitGeometry {
    double slit_width;   ///< w, width of each slit
    double separation;   ///< d, centre-to-centre spacing
    double wavelength;   ///< lambda0, vacuum wavelength
    double distance;     ///< L, aperture-to-screen distance

    /// Throws std::invalid_argument unless w > 0, d > w, lambda0 > 0 and
    /// the screen is in the far field (L >= 100 d).
    void validate() const {
        if (!(slit_width > 0.0))
            throw std::invalid_argument("SlitGeometry: slit_width must be positive");
        if (!(separation > slit_width))
            throw std::invalid_argument("SlitGeometry: separation must exceed slit_width");
        if (!(wavelength > 0.0))
            throw std::invalid_argument("SlitGeometry: wavelength must be positive");
        if (!(distance >= 100.0 * separation))
            throw std::invalid_argument(
                "SlitGeometry: screen distance must be at least 100x the slit separation");
    }
};

/// What sits in the slit at +d/2.
enum class SlitInsert {
    none,              ///< empty slit
    pi_shifter,        ///< thin plate adding a pi phase for both polarizations
    birefringent_hwp,  ///< half-slit half-wave plate: flips Ey sign only
};

/// Spacing between neighbouring fringe crests on the screen, lambda L / d.
inline double fringe_spacing(const SlitGeometry& g) {
    g.validate();
    return g.wavelength * g.distance / g.separation;
}

/// Transverse momentum content of the fringe pattern, 2 pi hbar / d,
/// in units of hbar per micrometre. Equals (hbar omega / c) sin(theta)
/// at the first-order diffraction angle sin(theta) = lambda / d.
inline double fringe_momentum(const SlitGeometry& g) {
    g.validate();
    return 2.0 * pi * hbar / g.separation;
}

/// sin(pi s)/(pi s) with the removable singularity filled in.
inline double sinc(double s) {
    if (s == 0.0) return 1.0;
    return std::sin(pi * s) / (pi * s);
}

/// Far-field amplitude factors for the x and y field components at
/// spatial frequency sigma = x/(lambda L).
struct FieldAmplitude {
    complex ax;
    complex ay;
};

namespace detail {

inline void require_propagating(const SlitGeometry& g, double sigma_x) {
    if (std::abs(g.wavelength * sigma_x) > 1.0)
        throw std::domain_error(
            "far_field_amplitude: |lambda * sigma_x| > 1 corresponds to an "
            "evanescent angle");
}

// Per-slit sign of the insert acting on each field component. The slit
// at -d/2 is always open; the insert at +d/2 multiplies its term by
// e^{i pi} = -1 for the affected components.
inline void insert_signs(SlitInsert insert, double& sx, double& sy) {
    switch (insert) {
        case SlitInsert::none: sx = 1.0; sy = 1.0; return;
        case SlitInsert::pi_shifter: sx = -1.0; sy = -1.0; return;
        case SlitInsert::birefringent_hwp: sx = 1.0; sy = -1.0; return;
    }
    throw std::invalid_argument("unknown SlitInsert");
}

}  // namespace detail

/// Ideal (undisplaced) far-field amplitude. Throws std::domain_error for
/// evanescent spatial frequencies |lambda sigma_x| > 1.
inline FieldAmplitude far_field_amplitude(const SlitGeometry& g, double sigma_x,
                                          SlitInsert insert) {
    g.validate();
    detail::require_propagating(g, sigma_x);

    const double env = 2.0 * g.slit_width * sinc(g.slit_width * sigma_x);
    const double c = env * std::cos(pi * g.separation * sigma_x);
    const double s = env * std::sin(pi * g.separation * sigma_x);

    switch (insert) {
        case SlitInsert::none: return {c, c};
        case SlitInsert::pi_shifter: return {complex(0.0, s), complex(0.0, s)};
        case SlitInsert::birefringent_hwp: return {c, complex(0.0, s)};
    }
    throw std::invalid_argument("unknown SlitInsert");
}

/// Far-field amplitude with each slit displaced along x: shift1 moves the
/// slit at -d/2, shift2 the slit at +d/2. A displacement delta multiplies
/// that slit's term by e^{-i 2 pi sigma delta}. Reduces to
/// far_field_amplitude at zero displacements.
inline FieldAmplitude far_field_amplitude_displaced(const SlitGeometry& g,
                                                    double sigma_x,
                                                    SlitInsert insert,
                                                    double shift1, double shift2) {
    g.validate();
    detail::require_propagating(g, sigma_x);

    const double env = g.slit_width * sinc(g.slit_width * sigma_x);
    const complex t1 =
        std::polar(env, 2.0 * pi * sigma_x * (g.separation / 2.0 - shift1));
    const complex t2 =
        std::polar(env, 2.0 * pi * sigma_x * (-g.separation / 2.0 - shift2));

    double sx, sy;
    detail::insert_signs(insert, sx, sy);
    return {t1 + sx * t2, t1 + sy * t2};
}

/// Sampled intensity and field along the screen.
/// Invariant: intensity[i] == |ex[i]|^2 + |ey[i]|^2.
struct ScreenProfile {
    SlitGeometry geometry;
    SlitInsert insert;
    std::vector<double> x;          ///< sample positions (um)
    std::vector<complex> ex;
    std::vector<complex> ey;
    std::vector<double> intensity;
};

namespace detail {

inline std::vector<double> screen_grid(const SlitGeometry& g, int n, double x_max) {
    if (n < 2)
        throw std::invalid_argument("screen_profile: need at least two samples");
    if (!(x_max > 0.0))
        throw std::invalid_argument("screen_profile: x_max must be positive");
    if (x_max / g.distance > 0.2)
        throw std::invalid_argument(
            "screen_profile: x_max/L > 0.2 leaves the paraxial regime");

    // Symmetric grid; for odd n the centre sample sits exactly at x = 0.
    const double step = 2.0 * x_max / (n - 1);
    std::vector<double> xs(n);
    for (int j = 0; j < n; ++j) xs[j] = step * (j - n / 2);
    return xs;
}

}  // namespace detail

/// Default number of screen samples. Chosen so that with the default
/// window x_max = 5 lambda L / d every fringe crest and null lands
/// exactly on the sample grid (2000 intervals over 10 fringe periods).
inline constexpr int default_samples = 2001;

/// Half-width of the default observation window.
inline double default_x_max(const SlitGeometry& g) {
    return 5.0 * fringe_spacing(g);
}

/// Intensity and polarization profile on the screen for a normalized
/// incident Jones vector. x_max <= 0 selects the default window.
inline ScreenProfile screen_profile(const SlitGeometry& g, SlitInsert insert,
                                    const JonesVector& incident,
                                    int n = default_samples, double x_max = 0.0) {
    g.validate();
    if (!incident.is_normalized())
        throw std::invalid_argument("screen_profile: incident state must be normalized");
    if (x_max <= 0.0) x_max = default_x_max(g);

    ScreenProfile p{g, insert, detail::screen_grid(g, n, x_max), {}, {}, {}};
    p.ex.reserve(p.x.size());
    p.ey.reserve(p.x.size());
    p.intensity.reserve(p.x.size());

    const double inv_ll = 1.0 / (g.wavelength * g.distance);
    for (double x : p.x) {
        const FieldAmplitude a = far_field_amplitude(g, x * inv_ll, insert);
        const complex ex = incident.ex * a.ax;
        const complex ey = incident.ey * a.ay;
        p.ex.push_back(ex);
        p.ey.push_back(ey);
        p.intensity.push_back(std::norm(ex) + std::norm(ey));
    }
    return p;
}

/// Pass every sample through an ideal linear polarizer at `angle`.
/// Never increases the intensity of any sample.
inline ScreenProfile apply_eraser(const ScreenProfile& in, double angle) {
    const jones::JonesMatrix pol = jones::polarizer(angle);
    ScreenProfile out = in;
    for (std::size_t i = 0; i < in.x.size(); ++i) {
        const JonesVector v = pol * JonesVector{in.ex[i], in.ey[i]};
        out.ex[i] = v.ex;
        out.ey[i] = v.ey;
        out.intensity[i] = v.norm_sq();
    }
    return out;
}

/// Normalized polarization state at the sample nearest to x. Throws
/// std::domain_error inside a dark fringe, where the state is undefined.
inline JonesVector polarization_at(const ScreenProfile& p, double x) {
    if (p.x.empty()) throw std::invalid_argument("polarization_at: empty profile");
    if (x < p.x.front() || x > p.x.back())
        throw std::out_of_range("polarization_at: x outside the sampled screen");

    std::size_t best = 0;
    double best_d = std::abs(p.x[0] - x);
    for (std::size_t i = 1; i < p.x.size(); ++i) {
        const double dd = std::abs(p.x[i] - x);
        if (dd < best_d) { best = i; best_d = dd; }
    }

    double peak = 0.0;
    for (double v : p.intensity) peak = std::max(peak, v);
    if (p.intensity[best] <= 1e-12 * peak)
        throw std::domain_error("polarization_at: polarization undefined in a dark fringe");

    return JonesVector{p.ex[best], p.ey[best]}.normalized();
}

/// Observation window [lo, hi] on the screen.
struct Window {
    double lo;
    double hi;
};

/// Fringe visibility (Imax - Imin)/(Imax + Imin) over the window,
/// measured on the envelope-normalized intensity I(x)/sinc^2(w sigma) so
/// that the single-slit diffraction envelope does not masquerade as
/// fringe contrast. Samples within 1e-6 of a sinc null are skipped.
/// Returns 0 for an all-dark window.
inline double visibility(const ScreenProfile& p, const Window& w) {
    if (!(w.lo < w.hi))
        throw std::invalid_argument("visibility: window must satisfy lo < hi");
    if (w.lo < p.x.front() || w.hi > p.x.back())
        throw std::out_of_range("visibility: window outside the sampled screen");
    if (w.hi - w.lo < fringe_spacing(p.geometry) * (1.0 - 1e-9))
        throw std::invalid_argument(
            "visibility: window must span at least one full fringe period");

    const double inv_ll = 1.0 / (p.geometry.wavelength * p.geometry.distance);
    double imax = 0.0, imin = std::numeric_limits<double>::infinity();
    bool seen = false;
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        if (p.x[i] < w.lo || p.x[i] > w.hi) continue;
        const double env = sinc(p.geometry.slit_width * p.x[i] * inv_ll);
        if (std::abs(env) < 1e-6) continue;  // diffraction null: 0/0
        const double val = p.intensity[i] / (env * env);
        imax = std::max(imax, val);
        imin = std::min(imin, val);
        seen = true;
    }
    if (!seen)
        throw std::invalid_argument("visibility: no usable samples in window");
    if (imax <= 0.0) return 0.0;
    return (imax - imin) / (imax + imin);
}

/// Predicted fringe attenuation when each slit plate jitters with
/// standard deviation sigma_plate: exp(-4 pi^2 sigma_plate^2 sigma_x^2).
inline double plate_jitter_attenuation(double sigma_plate, double sigma_x) {
    const double a = 2.0 * pi * sigma_plate * sigma_x;
    return std::exp(-a * a);
}

/// Mean screen profile under plate jitter, plus its fringe visibility.
struct BlurResult {
    ScreenProfile profile;   ///< mean intensity; ex/ey hold RMS amplitudes
    double visibility;       ///< contrast over the first off-centre fringe
};

/// Monte-Carlo average of the screen intensity over independent Gaussian
/// displacements (std sigma_plate) of each slit plate. Every draw shifts
/// each slit's far-field term by e^{-i 2 pi sigma delta}. The central
/// fringe is immune to the jitter (both phases vanish at sigma_x = 0),
/// so the returned visibility is measured over the first off-centre
/// fringe period [lambda L/(2d), 3 lambda L/(2d)], whose contrast decays
/// as exp(-4 pi^2 sigma_plate^2 sigma_x^2) near sigma_x = 1/d.
/// Deterministic for a fixed seed.
inline BlurResult bohr_blur(const SlitGeometry& g, SlitInsert insert,
                            const JonesVector& incident, double sigma_plate,
                            int n_mc, std::uint64_t seed,
                            int n = default_samples, double x_max = 0.0) {
    g.validate();
    if (!incident.is_normalized())
        throw std::invalid_argument("bohr_blur: incident state must be normalized");
    if (!(sigma_plate >= 0.0))
        throw std::invalid_argument("bohr_blur: sigma_plate must be non-negative");
    if (n_mc < 1) throw std::invalid_argument("bohr_blur: n_mc must be positive");
    if (x_max <= 0.0) x_max = default_x_max(g);

    const std::vector<double> xs = detail::screen_grid(g, n, x_max);
    const std::size_t ns = xs.size();
    std::vector<double> ix(ns, 0.0), iy(ns, 0.0);

    double sx_sign, sy_sign;
    detail::insert_signs(insert, sx_sign, sy_sign);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma_plate > 0.0 ? sigma_plate : 1.0);

    const double inv_ll = 1.0 / (g.wavelength * g.distance);
    const double half_d = g.separation / 2.0;
    const double dstep = 2.0 * pi * (xs[1] - xs[0]) * inv_ll;  // phase step per sample

    for (int mc = 0; mc < n_mc; ++mc) {
        const double d1 = sigma_plate > 0.0 ? gauss(rng) : 0.0;
        const double d2 = sigma_plate > 0.0 ? gauss(rng) : 0.0;
        const double c1 = half_d - d1;    // slit at -d/2 displaced by d1
        const double c2 = -half_d - d2;   // slit at +d/2 displaced by d2

        // Unit phasors e^{i 2 pi sigma c} advanced by recurrence along the
        // uniform grid, re-anchored periodically to curb rounding drift.
        const complex s1 = std::polar(1.0, dstep * c1);
        const complex s2 = std::polar(1.0, dstep * c2);
        complex t1, t2;
        for (std::size_t j = 0; j < ns; ++j) {
            if (j % 64 == 0) {
                const double ph = 2.0 * pi * xs[j] * inv_ll;
                t1 = std::polar(1.0, ph * c1);
                t2 = std::polar(1.0, ph * c2);
            } else {
                t1 *= s1;
                t2 *= s2;
            }
            const double env = g.slit_width * sinc(g.slit_width * xs[j] * inv_ll);
            ix[j] += std::norm(env * (t1 + sx_sign * t2));
            iy[j] += std::norm(env * (t1 + sy_sign * t2));
        }
    }

    const double wx = std::norm(incident.ex) / n_mc;
    const double wy = std::norm(incident.ey) / n_mc;

    ScreenProfile p{g, insert, xs, {}, {}, {}};
    p.ex.reserve(ns);
    p.ey.reserve(ns);
    p.intensity.reserve(ns);
    for (std::size_t j = 0; j < ns; ++j) {
        // An incoherent mean has no single field phase; store RMS
        // amplitudes so that intensity == |ex|^2 + |ey|^2 still holds.
        const double mx = wx * ix[j], my = wy * iy[j];
        p.ex.push_back(std::sqrt(mx));
        p.ey.push_back(std::sqrt(my));
        p.intensity.push_back(mx + my);
    }

    const double period = fringe_spacing(g);
    const double vis = visibility(p, Window{period / 2.0, 3.0 * period / 2.0});
    return {std::move(p), vis};
}

}  // namespace whichpath::doubleslit
