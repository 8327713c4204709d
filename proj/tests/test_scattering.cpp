// Two-particle scattering checks. The density-matrix detection
// probability is compared against the closed two-amplitude form, the
// visibility against the overlap magnitude, and the linearized screen
// phases against an exact point-source computation with true 1/r
// distances.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "whichpath/jones.hpp"
#include "whichpath/scattering.hpp"

using namespace whichpath;
using namespace whichpath::scattering;
using Catch::Approx;

namespace {

using cd = std::complex<double>;

const ScatterGeometry geom{10.0, 1.0e-39, 0.5, 2000.0};  // d, alpha, lambda0, r0 (um)

// Closed form of the detection probability, assembled independently from
// the two single-particle amplitudes.
double closed_probability(const ScatterGeometry& g, ScatterChannel c, double x,
                          const WhichPathOverlap& ov) {
    const double theta = screen_angle(g, x);
    const cd a1 = particle_amplitude(g, c, theta, x, 1);
    const cd a2 = particle_amplitude(g, c, theta, x, 2);
    return std::norm(a1) + std::norm(a2) +
           2.0 * ov.gamma * std::real(std::polar(1.0, ov.phase) * a1 * std::conj(a2));
}

}  // namespace

TEST_CASE("scattering geometry and overlap validation") {
    CHECK_NOTHROW(geom.validate());
    CHECK_NOTHROW(ScatterGeometry{1.0, 1.0, 0.5, 100.0}.validate());

    CHECK_THROWS_AS((ScatterGeometry{0.0, 1.0, 0.5, 2000.0}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((ScatterGeometry{10.0, 1.0, 0.0, 2000.0}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((ScatterGeometry{10.0, 1.0, 0.5, 999.0}.validate()),
                    std::invalid_argument);

    CHECK_THROWS_AS((WhichPathOverlap{-0.1, 0.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((WhichPathOverlap{1.1, 0.0}.validate()), std::invalid_argument);
    CHECK_NOTHROW((WhichPathOverlap{0.5, 42.0}.validate()));

    CHECK_THROWS_AS(channel_envelope(ScatterChannel::plus, -0.1), std::domain_error);
    CHECK_THROWS_AS(channel_envelope(ScatterChannel::plus, pi + 0.1), std::domain_error);
    CHECK_THROWS_AS(screen_angle(geom, geom.r0 * 1.01), std::domain_error);
}

TEST_CASE("single-particle amplitudes sum to the two-path fringe amplitude") {
    std::mt19937_64 rng(8001);
    std::uniform_real_distribution<double> angle(0.0, pi);
    std::uniform_real_distribution<double> coord(-200.0, 200.0);

    for (int i = 0; i < 200; ++i) {
        const double theta = angle(rng);
        const double x = coord(rng);
        const cd a1 = particle_amplitude(geom, ScatterChannel::plus, theta, x, 1);
        const cd a2 = particle_amplitude(geom, ScatterChannel::plus, theta, x, 2);

        // Equal magnitudes, opposite propagation phases.
        CHECK(std::abs(a1) == Approx(std::abs(a2)).margin(1e-15));
        CHECK(std::abs(a1 - std::conj(a2)) < 1e-15);

        const cd sum = scatter_amplitude(geom, ScatterChannel::plus, theta, x);
        CHECK(std::abs(sum - (a1 + a2)) < 1e-15);
        // The sum is real: (sin theta + 1) cos(eta).
        CHECK(std::abs(std::imag(sum)) < 1e-15);
        const double expected =
            (std::sin(theta) + 1.0) * std::cos(pi * geom.d * x / (geom.lambda0 * geom.r0));
        CHECK(std::real(sum) == Approx(expected).margin(1e-13));
    }
}

TEST_CASE("fringe amplitude center values, zeros, and period") {
    // Forward direction: preserving channel factor (1+1) cos 0 = 2, the
    // reversing channel is forbidden outright.
    CHECK(std::real(scatter_amplitude(geom, ScatterChannel::plus, pi / 2, 0.0)) == 2.0);
    CHECK(std::abs(scatter_amplitude(geom, ScatterChannel::minus, pi / 2, 0.0)) == 0.0);
    CHECK(channel_envelope(ScatterChannel::minus, pi / 2) == 0.0);

    // First dark fringe at x = lambda0 r0 / (2 d), for both channels.
    const double x_dark = geom.lambda0 * geom.r0 / (2.0 * geom.d);
    CHECK(std::abs(scatter_amplitude(geom, ScatterChannel::plus, pi / 2, x_dark)) < 1e-12);
    CHECK(std::abs(scatter_amplitude(geom, ScatterChannel::minus, 1.0, x_dark)) < 1e-12);

    // One intensity period flips the amplitude sign and restores the
    // intensity.
    const double period = geom.fringe_period();
    CHECK(period == Approx(100.0).margin(1e-12));
    for (double x : {-130.0, -55.0, 10.0, 42.0, 77.0}) {
        const cd a = scatter_amplitude(geom, ScatterChannel::plus, pi / 2, x);
        const cd b = scatter_amplitude(geom, ScatterChannel::plus, pi / 2, x + period);
        CHECK(std::abs(a + b) < 1e-12);
        CHECK(std::norm(a) == Approx(std::norm(b)).margin(1e-12));
    }
}

TEST_CASE("path phase difference matches the screen fringe argument") {
    CHECK(path_phase_difference(geom, pi / 2) == Approx(0.0).margin(1e-12));
    CHECK(path_phase_difference(geom, 0.0) ==
          Approx(geom.wavenumber() * geom.d).epsilon(1e-15));
    CHECK(path_phase_difference(geom, pi) ==
          Approx(-geom.wavenumber() * geom.d).epsilon(1e-15));

    // Exact screen relation: cos(acos(x/r0)) = x/r0, so the path phase at
    // the screen angle is exactly twice the fringe phase.
    for (double x : {0.5, 2.0, 8.0, 20.0, 50.0}) {
        const double via_angle = path_phase_difference(geom, screen_angle(geom, x));
        CHECK(via_angle == Approx(2.0 * fringe_phase(geom, x)).epsilon(1e-12));
    }

    // Small-angle series: theta = pi/2 - u has cos(theta) = sin(u) =
    // u - u^3/6 + ..., so the deviation from the linearized screen
    // argument is bounded by k0 d u^3 / 6 (plus the rounding of the
    // angle itself, which propagates scaled by k0 d).
    for (int k = 1; k <= 10; ++k) {
        const double u = 1e-3 * k;
        const double exact = path_phase_difference(geom, pi / 2 - u);
        const double linear = geom.wavenumber() * geom.d * u;
        const double bound = geom.wavenumber() * geom.d * u * u * u / 6.0;
        const double slack = geom.wavenumber() * geom.d * 1e-15;
        CHECK(std::abs(exact - linear) <= bound * (1.0 + 1e-9) + slack);
    }
}

TEST_CASE("density-matrix detection probability matches the closed form") {
    std::mt19937_64 rng(8002);
    std::uniform_real_distribution<double> coord(-220.0, 220.0);

    for (ScatterChannel c : {ScatterChannel::plus, ScatterChannel::minus}) {
        for (double gamma : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            for (double phase : {0.0, 1.1, -2.2}) {
                const WhichPathOverlap ov{gamma, phase};
                for (int i = 0; i < 40; ++i) {
                    const double x = coord(rng);
                    const double p = detection_probability(geom, c, x, ov);
                    CHECK(p >= 0.0);
                    CHECK(p == Approx(closed_probability(geom, c, x, ov)).margin(1e-12));
                }
            }
        }
    }
}

TEST_CASE("full overlap reproduces the coherent intensity, zero overlap flattens it") {
    const WhichPathOverlap coherent{1.0, 0.0};
    const WhichPathOverlap orthogonal{0.0, 0.0};

    for (double x = -200.0; x <= 200.0; x += 12.5) {
        const double theta = screen_angle(geom, x);
        // gamma = 1, phase 0: exactly the squared coherent sum.
        const double p1 = detection_probability(geom, ScatterChannel::plus, x, coherent);
        CHECK(p1 == Approx(std::norm(scatter_amplitude(geom, ScatterChannel::plus, theta, x)))
                        .margin(1e-12));

        // gamma = 0: flat apart from the angular envelope.
        const double p0 = detection_probability(geom, ScatterChannel::plus, x, orthogonal);
        const double env = 0.5 * channel_envelope(ScatterChannel::plus, theta);
        CHECK(p0 == Approx(2.0 * env * env).margin(1e-12));
    }
}

TEST_CASE("path density matrix carries the overlap in its off-diagonal") {
    for (double gamma : {0.0, 0.3, 0.8, 1.0}) {
        for (double phase : {0.0, 0.9, -2.5}) {
            const auto rho = path_density({gamma, phase});

            CHECK(std::abs(rho[0][0] - cd(0.5, 0.0)) < 1e-15);
            CHECK(std::abs(rho[1][1] - cd(0.5, 0.0)) < 1e-15);
            CHECK(std::abs(rho[0][1] - 0.5 * std::polar(gamma, -phase)) < 1e-14);
            CHECK(std::abs(rho[1][0] - std::conj(rho[0][1])) < 1e-15);

            // Purity interpolates between maximally mixed and pure.
            const double purity =
                std::real(rho[0][0] * rho[0][0] + rho[0][1] * rho[1][0] +
                          rho[1][0] * rho[0][1] + rho[1][1] * rho[1][1]);
            CHECK(purity == Approx(0.5 * (1.0 + gamma * gamma)).margin(1e-12));
        }
    }
}

TEST_CASE("fringe visibility equals the overlap magnitude") {
    for (ScatterChannel c : {ScatterChannel::plus, ScatterChannel::minus}) {
        for (int k = 0; k <= 10; ++k) {
            const double gamma = 0.1 * k;
            for (double phase : {0.0, 2.0, -2.6, 7.9, -pi}) {
                const double v = fringe_visibility(geom, c, {gamma, phase});
                CHECK(v == Approx(gamma).margin(1e-12));
            }
        }
    }

    // A wavelength comparable to the separation pushes the fringe period
    // off the screen.
    const ScatterGeometry coarse{1.0, 1.0, 0.9, 150.0};
    CHECK_THROWS_AS(fringe_visibility(coarse, ScatterChannel::plus, {1.0, 0.0}),
                    std::domain_error);
}

TEST_CASE("channel intensity ratio is the squared envelope ratio, independent of x") {
    std::mt19937_64 rng(8003);
    std::uniform_real_distribution<double> coord(-300.0, 300.0);
    std::uniform_real_distribution<double> unit(0.05, 1.0);

    for (int i = 0; i < 100; ++i) {
        const double x = coord(rng);
        const WhichPathOverlap ov{unit(rng), 0.4};
        const double p_minus = detection_probability(geom, ScatterChannel::minus, x, ov);
        const double p_plus = detection_probability(geom, ScatterChannel::plus, x, ov);
        if (p_plus <= 0.0) continue;
        const double expected = envelope_ratio(screen_angle(geom, x));
        CHECK(p_minus / p_plus == Approx(expected).epsilon(1e-10));
    }

    CHECK(envelope_ratio(pi / 2) == 0.0);
}

TEST_CASE("angular momentum bookkeeping across the helicity channels") {
    CHECK(angular_momentum_transfer(ScatterChannel::plus) == 0.0);
    CHECK(angular_momentum_transfer(ScatterChannel::minus) == 2.0 * hbar);

    // Cross-check against the polarization spin accounting: incident
    // right-circular, outgoing right- or left-circular.
    const double spin_in = jones::spin_z(jones::rcp());
    CHECK(spin_in - jones::spin_z(jones::rcp()) ==
          Approx(angular_momentum_transfer(ScatterChannel::plus)).margin(1e-12));
    CHECK(spin_in - jones::spin_z(jones::lcp()) ==
          Approx(angular_momentum_transfer(ScatterChannel::minus)).margin(1e-12));
}

TEST_CASE("linearized screen model tracks the exact point-source sum") {
    // Exact construction: spherical waves from (+-d/2, 0, 0) to the
    // screen point (x, 0, sqrt(r0^2 - x^2)), true 1/r falloff, no phase
    // linearization. The common angular envelope is factored off both
    // sides, isolating the distance approximations.
    const WhichPathOverlap coherent{1.0, 0.0};
    const double k0 = geom.wavenumber();

    double peak = 0.0;
    double worst = 0.0;
    for (double x = -250.0; x <= 250.0; x += 1.0) {
        const double z = std::sqrt(geom.r0 * geom.r0 - x * x);
        const double r1 = std::hypot(x - geom.d / 2.0, z);
        const double r2 = std::hypot(x + geom.d / 2.0, z);
        const cd exact = std::polar(geom.r0 / r1, k0 * (r1 - geom.r0)) +
                         std::polar(geom.r0 / r2, k0 * (r2 - geom.r0));
        const double env = 0.5 * channel_envelope(ScatterChannel::plus,
                                                  screen_angle(geom, x));
        const double i_exact = env * env * std::norm(exact);
        const double i_model =
            detection_probability(geom, ScatterChannel::plus, x, coherent);
        peak = std::max(peak, i_model);
        worst = std::max(worst, std::abs(i_exact - i_model));
    }
    CHECK(peak > 3.0);
    CHECK(worst / peak < geom.d / geom.r0);
}

TEST_CASE("detection sweep grid is symmetric and consistent") {
    const WhichPathOverlap ov{0.7, 0.3};
    const DetectionSweep sweep =
        detection_sweep(geom, ScatterChannel::plus, ov, 5, 200.0);

    REQUIRE(sweep.x.size() == 5);
    REQUIRE(sweep.probability.size() == 5);
    CHECK(sweep.x.front() == -200.0);
    CHECK(sweep.x.back() == 200.0);
    CHECK(sweep.x[2] == 0.0);
    for (std::size_t j = 0; j < sweep.x.size(); ++j)
        CHECK(sweep.probability[j] ==
              detection_probability(geom, ScatterChannel::plus, sweep.x[j], ov));

    CHECK_THROWS_AS(detection_sweep(geom, ScatterChannel::plus, ov, 1, 200.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(detection_sweep(geom, ScatterChannel::plus, ov, 5, geom.r0),
                    std::domain_error);
}

TEST_CASE("dimensional prefactor scales as alpha k0^2 over r0") {
    const cd base = scattering_prefactor(geom);
    CHECK(std::abs(base) > 0.0);

    ScatterGeometry farther = geom;
    farther.r0 *= 2.0;
    CHECK(std::abs(scattering_prefactor(farther)) ==
          Approx(std::abs(base) / 2.0).epsilon(1e-12));

    ScatterGeometry redder = geom;
    redder.lambda0 *= 2.0;
    CHECK(std::abs(scattering_prefactor(redder)) ==
          Approx(std::abs(base) / 4.0).epsilon(1e-12));

    ScatterGeometry stronger = geom;
    stronger.alpha *= 3.0;
    CHECK(std::abs(scattering_prefactor(stronger)) ==
          Approx(3.0 * std::abs(base)).epsilon(1e-12));
}
