// Acceptance gate: each shipped guarantee is checked end to end and
// prints exactly one PASS/FAIL line. The process exits nonzero if any
// guarantee fails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "whichpath/cli.hpp"
#include "whichpath/constants.hpp"
#include "whichpath/doubleslit.hpp"
#include "whichpath/interferometer.hpp"
#include "whichpath/jones.hpp"
#include "whichpath/scattering.hpp"
#include "whichpath/uncertainty.hpp"

using namespace whichpath;

namespace {

int failures = 0;

void verdict(int index, const char* label, bool ok, const std::string& detail = "") {
    std::printf("%s criterion-%02d %s%s%s\n", ok ? "PASS" : "FAIL", index, label,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

void run_criterion(int index, const char* label, const std::function<bool()>& body) {
    try {
        verdict(index, label, body());
    } catch (const std::exception& e) {
        verdict(index, label, false, std::string("exception: ") + e.what());
    }
}

const doubleslit::SlitGeometry slit_geometry{2.0, 20.0, 0.5, 2000.0};
const scattering::ScatterGeometry scatter_geometry{10.0, 1.0e-39, 0.5, 2000.0};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// 1. Central-fringe swap between the plain slits and the pi-shifted slit:
//    bright center vs exact null, profiles offset by half a fringe period.
bool criterion_1() {
    const jones::JonesVector in = jones::linear(0.0);
    const auto none =
        doubleslit::screen_profile(slit_geometry, doubleslit::SlitInsert::none, in);
    const auto shifted = doubleslit::screen_profile(
        slit_geometry, doubleslit::SlitInsert::pi_shifter, in);
    const int n = static_cast<int>(none.x.size());
    const int center = n / 2;

    const double none_max =
        *std::max_element(none.intensity.begin(), none.intensity.end());
    if (!(none.intensity[center] >= none_max * (1.0 - 1e-12))) return false;
    if (!(shifted.intensity[center] <= 1e-12)) return false;

    // Cross-correlation over non-negative lags; the fringe shift is half a
    // period = lambda L / (2 d), here 100 samples of 0.25 um.
    const double step = none.x[1] - none.x[0];
    const int expected_lag = static_cast<int>(std::lround(
        doubleslit::fringe_spacing(slit_geometry) / 2.0 / step));
    int best_lag = 0;
    double best = -1.0;
    for (int lag = 0; lag <= 2 * expected_lag; ++lag) {
        double sum = 0.0;
        for (int j = 0; j + lag < n; ++j)
            sum += none.intensity[j] * shifted.intensity[j + lag];
        if (sum > best) {
            best = sum;
            best_lag = lag;
        }
    }
    return std::abs(best_lag - expected_lag) <= 1;
}

// 2. Fringe momentum 2 pi hbar / d equals the transverse photon momentum
//    (hbar omega / c) sin theta at the first-order angle sin theta = lambda/d.
bool criterion_2() {
    std::mt19937_64 rng(7101);
    std::uniform_real_distribution<double> width(0.5, 5.0);
    std::uniform_real_distribution<double> ratio(2.0, 50.0);
    std::uniform_real_distribution<double> wavelength(0.2, 2.0);
    std::uniform_real_distribution<double> reach(100.0, 1000.0);
    for (int i = 0; i < 100; ++i) {
        doubleslit::SlitGeometry g{};
        g.slit_width = width(rng);
        g.separation = g.slit_width * ratio(rng);
        g.wavelength = wavelength(rng);
        g.distance = g.separation * reach(rng);
        const double from_module = doubleslit::fringe_momentum(g);
        const double omega = 2.0 * pi * c_um_per_s / g.wavelength;
        const double photon = hbar * omega / c_um_per_s * (g.wavelength / g.separation);
        if (!(std::abs(from_module - photon) <= 1e-12 * std::abs(photon)))
            return false;
    }
    return true;
}

// 3. Half-wave-plate marking at 45 degrees conceals the fringes; a
//    polarizer at 0 or 90 degrees erases the marking and restores full
//    visibility with the expected bright/dark center.
bool criterion_3() {
    const auto profile = doubleslit::screen_profile(
        slit_geometry, doubleslit::SlitInsert::birefringent_hwp,
        jones::linear(pi / 4.0));
    const double half = doubleslit::fringe_spacing(slit_geometry) / 2.0;
    const doubleslit::Window window{-half, half};
    const int center = static_cast<int>(profile.x.size()) / 2;

    if (!(doubleslit::visibility(profile, window) < 1e-9)) return false;

    const auto window_max = [&](const doubleslit::ScreenProfile& p) {
        double best = 0.0;
        for (std::size_t j = 0; j < p.x.size(); ++j)
            if (p.x[j] >= window.lo && p.x[j] <= window.hi)
                best = std::max(best, p.intensity[j]);
        return best;
    };

    const auto erased_0 = doubleslit::apply_eraser(profile, 0.0);
    if (!(doubleslit::visibility(erased_0, window) > 1.0 - 1e-9)) return false;
    if (!(erased_0.intensity[center] >= window_max(erased_0) * (1.0 - 1e-12)))
        return false;

    const auto erased_90 = doubleslit::apply_eraser(profile, pi / 2.0);
    if (!(doubleslit::visibility(erased_90, window) > 1.0 - 1e-9)) return false;
    if (!(erased_90.intensity[center] <= window_max(erased_90) * 1e-12))
        return false;
    return true;
}

// 4. Interferometer complementarity: fringe visibility equals the arm
//    polarization overlap times the wavepacket envelope overlap.
bool criterion_4() {
    std::mt19937_64 rng(7102);
    std::uniform_real_distribution<double> angle(-pi / 2.0, pi / 2.0);
    std::uniform_real_distribution<double> input(0.0, pi);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        interferometer::MzConfig cfg;
        cfg.phase_diff = phase(rng);
        cfg.with_qwps = (i % 2 == 0);
        cfg.qwp_angle_upper = angle(rng);
        cfg.qwp_angle_lower = angle(rng);
        cfg.input = jones::linear(input(rng));
        cfg.envelope_overlap = unit(rng);
        const auto out = interferometer::mz_output(cfg);
        const double expected =
            std::abs(jones::inner_product(out.arm_upper, out.arm_lower)) *
            cfg.envelope_overlap;
        const double vis = interferometer::fringe_visibility(cfg);
        if (!(std::abs(vis - expected) <= 1e-9)) return false;
    }

    interferometer::MzConfig orthogonal;
    orthogonal.with_qwps = true;
    orthogonal.qwp_angle_upper = pi / 4.0;
    orthogonal.qwp_angle_lower = -pi / 4.0;
    orthogonal.input = jones::linear(0.0);
    return interferometer::fringe_visibility(orthogonal) < 1e-9;
}

// 5. Mirror jitter destroys coherence as exp(-2 k^2 sigma^2), verified by
//    Monte Carlo against the closed form at n_mc = 1e5.
bool criterion_5() {
    const interferometer::MzConfig cfg;  // balanced, no plates
    const double lambda = 0.5;
    const double k = 2.0 * pi / lambda;
    const int n_mc = 100000;

    const double at_zero =
        interferometer::mirror_jitter_visibility(cfg, 0.0, lambda, n_mc, 51000);
    if (!(std::abs(at_zero - 1.0) <= 1e-12)) return false;

    const auto margin_for = [&](double sigma_x, double expected) {
        const double s2 = 2.0 * k * sigma_x * 2.0 * k * sigma_x;  // var of phase
        const double var_re =
            0.5 * (1.0 + std::exp(-2.0 * s2)) - std::exp(-s2);
        const double var_im = 0.5 * (1.0 - std::exp(-2.0 * s2));
        return 3.0 * std::sqrt(var_re / n_mc) +
               (var_re + var_im) / n_mc / (2.0 * expected);
    };

    const double sigma_a = lambda / (4.0 * pi);  // phase std-dev 1 rad
    const double expect_a = std::exp(-0.5);
    const double vis_a =
        interferometer::mirror_jitter_visibility(cfg, sigma_a, lambda, n_mc, 51001);
    if (!(std::abs(vis_a - expect_a) <= margin_for(sigma_a, expect_a))) return false;

    const double sigma_b = 3.0 * lambda / (4.0 * pi);  // phase std-dev 3 rad
    const double expect_b = std::exp(-4.5);
    const double vis_b =
        interferometer::mirror_jitter_visibility(cfg, sigma_b, lambda, n_mc, 51002);
    if (!(std::abs(vis_b - expect_b) <= margin_for(sigma_b, expect_b))) return false;
    return vis_b < 0.02;
}

// 6. Sagnac loop: dark observation port at rest (with and without the
//    counter-rotated plate pair), bright at pi, 2 pi periodic.
bool criterion_6() {
    for (bool plates : {false, true}) {
        interferometer::SagnacConfig cfg;
        cfg.with_qwps = plates;

        cfg.rotation_phase = 0.0;
        if (!(interferometer::sagnac_output(cfg) <= 1e-12)) return false;

        cfg.rotation_phase = pi;
        if (!(std::abs(interferometer::sagnac_output(cfg) - 1.0) <= 1e-12))
            return false;

        for (double phase : {0.3, 1.7, 4.0}) {
            cfg.rotation_phase = phase;
            const double base = interferometer::sagnac_output(cfg);
            cfg.rotation_phase = phase + 2.0 * pi;
            if (!(std::abs(interferometer::sagnac_output(cfg) - base) <= 1e-12))
                return false;
        }
    }
    return true;
}

// 7. Two-particle scattering channel structure: the helicity-flipped
//    channel vanishes identically in the forward direction, the fringe
//    period is lambda0 r0 / d, and the channel ratio carries no fringe
//    dependence.
bool criterion_7() {
    const auto& g = scatter_geometry;
    for (double x : {0.0, 37.0, -120.0}) {
        const std::complex<double> a = scattering::scatter_amplitude(
            g, scattering::ScatterChannel::minus, pi / 2.0, x);
        if (a.real() != 0.0 || a.imag() != 0.0) return false;
    }

    const scattering::WhichPathOverlap coherent{1.0, 0.0};
    const auto sweep = scattering::detection_sweep(
        g, scattering::ScatterChannel::plus, coherent, 2001, 250.0);
    const double step = sweep.x[1] - sweep.x[0];
    const double period = g.fringe_period();
    double best_x = 0.0, best_p = -1.0;
    for (std::size_t j = 0; j < sweep.x.size(); ++j) {
        if (sweep.x[j] < period * 0.5 || sweep.x[j] > period * 1.5) continue;
        if (sweep.probability[j] > best_p) {
            best_p = sweep.probability[j];
            best_x = sweep.x[j];
        }
    }
    if (!(std::abs(best_x - period) <= step * 1.0000001)) return false;

    for (int j = 0; j <= 100; ++j) {
        const double x = -200.0 + 4.0 * j;
        if (std::abs(std::cos(scattering::fringe_phase(g, x))) < 1e-3) continue;
        const double theta = scattering::screen_angle(g, x);
        const double p_plus = scattering::detection_probability(
            g, scattering::ScatterChannel::plus, x, coherent);
        const double p_minus = scattering::detection_probability(
            g, scattering::ScatterChannel::minus, x, coherent);
        const double ratio = p_minus / p_plus;
        const double envelope_only = scattering::envelope_ratio(theta);
        if (!(std::abs(ratio - envelope_only) <= 1e-12)) return false;
    }
    return true;
}

// 8. Entanglement wipes out the fringes: visibility equals the marker
//    overlap gamma, and gamma = 1 reproduces the coherent intensity.
bool criterion_8() {
    const auto& g = scatter_geometry;
    const auto channel = scattering::ScatterChannel::plus;

    if (!(scattering::fringe_visibility(g, channel, {0.0, 0.0}) < 1e-12))
        return false;

    for (int j = 0; j <= 400; ++j) {
        const double x = -200.0 + j;
        const double theta = scattering::screen_angle(g, x);
        const double coherent = std::norm(
            scattering::scatter_amplitude(g, channel, theta, x));
        const double from_density =
            scattering::detection_probability(g, channel, x, {1.0, 0.0});
        if (!(std::abs(from_density - coherent) <= 1e-12)) return false;
    }

    for (int tenth = 0; tenth <= 10; ++tenth) {
        const double gamma = tenth / 10.0;
        const double vis =
            scattering::fringe_visibility(g, channel, {gamma, 0.0});
        if (!(std::abs(vis - gamma) <= 1e-12)) return false;
    }
    return true;
}

// 9. Generalized uncertainty inequality on random Hermitian pairs, the
//    Pauli equality case, and the truncated-oscillator ground state.
bool criterion_9() {
    using namespace whichpath::uncertainty;
    std::mt19937_64 rng(7103);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> dims(2, 8);

    const auto random_hermitian = [&](int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = complex(gauss(rng), gauss(rng));
        return HermitianOperator{0.5 * (m + Matrix(m.adjoint()))};
    };
    const auto random_state = [&](int n) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = complex(gauss(rng), gauss(rng));
        return QuantumState{v / v.norm()};
    };

    for (int i = 0; i < 1000; ++i) {
        const int n = dims(rng);
        const UncertaintyCheck u = uncertainty_check(random_hermitian(n),
                                                     random_hermitian(n),
                                                     random_state(n));
        if (!u.holds) return false;
    }

    Matrix sx(2, 2), sy(2, 2);
    sx << complex(0), complex(1), complex(1), complex(0);
    sy << complex(0), complex(0, -1), complex(0, 1), complex(0);
    const UncertaintyCheck pauli =
        uncertainty_check({sx}, {sy}, basis_state(2, 0));
    if (!(std::abs(pauli.lhs - 1.0) <= 1e-10)) return false;
    if (!(std::abs(pauli.rhs - 1.0) <= 1e-10)) return false;

    const int levels = 40;
    const UncertaintyCheck ground = uncertainty_check(
        oscillator_position(levels, hbar), oscillator_momentum(levels, hbar),
        basis_state(levels, 0));
    return std::abs(ground.lhs - hbar / 2.0) <= 1e-8 &&
           std::abs(ground.rhs - hbar / 2.0) <= 1e-8;
}

// 10. Ehrenfest finite difference converges at second order in dt, and
//     the energy-time product holds on random non-stationary instances.
bool criterion_10() {
    using namespace whichpath::uncertainty;

    Matrix sx(2, 2), sz(2, 2);
    sx << complex(0), complex(1), complex(1), complex(0);
    sz << complex(1), complex(0), complex(0), complex(-1);
    Vector moving(2);
    moving << complex(std::cos(pi / 4.0)),
        std::sin(pi / 4.0) * std::polar(1.0, pi / 4.0);
    const QuantumState state{moving};

    const double coarse = ehrenfest_check({sx}, {sz}, state, 1e-3).rel_err;
    const double fine = ehrenfest_check({sx}, {sz}, state, 5e-4).rel_err;
    const double order = coarse / fine;
    if (!(order >= 3.5 && order <= 4.5)) return false;

    std::mt19937_64 rng(7104);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> dims(2, 8);
    const auto random_hermitian = [&](int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = complex(gauss(rng), gauss(rng));
        return HermitianOperator{0.5 * (m + Matrix(m.adjoint()))};
    };
    const auto random_state = [&](int n) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = complex(gauss(rng), gauss(rng));
        return QuantumState{v / v.norm()};
    };

    int accepted = 0;
    while (accepted < 500) {
        const int n = dims(rng);
        const HermitianOperator a = random_hermitian(n);
        const HermitianOperator h = random_hermitian(n);
        const QuantumState s = random_state(n);
        const double rate =
            std::abs(expectation(commutator_c(a, h), s)) / hbar;
        if (!(rate > 1e-6)) continue;
        ++accepted;
        if (!energy_time_check(a, h, s).holds) return false;
    }
    return true;
}

// 11. Wavepacket duration and length for a narrowband near-visible pulse
//     land on the tens-of-femtoseconds / micrometers scale.
bool criterion_11() {
    const auto widths = interferometer::wavepacket_overlap(3.77e15, 3.77e13, 0.0);
    if (!(widths.delta_t >= 15e-15 && widths.delta_t <= 60e-15)) return false;
    return widths.delta_x >= 4.5 && widths.delta_x <= 18.0;
}

// 12. Command-line determinism: identical config and seed give
//     byte-identical CSV and report on consecutive runs.
bool criterion_12() {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "whichpath_acceptance";
    fs::remove_all(base);

    cli::ScenarioConfig slit;
    slit.scenario = "double-slit";
    slit.params = {{"w", 2.0},           {"d", 20.0},        {"lambda", 0.5},
                   {"L", 2000.0},        {"insert", "hwp"},  {"incident_angle", pi / 4.0},
                   {"eraser_sweep", true}, {"sigma_p", 0.05}, {"n_mc", 3000},
                   {"seed", 7}};
    slit.output = (base / "slit").string();
    slit.formats = {"csv", "report"};

    cli::run(slit);
    const std::string profile_a = read_file(base / "slit" / "profile.csv");
    const std::string blur_a = read_file(base / "slit" / "blur.csv");
    const std::string report_a = read_file(base / "slit" / "report.json");
    cli::run(slit);
    if (read_file(base / "slit" / "profile.csv") != profile_a) return false;
    if (read_file(base / "slit" / "blur.csv") != blur_a) return false;
    if (read_file(base / "slit" / "report.json") != report_a) return false;

    cli::ScenarioConfig random_suite;
    random_suite.scenario = "uncertainty";
    random_suite.params = {{"suite", "random"}, {"n", 200}, {"seed", 9}};
    random_suite.output = (base / "uncertainty").string();
    random_suite.formats = {"csv", "report"};

    cli::run(random_suite);
    const std::string instances_a =
        read_file(base / "uncertainty" / "instances.csv");
    const std::string report_b = read_file(base / "uncertainty" / "report.json");
    cli::run(random_suite);
    if (read_file(base / "uncertainty" / "instances.csv") != instances_a)
        return false;
    return read_file(base / "uncertainty" / "report.json") == report_b;
}

}  // namespace

int main() {
    run_criterion(1, "double-slit central fringe swaps under a pi shifter",
                  criterion_1);
    run_criterion(2, "fringe momentum matches the transverse photon momentum",
                  criterion_2);
    run_criterion(3, "path marking conceals fringes and the eraser restores them",
                  criterion_3);
    run_criterion(4, "interferometer visibility equals arm overlap times envelope",
                  criterion_4);
    run_criterion(5, "mirror jitter Monte Carlo matches the Gaussian decoherence law",
                  criterion_5);
    run_criterion(6, "rotating loop port is dark at rest, bright at pi, periodic",
                  criterion_6);
    run_criterion(7, "scattering channels keep the forward null and fringe period",
                  criterion_7);
    run_criterion(8, "scatterer entanglement sets visibility equal to the overlap",
                  criterion_8);
    run_criterion(9, "uncertainty inequality holds and saturates where predicted",
                  criterion_9);
    run_criterion(10, "mean-value evolution converges and energy-time product holds",
                  criterion_10);
    run_criterion(11, "wavepacket duration and length land on the expected scale",
                  criterion_11);
    run_criterion(12, "identical config and seed reproduce identical artifacts",
                  criterion_12);

    if (failures == 0) {
        std::printf("all 12 criteria passed\n");
        return 0;
    }
    std::printf("%d of 12 criteria failed\n", failures);
    return 1;
}
