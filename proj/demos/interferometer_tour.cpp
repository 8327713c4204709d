// Tours the two-beam interferometers: Mach-Zehnder fringes and their
// collapse when counter-rotated quarter-wave plates tag the arms, the
// dark observation port of the rotating loop, and the wavepacket scales
// that set how much path mismatch the fringes survive.

#include <cstdio>

#include "whichpath/constants.hpp"
#include "whichpath/interferometer.hpp"
#include "whichpath/jones.hpp"

using namespace whichpath;

int main() {
    std::printf("Mach-Zehnder output vs phase difference\n");
    std::printf("   phase        port1     port2\n");
    for (int j = 0; j <= 8; ++j) {
        interferometer::MzConfig cfg;
        cfg.phase_diff = 2.0 * pi * j / 8.0;
        const auto out = interferometer::mz_output(cfg);
        std::printf("  %5.3f rad    %6.4f    %6.4f\n", cfg.phase_diff, out.p1,
                    out.p2);
    }

    interferometer::MzConfig matched;
    matched.with_qwps = true;
    matched.qwp_angle_upper = pi / 4.0;
    matched.qwp_angle_lower = pi / 4.0;
    interferometer::MzConfig crossed = matched;
    crossed.qwp_angle_lower = -pi / 4.0;
    std::printf("\nfringe visibility, matched plates (+45/+45): %.6f\n",
                interferometer::fringe_visibility(matched));
    std::printf("fringe visibility, crossed plates (+45/-45): %.6f"
                "  (arms carry opposite spin)\n",
                interferometer::fringe_visibility(crossed));

    const double lambda = 0.5;
    std::printf("\nmirror jitter (lambda = %g um, 20000 trials per point)\n",
                lambda);
    std::printf("   sigma_x      measured   exp(-2 k^2 s^2)\n");
    for (double factor : {0.0, 1.0, 3.0}) {
        const double sigma = factor * lambda / (4.0 * pi);
        const double k = 2.0 * pi / lambda;
        const double vis = interferometer::mirror_jitter_visibility(
            interferometer::MzConfig{}, sigma, lambda, 20000, 2026);
        std::printf("  %8.5f um   %8.4f   %8.4f\n", sigma, vis,
                    std::exp(-2.0 * k * k * sigma * sigma));
    }

    std::printf("\nrotating loop (counter-propagating paths)\n");
    for (double phase : {0.0, pi / 2.0, pi}) {
        interferometer::SagnacConfig loop;
        loop.rotation_phase = phase;
        std::printf("  rotation phase %5.3f rad -> observation port %.6f\n",
                    phase, interferometer::sagnac_output(loop));
    }

    const auto widths = interferometer::wavepacket_overlap(3.77e15, 3.77e13, 0.0);
    std::printf("\nnarrowband pulse at omega0 = 3.77e15 rad/s, 1%% bandwidth:\n");
    std::printf("  duration %.1f fs, length %.2f um\n", widths.delta_t * 1e15,
                widths.delta_x);
    std::printf("  overlap after a 10 um path mismatch: %.4f\n",
                interferometer::wavepacket_overlap(3.77e15, 3.77e13, 10.0).overlap);
    return 0;
}
