// cli.hpp
//
// Scenario runner behind the command-line tool: config validation with
// named violations, deterministic execution, CSV/SVG artifact emission,
// and a machine-readable JSON report that can be re-ingested to
// reproduce the run.
//
// Exit-code contract (see exit_code_for): 0 success, 2 validation
// failure (bad scenario, bad or missing parameters, unusable output
// path), 3 internal consistency failure.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "whichpath/constants.hpp"
#include "whichpath/doubleslit.hpp"
#include "whichpath/interferometer.hpp"
#include "whichpath/io.hpp"
#include "whichpath/jones.hpp"
#include "whichpath/scattering.hpp"
#include "whichpath/uncertainty.hpp"
#include "whichpath/version.hpp"

namespace whichpath::cli {

using json = nlohmann::ordered_json;

/// One schema violation: the offending key and what is wrong with it.
struct Violation {
    std::string key;
    std::string message;
};

/// Invalid configuration; maps to exit code 2.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(std::vector<Violation> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<Violation>& violations() const { return violations_; }

  private:
    static std::string join(const std::vector<Violation>& violations) {
        std::string msg = "configuration invalid:";
        for (const Violation& v : violations) msg += "\n  " + v.key + ": " + v.message;
        return msg;
    }
    std::vector<Violation> violations_;
};

/// A computed invariant failed after validation passed; maps to exit
/// code 3.
class ConsistencyError : public std::logic_error {
  public:
    explicit ConsistencyError(const std::string& msg) : std::logic_error(msg) {}
};

/// Map an escaped exception to the process exit code: consistency and
/// other logic failures are 3, validation and I/O failures 2.
inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const std::logic_error*>(&e)) return 3;
    if (dynamic_cast<const std::runtime_error*>(&e)) return 2;
    return 3;
}

/// A requested run: scenario name, flat parameter object, output
/// directory, and artifact formats.
struct ScenarioConfig {
    std::string scenario;
    json params = json::object();
    std::string output = "whichpath_out";
    std::vector<std::string> formats = {"csv", "report"};
};

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "double-slit", "mach-zehnder", "sagnac", "scattering", "uncertainty"};
    return names;
}

namespace detail {

/// Typed parameter extraction: records each resolved value (given or
/// default) and accumulates violations instead of throwing, so validate()
/// can report everything at once.
class Params {
  public:
    Params(const json& given, std::vector<Violation>& violations)
        : given_(given), violations_(&violations) {}

    json resolved = json::object();

    void fail(const std::string& key, const std::string& message) {
        violations_->push_back({key, message});
    }

    double number(const std::string& key, std::optional<double> fallback) {
        if (!given_.contains(key)) return missing(key, fallback);
        const json& v = given_.at(key);
        if (!v.is_number()) {
            fail(key, "must be a number");
            return fallback.value_or(0.0);
        }
        resolved[key] = v;
        return v.get<double>();
    }

    long long integer(const std::string& key, std::optional<long long> fallback) {
        if (!given_.contains(key)) return missing(key, fallback);
        const json& v = given_.at(key);
        if (!v.is_number_integer()) {
            fail(key, "must be an integer");
            return fallback.value_or(0);
        }
        resolved[key] = v;
        return v.get<long long>();
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!given_.contains(key)) return missing(key, std::optional<bool>(fallback));
        const json& v = given_.at(key);
        if (!v.is_boolean()) {
            fail(key, "must be true or false");
            return fallback;
        }
        resolved[key] = v;
        return v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed) {
        std::string value = fallback;
        if (!given_.contains(key)) {
            resolved[key] = fallback;
        } else if (!given_.at(key).is_string()) {
            fail(key, "must be a string");
            return fallback;
        } else {
            value = given_.at(key).get<std::string>();
            resolved[key] = value;
        }
        for (const std::string& a : allowed)
            if (value == a) return value;
        std::string msg = "must be one of:";
        for (const std::string& a : allowed) msg += " " + a;
        fail(key, msg);
        return fallback;
    }

    /// "none" or an angle in radians.
    std::optional<double> angle_or_none(const std::string& key) {
        if (!given_.contains(key)) {
            resolved[key] = "none";
            return std::nullopt;
        }
        const json& v = given_.at(key);
        if (v.is_string() && v.get<std::string>() == "none") {
            resolved[key] = "none";
            return std::nullopt;
        }
        if (v.is_number()) {
            resolved[key] = v;
            return v.get<double>();
        }
        fail(key, "must be \"none\" or an angle in radians");
        return std::nullopt;
    }

    std::uint64_t seed() {
        if (!given_.contains("seed")) {
            resolved["seed"] = 0;
            return 0;
        }
        const json& v = given_.at("seed");
        const bool ok = v.is_number_unsigned() ||
                        (v.is_number_integer() && v.get<long long>() >= 0);
        if (!ok) {
            fail("seed", "must be a non-negative integer");
            resolved["seed"] = 0;
            return 0;
        }
        const std::uint64_t value = v.get<std::uint64_t>();
        resolved["seed"] = value;
        return value;
    }

    /// True if a violation has already been recorded against this key;
    /// suppresses cascading domain complaints about absent values.
    bool tainted(const std::string& key) const {
        for (const Violation& v : *violations_)
            if (v.key == key) return true;
        return false;
    }

    void require(bool ok, const std::string& key, const std::string& message) {
        if (!ok && !tainted(key)) fail(key, message);
    }

    void reject_unknown(const std::vector<std::string>& known) {
        for (const auto& item : given_.items()) {
            bool ok = false;
            for (const std::string& k : known)
                if (item.key() == k) ok = true;
            if (!ok) fail(item.key(), "unknown parameter for this scenario");
        }
    }

  private:
    template <typename T>
    T missing(const std::string& key, std::optional<T> fallback) {
        if (!fallback) {
            fail(key, "required parameter is missing");
            return T{};
        }
        resolved[key] = *fallback;
        return *fallback;
    }

    const json& given_;
    std::vector<Violation>* violations_;
};

inline void add_check(json& checks, const std::string& invariant, bool passed,
                      double lhs, double rhs, double tolerance) {
    checks.push_back({{"invariant", invariant},
                      {"passed", passed},
                      {"lhs", lhs},
                      {"rhs", rhs},
                      {"tolerance", tolerance}});
}

}  // namespace detail

/// Throws ConsistencyError if any entry of report["checks"] failed.
inline void ensure_checks_pass(const json& report) {
    if (!report.contains("checks")) return;
    for (const json& check : report.at("checks"))
        if (!check.at("passed").get<bool>())
            throw ConsistencyError("internal consistency check failed: " +
                                   check.at("invariant").get<std::string>());
}

/// Seed precedence for the front end: an explicit "seed" parameter
/// (already merged from --seed or the config file) wins; otherwise the
/// environment value (WHICHPATH_SEED) is used when present; otherwise 0.
inline std::uint64_t resolve_seed(const json& params, const char* env_value) {
    if (params.contains("seed")) {
        const json& v = params.at("seed");
        if (v.is_number_unsigned() ||
            (v.is_number_integer() && v.get<long long>() >= 0))
            return v.get<std::uint64_t>();
        return 0;  // invalid; validate() will name it
    }
    if (env_value != nullptr && *env_value != '\0') {
        char* end = nullptr;
        const unsigned long long parsed = std::strtoull(env_value, &end, 10);
        if (end == env_value || *end != '\0')
            throw ValidationError(std::vector<Violation>{
                {"WHICHPATH_SEED", "must be a non-negative integer"}});
        return parsed;
    }
    return 0;
}

namespace detail {

// ---------------------------------------------------------------- double-slit

struct DoubleSlitPlan {
    doubleslit::SlitGeometry geometry;
    doubleslit::SlitInsert insert;
    double incident_angle;
    std::optional<double> eraser;
    bool eraser_sweep;
    int samples;
    double x_max;  // <= 0: module default
    double sigma_p;
    int n_mc;
    std::uint64_t seed;
};

inline DoubleSlitPlan resolve_double_slit(Params& p) {
    DoubleSlitPlan plan{};
    plan.geometry.slit_width = p.number("w", std::nullopt);
    plan.geometry.separation = p.number("d", std::nullopt);
    plan.geometry.wavelength = p.number("lambda", std::nullopt);
    plan.geometry.distance = p.number("L", std::nullopt);

    const std::string insert = p.text("insert", "none", {"none", "pi", "hwp"});
    plan.insert = insert == "pi"    ? doubleslit::SlitInsert::pi_shifter
                  : insert == "hwp" ? doubleslit::SlitInsert::birefringent_hwp
                                    : doubleslit::SlitInsert::none;
    plan.incident_angle = p.number("incident_angle", 0.0);
    plan.eraser = p.angle_or_none("eraser");
    plan.eraser_sweep = p.boolean("eraser_sweep", false);
    plan.samples = static_cast<int>(p.integer("samples", doubleslit::default_samples));
    plan.x_max = p.number("x_max", 0.0);
    plan.sigma_p = p.number("sigma_p", 0.0);
    plan.n_mc = static_cast<int>(p.integer("n_mc", 20000));
    plan.seed = p.seed();

    p.reject_unknown({"w", "d", "lambda", "L", "insert", "incident_angle", "eraser",
                      "eraser_sweep", "samples", "x_max", "sigma_p", "n_mc", "seed"});

    p.require(plan.geometry.slit_width > 0.0, "w", "must be positive");
    p.require(plan.geometry.separation > plan.geometry.slit_width, "d",
              "must exceed the slit width w");
    p.require(plan.geometry.wavelength > 0.0, "lambda", "must be positive");
    p.require(plan.geometry.distance >= 100.0 * plan.geometry.separation, "L",
              "far field requires L >= 100 d");
    p.require(plan.samples >= 9, "samples", "need at least 9 samples");
    p.require(!(plan.x_max > 0.0 && plan.x_max / plan.geometry.distance > 0.2),
              "x_max", "x_max/L > 0.2 leaves the paraxial regime");
    p.require(!(plan.x_max > 0.0 &&
                plan.x_max < doubleslit::fringe_spacing(plan.geometry)),
              "x_max", "window must cover at least one fringe period");
    p.require(plan.sigma_p >= 0.0, "sigma_p", "must be non-negative");
    p.require(plan.n_mc >= 1, "n_mc", "must be positive");
    return plan;
}

/// Closed-form fringe visibility of the envelope-normalized profile for
/// a linear incident state, optional slit insert, and optional eraser:
/// the x/y field components carry cos/(i sin) fringe factors with real
/// coefficient vectors, so I = P cos^2 + Q sin^2 and V = |P-Q|/(P+Q).
inline double closed_form_visibility(doubleslit::SlitInsert insert, double chi,
                                     std::optional<double> eraser) {
    double pc[2] = {0.0, 0.0};  // cos-fringe coefficients (x, y)
    double qc[2] = {0.0, 0.0};  // sin-fringe coefficients
    const double cx = std::cos(chi), cy = std::sin(chi);
    switch (insert) {
        case doubleslit::SlitInsert::none: pc[0] = cx; pc[1] = cy; break;
        case doubleslit::SlitInsert::pi_shifter: qc[0] = cx; qc[1] = cy; break;
        case doubleslit::SlitInsert::birefringent_hwp: pc[0] = cx; qc[1] = cy; break;
    }
    if (eraser) {
        const double c = std::cos(*eraser), s = std::sin(*eraser);
        const double m[2][2] = {{c * c, c * s}, {c * s, s * s}};
        const double p0 = pc[0], p1 = pc[1], q0 = qc[0], q1 = qc[1];
        pc[0] = m[0][0] * p0 + m[0][1] * p1;
        pc[1] = m[1][0] * p0 + m[1][1] * p1;
        qc[0] = m[0][0] * q0 + m[0][1] * q1;
        qc[1] = m[1][0] * q0 + m[1][1] * q1;
    }
    const double p_sum = pc[0] * pc[0] + pc[1] * pc[1];
    const double q_sum = qc[0] * qc[0] + qc[1] * qc[1];
    if (p_sum + q_sum <= 0.0) return 0.0;
    return std::abs(p_sum - q_sum) / (p_sum + q_sum);
}

/// Visibility of the configured slit system measured on a crest-aligned
/// internal grid (independent of the artifact sampling, so the
/// closed-form comparison stays exact).
inline double measured_visibility(const DoubleSlitPlan& plan,
                                  std::optional<double> eraser) {
    const jones::JonesVector incident = jones::linear(plan.incident_angle);
    doubleslit::ScreenProfile profile = doubleslit::screen_profile(
        plan.geometry, plan.insert, incident, doubleslit::default_samples, 0.0);
    if (eraser) profile = doubleslit::apply_eraser(profile, *eraser);
    const double half = doubleslit::fringe_spacing(plan.geometry) / 2.0;
    return doubleslit::visibility(profile, {-half, half});
}

inline void run_double_slit(const DoubleSlitPlan& plan, json& scalars, json& checks,
                            std::vector<std::pair<std::string, std::string>>& files,
                            bool want_csv, bool want_svg) {
    const jones::JonesVector incident = jones::linear(plan.incident_angle);

    doubleslit::ScreenProfile profile = doubleslit::screen_profile(
        plan.geometry, plan.insert, incident, plan.samples, plan.x_max);
    if (plan.eraser) profile = doubleslit::apply_eraser(profile, *plan.eraser);

    const double vis = measured_visibility(plan, plan.eraser);
    const double predicted =
        closed_form_visibility(plan.insert, plan.incident_angle, plan.eraser);

    scalars["fringe_spacing"] = doubleslit::fringe_spacing(plan.geometry);
    scalars["fringe_momentum"] = doubleslit::fringe_momentum(plan.geometry);
    scalars["visibility"] = vis;
    scalars["predicted_visibility"] = predicted;

    {
        const doubleslit::FieldAmplitude a =
            doubleslit::far_field_amplitude(plan.geometry, 0.0, plan.insert);
        jones::JonesVector centre{incident.ex * a.ax, incident.ey * a.ay};
        if (plan.eraser) centre = jones::polarizer(*plan.eraser) * centre;
        scalars["center_intensity"] = centre.norm_sq();
    }

    add_check(checks, "slit-visibility-matches-closed-form",
              std::abs(vis - predicted) <= 1e-9, vis, predicted, 1e-9);
    double min_intensity = 0.0;
    for (double v : profile.intensity) min_intensity = std::min(min_intensity, v);
    add_check(checks, "slit-intensity-nonnegative", min_intensity >= 0.0,
              min_intensity, 0.0, 0.0);

    if (plan.eraser_sweep) {
        const double v_none = measured_visibility(plan, std::nullopt);
        const double v_0 = measured_visibility(plan, 0.0);
        const double v_90 = measured_visibility(plan, pi / 2.0);
        scalars["visibility_no_eraser"] = v_none;
        scalars["visibility_eraser_0"] = v_0;
        scalars["visibility_eraser_90"] = v_90;
        const double p_none =
            closed_form_visibility(plan.insert, plan.incident_angle, std::nullopt);
        const double p_0 = closed_form_visibility(plan.insert, plan.incident_angle, 0.0);
        const double p_90 =
            closed_form_visibility(plan.insert, plan.incident_angle, pi / 2.0);
        add_check(checks, "slit-sweep-no-eraser-matches-closed-form",
                  std::abs(v_none - p_none) <= 1e-9, v_none, p_none, 1e-9);
        add_check(checks, "slit-sweep-eraser-0-matches-closed-form",
                  std::abs(v_0 - p_0) <= 1e-9, v_0, p_0, 1e-9);
        add_check(checks, "slit-sweep-eraser-90-matches-closed-form",
                  std::abs(v_90 - p_90) <= 1e-9, v_90, p_90, 1e-9);
    }

    if (plan.sigma_p > 0.0) {
        const doubleslit::BlurResult blur =
            doubleslit::bohr_blur(plan.geometry, plan.insert, incident, plan.sigma_p,
                                  plan.n_mc, plan.seed, plan.samples, plan.x_max);
        scalars["blur_visibility"] = blur.visibility;
        scalars["blur_attenuation_at_fringe"] = doubleslit::plate_jitter_attenuation(
            plan.sigma_p, 1.0 / plan.geometry.separation);
        if (want_csv)
            files.emplace_back("blur.csv",
                               io::profile_csv(blur.profile.x, blur.profile.intensity,
                                               blur.profile.ex, blur.profile.ey));
    }

    if (want_csv)
        files.emplace_back("profile.csv", io::profile_csv(profile.x, profile.intensity,
                                                          profile.ex, profile.ey));
    if (want_svg)
        files.emplace_back("profile.svg",
                           io::line_svg(profile.x, profile.intensity,
                                        "screen intensity", "x (um)", "intensity"));
}

// --------------------------------------------------------------- mach-zehnder

struct MzPlan {
    interferometer::MzConfig cfg;
    double omega0;
    double delta_omega;
    double path_mismatch;
    double sigma_x;
    double lambda;
    int n_mc;
    int n_phase;
    std::uint64_t seed;
};

inline MzPlan resolve_mach_zehnder(Params& p) {
    MzPlan plan{};
    plan.cfg.phase_diff = p.number("phase", 0.0);
    plan.cfg.with_qwps = p.boolean("with_qwps", false);
    plan.cfg.qwp_angle_upper = p.number("qwp_upper", pi / 4.0);
    plan.cfg.qwp_angle_lower = p.number("qwp_lower", pi / 4.0);
    plan.cfg.input = jones::linear(p.number("input_angle", 0.0));
    plan.omega0 = p.number("omega0", 3.77e15);
    plan.delta_omega = p.number("delta_omega", plan.omega0 * 0.01);
    plan.path_mismatch = p.number("path_mismatch", 0.0);
    plan.sigma_x = p.number("sigma_x", 0.0);
    plan.lambda = p.number("lambda", 0.5);
    plan.n_mc = static_cast<int>(p.integer("n_mc", 20000));
    plan.n_phase = static_cast<int>(p.integer("n_phase", 64));
    plan.seed = p.seed();

    p.reject_unknown({"phase", "with_qwps", "qwp_upper", "qwp_lower", "input_angle",
                      "omega0", "delta_omega", "path_mismatch", "sigma_x", "lambda",
                      "n_mc", "n_phase", "seed"});

    p.require(plan.omega0 > 0.0, "omega0", "must be positive");
    p.require(plan.delta_omega > 0.0 && plan.delta_omega < plan.omega0,
              "delta_omega", "must lie in (0, omega0)");
    p.require(plan.path_mismatch >= 0.0, "path_mismatch", "must be non-negative");
    p.require(plan.sigma_x >= 0.0, "sigma_x", "must be non-negative");
    p.require(plan.lambda > 0.0, "lambda", "must be positive");
    p.require(plan.n_mc >= 1, "n_mc", "must be positive");
    p.require(plan.n_phase >= 4, "n_phase", "need at least 4 phase samples");
    return plan;
}

inline void run_mach_zehnder(const MzPlan& plan, json& scalars, json& checks,
                             std::vector<std::pair<std::string, std::string>>& files,
                             bool want_csv, bool want_svg) {
    const interferometer::WavepacketWidths packet = interferometer::wavepacket_overlap(
        plan.omega0, plan.delta_omega, plan.path_mismatch);

    interferometer::MzConfig cfg = plan.cfg;
    cfg.envelope_overlap = packet.overlap;

    const interferometer::MzResult out = interferometer::mz_output(cfg);
    const double vis = interferometer::fringe_visibility(cfg, plan.n_phase);
    const double expected_vis =
        std::abs(jones::inner_product(out.arm_upper, out.arm_lower)) * packet.overlap;

    scalars["p1"] = out.p1;
    scalars["p2"] = out.p2;
    scalars["visibility"] = vis;
    scalars["predicted_visibility"] = expected_vis;
    scalars["envelope_overlap"] = packet.overlap;
    scalars["delta_t_s"] = packet.delta_t;
    scalars["delta_x_um"] = packet.delta_x;
    scalars["handedness_mismatch"] = out.handedness_mismatch;

    add_check(checks, "mz-ports-sum-to-one", std::abs(out.p1 + out.p2 - 1.0) <= 1e-9,
              out.p1 + out.p2, 1.0, 1e-9);
    add_check(checks, "mz-visibility-is-arm-overlap-times-envelope",
              std::abs(vis - expected_vis) <= 1e-9, vis, expected_vis, 1e-9);

    if (plan.sigma_x > 0.0) {
        const double jitter_vis = interferometer::mirror_jitter_visibility(
            cfg, plan.sigma_x, plan.lambda, plan.n_mc, plan.seed, plan.n_phase);
        const double k = 2.0 * pi / plan.lambda;
        scalars["jitter_visibility"] = jitter_vis;
        scalars["jitter_predicted"] =
            std::exp(-2.0 * k * k * plan.sigma_x * plan.sigma_x) * expected_vis;
    }

    std::vector<std::vector<double>> rows;
    std::vector<double> phases, p1s;
    for (int j = 0; j <= plan.n_phase; ++j) {
        interferometer::MzConfig swept = cfg;
        swept.phase_diff = 2.0 * pi * j / plan.n_phase;
        const interferometer::MzResult r = interferometer::mz_output(swept);
        rows.push_back({swept.phase_diff, r.p1, r.p2});
        phases.push_back(swept.phase_diff);
        p1s.push_back(r.p1);
    }
    if (want_csv)
        files.emplace_back("sweep.csv", io::table_csv({"phase", "p1", "p2"}, rows));
    if (want_svg)
        files.emplace_back("sweep.svg",
                           io::line_svg(phases, p1s, "port 1 fringe",
                                        "phase (rad)", "probability"));
}

// --------------------------------------------------------------------- sagnac

struct SagnacPlan {
    interferometer::SagnacConfig cfg;
};

inline SagnacPlan resolve_sagnac(Params& p) {
    SagnacPlan plan{};
    plan.cfg.rotation_phase = p.number("rotation_phase", 0.0);
    plan.cfg.with_qwps = p.boolean("with_qwps", false);
    plan.cfg.input = jones::linear(p.number("input_angle", 0.0));
    p.seed();
    p.reject_unknown({"rotation_phase", "with_qwps", "input_angle", "seed"});
    return plan;
}

inline void run_sagnac(const SagnacPlan& plan, json& scalars, json& checks,
                       std::vector<std::pair<std::string, std::string>>& files,
                       bool want_csv, bool want_svg) {
    const double probability = interferometer::sagnac_output(plan.cfg);
    const double half = std::sin(plan.cfg.rotation_phase / 2.0);
    const double predicted = half * half;

    scalars["probability"] = probability;
    scalars["predicted_probability"] = predicted;

    add_check(checks, "sagnac-matches-half-angle-law",
              std::abs(probability - predicted) <= 1e-9, probability, predicted, 1e-9);

    std::vector<std::vector<double>> rows;
    std::vector<double> phases, probs;
    const int n = 128;
    for (int j = 0; j <= n; ++j) {
        interferometer::SagnacConfig swept = plan.cfg;
        swept.rotation_phase = 2.0 * pi * j / n;
        const double pj = interferometer::sagnac_output(swept);
        rows.push_back({swept.rotation_phase, pj});
        phases.push_back(swept.rotation_phase);
        probs.push_back(pj);
    }
    if (want_csv)
        files.emplace_back("sweep.csv",
                           io::table_csv({"rotation_phase", "probability"}, rows));
    if (want_svg)
        files.emplace_back("sweep.svg",
                           io::line_svg(phases, probs, "observation port",
                                        "rotation phase (rad)", "probability"));
}

// ----------------------------------------------------------------- scattering

struct ScatterPlan {
    scattering::ScatterGeometry geometry;
    scattering::ScatterChannel channel;
    scattering::WhichPathOverlap overlap;
    int samples;
    double x_max;
};

inline ScatterPlan resolve_scattering(Params& p) {
    ScatterPlan plan{};
    plan.geometry.d = p.number("d", std::nullopt);
    plan.geometry.alpha = p.number("alpha", 1.0e-39);
    plan.geometry.lambda0 = p.number("lambda0", std::nullopt);
    plan.geometry.r0 = p.number("r0", std::nullopt);
    const std::string channel = p.text("channel", "plus", {"plus", "minus"});
    plan.channel = channel == "minus" ? scattering::ScatterChannel::minus
                                      : scattering::ScatterChannel::plus;
    plan.overlap.gamma = p.number("gamma", 1.0);
    plan.overlap.phase = p.number("overlap_phase", 0.0);
    plan.samples = static_cast<int>(p.integer("samples", 501));
    plan.x_max = p.number("x_max", 0.0);
    p.seed();
    p.reject_unknown({"d", "alpha", "lambda0", "r0", "channel", "gamma",
                      "overlap_phase", "samples", "x_max", "seed"});

    p.require(plan.geometry.d > 0.0, "d", "must be positive");
    p.require(plan.geometry.lambda0 > 0.0, "lambda0", "must be positive");
    if (plan.geometry.d > 0.0 && plan.geometry.lambda0 > 0.0) {
        p.require(plan.geometry.r0 >= 100.0 * plan.geometry.d, "r0",
                  "far field requires r0 >= 100 d");
        p.require(plan.geometry.d >= 2.0 * plan.geometry.lambda0, "d",
                  "fringe period needs d >= 2 lambda0 to fit the screen");
    }
    p.require(plan.overlap.gamma >= 0.0 && plan.overlap.gamma <= 1.0, "gamma",
              "must lie in [0, 1]");
    p.require(plan.samples >= 9, "samples", "need at least 9 samples");

    if (plan.x_max <= 0.0) {
        plan.x_max = std::min(2.5 * plan.geometry.fringe_period(),
                              plan.geometry.r0 / 2.0);
    } else if (!(plan.x_max < plan.geometry.r0)) {
        p.fail("x_max", "must stay below r0");
    }
    return plan;
}

inline void run_scattering(const ScatterPlan& plan, json& scalars, json& checks,
                           std::vector<std::pair<std::string, std::string>>& files,
                           bool want_csv, bool want_svg) {
    const scattering::DetectionSweep sweep = scattering::detection_sweep(
        plan.geometry, plan.channel, plan.overlap, plan.samples, plan.x_max);

    const double vis =
        scattering::fringe_visibility(plan.geometry, plan.channel, plan.overlap);

    scalars["visibility"] = vis;
    scalars["gamma"] = plan.overlap.gamma;
    scalars["fringe_period"] = plan.geometry.fringe_period();
    scalars["angular_momentum_transfer"] =
        scattering::angular_momentum_transfer(plan.channel);

    add_check(checks, "scattering-visibility-equals-overlap",
              std::abs(vis - plan.overlap.gamma) <= 1e-12, vis, plan.overlap.gamma,
              1e-12);
    double min_probability = 0.0;
    for (double v : sweep.probability) min_probability = std::min(min_probability, v);
    add_check(checks, "scattering-probability-nonnegative", min_probability >= 0.0,
              min_probability, 0.0, 0.0);

    if (want_csv) {
        std::vector<io::complex> ex, ey;
        ex.reserve(sweep.x.size());
        ey.assign(sweep.x.size(), io::complex{0.0, 0.0});
        for (double x : sweep.x)
            ex.push_back(scattering::scatter_amplitude(
                plan.geometry, plan.channel, scattering::screen_angle(plan.geometry, x),
                x));
        files.emplace_back("profile.csv",
                           io::profile_csv(sweep.x, sweep.probability, ex, ey));
    }
    if (want_svg)
        files.emplace_back("profile.svg",
                           io::line_svg(sweep.x, sweep.probability,
                                        "detection probability", "x (um)",
                                        "probability"));
}

// ---------------------------------------------------------------- uncertainty

struct UncertaintyPlan {
    std::string suite;
    int n;
    int dim_min;
    int dim_max;
    int n_levels;
    double hbar_value;
    std::uint64_t seed;
};

inline UncertaintyPlan resolve_uncertainty(Params& p) {
    UncertaintyPlan plan{};
    plan.suite = p.text("suite", "random", {"random", "pauli", "oscillator"});
    plan.n = static_cast<int>(p.integer("n", 1000));
    plan.dim_min = static_cast<int>(p.integer("dim_min", 2));
    plan.dim_max = static_cast<int>(p.integer("dim_max", 8));
    plan.n_levels = static_cast<int>(p.integer("n_levels", 40));
    plan.hbar_value = p.number("hbar", 1.0);
    plan.seed = p.seed();
    p.reject_unknown({"suite", "n", "dim_min", "dim_max", "n_levels", "hbar", "seed"});

    p.require(plan.n >= 1, "n", "must be positive");
    p.require(plan.dim_min >= 2, "dim_min", "must be at least 2");
    p.require(plan.dim_max >= plan.dim_min, "dim_max", "must be >= dim_min");
    p.require(plan.dim_max <= 16, "dim_max", "must be at most 16");
    p.require(plan.n_levels >= 3, "n_levels", "must be at least 3");
    p.require(plan.hbar_value > 0.0, "hbar", "must be positive");
    return plan;
}

inline void run_uncertainty(const UncertaintyPlan& plan, json& scalars, json& checks,
                            std::vector<std::pair<std::string, std::string>>& files,
                            bool want_csv, bool want_svg) {
    using namespace whichpath::uncertainty;

    std::vector<std::vector<double>> rows;
    if (plan.suite == "random") {
        std::mt19937_64 rng(plan.seed);
        std::uniform_int_distribution<int> dims(plan.dim_min, plan.dim_max);
        std::normal_distribution<double> gauss(0.0, 1.0);

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

        int holds_count = 0;
        double min_margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < plan.n; ++i) {
            const int n = dims(rng);
            const UncertaintyCheck u =
                uncertainty_check(random_hermitian(n), random_hermitian(n),
                                  random_state(n));
            if (u.holds) ++holds_count;
            min_margin = std::min(min_margin, u.lhs - u.rhs);
            rows.push_back({static_cast<double>(i), static_cast<double>(n), u.lhs,
                            u.rhs, u.lhs - u.rhs, u.holds ? 1.0 : 0.0});
        }
        scalars["instances"] = plan.n;
        scalars["holds_count"] = holds_count;
        scalars["min_margin"] = min_margin;
        add_check(checks, "uncertainty-inequality-holds-all",
                  holds_count == plan.n, static_cast<double>(holds_count),
                  static_cast<double>(plan.n), 0.0);
    } else if (plan.suite == "pauli") {
        Matrix sx(2, 2), sy(2, 2);
        sx << complex(0), complex(1), complex(1), complex(0);
        sy << complex(0), complex(0, -1), complex(0, 1), complex(0);
        const UncertaintyCheck u =
            uncertainty_check({sx}, {sy}, basis_state(2, 0));
        scalars["lhs"] = u.lhs;
        scalars["rhs"] = u.rhs;
        rows.push_back({0.0, 2.0, u.lhs, u.rhs, u.lhs - u.rhs, u.holds ? 1.0 : 0.0});
        add_check(checks, "pauli-equality-saturates",
                  std::abs(u.lhs - 1.0) <= 1e-10 && std::abs(u.rhs - 1.0) <= 1e-10,
                  u.lhs, u.rhs, 1e-10);
    } else {  // oscillator
        const UncertaintyCheck u = uncertainty_check(
            oscillator_position(plan.n_levels, plan.hbar_value),
            oscillator_momentum(plan.n_levels, plan.hbar_value),
            basis_state(plan.n_levels, 0));
        scalars["lhs"] = u.lhs;
        scalars["rhs"] = u.rhs;
        rows.push_back({0.0, static_cast<double>(plan.n_levels), u.lhs, u.rhs,
                        u.lhs - u.rhs, u.holds ? 1.0 : 0.0});
        add_check(checks, "oscillator-ground-state-minimum-uncertainty",
                  std::abs(u.lhs - plan.hbar_value / 2.0) <= 1e-8 &&
                      std::abs(u.rhs - plan.hbar_value / 2.0) <= 1e-8,
                  u.lhs, plan.hbar_value / 2.0, 1e-8);
    }

    if (want_csv)
        files.emplace_back(
            "instances.csv",
            io::table_csv({"case", "dim", "lhs", "rhs", "margin", "holds"}, rows));
    if (want_svg && rows.size() >= 2) {
        std::vector<double> idx, margin;
        for (const auto& r : rows) {
            idx.push_back(r[0]);
            margin.push_back(r[4]);
        }
        files.emplace_back("margins.svg",
                           io::line_svg(idx, margin, "inequality margin per case",
                                        "case", "lhs - rhs"));
    }
}

}  // namespace detail

/// Pure schema validation: empty iff run(config) would get past
/// validation. Violations are data, not errors.
inline std::vector<Violation> validate(const ScenarioConfig& config) {
    std::vector<Violation> violations;

    bool known = false;
    for (const std::string& name : scenario_names())
        if (config.scenario == name) known = true;
    if (!known) {
        violations.push_back({"scenario", "unknown scenario \"" + config.scenario +
                                              "\"; expected one of: double-slit, "
                                              "mach-zehnder, sagnac, scattering, "
                                              "uncertainty"});
        return violations;
    }

    if (!config.params.is_object())
        violations.push_back({"params", "must be a JSON object"});
    if (config.output.empty())
        violations.push_back({"output", "must not be empty"});
    for (const std::string& f : config.formats)
        if (f != "csv" && f != "svg" && f != "report")
            violations.push_back({"formats", "unknown format \"" + f +
                                                 "\"; expected csv, svg, or report"});

    if (config.params.is_object()) {
        detail::Params p(config.params, violations);
        if (config.scenario == "double-slit") detail::resolve_double_slit(p);
        else if (config.scenario == "mach-zehnder") detail::resolve_mach_zehnder(p);
        else if (config.scenario == "sagnac") detail::resolve_sagnac(p);
        else if (config.scenario == "scattering") detail::resolve_scattering(p);
        else detail::resolve_uncertainty(p);
    }
    return violations;
}

/// Execute the configured scenario: runs the module computations,
/// verifies the internal consistency checks, writes the requested
/// artifacts, and returns the report. Throws ValidationError (exit 2) or
/// ConsistencyError (exit 3).
inline json run(const ScenarioConfig& config) {
    std::vector<Violation> violations = validate(config);
    if (!violations.empty()) throw ValidationError(std::move(violations));

    // Re-resolve to capture defaults; validation above guarantees no
    // further violations.
    std::vector<Violation> none;
    detail::Params p(config.params, none);

    const bool want_csv =
        std::find(config.formats.begin(), config.formats.end(), "csv") !=
        config.formats.end();
    const bool want_svg =
        std::find(config.formats.begin(), config.formats.end(), "svg") !=
        config.formats.end();
    const bool want_report =
        std::find(config.formats.begin(), config.formats.end(), "report") !=
        config.formats.end();

    json scalars = json::object();
    json checks = json::array();
    std::vector<std::pair<std::string, std::string>> files;

    if (config.scenario == "double-slit") {
        const auto plan = detail::resolve_double_slit(p);
        detail::run_double_slit(plan, scalars, checks, files, want_csv, want_svg);
    } else if (config.scenario == "mach-zehnder") {
        const auto plan = detail::resolve_mach_zehnder(p);
        detail::run_mach_zehnder(plan, scalars, checks, files, want_csv, want_svg);
    } else if (config.scenario == "sagnac") {
        const auto plan = detail::resolve_sagnac(p);
        detail::run_sagnac(plan, scalars, checks, files, want_csv, want_svg);
    } else if (config.scenario == "scattering") {
        const auto plan = detail::resolve_scattering(p);
        detail::run_scattering(plan, scalars, checks, files, want_csv, want_svg);
    } else {
        const auto plan = detail::resolve_uncertainty(p);
        detail::run_uncertainty(plan, scalars, checks, files, want_csv, want_svg);
    }

    json report = json::object();
    report["tool"] = "whichpath";
    report["version"] = version;
    report["scenario"] = config.scenario;
    report["seed"] = p.resolved["seed"];
    report["params"] = p.resolved;
    report["scalars"] = scalars;
    report["checks"] = checks;
    json artifact_names = json::array();
    for (const auto& [name, content] : files) artifact_names.push_back(name);
    if (want_report) artifact_names.push_back("report.json");
    report["artifacts"] = artifact_names;
    report["output"] = config.output;
    report["formats"] = config.formats;

    ensure_checks_pass(report);

    if (!files.empty() || want_report) {
        std::error_code ec;
        std::filesystem::create_directories(config.output, ec);
        if (ec)
            throw ValidationError(std::vector<Violation>{
                {"output", "cannot create directory: " + config.output}});
        for (const auto& [name, content] : files)
            io::write_text(std::filesystem::path(config.output) / name, content);
        if (want_report)
            io::write_text(std::filesystem::path(config.output) / "report.json",
                           report.dump(2) + "\n");
    }
    return report;
}

/// Rebuild the configuration of a finished run from its report; running
/// it again reproduces the run (the params echo is complete).
inline ScenarioConfig config_from_report(const json& report) {
    ScenarioConfig config;
    config.scenario = report.at("scenario").get<std::string>();
    config.params = report.at("params");
    config.output = report.at("output").get<std::string>();
    config.formats.clear();
    for (const json& f : report.at("formats"))
        config.formats.push_back(f.get<std::string>());
    return config;
}

}  // namespace whichpath::cli
