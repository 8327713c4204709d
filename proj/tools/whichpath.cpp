// Command-line front end: whichpath <scenario> --config <file> [--seed N]
// [--out DIR] [--format csv,svg,report] [--set key=value ...]
//
// Precedence for parameters: --set flags > --seed flag > config file >
// WHICHPATH_SEED environment variable > built-in defaults.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "whichpath/cli.hpp"

namespace {

using whichpath::cli::json;

json load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw whichpath::cli::ValidationError(
            std::vector<whichpath::cli::Violation>{{"config", "cannot open file: " + path}});
    json parsed;
    try {
        parsed = json::parse(in);
    } catch (const json::parse_error& e) {
        throw whichpath::cli::ValidationError(
            std::vector<whichpath::cli::Violation>{{"config", std::string("not valid JSON: ") + e.what()}});
    }
    if (!parsed.is_object())
        throw whichpath::cli::ValidationError(
            std::vector<whichpath::cli::Violation>{{"config", "top level must be a JSON object of parameters"}});
    return parsed;
}

void apply_set(json& params, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw whichpath::cli::ValidationError(
            std::vector<whichpath::cli::Violation>{{"--set", "expected key=value, got \"" + assignment + "\""}});
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    const json parsed = json::parse(value, nullptr, false);
    if (parsed.is_discarded())
        params[key] = value;  // bare string, e.g. insert=hwp
    else
        params[key] = parsed;
}

std::vector<std::string> split_formats(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-photon which-path interference toolkit"};
    app.get_formatter()->column_width(28);

    std::string scenario;
    std::string config_path;
    std::string out_dir = "whichpath_out";
    std::string format_list = "csv,report";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::vector<std::string> sets;

    app.add_option("scenario", scenario,
                   "double-slit | mach-zehnder | sagnac | scattering | uncertainty")
        ->required();
    app.add_option("--config", config_path, "JSON parameter file");
    app.add_option("--seed", seed, "random seed (overrides file and environment)")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format_list, "comma list of csv,svg,report");
    app.add_option("--set", sets, "override one parameter, key=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        whichpath::cli::ScenarioConfig config;
        config.scenario = scenario;
        if (!config_path.empty()) config.params = load_config_file(config_path);
        if (seed_given) config.params["seed"] = seed;
        for (const std::string& s : sets) apply_set(config.params, s);
        if (!config.params.contains("seed"))
            config.params["seed"] =
                whichpath::cli::resolve_seed(config.params,
                                             std::getenv("WHICHPATH_SEED"));
        config.output = out_dir;
        config.formats = split_formats(format_list);

        const json report = whichpath::cli::run(config);

        std::cout << "scenario: " << report.at("scenario").get<std::string>()
                  << "  seed: " << report.at("seed") << "\n";
        std::cout << "scalars: " << report.at("scalars").dump() << "\n";
        for (const json& check : report.at("checks"))
            std::cout << "check " << check.at("invariant").get<std::string>()
                      << ": " << (check.at("passed").get<bool>() ? "ok" : "FAILED")
                      << "\n";
        for (const json& name : report.at("artifacts"))
            std::cout << "wrote " << config.output << "/"
                      << name.get<std::string>() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return whichpath::cli::exit_code_for(e);
    }
}
