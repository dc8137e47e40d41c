#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lanchester/cli.hpp"
#include "lanchester/simulate.hpp"
#include "lanchester/version.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lanchester::ScenarioError("", "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic Lanchester attrition engine"};
    app.set_version_flag("--version", lanchester::kVersion);
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_path;
    std::string csv_path;
    std::optional<double> dt_override;
    std::optional<double> t_max_override;
    std::optional<double> threshold_override;

    CLI::App* predict =
        app.add_subcommand("predict", "Winner from the conserved quantity; no simulation");
    predict->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

    CLI::App* simulate =
        app.add_subcommand("simulate", "Integrate the battle and write a CSV trajectory");
    simulate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    simulate->add_option("--out", out_path, "Trajectory CSV output path")->required();
    simulate->add_option("--dt", dt_override, "Override the scenario time step");
    simulate->add_option("--t-max", t_max_override, "Override the scenario horizon");
    simulate->add_option("--threshold", threshold_override,
                         "Override the elimination threshold");

    CLI::App* tactics =
        app.add_subcommand("tactics", "Division plan or support-split analysis");
    tactics->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

    CLI::App* fit = app.add_subcommand("fit", "Fit Bracken exponents to a CSV trajectory");
    fit->add_option("csv", csv_path, "Trajectory CSV with header t,red,green")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::string report;
        if (predict->parsed()) {
            report = lanchester::cmd_predict(lanchester::parse_scenario(read_file(scenario_path)));
        } else if (simulate->parsed()) {
            lanchester::Scenario scenario =
                lanchester::parse_scenario(read_file(scenario_path));
            if (dt_override) scenario.dt = dt_override;
            if (t_max_override) scenario.t_max = t_max_override;
            if (threshold_override) scenario.stop_threshold = threshold_override;
            report = lanchester::cmd_simulate(scenario, out_path);
        } else if (tactics->parsed()) {
            report = lanchester::cmd_tactics(lanchester::parse_scenario(read_file(scenario_path)));
        } else {
            report = lanchester::cmd_fit(csv_path);
        }
        std::cout << report << "\n";
        return 0;
    } catch (const lanchester::NumericalFailure& e) {
        std::cerr << "error: numerical failure: " << e.what() << " (last good state at t="
                  << e.last_good().t << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
