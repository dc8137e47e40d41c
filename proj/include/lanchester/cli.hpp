#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lanchester/estimate.hpp"
#include "lanchester/types.hpp"

namespace lanchester {

/// Scenario document rejected; path() names the offending field (empty for
/// document-level parse errors).
class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::string path, const std::string& message)
        : std::runtime_error(path.empty() ? message : path + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

struct DivideRequest {
    int n;
};

struct SupportRequest {
    double n;
    double kappa;
    double f0;
};

using TacticsRequest = std::variant<DivideRequest, SupportRequest>;

/// A complete run description parsed from a scenario file.
struct Scenario {
    ModelSpec model;
    State initial;
    std::optional<double> dt;
    std::optional<double> t_max;
    std::optional<double> stop_threshold;
    std::optional<TacticsRequest> tactics;
    int precision = 9;  // significant digits in emitted numbers
};

/// Parses and validates a JSON scenario document. Errors carry the field
/// path; document syntax errors carry the parser's line/column message.
Scenario parse_scenario(const std::string& text);

/// Canonical JSON form; parse_scenario(serialize_scenario(s)) reproduces s.
std::string serialize_scenario(const Scenario& scenario);

/// Winner prediction from the sign of the conserved quantity. No simulation.
/// Returns the JSON report text.
std::string cmd_predict(const Scenario& scenario);

/// Integrates the scenario, writes the trajectory CSV atomically to
/// csv_path, and returns the JSON report.
std::string cmd_simulate(const Scenario& scenario, const std::string& csv_path);

/// Division plan or support-split analysis, depending on the scenario's
/// tactics block.
std::string cmd_tactics(const Scenario& scenario);

/// Fits Bracken parameters to a t,red,green CSV trajectory.
std::string cmd_fit(const std::string& csv_path, int precision = 9);

/// Reads a t,red,green CSV; validates the header, numeric fields,
/// nonnegative strengths and strictly increasing times.
std::vector<TimedForce> read_trajectory_csv(const std::string& path);

/// Writes the trajectory as CSV (header t,red,green or t,red,green1,green2)
/// with the given number of significant digits, via a temp file + rename.
void write_trajectory_csv(const std::string& path, const Trajectory& traj, int precision);

/// Value formatted to the given significant digits ("%.*g").
std::string format_number(double value, int precision);

}  // namespace lanchester
