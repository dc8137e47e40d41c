#include "lanchester/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "lanchester/model.hpp"
#include "lanchester/simulate.hpp"
#include "lanchester/tactics.hpp"
#include "lanchester/version.hpp"

namespace lanchester {

using json = nlohmann::ordered_json;

namespace {

std::string join_path(const std::string& parent, const std::string& field) {
    return parent.empty() ? field : parent + "." + field;
}

void reject_unknown_keys(const json& obj, const std::string& parent,
                         std::initializer_list<const char*> allowed, const char* hint = nullptr) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known) {
            std::string message = "unknown field";
            if (hint) message += std::string(" (") + hint + ")";
            throw ScenarioError(join_path(parent, item.key()), message);
        }
    }
}

const json& require_field(const json& obj, const std::string& parent, const char* field,
                          const char* hint = nullptr) {
    const auto it = obj.find(field);
    if (it == obj.end()) {
        std::string message = "missing field";
        if (hint) message += std::string(" (") + hint + ")";
        throw ScenarioError(join_path(parent, field), message);
    }
    return *it;
}

double require_number(const json& obj, const std::string& parent, const char* field,
                      const char* hint = nullptr) {
    const json& value = require_field(obj, parent, field, hint);
    if (!value.is_number())
        throw ScenarioError(join_path(parent, field), "must be a number");
    return value.get<double>();
}

double require_positive(const json& obj, const std::string& parent, const char* field) {
    const double value = require_number(obj, parent, field);
    if (!(value > 0.0) || !std::isfinite(value))
        throw ScenarioError(join_path(parent, field), "must be a finite value > 0");
    return value;
}

double require_nonnegative(const json& obj, const std::string& parent, const char* field,
                           const char* hint = nullptr) {
    const double value = require_number(obj, parent, field, hint);
    if (!(value >= 0.0) || !std::isfinite(value))
        throw ScenarioError(join_path(parent, field), "must be a finite value >= 0");
    return value;
}

double require_finite(const json& obj, const std::string& parent, const char* field) {
    const double value = require_number(obj, parent, field);
    if (!std::isfinite(value))
        throw ScenarioError(join_path(parent, field), "must be finite");
    return value;
}

ModelSpec parse_params(ModelKind kind, const json& params) {
    const std::string parent = "params";
    switch (kind) {
        case ModelKind::Aimed:
            reject_unknown_keys(params, parent, {"r", "g"});
            return AimedParams(require_positive(params, parent, "r"),
                               require_positive(params, parent, "g"));
        case ModelKind::Unaimed:
            reject_unknown_keys(params, parent, {"r", "g", "area_red", "area_green"});
            return UnaimedParams(require_positive(params, parent, "r"),
                                 require_positive(params, parent, "g"),
                                 require_positive(params, parent, "area_red"),
                                 require_positive(params, parent, "area_green"));
        case ModelKind::Constant:
            reject_unknown_keys(params, parent, {"r", "g"});
            return ConstantParams(require_positive(params, parent, "r"),
                                  require_positive(params, parent, "g"));
        case ModelKind::Mixed:
            reject_unknown_keys(params, parent, {"r", "g1", "g2"});
            return MixedParams(require_positive(params, parent, "r"),
                               require_positive(params, parent, "g1"),
                               require_positive(params, parent, "g2"));
        case ModelKind::Bracken:
            reject_unknown_keys(params, parent, {"r", "g", "p", "q"});
            return BrackenParams(require_positive(params, parent, "r"),
                                 require_positive(params, parent, "g"),
                                 require_finite(params, parent, "p"),
                                 require_finite(params, parent, "q"));
        case ModelKind::Asymmetric:
            reject_unknown_keys(params, parent, {"r", "g", "red_ref"});
            return AsymmetricParams(require_positive(params, parent, "r"),
                                    require_nonnegative(params, parent, "g"),
                                    require_positive(params, parent, "red_ref"));
    }
    std::abort();  // unreachable
}

State parse_initial(ModelKind kind, const json& initial) {
    const std::string parent = "initial";
    if (kind == ModelKind::Mixed) {
        const char* hint = "mixed model uses red, green1, green2";
        reject_unknown_keys(initial, parent, {"red", "green1", "green2"}, hint);
        return MixedState(require_nonnegative(initial, parent, "red", hint),
                          require_nonnegative(initial, parent, "green1", hint),
                          require_nonnegative(initial, parent, "green2", hint));
    }
    const char* hint = "this model uses red, green";
    reject_unknown_keys(initial, parent, {"red", "green"}, hint);
    return State(ForceState(require_nonnegative(initial, parent, "red", hint),
                            require_nonnegative(initial, parent, "green", hint)));
}

TacticsRequest parse_tactics(const json& block) {
    if (!block.is_object())
        throw ScenarioError("tactics", "must be an object");
    reject_unknown_keys(block, "tactics", {"divide", "support"});
    const bool has_divide = block.contains("divide");
    const bool has_support = block.contains("support");
    if (has_divide == has_support)
        throw ScenarioError("tactics", "expected exactly one of divide or support");

    if (has_divide) {
        const json& value = block.at("divide");
        if (!value.is_number_integer())
            throw ScenarioError("tactics.divide", "must be an integer");
        const long long n = value.get<long long>();
        if (n < 1) throw ScenarioError("tactics.divide", "must be >= 1");
        if (n > 1000000) throw ScenarioError("tactics.divide", "must be <= 1000000");
        return DivideRequest{static_cast<int>(n)};
    }

    const json& support = block.at("support");
    if (!support.is_object())
        throw ScenarioError("tactics.support", "must be an object");
    reject_unknown_keys(support, "tactics.support", {"n", "kappa", "f0"});
    SupportRequest request{};
    request.n = require_positive(support, "tactics.support", "n");
    request.kappa = require_nonnegative(support, "tactics.support", "kappa");
    if (request.kappa >= 2.0)
        throw ScenarioError("tactics.support.kappa", "must lie in [0, 2)");
    request.f0 = require_positive(support, "tactics.support", "f0");
    return request;
}

json scenario_json(const Scenario& scenario) {
    json out;
    const ModelKind kind = model_kind(scenario.model);
    out["model"] = to_string(kind);

    json params;
    switch (kind) {
        case ModelKind::Aimed: {
            const auto& p = std::get<AimedParams>(scenario.model);
            params = {{"r", p.r()}, {"g", p.g()}};
            break;
        }
        case ModelKind::Unaimed: {
            const auto& p = std::get<UnaimedParams>(scenario.model);
            params = {{"r", p.r()},
                      {"g", p.g()},
                      {"area_red", p.area_red()},
                      {"area_green", p.area_green()}};
            break;
        }
        case ModelKind::Constant: {
            const auto& p = std::get<ConstantParams>(scenario.model);
            params = {{"r", p.r()}, {"g", p.g()}};
            break;
        }
        case ModelKind::Mixed: {
            const auto& p = std::get<MixedParams>(scenario.model);
            params = {{"r", p.r()}, {"g1", p.g1()}, {"g2", p.g2()}};
            break;
        }
        case ModelKind::Bracken: {
            const auto& p = std::get<BrackenParams>(scenario.model);
            params = {{"r", p.r()}, {"g", p.g()}, {"p", p.p()}, {"q", p.q()}};
            break;
        }
        case ModelKind::Asymmetric: {
            const auto& p = std::get<AsymmetricParams>(scenario.model);
            params = {{"r", p.r()}, {"g", p.g()}, {"red_ref", p.red_ref()}};
            break;
        }
    }
    out["params"] = params;

    if (const auto* mixed = std::get_if<MixedState>(&scenario.initial)) {
        out["initial"] = {{"red", mixed->red()},
                          {"green1", mixed->green1()},
                          {"green2", mixed->green2()}};
    } else {
        const auto& plain = std::get<ForceState>(scenario.initial);
        out["initial"] = {{"red", plain.red()}, {"green", plain.green()}};
    }

    if (scenario.dt || scenario.t_max || scenario.stop_threshold) {
        json sim;
        if (scenario.dt) sim["dt"] = *scenario.dt;
        if (scenario.t_max) sim["t_max"] = *scenario.t_max;
        if (scenario.stop_threshold) sim["stop_threshold"] = *scenario.stop_threshold;
        out["sim"] = sim;
    }

    if (scenario.tactics) {
        json block;
        if (const auto* divide = std::get_if<DivideRequest>(&*scenario.tactics)) {
            block["divide"] = divide->n;
        } else {
            const auto& support = std::get<SupportRequest>(*scenario.tactics);
            block["support"] = {{"n", support.n}, {"kappa", support.kappa}, {"f0", support.f0}};
        }
        out["tactics"] = block;
    }

    out["precision"] = scenario.precision;
    return out;
}

// Rounds through the declared precision; nonfinite values become JSON null.
json precise(double value, int precision) {
    if (!std::isfinite(value)) return nullptr;
    return std::strtod(format_number(value, precision).c_str(), nullptr);
}

json report_skeleton(const Scenario& scenario) {
    json report;
    report["scenario"] = scenario_json(scenario);
    return report;
}

std::string finish_report(json report) {
    report["version"] = kVersion;
    return report.dump(2);
}

SimControls compose_controls(const Scenario& scenario) {
    const SimControls defaults = default_controls(scenario.model, scenario.initial);
    return SimControls(scenario.dt.value_or(defaults.dt()),
                       scenario.t_max.value_or(defaults.t_max()),
                       scenario.stop_threshold.value_or(defaults.stop_threshold()));
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError("", e.what());  // message carries line/column
    }
    if (!doc.is_object()) throw ScenarioError("", "scenario document must be a JSON object");
    reject_unknown_keys(doc, "", {"model", "params", "initial", "sim", "tactics", "precision"});

    const json& model_field = require_field(doc, "", "model");
    if (!model_field.is_string()) throw ScenarioError("model", "must be a string");
    const std::string name = model_field.get<std::string>();
    ModelKind kind;
    if (name == "aimed") kind = ModelKind::Aimed;
    else if (name == "unaimed") kind = ModelKind::Unaimed;
    else if (name == "constant") kind = ModelKind::Constant;
    else if (name == "mixed") kind = ModelKind::Mixed;
    else if (name == "bracken") kind = ModelKind::Bracken;
    else if (name == "asymmetric") kind = ModelKind::Asymmetric;
    else
        throw ScenarioError("model",
                            "must be one of aimed|unaimed|constant|mixed|bracken|asymmetric");

    const json& params = require_field(doc, "", "params");
    if (!params.is_object()) throw ScenarioError("params", "must be an object");
    const json& initial = require_field(doc, "", "initial");
    if (!initial.is_object()) throw ScenarioError("initial", "must be an object");

    Scenario scenario{parse_params(kind, params), parse_initial(kind, initial),
                      std::nullopt,               std::nullopt,
                      std::nullopt,               std::nullopt,
                      9};

    if (doc.contains("sim")) {
        const json& sim = doc.at("sim");
        if (!sim.is_object()) throw ScenarioError("sim", "must be an object");
        reject_unknown_keys(sim, "sim", {"dt", "t_max", "stop_threshold"});
        if (sim.contains("dt")) scenario.dt = require_positive(sim, "sim", "dt");
        if (sim.contains("t_max")) scenario.t_max = require_positive(sim, "sim", "t_max");
        if (sim.contains("stop_threshold"))
            scenario.stop_threshold = require_nonnegative(sim, "sim", "stop_threshold");
        if (scenario.dt && scenario.t_max && *scenario.dt > *scenario.t_max)
            throw ScenarioError("sim.dt", "must not exceed sim.t_max");
    }

    if (doc.contains("tactics")) scenario.tactics = parse_tactics(doc.at("tactics"));

    if (doc.contains("precision")) {
        const json& precision = doc.at("precision");
        if (!precision.is_number_integer())
            throw ScenarioError("precision", "must be an integer");
        const long long digits = precision.get<long long>();
        if (digits < 1 || digits > 17)
            throw ScenarioError("precision", "must lie in [1, 17]");
        scenario.precision = static_cast<int>(digits);
    }

    return scenario;
}

std::string serialize_scenario(const Scenario& scenario) {
    return scenario_json(scenario).dump(2);
}

std::string format_number(double value, int precision) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    return buffer;
}

std::string cmd_predict(const Scenario& scenario) {
    const double value = invariant(scenario.model, scenario.initial);
    const Verdict verdict = predict_winner(scenario.model, scenario.initial);

    json report = report_skeleton(scenario);
    report["verdict"] = to_string(verdict);
    report["end_time"] = nullptr;
    report["survivors"] = nullptr;
    report["invariant_initial"] = precise(value, scenario.precision);
    report["max_drift"] = nullptr;
    return finish_report(std::move(report));
}

std::string cmd_simulate(const Scenario& scenario, const std::string& csv_path) {
    const SimControls controls = compose_controls(scenario);
    const SimResult result = integrate(scenario.model, scenario.initial, controls);
    write_trajectory_csv(csv_path, result.trajectory, scenario.precision);

    json report = report_skeleton(scenario);
    const SimOutcome& outcome = result.outcome;
    report["verdict"] = outcome.verdict ? to_string(*outcome.verdict) : "timeout";
    report["end_time"] = precise(outcome.end_time, scenario.precision);
    if (!outcome.verdict) {
        report["survivors"] = nullptr;
    } else if (*outcome.verdict == Verdict::RedWins) {
        report["survivors"] = precise(red_of(outcome.final_state), scenario.precision);
    } else if (*outcome.verdict == Verdict::GreenWins) {
        report["survivors"] = precise(green_of(outcome.final_state), scenario.precision);
    } else {
        report["survivors"] = 0.0;
    }
    if (has_invariant(scenario.model)) {
        report["invariant_initial"] =
            precise(invariant(scenario.model, scenario.initial), scenario.precision);
    } else {
        report["invariant_initial"] = nullptr;
    }
    report["max_drift"] =
        outcome.max_drift ? precise(*outcome.max_drift, scenario.precision) : json(nullptr);
    return finish_report(std::move(report));
}

std::string cmd_tactics(const Scenario& scenario) {
    if (!scenario.tactics)
        throw ScenarioError("tactics", "missing block: tactics analysis needs divide or support");

    json report = report_skeleton(scenario);
    const int digits = scenario.precision;

    if (const auto* divide = std::get_if<DivideRequest>(&*scenario.tactics)) {
        const auto* params = std::get_if<AimedParams>(&scenario.model);
        if (!params)
            throw ScenarioError("tactics.divide", "division analysis requires the aimed model");
        const auto& initial = std::get<ForceState>(scenario.initial);
        const DivisionPlan plan =
            divide_and_conquer(*params, initial.red(), initial.green(), divide->n);

        json phases = json::array();
        for (const DivisionPhase& phase : plan.phases) {
            phases.push_back({{"red_committed", precise(phase.red_committed, digits)},
                              {"red_surviving", precise(phase.red_surviving, digits)},
                              {"green_entering", precise(phase.green_entering, digits)},
                              {"green_surviving", precise(phase.green_surviving, digits)}});
        }
        report["division"] = {{"n_parts", plan.n_parts},
                              {"phases", phases},
                              {"final_green", precise(plan.final_green, digits)},
                              {"final_invariant", precise(plan.final_invariant, digits)}};
        return finish_report(std::move(report));
    }

    const auto& request = std::get<SupportRequest>(*scenario.tactics);
    const double fraction = optimal_fighting_fraction(request.kappa);
    const double s_star = request.kappa / 2.0 / (1.0 - request.kappa / 2.0);
    const SupportSplit best = optimal_support_split(request.n, request.f0, request.kappa);

    json curve = json::array();
    const double s_max = std::fmax(2.0, 2.0 * s_star);
    const int points = 41;
    for (int i = 0; i < points; ++i) {
        const double s = s_max * i / (points - 1);
        curve.push_back({{"s", precise(s, digits)},
                         {"f_tot", precise(total_effectiveness_at_ratio(s, request.kappa,
                                                                        request.f0),
                                           digits)}});
    }

    report["support"] = {
        {"n", precise(request.n, digits)},
        {"kappa", precise(request.kappa, digits)},
        {"f0", precise(request.f0, digits)},
        {"fighting_fraction", precise(fraction, digits)},
        {"p_continuum", precise(fraction * request.n, digits)},
        {"optimal_ratio", precise(s_star, digits)},
        {"f_tot_at_optimum",
         precise(total_effectiveness_at_ratio(s_star, request.kappa, request.f0), digits)},
        {"best_split",
         {{"fighting", precise(best.fighting, digits)},
          {"support", precise(best.support, digits)},
          {"effectiveness", precise(best.effectiveness, digits)},
          {"strength", precise(best.strength, digits)}}},
        {"curve", curve}};
    return finish_report(std::move(report));
}

std::string cmd_fit(const std::string& csv_path, int precision) {
    const std::vector<TimedForce> series = read_trajectory_csv(csv_path);
    const FitResult fit = fit_bracken(series);

    json report;
    report["p"] = precise(fit.params.p(), precision);
    report["q"] = precise(fit.params.q(), precision);
    report["r"] = precise(fit.params.r(), precision);
    report["g"] = precise(fit.params.g(), precision);
    report["alpha"] = precise(fit.alpha, precision);
    report["residual"] = precise(fit.residual, precision);
    report["samples_used"] = fit.samples_used;
    return finish_report(std::move(report));
}

std::vector<TimedForce> read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("", "cannot open " + path);

    auto fail = [&](std::size_t lineno, const std::string& message) {
        std::ostringstream out;
        out << path << " line " << lineno << ": " << message;
        throw ScenarioError("", out.str());
    };

    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(in, line)) fail(1, "empty file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,red,green") fail(lineno, "expected header t,red,green");

    std::vector<TimedForce> series;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) fail(lineno, "empty row");

        double fields[3];
        const char* cursor = line.c_str();
        for (int i = 0; i < 3; ++i) {
            char* after = nullptr;
            fields[i] = std::strtod(cursor, &after);
            if (after == cursor) fail(lineno, "expected a numeric field");
            cursor = after;
            if (i < 2) {
                if (*cursor != ',') fail(lineno, "expected 3 comma-separated fields");
                ++cursor;
            }
        }
        if (*cursor != '\0') fail(lineno, "trailing characters after 3 fields");
        if (!std::isfinite(fields[0]) || !std::isfinite(fields[1]) || !std::isfinite(fields[2]))
            fail(lineno, "nonfinite value");
        if (fields[1] < 0.0 || fields[2] < 0.0) fail(lineno, "negative strength");
        if (!series.empty() && !(fields[0] > series.back().t))
            fail(lineno, "times must be strictly increasing");
        series.push_back({fields[0], ForceState(fields[1], fields[2])});
    }
    return series;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj, int precision) {
    const bool mixed = is_mixed_model(traj.model());
    const std::string tmp_path = path + ".tmp";
    {
        std::ofstream out(tmp_path, std::ios::binary);  // binary: LF line endings everywhere
        if (!out) throw ScenarioError("", "cannot open " + tmp_path + " for writing");
        out << (mixed ? "t,red,green1,green2\n" : "t,red,green\n");
        for (const Sample& sample : traj.samples()) {
            out << format_number(sample.t, precision);
            if (mixed) {
                const auto& s = std::get<MixedState>(sample.state);
                out << ',' << format_number(s.red(), precision) << ','
                    << format_number(s.green1(), precision) << ','
                    << format_number(s.green2(), precision) << '\n';
            } else {
                const auto& s = std::get<ForceState>(sample.state);
                out << ',' << format_number(s.red(), precision) << ','
                    << format_number(s.green(), precision) << '\n';
            }
        }
        if (!out) throw ScenarioError("", "write failed for " + tmp_path);
    }
    std::filesystem::rename(tmp_path, path);
}

}  // namespace lanchester
