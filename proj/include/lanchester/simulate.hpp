#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lanchester/types.hpp"

namespace lanchester {

/// Fixed-step integration controls.
class SimControls {
public:
    /// Requires dt > 0, t_max > 0, dt <= t_max, stop_threshold >= 0.
    SimControls(double dt, double t_max, double stop_threshold);

    double dt() const noexcept { return dt_; }
    double t_max() const noexcept { return t_max_; }
    /// A side at or below this strength counts as eliminated.
    double stop_threshold() const noexcept { return stop_threshold_; }

private:
    double dt_;
    double t_max_;
    double stop_threshold_;
};

/// Controls matched to the battle's own timescale: dt = 1e-3 / rate,
/// t_max = 50 / rate with rate the fastest relative decay at the initial
/// state, and stop_threshold = 1e-6 times the weaker side's initial strength.
SimControls default_controls(const ModelSpec& model, const State& initial);

struct Sample {
    double t;
    State state;
};

/// Time-stamped battle history. Times are strictly increasing from 0; every
/// state component is nonnegative.
class Trajectory {
public:
    Trajectory(ModelSpec model, std::vector<Sample> samples);

    const ModelSpec& model() const noexcept { return model_; }
    const std::vector<Sample>& samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }

private:
    ModelSpec model_;
    std::vector<Sample> samples_;
};

struct SimOutcome {
    /// Empty when the horizon was reached with both sides still standing.
    std::optional<Verdict> verdict;
    double end_time = 0.0;
    State final_state;
    /// Max over the run of |invariant - initial invariant| / max(1, |initial|).
    /// Empty for models without a conserved quantity, or when the invariant
    /// is singular at the initial state.
    std::optional<double> max_drift;
};

struct SimResult {
    Trajectory trajectory;
    SimOutcome outcome;
};

/// Integration blew up (nonfinite state). Carries the last good sample.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const char* what, Sample last_good)
        : std::runtime_error(what), last_good_(std::move(last_good)) {}

    const Sample& last_good() const noexcept { return last_good_; }

private:
    Sample last_good_;
};

/// Classical fixed-step RK4 integration of the model's rate law. Components
/// are clamped at zero after each step; integration stops when a side's
/// strength falls to the stop threshold (the final step is bisected to land
/// on the crossing within dt * 1e-3) or at t_max. Every step is recorded up
/// to 1e5 samples, after which the record is uniformly thinned.
/// Propagates rate() domain errors; throws NumericalFailure if the state
/// turns nonfinite.
SimResult integrate(const ModelSpec& model, const State& initial, const SimControls& controls);

/// One salvo of the discrete exchange R' = R - g G, G' = G - r R, clamped
/// at zero after the subtraction.
ForceState discrete_step(const AimedParams& params, const ForceState& state);

/// Audit of the per-salvo conservation identity: with raw (unclamped) salvo
/// arithmetic, the aimed invariant satisfies after = (1 - r g) * before
/// exactly. Evaluated in compensated (double-double) arithmetic so the
/// ratio is comparable to (1 - r g) at the ulp level. The ratio is
/// meaningless when the invariant vanishes (draw states).
struct SalvoCheck {
    double invariant_before;
    double invariant_after_raw;
    double ratio;
};

SalvoCheck salvo_invariant_check(const AimedParams& params, const ForceState& state);

struct SalvoResult {
    Trajectory trajectory;  // sampled at integer salvo times 0, 1, 2, ...
    SimOutcome outcome;
    std::vector<SalvoCheck> checks;  // one per executed salvo
};

/// Iterates discrete_step until a side reaches zero or max_salvos is spent,
/// recording the conservation audit for every salvo.
/// Throws std::invalid_argument for max_salvos < 1.
SalvoResult run_salvos(const AimedParams& params, const ForceState& initial,
                       std::size_t max_salvos);

/// Per-sample relative invariant drift of a recorded trajectory, as defined
/// for SimOutcome::max_drift. Throws UnsupportedModelError for models
/// without a conserved quantity.
std::vector<std::pair<double, double>> drift_report(const Trajectory& traj);

}  // namespace lanchester
