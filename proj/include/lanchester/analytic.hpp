#pragma once

#include <optional>

#include "lanchester/types.hpp"

namespace lanchester {

/// Exact outcome of an aimed-fire battle fought to the finish.
struct TerminalResult {
    Verdict verdict;
    /// Time at which the losing side reaches zero. Empty for a draw, where
    /// mutual annihilation is only asymptotic.
    std::optional<double> end_time;
    /// Winner's remaining strength (0 for a draw).
    double survivors = 0.0;
};

/// Aimed-fire state at time t from the explicit hyperbolic solution
///   R(t) = R0 cosh(k t) - sqrt(g/r) G0 sinh(k t),  k = sqrt(r g)
///   G(t) = G0 cosh(k t) - sqrt(r/g) R0 sinh(k t)
/// evaluated in exponential form for stability. Past the termination time
/// the terminal state is returned (loser 0, winner at survivor level)
/// rather than the unphysical negative branch. Draw-band initial states use
/// the symmetric decay solution, which tends to zero without ever crossing
/// it. Throws std::invalid_argument for t < 0.
ForceState aimed_state_at(const AimedParams& params, const ForceState& initial, double t);

/// Verdict, termination time and survivor count of an aimed-fire battle.
/// Survivors satisfy winner_effectiveness * survivors^2 = |r R0^2 - g G0^2|;
/// the end time is artanh(m) / sqrt(r g) with m the loser-to-winner ratio of
/// the strength-term square roots. Throws std::invalid_argument when both
/// initial strengths are zero.
TerminalResult aimed_terminal(const AimedParams& params, const ForceState& initial);

/// Asymmetric-model state at time t:
///   G(t) = G0 exp(-r t)
///   R(t) = R0 exp((g G0 / (r R0)) (exp(-r t) - 1))
/// The rate law is normalized against params.red_ref, so initial.red must
/// equal red_ref exactly; otherwise std::invalid_argument is thrown.
ForceState asym_state_at(const AsymmetricParams& params, const ForceState& initial, double t);

/// Red strength surviving the asymmetric phase as t -> infinity:
/// R0 exp(-g G0 / (r R0)).
double asym_limit(const AsymmetricParams& params, const ForceState& initial);

}  // namespace lanchester
