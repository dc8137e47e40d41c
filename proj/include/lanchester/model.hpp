#pragma once

#include <utility>

#include "lanchester/types.hpp"

namespace lanchester {

/// Instantaneous attrition rates for the given model and state.
///
/// Rate laws (losses as positive magnitudes):
///   aimed       dR = -g G,          dG = -r R
///   unaimed     dR = -g G R / A_R,  dG = -r R G / A_G
///   constant    dR = -g,            dG = -r
///   mixed       dR = -g1 G1 - g2 G2,  dGi = -r R Gi / (G1 + G2)
///   bracken     dR = -g R^q G^p,    dG = -r R^p G^q
///   asymmetric  dR = -g G R / R0,   dG = -r G
///
/// Throws std::invalid_argument on a model/state shape mismatch and
/// std::domain_error for a Bracken power with zero base and negative
/// exponent.
Rate rate(const ModelSpec& model, const State& state);

/// The model's conserved quantity, oriented red-minus-green so that a
/// positive value means a red advantage:
///   aimed       r R^2 - g G^2
///   unaimed     (r / A_G) R - (g / A_R) G
///   constant    r R - g G
///   mixed       r R^2 - (g1 G1 + g2 G2)(G1 + G2)
///   bracken     r R^a - g G^a with a = 1 + p - q, or r ln R - g ln G at a = 0
///
/// Throws UnsupportedModelError for the asymmetric model (no conserved
/// quantity) and std::domain_error for the singular Bracken power cases.
double invariant(const ModelSpec& model, const State& state);

/// Conservation exponent of the Bracken model: 1 + p - q.
double alpha(double p, double q) noexcept;

/// Numbers-weighted mean green effectiveness (g1 G1 + g2 G2) / (G1 + G2).
/// Throws std::domain_error when the total green strength is zero.
double average_effectiveness(const MixedParams& params, const MixedState& state);

/// Sign of the invariant decides the battle: red wins if positive, green if
/// negative, draw inside a relative band of 1e-12 against the red strength
/// term. Throws UnsupportedModelError for the asymmetric model.
Verdict predict_winner(const ModelSpec& model, const State& initial);

/// Re-expresses an aimed battle with green units grouped n at a time:
/// r' = r/n, g' = n g, R' = R, G' = G/n. The invariant scales by exactly
/// 1/n; its sign, and the course and outcome of the battle, do not change.
/// Throws std::invalid_argument for n < 1.
std::pair<AimedParams, ForceState> rescale_units(const AimedParams& params,
                                                 const ForceState& initial,
                                                 double n);

}  // namespace lanchester
