#pragma once

#include <vector>

#include "lanchester/types.hpp"

namespace lanchester {

struct DivisionPhase {
    double red_committed;
    double red_surviving;
    double green_entering;
    double green_surviving;
};

/// Outcome of engaging an n-way split red force sequentially with the full
/// green force. When green survives every phase, each phase knocks
/// r (R0/n)^2 off green's fighting strength, so
/// g final_green^2 = g G0^2 - r R0^2 / n.
struct DivisionPlan {
    int n_parts;
    std::vector<DivisionPhase> phases;
    double final_green;
    /// Aimed invariant of the recombined survivors after the last phase.
    double final_invariant;
};

/// Resolves the sequential engagement with closed-form terminal states. If
/// green dies in some phase, the remaining red parts pass through unharmed.
DivisionPlan divide_and_conquer(const AimedParams& params, double red_total,
                                double green_total, int n);

/// A force of N units split into P fighting and N - P support units, with
/// fighting effectiveness f = f0 ((N - P) / P)^kappa and fighting strength
/// f P^2.
struct SupportSplit {
    double total;
    double fighting;
    double support;
    double kappa;
    double base_eff;
    double effectiveness;
    double strength;
};

/// Requires 0 < p_fighting <= n_total, f0 > 0 and 0 <= kappa < 2.
SupportSplit support_strength(double n_total, double p_fighting, double f0, double kappa);

/// Fraction of the force that should fight to maximize f P^2: 1 - kappa/2.
double optimal_fighting_fraction(double kappa);

/// Best integer fighting count: evaluates floor and ceiling of the
/// continuum optimum (1 - kappa/2) N and returns the stronger split.
SupportSplit optimal_support_split(double n_total, double f0, double kappa);

/// Fighting strength per total numbers squared, f P^2 / N^2, expressed as a
/// function of the support ratio s = (N - P) / P: f0 s^kappa / (1 + s)^2.
/// Maximal at s = (kappa/2) / (1 - kappa/2).
double total_effectiveness_at_ratio(double s, double kappa, double f0);

/// Exponent kappa for which the given support ratio is optimal:
/// kappa = 2 s / (1 + s). Inverse of the optimum above.
double infer_kappa(double optimal_ratio);

}  // namespace lanchester
