#pragma once

#include <cstddef>
#include <vector>

#include "lanchester/simulate.hpp"
#include "lanchester/types.hpp"

namespace lanchester {

/// Too few usable samples to run the regression.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The regression design is rank-deficient; the data cannot separate the
/// exponents. Reported rather than regularized away.
class DegenerateFitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point of a plain (red/green) time series.
struct TimedForce {
    double t;
    ForceState state;
};

struct FitResult {
    BrackenParams params;
    double alpha;         ///< 1 + p - q for the fitted exponents
    double residual;      ///< root-mean-square log-rate error
    std::size_t samples_used;
};

/// Recovers Bracken parameters (p, q, r, g) from a decaying time series.
///
/// Loss rates are estimated by central differences on interior samples and
/// the log-linear laws
///   ln(-dR/dt) = ln g + q ln R + p ln G
///   ln(-dG/dt) = ln r + p ln R + q ln G
/// are solved as one stacked least-squares problem with shared exponents
/// and separate intercepts, via the normal equations. Samples whose loss
/// magnitude is below 1e-12 of the side's initial strength are excluded;
/// trailing samples where a side has reached zero are trimmed.
///
/// Throws InsufficientDataError (fewer than 8 usable samples),
/// DegenerateFitError (singular design), std::domain_error (zero or
/// negative strength inside the fitted window) and std::invalid_argument
/// (non-increasing times, or a mixed-state trajectory).
FitResult fit_bracken(const std::vector<TimedForce>& series);
FitResult fit_bracken(const Trajectory& traj);

/// Conserved quantity of the fitted model at the given state; delegates to
/// invariant() with the fitted parameters.
double implied_invariant(const FitResult& fit, const ForceState& state);

}  // namespace lanchester
