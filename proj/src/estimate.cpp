#include "lanchester/estimate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "lanchester/model.hpp"

namespace lanchester {

namespace {

// Solves the 4x4 system A x = b by Gaussian elimination with partial
// pivoting. Throws DegenerateFitError when a pivot collapses relative to
// the matrix scale.
std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> a, std::array<double, 4> b) {
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::fmax(scale, std::fabs(v));
    if (scale == 0.0)
        throw DegenerateFitError("degenerate-fit: empty normal equations");

    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 4; ++row)
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        if (std::fabs(a[pivot][col]) < 1e-10 * scale)
            throw DegenerateFitError(
                "degenerate-fit: normal equations are singular; the log-strength "
                "regressors are collinear (a constant-ratio trajectory cannot "
                "separate p from q)");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = col + 1; row < 4; ++row) {
            const double factor = a[row][col] / a[col][col];
            for (int k = col; k < 4; ++k) a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }

    std::array<double, 4> x{};
    for (int row = 3; row >= 0; --row) {
        double sum = b[row];
        for (int k = row + 1; k < 4; ++k) sum -= a[row][k] * x[k];
        x[row] = sum / a[row][row];
    }
    return x;
}

struct Observation {
    double log_red;
    double log_green;
    double log_loss_red;
    double log_loss_green;
};

}  // namespace

FitResult fit_bracken(const std::vector<TimedForce>& series) {
    for (std::size_t i = 1; i < series.size(); ++i)
        if (!(series[i].t > series[i - 1].t))
            throw std::invalid_argument("fit requires strictly increasing sample times");

    // Trailing zeros are the clamped tail of a finished battle; drop them.
    std::size_t end = series.size();
    while (end > 0 &&
           (series[end - 1].state.red() == 0.0 || series[end - 1].state.green() == 0.0))
        --end;
    for (std::size_t i = 0; i < end; ++i)
        if (series[i].state.red() <= 0.0 || series[i].state.green() <= 0.0)
            throw std::domain_error("zero or negative strength inside the fitted window");

    std::vector<Observation> observations;
    if (end >= 3) {
        const double floor_red = 1e-12 * series.front().state.red();
        const double floor_green = 1e-12 * series.front().state.green();
        observations.reserve(end - 2);
        for (std::size_t i = 1; i + 1 < end; ++i) {
            const double span = series[i + 1].t - series[i - 1].t;
            const double loss_red =
                -(series[i + 1].state.red() - series[i - 1].state.red()) / span;
            const double loss_green =
                -(series[i + 1].state.green() - series[i - 1].state.green()) / span;
            if (loss_red <= floor_red || loss_green <= floor_green) continue;
            observations.push_back({std::log(series[i].state.red()),
                                    std::log(series[i].state.green()), std::log(loss_red),
                                    std::log(loss_green)});
        }
    }
    if (observations.size() < 8)
        throw InsufficientDataError("insufficient-data: need at least 8 usable samples, have " +
                                    std::to_string(observations.size()));

    // Unknowns beta = (p, q, ln r, ln g); each observation contributes the
    // red-loss row (lnG, lnR, 0, 1) and the green-loss row (lnR, lnG, 1, 0).
    std::array<std::array<double, 4>, 4> ata{};
    std::array<double, 4> atb{};
    auto accumulate = [&](const std::array<double, 4>& row, double y) {
        for (int i = 0; i < 4; ++i) {
            atb[i] += row[i] * y;
            for (int j = 0; j < 4; ++j) ata[i][j] += row[i] * row[j];
        }
    };
    for (const Observation& ob : observations) {
        accumulate({ob.log_green, ob.log_red, 0.0, 1.0}, ob.log_loss_red);
        accumulate({ob.log_red, ob.log_green, 1.0, 0.0}, ob.log_loss_green);
    }

    const std::array<double, 4> beta = solve4(ata, atb);
    const double p = beta[0];
    const double q = beta[1];

    double squared_error = 0.0;
    for (const Observation& ob : observations) {
        const double red_residual =
            ob.log_loss_red - (p * ob.log_green + q * ob.log_red + beta[3]);
        const double green_residual =
            ob.log_loss_green - (p * ob.log_red + q * ob.log_green + beta[2]);
        squared_error += red_residual * red_residual + green_residual * green_residual;
    }
    const double rms = std::sqrt(squared_error / (2.0 * observations.size()));

    return {BrackenParams(std::exp(beta[2]), std::exp(beta[3]), p, q), alpha(p, q), rms,
            observations.size()};
}

FitResult fit_bracken(const Trajectory& traj) {
    std::vector<TimedForce> series;
    series.reserve(traj.size());
    for (const Sample& sample : traj.samples()) {
        const auto* plain = std::get_if<ForceState>(&sample.state);
        if (!plain)
            throw std::invalid_argument("fit requires a plain red/green trajectory");
        series.push_back({sample.t, *plain});
    }
    return fit_bracken(series);
}

double implied_invariant(const FitResult& fit, const ForceState& state) {
    return invariant(ModelSpec(fit.params), State(state));
}

}  // namespace lanchester
