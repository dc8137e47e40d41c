#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <random>

// Shared helpers for the unit suites. The reference integrator here is an
// independent oracle: it must not call into lanchester::integrate.
namespace test_support {

inline double rel_err(double actual, double expected) {
    const double scale = std::fmax(std::fabs(expected), 1e-300);
    return std::fabs(actual - expected) / scale;
}

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

inline double uniform(std::mt19937& gen, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
}

// Controls for Bracken conservation runs. Fractional exponents in (0, 1)
// make the rate law's derivative singular at zero strength, so fixed-step
// RK4 cannot hold tight conservation through the deep elimination
// boundary; these runs stop at a 2% strength floor with the step sized for
// the decay rates at both the initial state and that floor.
struct BrackenRunPlan {
    double dt;
    double t_max;
    double stop_threshold;
};

inline BrackenRunPlan bracken_conservation_plan(double r, double g, double p, double q,
                                                double red, double green) {
    const auto decay_scale = [&](double at_red, double at_green) {
        const double on_green = r * std::pow(at_red, p) * std::pow(at_green, q - 1.0);
        const double on_red = g * std::pow(at_green, p) * std::pow(at_red, q - 1.0);
        double pace = 0.0;
        if (std::isfinite(on_green)) pace = std::fmax(pace, on_green);
        if (std::isfinite(on_red)) pace = std::fmax(pace, on_red);
        return pace > 0.0 ? pace : 1.0;
    };
    const double floor_frac = 0.02;
    const double pace0 = decay_scale(red, green);
    const double pace_edge = decay_scale(floor_frac * red, floor_frac * green);
    const double dt = std::fmin(1e-3 / std::fmax(pace0, pace_edge),
                                1e-3 / std::sqrt(r * g));
    return {dt, 50.0 / pace0, floor_frac * std::fmin(red, green)};
}

// Plain fixed-step RK4 on a 2-component system, used to cross-check closed
// forms by brute force.
using Rhs2 = std::function<std::array<double, 2>(const std::array<double, 2>&)>;

inline std::array<double, 2> reference_rk4(const Rhs2& rhs, std::array<double, 2> x,
                                           double t_end, int steps) {
    const double h = t_end / steps;
    for (int n = 0; n < steps; ++n) {
        const auto k1 = rhs(x);
        const auto k2 = rhs({x[0] + 0.5 * h * k1[0], x[1] + 0.5 * h * k1[1]});
        const auto k3 = rhs({x[0] + 0.5 * h * k2[0], x[1] + 0.5 * h * k2[1]});
        const auto k4 = rhs({x[0] + h * k3[0], x[1] + h * k3[1]});
        x[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
        x[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    }
    return x;
}

}  // namespace test_support
