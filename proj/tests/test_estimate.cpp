#include <doctest.h>

#include <cmath>

#include "lanchester/estimate.hpp"
#include "lanchester/model.hpp"
#include "lanchester/simulate.hpp"
#include "test_support.hpp"

using namespace lanchester;
using test_support::rel_err;

namespace {

// Dense noise-free generator for round-trip fits. Stops well before
// annihilation so the finite-difference rates stay accurate.
Trajectory generate(const ModelSpec& model, const ForceState& initial) {
    const SimControls defaults = default_controls(model, State(initial));
    const double floor = 0.05 * std::fmin(initial.red(), initial.green());
    const SimControls controls(defaults.dt(), defaults.t_max(), floor);
    return integrate(model, State(initial), controls).trajectory;
}

}  // namespace

TEST_CASE("fit_bracken: recovers the aimed-fire exponents") {
    const Trajectory traj = generate(ModelSpec(BrackenParams(1.0, 3.0, 1.0, 0.0)),
                                     ForceState(2.0, 1.0));
    const FitResult fit = fit_bracken(traj);
    CHECK(std::fabs(fit.params.p() - 1.0) <= 0.05);
    CHECK(std::fabs(fit.params.q() - 0.0) <= 0.05);
    CHECK(std::fabs(std::log(fit.params.r() / 1.0)) <= 0.05);
    CHECK(std::fabs(std::log(fit.params.g() / 3.0)) <= 0.05);
    CHECK(fit.residual <= 1e-3);
    CHECK(fit.alpha == doctest::Approx(1.0 + fit.params.p() - fit.params.q()));
    CHECK(fit.samples_used >= 8);
}

TEST_CASE("fit_bracken: recovers Hartley's empirical exponents") {
    const Trajectory traj = generate(ModelSpec(BrackenParams(1.0, 3.0, 0.45, 0.75)),
                                     ForceState(2.0, 1.0));
    const FitResult fit = fit_bracken(traj);
    CHECK(std::fabs(fit.params.p() - 0.45) <= 0.05);
    CHECK(std::fabs(fit.params.q() - 0.75) <= 0.05);
    CHECK(fit.residual <= 1e-3);
}

TEST_CASE("fit_bracken: recovers the linear-law exponents") {
    const Trajectory traj = generate(ModelSpec(BrackenParams(0.5, 1.0, 1.0, 1.0)),
                                     ForceState(3.0, 2.0));
    const FitResult fit = fit_bracken(traj);
    CHECK(std::fabs(fit.params.p() - 1.0) <= 0.05);
    CHECK(std::fabs(fit.params.q() - 1.0) <= 0.05);
    CHECK(std::fabs(std::log(fit.params.r() / 0.5)) <= 0.05);
    CHECK(std::fabs(std::log(fit.params.g() / 1.0)) <= 0.05);
    CHECK(fit.residual <= 1e-3);
}

TEST_CASE("fit_bracken: aimed trajectory recorded in rescaled units") {
    const AimedParams base(1.0, 3.0);
    const ForceState initial(200.0, 100.0);
    const auto [scaled, scaled_initial] = rescale_units(base, initial, 10.0);

    const SimControls controls(1e-4, 2.0, 5.0);
    const Trajectory traj =
        integrate(ModelSpec(BrackenParams(base.r(), base.g(), 1.0, 0.0)), State(initial),
                  controls)
            .trajectory;
    const SimControls scaled_controls(1e-4, 2.0, 0.5);
    const Trajectory scaled_traj =
        integrate(ModelSpec(BrackenParams(scaled.r(), scaled.g(), 1.0, 0.0)),
                  State(scaled_initial), scaled_controls)
            .trajectory;

    const FitResult fit = fit_bracken(traj);
    const FitResult scaled_fit = fit_bracken(scaled_traj);

    // p, q invariant under the unit change; r, g transform as r/n and n g
    CHECK(std::fabs(scaled_fit.params.p() - fit.params.p()) <= 0.05);
    CHECK(std::fabs(scaled_fit.params.q() - fit.params.q()) <= 0.05);
    CHECK(std::fabs(std::log(scaled_fit.params.r() / (base.r() / 10.0))) <= 0.05);
    CHECK(std::fabs(std::log(scaled_fit.params.g() / (base.g() * 10.0))) <= 0.05);
}

TEST_CASE("fit_bracken: implied invariant drifts no worse than the residual allows") {
    const ModelSpec truth = BrackenParams(1.0, 3.0, 1.0, 0.0);
    const Trajectory traj = generate(truth, ForceState(2.0, 1.0));
    const FitResult fit = fit_bracken(traj);

    CHECK(std::fabs(implied_invariant(fit, ForceState(2.0, 1.0)) - 1.0) <= 0.05);

    const double reference = implied_invariant(fit, std::get<ForceState>(traj.samples().front().state));
    const double denom = std::fmax(1.0, std::fabs(reference));
    double max_drift = 0.0;
    for (const Sample& sample : traj.samples()) {
        const double value = implied_invariant(fit, std::get<ForceState>(sample.state));
        max_drift = std::fmax(max_drift, std::fabs(value - reference) / denom);
    }
    CHECK(max_drift <= 10.0 * std::fmax(fit.residual, 1e-6));
}

TEST_CASE("implied_invariant delegates the degenerate forms") {
    // alpha = 0: logarithmic conserved quantity
    const FitResult log_case{BrackenParams(2.0, 1.0, 0.0, 1.0), 0.0, 0.0, 10};
    CHECK(implied_invariant(log_case, ForceState(std::exp(1.0), 1.0)) ==
          doctest::Approx(2.0).epsilon(1e-14));

    // p = q: linear law r R - g G
    const FitResult linear_case{BrackenParams(2.0, 0.5, 1.0, 1.0), 1.0, 0.0, 10};
    CHECK(implied_invariant(linear_case, ForceState(10.0, 4.0)) ==
          doctest::Approx(18.0).epsilon(1e-14));
}

TEST_CASE("fit_bracken: constant trajectory is unfittable") {
    std::vector<TimedForce> flat;
    for (int i = 0; i < 50; ++i) flat.push_back({0.1 * i, ForceState(10.0, 5.0)});
    CHECK_THROWS_AS(fit_bracken(flat), InsufficientDataError);
}

TEST_CASE("fit_bracken: too few samples") {
    std::vector<TimedForce> tiny;
    for (int i = 0; i < 5; ++i)
        tiny.push_back({0.1 * i, ForceState(10.0 - i, 5.0 - 0.5 * i)});
    CHECK_THROWS_AS(fit_bracken(tiny), InsufficientDataError);
}

TEST_CASE("fit_bracken: symmetric battles cannot separate p from q") {
    // R(t) == G(t) exactly makes the log-strength regressors collinear
    std::vector<TimedForce> mirror;
    for (int i = 0; i <= 100; ++i) {
        const double v = 10.0 * std::exp(-0.05 * i);
        mirror.push_back({0.05 * i, ForceState(v, v)});
    }
    CHECK_THROWS_AS(fit_bracken(mirror), DegenerateFitError);
}

TEST_CASE("fit_bracken: window hygiene") {
    SUBCASE("trailing zeros from a finished battle are trimmed") {
        const Trajectory traj = generate(ModelSpec(BrackenParams(1.0, 3.0, 1.0, 0.0)),
                                         ForceState(2.0, 1.0));
        std::vector<TimedForce> series;
        for (const Sample& s : traj.samples())
            series.push_back({s.t, std::get<ForceState>(s.state)});
        const double t_end = series.back().t;
        series.push_back({t_end + 1.0, ForceState(1.0, 0.0)});
        series.push_back({t_end + 2.0, ForceState(1.0, 0.0)});
        const FitResult fit = fit_bracken(series);
        CHECK(std::fabs(fit.params.p() - 1.0) <= 0.05);
    }
    SUBCASE("a zero inside the window is a domain error") {
        std::vector<TimedForce> series;
        for (int i = 0; i < 20; ++i)
            series.push_back({0.1 * i, ForceState(10.0 - 0.2 * i, 8.0 - 0.1 * i)});
        series[10] = {series[10].t, ForceState(0.0, 7.0)};
        CHECK_THROWS_AS(fit_bracken(series), std::domain_error);
    }
    SUBCASE("non-increasing times are rejected") {
        std::vector<TimedForce> series{{0.0, ForceState(2, 1)}, {0.0, ForceState(2, 1)}};
        CHECK_THROWS_AS(fit_bracken(series), std::invalid_argument);
    }
    SUBCASE("mixed trajectories are rejected") {
        const ModelSpec model = MixedParams(1.0, 1.0, 2.0);
        const State initial(MixedState(10.0, 5.0, 5.0));
        const Trajectory traj =
            integrate(model, initial, default_controls(model, initial)).trajectory;
        CHECK_THROWS_AS(fit_bracken(traj), std::invalid_argument);
    }
}
