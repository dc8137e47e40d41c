#include "lanchester/analytic.hpp"

#include <cmath>

#include "lanchester/model.hpp"

namespace lanchester {

namespace {

double artanh(double m) {
    return 0.5 * std::log((1.0 + m) / (1.0 - m));
}

}  // namespace

ForceState aimed_state_at(const AimedParams& params, const ForceState& initial, double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("time t must be a finite value >= 0");
    if (t == 0.0) return initial;

    const Verdict verdict = predict_winner(ModelSpec(params), State(initial));
    const double k = std::sqrt(params.r() * params.g());

    if (verdict == Verdict::Draw) {
        // Matched strengths: the growing mode has zero amplitude (up to the
        // draw band), leaving the pure decay R0 e^{-kt}, G0 e^{-kt} scaled to
        // the average of the two strength terms.
        const double decay = std::exp(-k * t);
        const double red = 0.5 * (initial.red() + std::sqrt(params.g() / params.r()) * initial.green());
        const double green = 0.5 * (initial.green() + std::sqrt(params.r() / params.g()) * initial.red());
        return ForceState(red * decay, green * decay);
    }

    const TerminalResult terminal = aimed_terminal(params, initial);
    if (t >= *terminal.end_time) {
        if (verdict == Verdict::RedWins) return ForceState(terminal.survivors, 0.0);
        return ForceState(0.0, terminal.survivors);
    }

    // cosh/sinh written out as exponentials; for t <= end_time the growing
    // term stays bounded by the survivor level.
    const double up = std::exp(k * t);
    const double down = std::exp(-k * t);
    const double ratio_gr = std::sqrt(params.g() / params.r());
    const double ratio_rg = std::sqrt(params.r() / params.g());
    const double red = 0.5 * ((initial.red() - ratio_gr * initial.green()) * up +
                              (initial.red() + ratio_gr * initial.green()) * down);
    const double green = 0.5 * ((initial.green() - ratio_rg * initial.red()) * up +
                                (initial.green() + ratio_rg * initial.red()) * down);
    return ForceState(std::fmax(red, 0.0), std::fmax(green, 0.0));
}

TerminalResult aimed_terminal(const AimedParams& params, const ForceState& initial) {
    if (initial.red() == 0.0 && initial.green() == 0.0)
        throw std::invalid_argument("terminal state is undefined when both sides start at zero");

    const ModelSpec model(params);
    const Verdict verdict = predict_winner(model, State(initial));
    if (verdict == Verdict::Draw) return {Verdict::Draw, std::nullopt, 0.0};

    const double value = invariant(model, State(initial));
    const double k = std::sqrt(params.r() * params.g());
    const double red_term = std::sqrt(params.r()) * initial.red();
    const double green_term = std::sqrt(params.g()) * initial.green();

    TerminalResult out;
    out.verdict = verdict;
    if (verdict == Verdict::RedWins) {
        out.survivors = std::sqrt(value / params.r());
        out.end_time = artanh(green_term / red_term) / k;
    } else {
        out.survivors = std::sqrt(-value / params.g());
        out.end_time = artanh(red_term / green_term) / k;
    }
    return out;
}

ForceState asym_state_at(const AsymmetricParams& params, const ForceState& initial, double t) {
    if (initial.red() != params.red_ref())
        throw std::invalid_argument("initial red strength must equal the model's red_ref");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("time t must be a finite value >= 0");

    const double green = initial.green() * std::exp(-params.r() * t);
    const double exponent = params.g() * initial.green() / (params.r() * initial.red()) *
                            std::expm1(-params.r() * t);
    return ForceState(initial.red() * std::exp(exponent), green);
}

double asym_limit(const AsymmetricParams& params, const ForceState& initial) {
    if (initial.red() != params.red_ref())
        throw std::invalid_argument("initial red strength must equal the model's red_ref");
    return initial.red() * std::exp(-params.g() * initial.green() / (params.r() * initial.red()));
}

}  // namespace lanchester
