#include "lanchester/model.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace lanchester {

namespace {

// 0^negative is the singular case; 0^0 follows the usual convention of 1.
double checked_pow(double base, double expo) {
    if (base == 0.0 && expo < 0.0)
        throw std::domain_error("singular power: zero strength raised to a negative exponent");
    return std::pow(base, expo);
}

const ForceState& plain_state(const ModelSpec& model, const State& state) {
    if (const auto* s = std::get_if<ForceState>(&state)) return *s;
    throw std::invalid_argument(std::string(to_string(model_kind(model))) +
                                " model requires a plain red/green state, got a mixed state");
}

const MixedState& mixed_state(const State& state) {
    if (const auto* s = std::get_if<MixedState>(&state)) return *s;
    throw std::invalid_argument("mixed model requires a mixed state with green1/green2");
}

// Fighting-strength terms of the conserved quantity, red and green side.
// The invariant is their difference; predict_winner scales its draw band by
// the red term.
struct StrengthTerms {
    double red;
    double green;
};

StrengthTerms strength_terms(const ModelSpec& model, const State& state) {
    switch (model_kind(model)) {
        case ModelKind::Aimed: {
            const auto& p = std::get<AimedParams>(model);
            const auto& s = plain_state(model, state);
            return {p.r() * (s.red() * s.red()), p.g() * (s.green() * s.green())};
        }
        case ModelKind::Unaimed: {
            const auto& p = std::get<UnaimedParams>(model);
            const auto& s = plain_state(model, state);
            return {p.r() / p.area_green() * s.red(), p.g() / p.area_red() * s.green()};
        }
        case ModelKind::Constant: {
            const auto& p = std::get<ConstantParams>(model);
            const auto& s = plain_state(model, state);
            return {p.r() * s.red(), p.g() * s.green()};
        }
        case ModelKind::Mixed: {
            const auto& p = std::get<MixedParams>(model);
            const auto& s = mixed_state(state);
            const double firepower = p.g1() * s.green1() + p.g2() * s.green2();
            return {p.r() * s.red() * s.red(), firepower * s.green_total()};
        }
        case ModelKind::Bracken: {
            const auto& p = std::get<BrackenParams>(model);
            const auto& s = plain_state(model, state);
            const double a = alpha(p.p(), p.q());
            if (a == 0.0) {
                // Limit of the power form: separation of variables gives the
                // logarithmic conserved quantity when p - q = -1.
                if (s.red() == 0.0 || s.green() == 0.0)
                    throw std::domain_error(
                        "bracken invariant with alpha = 0 is undefined at zero strength");
                return {p.r() * std::log(s.red()), p.g() * std::log(s.green())};
            }
            return {p.r() * checked_pow(s.red(), a), p.g() * checked_pow(s.green(), a)};
        }
        case ModelKind::Asymmetric:
            throw UnsupportedModelError("asymmetric model has no conserved quantity");
    }
    std::abort();  // unreachable
}

}  // namespace

Rate rate(const ModelSpec& model, const State& state) {
    switch (model_kind(model)) {
        case ModelKind::Aimed: {
            const auto& p = std::get<AimedParams>(model);
            const auto& s = plain_state(model, state);
            return ForceRate{-p.g() * s.green(), -p.r() * s.red()};
        }
        case ModelKind::Unaimed: {
            const auto& p = std::get<UnaimedParams>(model);
            const auto& s = plain_state(model, state);
            return ForceRate{-p.g() * s.green() * s.red() / p.area_red(),
                             -p.r() * s.red() * s.green() / p.area_green()};
        }
        case ModelKind::Constant: {
            const auto& p = std::get<ConstantParams>(model);
            plain_state(model, state);
            return ForceRate{-p.g(), -p.r()};
        }
        case ModelKind::Mixed: {
            const auto& p = std::get<MixedParams>(model);
            const auto& s = mixed_state(state);
            const double total = s.green_total();
            MixedRate out;
            out.red = -(p.g1() * s.green1() + p.g2() * s.green2());
            if (total > 0.0) {
                const double pressure = p.r() * s.red() / total;
                out.green1 = -pressure * s.green1();
                out.green2 = -pressure * s.green2();
            }
            return out;
        }
        case ModelKind::Bracken: {
            const auto& p = std::get<BrackenParams>(model);
            const auto& s = plain_state(model, state);
            return ForceRate{-p.g() * checked_pow(s.red(), p.q()) * checked_pow(s.green(), p.p()),
                             -p.r() * checked_pow(s.red(), p.p()) * checked_pow(s.green(), p.q())};
        }
        case ModelKind::Asymmetric: {
            const auto& p = std::get<AsymmetricParams>(model);
            const auto& s = plain_state(model, state);
            return ForceRate{-p.g() * s.green() * s.red() / p.red_ref(), -p.r() * s.green()};
        }
    }
    std::abort();  // unreachable
}

double invariant(const ModelSpec& model, const State& state) {
    const StrengthTerms terms = strength_terms(model, state);
    return terms.red - terms.green;
}

double alpha(double p, double q) noexcept {
    return 1.0 + p - q;
}

double average_effectiveness(const MixedParams& params, const MixedState& state) {
    const double total = state.green_total();
    if (total <= 0.0)
        throw std::domain_error("average effectiveness is undefined for a zero green force");
    return (params.g1() * state.green1() + params.g2() * state.green2()) / total;
}

Verdict predict_winner(const ModelSpec& model, const State& initial) {
    const StrengthTerms terms = strength_terms(model, initial);
    const double value = terms.red - terms.green;
    const double band = 1e-12 * std::fabs(terms.red);
    if (value > band) return Verdict::RedWins;
    if (value < -band) return Verdict::GreenWins;
    return Verdict::Draw;
}

std::pair<AimedParams, ForceState> rescale_units(const AimedParams& params,
                                                 const ForceState& initial, double n) {
    if (!(n >= 1.0) || !std::isfinite(n))
        throw std::invalid_argument("group size n must be a finite value >= 1");
    return {AimedParams(params.r() / n, params.g() * n),
            ForceState(initial.red(), initial.green() / n)};
}

}  // namespace lanchester
