#include "lanchester/types.hpp"

#include <cmath>
#include <string>
#include <type_traits>

namespace lanchester {

namespace detail {

double checked_nonnegative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value))
        throw std::invalid_argument(std::string(name) + " must be a finite value >= 0");
    return value;
}

double checked_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw std::invalid_argument(std::string(name) + " must be a finite value > 0");
    return value;
}

}  // namespace detail

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::RedWins: return "red";
        case Verdict::GreenWins: return "green";
        case Verdict::Draw: return "draw";
    }
    return "?";
}

ForceState::ForceState(double red, double green)
    : red_(detail::checked_nonnegative(red, "red")),
      green_(detail::checked_nonnegative(green, "green")) {}

MixedState::MixedState(double red, double green1, double green2)
    : red_(detail::checked_nonnegative(red, "red")),
      green1_(detail::checked_nonnegative(green1, "green1")),
      green2_(detail::checked_nonnegative(green2, "green2")) {}

double red_of(const State& state) noexcept {
    return std::visit([](const auto& s) { return s.red(); }, state);
}

double green_of(const State& state) noexcept {
    if (const auto* mixed = std::get_if<MixedState>(&state)) return mixed->green_total();
    return std::get<ForceState>(state).green();
}

AimedParams::AimedParams(double r, double g)
    : r_(detail::checked_positive(r, "r")), g_(detail::checked_positive(g, "g")) {}

UnaimedParams::UnaimedParams(double r, double g, double area_red, double area_green)
    : r_(detail::checked_positive(r, "r")),
      g_(detail::checked_positive(g, "g")),
      area_red_(detail::checked_positive(area_red, "area_red")),
      area_green_(detail::checked_positive(area_green, "area_green")) {}

ConstantParams::ConstantParams(double r, double g)
    : r_(detail::checked_positive(r, "r")), g_(detail::checked_positive(g, "g")) {}

MixedParams::MixedParams(double r, double g1, double g2)
    : r_(detail::checked_positive(r, "r")),
      g1_(detail::checked_positive(g1, "g1")),
      g2_(detail::checked_positive(g2, "g2")) {}

BrackenParams::BrackenParams(double r, double g, double p, double q)
    : r_(detail::checked_positive(r, "r")), g_(detail::checked_positive(g, "g")), p_(p), q_(q) {
    if (!std::isfinite(p) || !std::isfinite(q))
        throw std::invalid_argument("p and q must be finite");
}

AsymmetricParams::AsymmetricParams(double r, double g, double red_ref)
    : r_(detail::checked_positive(r, "r")),
      g_(detail::checked_nonnegative(g, "g")),
      red_ref_(detail::checked_positive(red_ref, "red_ref")) {}

// ModelKind values mirror the ModelSpec alternative order.
static_assert(std::is_same_v<std::variant_alternative_t<static_cast<std::size_t>(ModelKind::Aimed), ModelSpec>, AimedParams>);
static_assert(std::is_same_v<std::variant_alternative_t<static_cast<std::size_t>(ModelKind::Unaimed), ModelSpec>, UnaimedParams>);
static_assert(std::is_same_v<std::variant_alternative_t<static_cast<std::size_t>(ModelKind::Constant), ModelSpec>, ConstantParams>);
static_assert(std::is_same_v<std::variant_alternative_t<static_cast<std::size_t>(ModelKind::Mixed), ModelSpec>, MixedParams>);
static_assert(std::is_same_v<std::variant_alternative_t<static_cast<std::size_t>(ModelKind::Bracken), ModelSpec>, BrackenParams>);
static_assert(std::is_same_v<std::variant_alternative_t<static_cast<std::size_t>(ModelKind::Asymmetric), ModelSpec>, AsymmetricParams>);

ModelKind model_kind(const ModelSpec& model) noexcept {
    return static_cast<ModelKind>(model.index());
}

const char* to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::Aimed: return "aimed";
        case ModelKind::Unaimed: return "unaimed";
        case ModelKind::Constant: return "constant";
        case ModelKind::Mixed: return "mixed";
        case ModelKind::Bracken: return "bracken";
        case ModelKind::Asymmetric: return "asymmetric";
    }
    return "?";
}

bool has_invariant(const ModelSpec& model) noexcept {
    return model_kind(model) != ModelKind::Asymmetric;
}

bool is_mixed_model(const ModelSpec& model) noexcept {
    return model_kind(model) == ModelKind::Mixed;
}

}  // namespace lanchester
