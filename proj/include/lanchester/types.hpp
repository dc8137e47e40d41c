#pragma once

#include <stdexcept>
#include <variant>

namespace lanchester {

/// Battle verdict under a conserved-quantity model: the sign of the
/// invariant decides which side can be driven to zero.
enum class Verdict { RedWins, GreenWins, Draw };

const char* to_string(Verdict v) noexcept;

/// Requested quantity is not defined for the given model (for example a
/// conserved quantity for the asymmetric model).
class UnsupportedModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {
double checked_nonnegative(double value, const char* name);
double checked_positive(double value, const char* name);
}

/// Current strengths of the two sides. Units are abstract combat units;
/// fractional values are allowed.
class ForceState {
public:
    /// Empty battlefield.
    ForceState() noexcept : red_(0.0), green_(0.0) {}
    /// Throws std::invalid_argument if either strength is negative or not finite.
    ForceState(double red, double green);

    double red() const noexcept { return red_; }
    double green() const noexcept { return green_; }

private:
    double red_;
    double green_;
};

/// Red against a green force composed of two unit types of different
/// effectiveness. Total green strength is green1 + green2.
class MixedState {
public:
    MixedState(double red, double green1, double green2);

    double red() const noexcept { return red_; }
    double green1() const noexcept { return green1_; }
    double green2() const noexcept { return green2_; }
    double green_total() const noexcept { return green1_ + green2_; }

private:
    double red_;
    double green1_;
    double green2_;
};

/// Instantaneous strength derivatives. All models are pure attrition, so
/// every component is <= 0.
struct ForceRate {
    double red = 0.0;
    double green = 0.0;
};

struct MixedRate {
    double red = 0.0;
    double green1 = 0.0;
    double green2 = 0.0;
};

using State = std::variant<ForceState, MixedState>;
using Rate = std::variant<ForceRate, MixedRate>;

/// Red strength of a state of either shape.
double red_of(const State& state) noexcept;
/// Green strength (total over both components for mixed states).
double green_of(const State& state) noexcept;

/// Aimed (directed) fire: each unit acquires targets independently, so a
/// side's losses are proportional to enemy numbers. Effectiveness is enemy
/// units destroyed per friendly unit per unit time.
class AimedParams {
public:
    AimedParams(double r, double g);

    double r() const noexcept { return r_; }
    double g() const noexcept { return g_; }

private:
    double r_;
    double g_;
};

/// Unaimed (area) fire: fire lands at random in the enemy's dispersal area,
/// so losses are proportional to the product of both sides' numbers and
/// inversely proportional to the target area.
class UnaimedParams {
public:
    UnaimedParams(double r, double g, double area_red, double area_green);

    double r() const noexcept { return r_; }
    double g() const noexcept { return g_; }
    double area_red() const noexcept { return area_red_; }
    double area_green() const noexcept { return area_green_; }

private:
    double r_;
    double g_;
    double area_red_;
    double area_green_;
};

/// Constant-rate attrition (hand-to-hand combat without firearms): each side
/// loses units at a fixed rate while both are engaged.
class ConstantParams {
public:
    ConstantParams(double r, double g);

    double r() const noexcept { return r_; }
    double g() const noexcept { return g_; }

private:
    double r_;
    double g_;
};

/// Aimed fire with two green unit types of effectiveness g1 and g2. Red's
/// fire is spread over the green components in proportion to their numbers.
class MixedParams {
public:
    MixedParams(double r, double g1, double g2);

    double r() const noexcept { return r_; }
    double g1() const noexcept { return g1_; }
    double g2() const noexcept { return g2_; }

private:
    double r_;
    double g1_;
    double g2_;
};

/// Generalized attrition with empirical exponents: a side's loss rate scales
/// as enemy^p * own^q. p = 1, q = 0 recovers aimed fire.
class BrackenParams {
public:
    /// p and q are unrestricted reals; r and g must be positive.
    BrackenParams(double r, double g, double p, double q);

    double r() const noexcept { return r_; }
    double g() const noexcept { return g_; }
    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }

private:
    double r_;
    double g_;
    double p_;
    double q_;
};

/// Target-rich asymmetric regime: a small, highly effective green force
/// kills in proportion to both force sizes while red cannot bring its
/// numbers to bear. red_ref is the red strength the green kill rate is
/// normalized against (the initial red strength).
class AsymmetricParams {
public:
    /// g may be zero (green unable to fight); r and red_ref must be positive.
    AsymmetricParams(double r, double g, double red_ref);

    double r() const noexcept { return r_; }
    double g() const noexcept { return g_; }
    double red_ref() const noexcept { return red_ref_; }

private:
    double r_;
    double g_;
    double red_ref_;
};

/// Exactly one of the six attrition models. MixedParams pairs with
/// MixedState; every other model pairs with ForceState.
using ModelSpec = std::variant<AimedParams, UnaimedParams, ConstantParams,
                               MixedParams, BrackenParams, AsymmetricParams>;

enum class ModelKind { Aimed, Unaimed, Constant, Mixed, Bracken, Asymmetric };

ModelKind model_kind(const ModelSpec& model) noexcept;
const char* to_string(ModelKind kind) noexcept;

/// True for every model with a conserved quantity (all but asymmetric).
bool has_invariant(const ModelSpec& model) noexcept;

/// True when the model requires a MixedState.
bool is_mixed_model(const ModelSpec& model) noexcept;

}  // namespace lanchester
