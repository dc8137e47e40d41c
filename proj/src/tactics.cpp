#include "lanchester/tactics.hpp"

#include <cmath>

#include "lanchester/analytic.hpp"
#include "lanchester/model.hpp"

namespace lanchester {

DivisionPlan divide_and_conquer(const AimedParams& params, double red_total,
                                double green_total, int n) {
    if (n < 1) throw std::invalid_argument("number of parts n must be >= 1");
    detail::checked_nonnegative(red_total, "red_total");
    detail::checked_nonnegative(green_total, "green_total");

    const double part = red_total / n;
    DivisionPlan plan;
    plan.n_parts = n;
    plan.phases.reserve(static_cast<std::size_t>(n));

    double green = green_total;
    double red_remaining = 0.0;  // accumulated red survivors across phases
    for (int k = 0; k < n; ++k) {
        DivisionPhase phase{part, 0.0, green, 0.0};
        if (green == 0.0) {
            // Green already destroyed: this part never fights.
            phase.red_surviving = part;
        } else if (part == 0.0) {
            phase.green_surviving = green;
        } else {
            const TerminalResult result = aimed_terminal(params, ForceState(part, green));
            if (result.verdict == Verdict::GreenWins)
                phase.green_surviving = result.survivors;
            else if (result.verdict == Verdict::RedWins)
                phase.red_surviving = result.survivors;
            // Draw: mutual asymptotic annihilation, both sides end at zero.
        }
        red_remaining += phase.red_surviving;
        green = phase.green_surviving;
        plan.phases.push_back(phase);
    }

    plan.final_green = green;
    plan.final_invariant =
        invariant(ModelSpec(params), State(ForceState(red_remaining, green)));
    return plan;
}

SupportSplit support_strength(double n_total, double p_fighting, double f0, double kappa) {
    detail::checked_positive(n_total, "n_total");
    detail::checked_positive(p_fighting, "p_fighting");
    detail::checked_positive(f0, "f0");
    if (p_fighting > n_total)
        throw std::invalid_argument("fighting count must not exceed the total");
    if (!(kappa >= 0.0 && kappa < 2.0))
        throw std::invalid_argument("kappa must lie in [0, 2)");

    const double support = n_total - p_fighting;
    const double effectiveness = f0 * std::pow(support / p_fighting, kappa);
    return {n_total,       p_fighting,    support, kappa,
            f0,            effectiveness, effectiveness * p_fighting * p_fighting};
}

double optimal_fighting_fraction(double kappa) {
    if (!(kappa >= 0.0 && kappa < 2.0))
        throw std::invalid_argument("kappa must lie in [0, 2)");
    return 1.0 - kappa / 2.0;
}

SupportSplit optimal_support_split(double n_total, double f0, double kappa) {
    detail::checked_positive(n_total, "n_total");
    const double target = optimal_fighting_fraction(kappa) * n_total;
    const double lo = std::fmin(std::fmax(std::floor(target), 1.0), n_total);
    const double hi = std::fmin(std::fmax(std::ceil(target), 1.0), n_total);
    const SupportSplit at_lo = support_strength(n_total, lo, f0, kappa);
    if (hi == lo) return at_lo;
    const SupportSplit at_hi = support_strength(n_total, hi, f0, kappa);
    return at_hi.strength > at_lo.strength ? at_hi : at_lo;
}

double total_effectiveness_at_ratio(double s, double kappa, double f0) {
    detail::checked_nonnegative(s, "support ratio");
    detail::checked_positive(f0, "f0");
    if (!(kappa >= 0.0 && kappa < 2.0))
        throw std::invalid_argument("kappa must lie in [0, 2)");
    return f0 * std::pow(s, kappa) / ((1.0 + s) * (1.0 + s));
}

double infer_kappa(double optimal_ratio) {
    detail::checked_positive(optimal_ratio, "optimal_ratio");
    return 2.0 * optimal_ratio / (1.0 + optimal_ratio);
}

}  // namespace lanchester
