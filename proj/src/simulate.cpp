#include "lanchester/simulate.hpp"

#include <array>
#include <cmath>
#include <string>

#include "lanchester/model.hpp"

namespace lanchester {

SimControls::SimControls(double dt, double t_max, double stop_threshold)
    : dt_(dt), t_max_(t_max), stop_threshold_(stop_threshold) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("dt must be a finite value > 0");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw std::invalid_argument("t_max must be a finite value > 0");
    if (dt > t_max) throw std::invalid_argument("dt must not exceed t_max");
    if (!(stop_threshold >= 0.0) || !std::isfinite(stop_threshold))
        throw std::invalid_argument("stop_threshold must be a finite value >= 0");
}

Trajectory::Trajectory(ModelSpec model, std::vector<Sample> samples)
    : model_(std::move(model)), samples_(std::move(samples)) {
    if (samples_.empty()) throw std::invalid_argument("trajectory must contain at least one sample");
    if (samples_.front().t != 0.0) throw std::invalid_argument("trajectory must start at t = 0");
    const bool mixed = is_mixed_model(model_);
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        if (i > 0 && !(samples_[i].t > samples_[i - 1].t))
            throw std::invalid_argument("trajectory times must be strictly increasing");
        if (std::holds_alternative<MixedState>(samples_[i].state) != mixed)
            throw std::invalid_argument("trajectory sample shape does not match the model");
    }
}

namespace {

// Small fixed-size state vector: (red, green) or (red, green1, green2).
struct Flat {
    std::array<double, 3> x{};
    int n = 2;
};

Flat flatten(const State& s) {
    if (const auto* m = std::get_if<MixedState>(&s))
        return {{m->red(), m->green1(), m->green2()}, 3};
    const auto& p = std::get<ForceState>(s);
    return {{p.red(), p.green(), 0.0}, 2};
}

State unflatten(const Flat& f) {
    if (f.n == 3) return MixedState(f.x[0], f.x[1], f.x[2]);
    return ForceState(f.x[0], f.x[1]);
}

Flat clamped(Flat f) {
    for (int i = 0; i < f.n; ++i) f.x[i] = std::fmax(f.x[i], 0.0);
    return f;
}

bool all_finite(const Flat& f) {
    for (int i = 0; i < f.n; ++i)
        if (!std::isfinite(f.x[i])) return false;
    return true;
}

double green_total(const Flat& f) {
    return f.n == 3 ? f.x[1] + f.x[2] : f.x[1];
}

Flat eval_rate(const ModelSpec& model, const Flat& f) {
    const Rate r = rate(model, unflatten(f));
    if (const auto* m = std::get_if<MixedRate>(&r)) return {{m->red, m->green1, m->green2}, 3};
    const auto& p = std::get<ForceRate>(r);
    return {{p.red, p.green, 0.0}, 2};
}

Flat axpy(const Flat& x, double a, const Flat& k) {
    Flat out = x;
    for (int i = 0; i < x.n; ++i) out.x[i] += a * k.x[i];
    return out;
}

// One classical RK4 step. Stage inputs are clamped to the nonnegative
// orthant: the rate laws are only physical there, and fractional-power
// models are undefined below zero.
Flat rk4_step(const ModelSpec& model, const Flat& x, double h) {
    const double half = 0.5 * h;
    const Flat k1 = eval_rate(model, clamped(x));
    const Flat k2 = eval_rate(model, clamped(axpy(x, half, k1)));
    const Flat k3 = eval_rate(model, clamped(axpy(x, half, k2)));
    const Flat k4 = eval_rate(model, clamped(axpy(x, h, k3)));
    Flat out = x;
    const double w = h / 6.0;
    for (int i = 0; i < x.n; ++i)
        out.x[i] += w * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
    return out;
}

void require_shape(const ModelSpec& model, const State& initial) {
    if (is_mixed_model(model) != std::holds_alternative<MixedState>(initial)) {
        if (is_mixed_model(model))
            throw std::invalid_argument("mixed model requires a mixed state with green1/green2");
        throw std::invalid_argument(std::string(to_string(model_kind(model))) +
                                    " model requires a plain red/green state, got a mixed state");
    }
}

// Tracks the relative drift of the conserved quantity along a run. Models
// without an invariant report nothing; states where the invariant is
// singular (for example a clamped zero under a logarithmic form) are
// skipped, and a singular initial state disables the audit entirely.
class DriftAudit {
public:
    DriftAudit(const ModelSpec& model, const State& initial) : model_(model) {
        if (!has_invariant(model_)) return;
        try {
            reference_ = invariant(model_, initial);
        } catch (const std::domain_error&) {
            return;
        }
        active_ = true;
        denom_ = std::fmax(1.0, std::fabs(reference_));
    }

    void observe(const State& state) {
        if (!active_) return;
        try {
            const double value = invariant(model_, state);
            max_drift_ = std::fmax(max_drift_, std::fabs(value - reference_) / denom_);
        } catch (const std::domain_error&) {
        }
    }

    std::optional<double> result() const {
        if (!active_) return std::nullopt;
        return max_drift_;
    }

private:
    const ModelSpec& model_;
    bool active_ = false;
    double reference_ = 0.0;
    double denom_ = 1.0;
    double max_drift_ = 0.0;
};

Verdict elimination_verdict(const Flat& f, double threshold) {
    const bool red_out = f.x[0] <= threshold;
    const bool green_out = green_total(f) <= threshold;
    if (red_out && green_out) return Verdict::Draw;
    return green_out ? Verdict::RedWins : Verdict::GreenWins;
}

// Double-double helpers for the salvo conservation audit. Error-free
// transformations keep the identity comparison exact to far below one ulp
// without relying on extended-precision hardware.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DD dd_renorm(double hi, double lo) {
    const double s = hi + lo;
    return {s, lo - (s - hi)};
}

DD dd_add(const DD& a, const DD& b) {
    const DD s = two_sum(a.hi, b.hi);
    return dd_renorm(s.hi, s.lo + a.lo + b.lo);
}

DD dd_neg(const DD& a) { return {-a.hi, -a.lo}; }

DD dd_mul(const DD& a, const DD& b) {
    const DD p = two_prod(a.hi, b.hi);
    return dd_renorm(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

double dd_div_to_double(const DD& num, const DD& den) {
    const double q = num.hi / den.hi;
    const DD residual = dd_add(num, dd_neg(dd_mul({q, 0.0}, den)));
    return q + residual.hi / den.hi;
}

constexpr std::size_t kMaxRecordedSamples = 100000;

// Append-with-thinning: once the record exceeds the cap, every other sample
// is dropped and the recording stride doubles.
class SampleRecorder {
public:
    explicit SampleRecorder(Sample first) { samples_.push_back(std::move(first)); }

    void on_step(double t, const State& state) {
        if (step_ % stride_ == 0) {
            samples_.push_back({t, state});
            if (samples_.size() > kMaxRecordedSamples) thin();
        }
        ++step_;
    }

    // The terminal sample is always kept, replacing a same-time tail entry.
    void finish(double t, const State& state) {
        if (samples_.back().t >= t)
            samples_.back() = {t, state};
        else
            samples_.push_back({t, state});
    }

    std::vector<Sample> take() { return std::move(samples_); }

private:
    void thin() {
        std::vector<Sample> kept;
        kept.reserve(samples_.size() / 2 + 1);
        for (std::size_t i = 0; i < samples_.size(); i += 2) kept.push_back(samples_[i]);
        samples_.swap(kept);
        stride_ *= 2;
    }

    std::vector<Sample> samples_;
    std::size_t stride_ = 1;
    std::size_t step_ = 0;
};

}  // namespace

SimControls default_controls(const ModelSpec& model, const State& initial) {
    require_shape(model, initial);
    const double red = red_of(initial);
    const double green = green_of(initial);

    // Fastest relative decay rate at the initial state; the battle lives on
    // the timescale of its inverse.
    std::array<double, 3> candidates{};
    std::size_t count = 0;
    switch (model_kind(model)) {
        case ModelKind::Aimed: {
            const auto& p = std::get<AimedParams>(model);
            candidates = {p.r(), p.g()};
            count = 2;
            break;
        }
        case ModelKind::Unaimed: {
            const auto& p = std::get<UnaimedParams>(model);
            candidates = {p.g() / p.area_red() * green, p.r() / p.area_green() * red};
            count = 2;
            break;
        }
        case ModelKind::Constant: {
            const auto& p = std::get<ConstantParams>(model);
            candidates = {p.g() / red, p.r() / green};
            count = 2;
            break;
        }
        case ModelKind::Mixed: {
            const auto& p = std::get<MixedParams>(model);
            candidates = {p.r(), p.g1(), p.g2()};
            count = 3;
            break;
        }
        case ModelKind::Bracken: {
            const auto& p = std::get<BrackenParams>(model);
            candidates = {p.g() * std::pow(red, p.q() - 1.0) * std::pow(green, p.p()),
                          p.r() * std::pow(red, p.p()) * std::pow(green, p.q() - 1.0)};
            count = 2;
            break;
        }
        case ModelKind::Asymmetric: {
            const auto& p = std::get<AsymmetricParams>(model);
            candidates = {p.r(), p.g() * green / red};
            count = 2;
            break;
        }
    }
    double pace = 0.0;
    for (std::size_t i = 0; i < count; ++i)
        if (std::isfinite(candidates[i])) pace = std::fmax(pace, candidates[i]);
    if (!(pace > 0.0)) pace = 1.0;

    const double threshold = 1e-6 * std::fmin(red, green);
    return SimControls(1e-3 / pace, 50.0 / pace, threshold);
}

SimResult integrate(const ModelSpec& model, const State& initial, const SimControls& controls) {
    require_shape(model, initial);

    const double dt = controls.dt();
    const double t_max = controls.t_max();
    const double threshold = controls.stop_threshold();
    const double bisect_tol = dt * 1e-3;

    DriftAudit drift(model, initial);
    SampleRecorder recorder(Sample{0.0, initial});

    Flat cur = flatten(initial);
    double t = 0.0;

    SimOutcome outcome;
    outcome.final_state = initial;

    if (cur.x[0] <= threshold || green_total(cur) <= threshold) {
        // A side is already eliminated; nothing to integrate.
        outcome.verdict = elimination_verdict(cur, threshold);
        outcome.end_time = 0.0;
        outcome.max_drift = drift.result();
        return {Trajectory(model, recorder.take()), outcome};
    }

    while (t < t_max) {
        const double h = std::fmin(dt, t_max - t);
        Flat next = rk4_step(model, cur, h);
        if (!all_finite(next))
            throw NumericalFailure("state became nonfinite during integration",
                                   {t, unflatten(cur)});
        next = clamped(next);

        if (next.x[0] <= threshold || green_total(next) <= threshold) {
            // Bisect the step length to land on the crossing.
            double lo = 0.0, hi = h;
            Flat at_hi = next;
            while (hi - lo > bisect_tol) {
                const double mid = 0.5 * (lo + hi);
                Flat probe = rk4_step(model, cur, mid);
                if (!all_finite(probe))
                    throw NumericalFailure("state became nonfinite during event bisection",
                                           {t, unflatten(cur)});
                probe = clamped(probe);
                if (probe.x[0] <= threshold || green_total(probe) <= threshold) {
                    hi = mid;
                    at_hi = probe;
                } else {
                    lo = mid;
                }
            }
            const double t_end = t + hi;
            const State final_state = unflatten(at_hi);
            drift.observe(final_state);
            recorder.finish(t_end, final_state);
            outcome.verdict = elimination_verdict(at_hi, threshold);
            outcome.end_time = t_end;
            outcome.final_state = final_state;
            outcome.max_drift = drift.result();
            return {Trajectory(model, recorder.take()), outcome};
        }

        t += h;
        cur = next;
        const State state = unflatten(cur);
        drift.observe(state);
        recorder.on_step(t, state);
    }

    // Horizon reached with both sides still standing.
    const State final_state = unflatten(cur);
    recorder.finish(t, final_state);
    outcome.verdict = std::nullopt;
    outcome.end_time = t_max;
    outcome.final_state = final_state;
    outcome.max_drift = drift.result();
    return {Trajectory(model, recorder.take()), outcome};
}

ForceState discrete_step(const AimedParams& params, const ForceState& state) {
    return ForceState(std::fmax(0.0, state.red() - params.g() * state.green()),
                      std::fmax(0.0, state.green() - params.r() * state.red()));
}

SalvoCheck salvo_invariant_check(const AimedParams& params, const ForceState& state) {
    const DD r{params.r(), 0.0};
    const DD g{params.g(), 0.0};
    const DD red{state.red(), 0.0};
    const DD green{state.green(), 0.0};

    const DD before =
        dd_add(dd_mul(dd_mul(r, red), red), dd_neg(dd_mul(dd_mul(g, green), green)));
    const DD red_raw = dd_add(red, dd_neg(dd_mul(g, green)));
    const DD green_raw = dd_add(green, dd_neg(dd_mul(r, red)));
    const DD after = dd_add(dd_mul(dd_mul(r, red_raw), red_raw),
                            dd_neg(dd_mul(dd_mul(g, green_raw), green_raw)));

    return {before.hi + before.lo, after.hi + after.lo, dd_div_to_double(after, before)};
}

SalvoResult run_salvos(const AimedParams& params, const ForceState& initial,
                       std::size_t max_salvos) {
    if (max_salvos < 1) throw std::invalid_argument("max_salvos must be >= 1");

    const ModelSpec model(params);
    DriftAudit drift(model, State(initial));
    std::vector<Sample> samples{{0.0, State(initial)}};
    std::vector<SalvoCheck> checks;

    SimOutcome outcome;
    outcome.final_state = State(initial);

    ForceState cur = initial;
    bool decided = cur.red() == 0.0 || cur.green() == 0.0;
    std::size_t step = 0;
    while (!decided && step < max_salvos) {
        checks.push_back(salvo_invariant_check(params, cur));
        cur = discrete_step(params, cur);
        ++step;
        const State state(cur);
        samples.push_back({static_cast<double>(step), state});
        drift.observe(state);
        decided = cur.red() == 0.0 || cur.green() == 0.0;
    }

    if (decided) {
        Flat flat{{cur.red(), cur.green(), 0.0}, 2};
        outcome.verdict = elimination_verdict(flat, 0.0);
    } else {
        outcome.verdict = std::nullopt;
    }
    outcome.end_time = static_cast<double>(step);
    outcome.final_state = State(cur);
    outcome.max_drift = drift.result();
    return {Trajectory(model, std::move(samples)), outcome, std::move(checks)};
}

std::vector<std::pair<double, double>> drift_report(const Trajectory& traj) {
    if (!has_invariant(traj.model()))
        throw UnsupportedModelError("drift report requires a model with a conserved quantity");
    const double reference = invariant(traj.model(), traj.samples().front().state);
    const double denom = std::fmax(1.0, std::fabs(reference));
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.size());
    for (const Sample& sample : traj.samples()) {
        const double value = invariant(traj.model(), sample.state);
        out.emplace_back(sample.t, std::fabs(value - reference) / denom);
    }
    return out;
}

}  // namespace lanchester
