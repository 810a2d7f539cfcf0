#include "cornerlab/corner_phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cornerlab/asymptotics.hpp"
#include "cornerlab/error.hpp"

namespace cornerlab {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

ScaledParams fill_scaled(double eta, double eps, const InitialData& init, const DampingParams& damping)
{
    ScaledParams p;
    p.init = init;
    p.damping = damping;
    p.eta = eta;
    p.eps = eps;
    const double two_sd = 2.0 * damping.sqrt_delta();
    p.E = init.dr0 * init.dr0 * init.ds0 * init.ds0 / (4.0 * damping.delta);
    p.R0 = eta * init.dr0 * (1.0 - eps) / two_sd;
    p.dR0 = eta * init.dr0 * (damping.xi1 - eps * damping.xi2) / two_sd;
    p.W = p.dR0 * p.dR0 + p.E / (p.R0 * p.R0);
    p.tau0 = -p.dR0 * p.R0 / p.W;
    p.kappa = std::sqrt(p.E) / p.W;
    return p;
}

} // namespace

double ScaledParams::scaled_momentum() const noexcept { return std::sqrt(E) * (1.0 - eps); }

double eps_exponent(const DampingParams& damping)
{
    return 2.0 * (damping.xi2 - damping.xi1) / damping.xi1;
}

ScaledParams scaled_params_from_physical(const InitialData& init, const DampingParams& damping, double k)
{
    validate(init);
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw Error(ErrorKind::invalid_input, "stiffness k must be positive and finite");
    }
    const double t0 = first_crossing_time(init);
    const double sqrt_k = std::sqrt(k);
    const double log_eta = 0.5 * damping.xi1 * t0 * sqrt_k;
    if (-log_eta > max_log_inverse_eta) {
        std::ostringstream msg;
        msg << "ln(eta) = " << log_eta << " is below -" << max_log_inverse_eta
            << "; use scaled_params_direct (scaled mode) for this stiffness";
        throw Error(ErrorKind::scale_underflow, msg.str());
    }
    const double eta = std::exp(log_eta);
    const double eps = std::exp((damping.xi2 - damping.xi1) * t0 * sqrt_k);
    ScaledParams p = fill_scaled(eta, eps, init, damping);
    p.k = k;
    p.gamma = eta * eta * (1.0 - eps) * std::sqrt(p.E) / sqrt_k;
    return p;
}

ScaledParams scaled_params_direct(double eta, std::optional<double> eps, const InitialData& init,
                                  const DampingParams& damping)
{
    validate(init);
    if (!(eta > 0.0 && eta < 1.0)) {
        throw Error(ErrorKind::invalid_scale, "eta must lie in (0, 1)");
    }
    double e = 0.0;
    if (eps) {
        if (!(*eps >= 0.0 && *eps < 1.0)) {
            throw Error(ErrorKind::invalid_scale, "eps must lie in [0, 1)");
        }
        e = *eps;
    } else {
        e = std::exp(eps_exponent(damping) * std::log(eta));
    }
    return fill_scaled(eta, e, init, damping);
}

RadialRates radial_rhs(const ScaledState& state, const ScaledParams& params)
{
    if (!(state.R > 0.0) || !std::isfinite(state.R)) {
        throw Error(ErrorKind::singular_radius, "radius must be positive");
    }
    const double R = state.R;
    const double R2 = R * R;
    RadialRates out;
    out.dR = state.dR;
    out.ddR = params.central_coefficient() / (R2 * R) - 2.0 * params.damping.alpha * state.dR - R;
    out.dTheta = params.scaled_momentum() / R2;
    return out;
}

double default_corner_horizon(const ScaledParams& params, const ConeGeometry& cone, const CornerControls& controls)
{
    const DampingParams& d = params.damping;
    const double zeta = controls.zeta.value_or(default_zeta(d));
    const double log_inv_eta = -std::log(params.eta);
    const double tau3 = zeta * log_inv_eta;
    const LyapunovData lyap = lyapunov_Q(d);
    const TrappingThreshold trap = trapping_threshold(params.E, params.eps, d);

    // Radial state size at tau3 from the second asymptotic.
    const double R3 = params.init.ds0 * std::exp((1.0 + zeta * d.xi1) * log_inv_eta) / (2.0 * d.sqrt_delta());
    const double q3 = lyap.lambda2 * R3 * R3 * (1.0 + d.xi1 * d.xi1);
    const double trapping_time = 2.0 * lyap.lambda2 * std::max(0.0, std::log(q3 / (lyap.lambda1 * trap.Rbar * trap.Rbar)));
    // Once trapped, Theta' >= sqrt(E)(1 - eps) / Fbar.
    const double sweep = cone.theta_bar() * trap.Fbar / params.scaled_momentum();
    return (tau3 + trapping_time + sweep) * (1.0 + controls.horizon_safety);
}

ScaledState CornerResult::at(double tau) const
{
    if (!solution_) {
        throw Error(ErrorKind::numeric_failure, "corner result holds no trajectory");
    }
    const auto y = solution_->at(tau);
    return {std::clamp(tau, solution_->t_front(), solution_->t_back()), y[0], y[1], y[2]};
}

double CornerResult::covered_end() const { return solution_ ? solution_->t_back() : 0.0; }

CornerResult integrate_corner(const ScaledParams& params, const ConeGeometry& cone, const CornerControls& controls)
{
    if (!(controls.atol > 0.0) || !(controls.rtol > 0.0)) {
        throw Error(ErrorKind::invalid_input, "integration tolerances must be positive");
    }
    CornerResult result;
    result.horizon = controls.horizon ? *controls.horizon : default_corner_horizon(params, cone, controls);
    if (!std::isfinite(result.horizon)) {
        throw Error(ErrorKind::invalid_input, "horizon must be finite");
    }

    const double c3 = params.central_coefficient();
    const double momentum = params.scaled_momentum();
    const double two_alpha = 2.0 * params.damping.alpha;
    const ode::Rhs<3> rhs = [c3, momentum, two_alpha](double, const ode::State<3>& y) -> ode::State<3> {
        const double R = y[0];
        if (!(R > 0.0)) {
            return {nan, nan, nan};
        }
        const double R2 = R * R;
        return {y[1], c3 / (R2 * R) - two_alpha * y[1] - R, momentum / R2};
    };

    // R spans many decades (it starts at O(eta)), so its absolute tolerance is
    // scaled by the smallest radius of the first asymptotic.
    ode::Options<3> opt;
    const double r_min = std::sqrt(params.E / params.W);
    opt.atol = {controls.atol * std::min(1.0, r_min), controls.atol, controls.atol};
    opt.rtol = controls.rtol;
    opt.initial_step = controls.initial_step_factor * params.kappa;

    ode::Event<3> exit_event;
    const double theta_bar = cone.theta_bar();
    exit_event.g = [theta_bar](double, const ode::State<3>& y) { return y[2] - theta_bar; };
    exit_event.terminal = controls.stop_at_exit;
    exit_event.value_tol = 1e-10;
    exit_event.time_tol = 1e-12;

    const ode::State<3> y0{params.R0, params.dR0, 0.0};
    ode::Result<3> run = ode::integrate<3>(rhs, 0.0, y0, std::max(0.0, result.horizon), opt,
                                           controls.detect_exit ? &exit_event : nullptr);

    result.rejected_steps = run.rejected;
    const auto& ts = run.solution.times();
    const auto& ys = run.solution.states();
    const auto& fs = run.solution.derivatives();
    result.samples.reserve(ts.size());
    double drift = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(ys[i][0] > 0.0)) {
            throw Error(ErrorKind::singular_radius, "radius reached zero during the corner phase");
        }
        result.samples.push_back({ts[i], ys[i][0], ys[i][1], ys[i][2]});
        drift = std::max(drift, std::abs(ys[i][0] * ys[i][0] * fs[i][2] / momentum - 1.0));
    }
    result.momentum_drift = drift;
    if (run.event) {
        result.exited = true;
        result.exit_tau = run.event->t;
        result.exit_state = {run.event->t, run.event->y[0], run.event->y[1], run.event->y[2]};
    }
    result.solution_ = std::make_shared<const ode::Solution<3>>(std::move(run.solution));
    return result;
}

CartesianSample to_cartesian(const ScaledState& state, const ScaledParams& params)
{
    if (!params.k) {
        throw Error(ErrorKind::scale_free_run, "physical reconstruction needs the stiffness k");
    }
    const double sqrt_k = std::sqrt(*params.k);
    const double t0 = first_crossing_time(params.init);
    const double r = params.eta * state.R / sqrt_k;
    const double c = std::cos(state.Theta);
    const double s = std::sin(state.Theta);
    const Vec2 radial{c, s};
    const Vec2 angular{-s, c};
    const double dTheta = params.scaled_momentum() / (state.R * state.R);
    CartesianSample out;
    out.t = t0 + state.tau / sqrt_k;
    out.u = r * radial;
    out.v = (params.eta * state.dR) * radial + (params.eta * state.R * dTheta) * angular;
    return out;
}

std::vector<CartesianSample> reconstruct_cartesian(const CornerResult& result, const ScaledParams& params)
{
    if (!params.k) {
        throw Error(ErrorKind::scale_free_run, "physical reconstruction needs the stiffness k");
    }
    std::vector<CartesianSample> out;
    out.reserve(result.samples.size());
    for (const ScaledState& s : result.samples) {
        out.push_back(to_cartesian(s, params));
    }
    return out;
}

CartesianSample OracleSolution::at(double t) const
{
    if (!solution_) {
        throw Error(ErrorKind::numeric_failure, "oracle holds no trajectory");
    }
    const auto y = solution_->at(t * sqrt_k);
    return {t, {y[0], y[1]}, {sqrt_k * y[2], sqrt_k * y[3]}};
}

std::vector<CartesianSample> OracleSolution::samples() const
{
    std::vector<CartesianSample> out;
    if (!solution_) {
        return out;
    }
    const auto& ts = solution_->times();
    const auto& ys = solution_->states();
    out.reserve(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out.push_back({ts[i] / sqrt_k, {ys[i][0], ys[i][1]}, {sqrt_k * ys[i][2], sqrt_k * ys[i][3]}});
    }
    return out;
}

OracleSolution oracle_fast_time_integration(const InitialData& init, const DampingParams& damping,
                                            const ConeGeometry& cone, double k, double horizon, double atol,
                                            double rtol)
{
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw Error(ErrorKind::invalid_input, "stiffness k must be positive and finite");
    }
    if (!(horizon >= 0.0)) {
        throw Error(ErrorKind::invalid_input, "horizon must be non-negative");
    }
    const double two_alpha = 2.0 * damping.alpha;
    // In fast time the force field is O(1): u'' = -2 alpha G(u, u') - (u - P_K u).
    const ode::Rhs<4> rhs = [two_alpha, cone](double, const ode::State<4>& y) -> ode::State<4> {
        const Vec2 u{y[0], y[1]};
        const Vec2 w{y[2], y[3]};
        if (!is_finite(u) || !is_finite(w)) {
            return {nan, nan, nan, nan};
        }
        const Vec2 gap = u - project_onto_cone(u, cone);
        const Vec2 g = damping_force_G(u, w, cone);
        return {w.x1, w.x2, -two_alpha * g.x1 - gap.x1, -two_alpha * g.x2 - gap.x2};
    };
    OracleSolution out;
    out.sqrt_k = std::sqrt(k);
    out.horizon = horizon;
    const ode::State<4> y0{0.0, init.s0, init.dr0 / out.sqrt_k, init.ds0 / out.sqrt_k};
    auto opt = ode::uniform_options<4>(atol, rtol);
    ode::Result<4> run = ode::integrate<4>(rhs, 0.0, y0, horizon * out.sqrt_k, opt);
    out.solution_ = std::make_shared<const ode::Solution<4>>(std::move(run.solution));
    return out;
}

} // namespace cornerlab
