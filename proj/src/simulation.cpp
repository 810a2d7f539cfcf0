#include "cornerlab/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "cornerlab/error.hpp"

namespace cornerlab {

std::string_view to_string(Phase phase)
{
    switch (phase) {
    case Phase::r1:
        return "R1-phase";
    case Phase::corner:
        return "corner";
    case Phase::r3:
        return "R3-phase";
    }
    return "unknown";
}

PhasePoint PiecewiseSolution::evaluate(double t) const
{
    const double slack = 1e-12 * std::max(1.0, t_end);
    if (!(t >= 0.0 && t <= t_end + slack)) {
        throw Error(ErrorKind::invalid_input, "time outside the simulated interval");
    }
    if (t <= t0) {
        const R1PhaseState s = r1_phase_state(params.init, params.damping, sqrt_k * sqrt_k, t);
        return {t, {s.r, s.s}, {s.dr, s.ds}, Phase::r1};
    }
    if (!exited || t <= t_exit) {
        const CartesianSample c = to_cartesian(corner.at((t - t0) * sqrt_k), params);
        return {t, c.u, c.v, Phase::corner};
    }
    const FaceState f = face_phase_state(y1_exit, dy1_exit, dy2_exit, params.damping, sqrt_k * sqrt_k, t - t_exit);
    const Vec2 n = cone_.normal2();
    const Vec2 d = cone_.face2_direction();
    return {t, f.y1 * n + f.y2 * d, f.dy1 * n + f.dy2 * d, Phase::r3};
}

PiecewiseSolution solve_piecewise(const SimConfig& config)
{
    validate(config);
    if (config.mode != Mode::physical) {
        throw Error(ErrorKind::scale_free_run, "full trajectories need physical mode (a stiffness k)");
    }
    PiecewiseSolution sol;
    sol.cone_ = cone_of(config);
    sol.params = scaled_params_of(config);
    sol.t0 = first_crossing_time(config.init);
    sol.t_end = end_time_of(config);
    sol.sqrt_k = std::sqrt(config.k);
    const DampingParams& damping = sol.params.damping;

    // Entry into the corner region.
    const R1PhaseState before = r1_phase_state(config.init, damping, config.k, sol.t0);
    const CartesianSample after = to_cartesian({0.0, sol.params.R0, sol.params.dR0, 0.0}, sol.params);
    sol.jumps.entry_position = norm(Vec2{before.r, before.s} - after.u);
    sol.jumps.entry_velocity = norm(Vec2{before.dr, before.ds} - after.v);

    CornerControls controls = controls_of(config);
    controls.horizon = std::max(0.0, (sol.t_end - sol.t0) * sol.sqrt_k);
    sol.corner = integrate_corner(sol.params, sol.cone_, controls);

    if (sol.corner.exited) {
        sol.exited = true;
        const ScaledState& x = sol.corner.exit_state;
        sol.t_exit = sol.t0 + x.tau / sol.sqrt_k;
        // At Theta = theta_bar the radial direction is normal2 and the angular
        // direction is the face-2 direction.
        const double eta = sol.params.eta;
        sol.y1_exit = eta * x.R / sol.sqrt_k;
        sol.dy1_exit = eta * x.dR;
        sol.dy2_exit = eta * sol.params.scaled_momentum() / x.R;
        const CartesianSample c = to_cartesian(x, sol.params);
        const Vec2 n = sol.cone_.normal2();
        const Vec2 d = sol.cone_.face2_direction();
        sol.jumps.exit_position = norm(c.u - sol.y1_exit * n);
        sol.jumps.exit_velocity = norm(c.v - (sol.dy1_exit * n + sol.dy2_exit * d));
    }
    return sol;
}

Trajectory simulate_full(const SimConfig& config)
{
    const PiecewiseSolution sol = solve_piecewise(config);
    Trajectory traj;
    traj.jumps = sol.jumps;
    traj.momentum_drift = sol.corner.momentum_drift;
    traj.exited = sol.exited;
    traj.t_exit = sol.t_exit;

    auto push = [&traj](const PhasePoint& p) {
        if (traj.samples.empty() || p.t > traj.samples.back().t) {
            traj.samples.push_back(p);
        }
    };
    const int n = phase_refinement;

    const double r1_end = std::min(sol.t0, sol.t_end);
    for (int i = 0; i < n; ++i) {
        push(sol.evaluate(r1_end * i / (n - 1)));
    }
    if (sol.t_end <= sol.t0) {
        return traj;
    }

    const double tau_end = sol.exited ? sol.corner.exit_tau : sol.corner.covered_end();
    std::vector<double> taus;
    taus.reserve(sol.corner.samples.size() + n);
    for (const ScaledState& s : sol.corner.samples) {
        taus.push_back(s.tau);
    }
    for (int i = 0; i < n; ++i) {
        taus.push_back(tau_end * i / (n - 1));
    }
    std::sort(taus.begin(), taus.end());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
    for (double tau : taus) {
        if (tau <= 0.0 || tau > tau_end) {
            continue;
        }
        const CartesianSample c = to_cartesian(sol.corner.at(tau), sol.params);
        push({c.t, c.u, c.v, Phase::corner});
    }

    if (sol.exited && sol.t_exit < sol.t_end) {
        const Vec2 n2 = sol.cone().normal2();
        for (int i = 0; i < n; ++i) {
            const double t = i == n - 1 ? sol.t_end : sol.t_exit + (sol.t_end - sol.t_exit) * i / (n - 1);
            if (t <= sol.t_exit) {
                continue;
            }
            const PhasePoint p = sol.evaluate(t);
            const double y1 = dot(p.u, n2);
            traj.min_face_distance = traj.min_face_distance ? std::min(*traj.min_face_distance, y1) : y1;
            push(p);
        }
    }
    return traj;
}

Table Trajectory::to_table() const
{
    Table table;
    table.columns = {"t", "u1", "u2", "v1", "v2", "phase"};
    table.rows.reserve(samples.size());
    for (const PhasePoint& p : samples) {
        table.add_row({p.t, p.u.x1, p.u.x2, p.v.x1, p.v.x2, std::string(to_string(p.phase))});
    }
    return table;
}

} // namespace cornerlab
