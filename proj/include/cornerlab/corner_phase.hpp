#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cornerlab/cone_geometry.hpp"
#include "cornerlab/linear_phase.hpp"
#include "cornerlab/ode.hpp"
#include "cornerlab/vec2.hpp"

namespace cornerlab {

// Scales of the corner phase. Inside R2 the motion is written in polar form
// u = r e^{i theta} with r = eta R / sqrt(k) and tau = (t - t0) sqrt(k); the
// radial equation then reads
//   R'' - E (1 - eps)^2 / R^3 + 2 alpha R' + R = 0,
// and depends on k only through (eta, eps).
struct ScaledParams {
    InitialData init;
    DampingParams damping;
    double eta = 0.0;   // exp(xi1 t0 sqrt(k) / 2)
    double eps = 0.0;   // exp((xi2 - xi1) t0 sqrt(k))
    double E = 0.0;     // dr0^2 ds0^2 / (4 delta)
    double R0 = 0.0;    // scaled radius at t0
    double dR0 = 0.0;   // scaled radial velocity at t0
    double W = 0.0;     // dR0^2 + E / R0^2, energy of the central-force problem
    double tau0 = 0.0;  // vertex time of rho = R1^2
    double kappa = 0.0; // sqrt(E) / W, curvature scale of the rho parabola
    std::optional<double> k;     // stiffness, absent for scale-free runs
    std::optional<double> gamma; // angular momentum r^2 theta', needs k

    // E (1 - eps)^2, the coefficient of the repulsive term.
    double central_coefficient() const noexcept { return E * (1.0 - eps) * (1.0 - eps); }
    // sqrt(E) (1 - eps), the scaled angular momentum R^2 Theta'.
    double scaled_momentum() const noexcept;
};

// Largest admissible |ln eta| in physical mode; beyond it R^3 and tau0 ~ eta^4
// leave the double range and scale-free mode must be used.
inline constexpr double max_log_inverse_eta = 150.0;

// Throws scale-underflow when |ln eta| exceeds max_log_inverse_eta.
ScaledParams scaled_params_from_physical(const InitialData& init, const DampingParams& damping, double k);

// eta in (0, 1); eps in [0, 1), or derived as eta^(2 (xi2 - xi1) / xi1) when absent.
ScaledParams scaled_params_direct(double eta, std::optional<double> eps, const InitialData& init,
                                  const DampingParams& damping);

// Exponent p with eps = eta^p.
double eps_exponent(const DampingParams& damping);

struct ScaledState {
    double tau = 0.0;
    double R = 0.0;
    double dR = 0.0;
    double Theta = 0.0;
};

struct RadialRates {
    double dR = 0.0;
    double ddR = 0.0;
    double dTheta = 0.0;
};

// Right-hand side of the scaled system; throws singular-radius for R <= 0.
RadialRates radial_rhs(const ScaledState& state, const ScaledParams& params);

struct CornerControls {
    double atol = 1e-12;
    double rtol = 1e-10;
    // Final scaled time. When absent, default_corner_horizon is used.
    std::optional<double> horizon;
    double horizon_safety = 1.0;
    std::optional<double> zeta; // defaults to 0.5 / |xi1|
    // Stop at the first crossing Theta = theta_bar; otherwise only record it.
    bool stop_at_exit = true;
    bool detect_exit = true;
    double initial_step_factor = 1e-3; // initial step = factor * kappa
};

// Scaled time by which the exit is expected, assembled from the a-priori
// bounds of the corner dynamics (tau3, the Lyapunov trapping time and the
// angular sweep at the trapped minimum rate), inflated by (1 + safety).
double default_corner_horizon(const ScaledParams& params, const ConeGeometry& cone, const CornerControls& controls);

class CornerResult {
public:
    bool exited = false;
    double exit_tau = 0.0;
    ScaledState exit_state;
    double horizon = 0.0;
    std::vector<ScaledState> samples; // accepted steps, ending at the exit when stopped there
    double momentum_drift = 0.0;      // max |R^2 Theta' / (sqrt(E)(1 - eps)) - 1| over samples
    std::size_t rejected_steps = 0;

    // State at any tau in [0, covered end] from the integrator nodes.
    ScaledState at(double tau) const;
    double covered_end() const;

private:
    friend CornerResult integrate_corner(const ScaledParams&, const ConeGeometry&, const CornerControls&);
    std::shared_ptr<const ode::Solution<3>> solution_;
};

// Integrates (R, R', Theta) from (R0, dR0, 0) at tau = 0 with an adaptive
// Dormand-Prince 5(4) pair and locates the first crossing of Theta = theta_bar.
CornerResult integrate_corner(const ScaledParams& params, const ConeGeometry& cone, const CornerControls& controls);

struct CartesianSample {
    double t = 0.0;
    Vec2 u;
    Vec2 v;
};

// Maps a scaled state back to physical time, position and velocity.
CartesianSample to_cartesian(const ScaledState& state, const ScaledParams& params);

// Throws scale-free-run when params carry no stiffness.
std::vector<CartesianSample> reconstruct_cartesian(const CornerResult& result, const ScaledParams& params);

// Direct integration of u'' + 2 alpha sqrt(k) G(u, u') + k (u - P_K u) = 0 in
// fast time s = t sqrt(k), with no phase decomposition. Used as an independent
// oracle for the piecewise pipeline.
class OracleSolution {
public:
    double sqrt_k = 0.0;
    double horizon = 0.0; // physical time

    // Physical position and velocity at time t in [0, horizon].
    CartesianSample at(double t) const;
    std::vector<CartesianSample> samples() const;

private:
    friend OracleSolution oracle_fast_time_integration(const InitialData&, const DampingParams&,
                                                       const ConeGeometry&, double, double, double, double);
    std::shared_ptr<const ode::Solution<4>> solution_;
};

OracleSolution oracle_fast_time_integration(const InitialData& init, const DampingParams& damping,
                                            const ConeGeometry& cone, double k, double horizon,
                                            double atol = 1e-13, double rtol = 1e-11);

} // namespace cornerlab
