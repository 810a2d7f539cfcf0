#pragma once

#include <optional>
#include <vector>

#include "cornerlab/asymptotics.hpp"
#include "cornerlab/config.hpp"
#include "cornerlab/corner_phase.hpp"
#include "cornerlab/table.hpp"

namespace cornerlab {

// Least-squares slope of y against x; needs at least two distinct x.
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

// Uniform grid of n points on [a, b] (n >= 2).
std::vector<double> uniform_grid(double a, double b, int n);

struct ConvergenceStudy {
    Table table; // k, sup_error, local_order
    // Fitted p in sup_error ~ (1 / sqrt(k))^p; absent for a single k.
    std::optional<double> fitted_order;
};

// Grid points for the sup norm against the limit trajectory.
inline constexpr int convergence_grid_points = 2000;

// Sup distance between the penalized trajectory and its limit on
// [config.window_start, T] for every k in k_list.
ConvergenceStudy convergence_study(const SimConfig& config, const std::vector<double>& k_list, double T);

struct AsymptoticErrors {
    AsymptoticTimes times;
    double err_R1 = 0.0;  // max |R - R1| / R1 on [0, tau1]
    double err_dR1 = 0.0; // max |R' - R1'| / |R1'| on [eta^3, tau1]
    double err_R2 = 0.0;  // max |R - R2| / R2 on [tau1, tau3]
    std::optional<double> tau_bar; // first crossing of theta_bar
    CornerResult run;
};

// Integrates past the exit (stop_at_exit = false) up to the default horizon
// and compares with the first and second asymptotics.
AsymptoticErrors asymptotic_errors(const ScaledParams& params, const ConeGeometry& cone, double gamma1, double zeta,
                                   CornerControls controls);

struct AsymptoticReport {
    // eta, eps, tau1, tau3, err_R1, err_dR1, err_R2, tau_bar, tau_bar_est, tau_bar_ratio
    Table table;
    // Fitted exponents p in err ~ eta^p; absent for a single eta.
    std::optional<double> order_R1;
    std::optional<double> order_dR1;
    std::optional<double> order_R2;
};

AsymptoticReport asymptotic_report(const SimConfig& config, const std::vector<double>& eta_list);

struct AttractorStudy {
    double tau3 = 0.0;
    double deadline = 0.0;            // tau3 + 20 (2 lambda2)
    std::optional<double> tau4;       // first R <= Rbar after tau3
    std::optional<double> tau_settle; // first |R - Rc| + |R'| < settle_tol
    // Average exponential decay rates of the Q-form: uncentered state on
    // [tau3, tau4], state centered at (Rc, 0) on [tau4, tau_settle].
    std::optional<double> outer_rate;
    std::optional<double> inner_rate;
    double required_rate = 0.0; // 1 / (2 lambda2)
    TrappingThreshold threshold;
};

AttractorStudy attractor_study(const ScaledParams& params, const ConeGeometry& cone, double zeta,
                               CornerControls controls, double settle_tol = 1e-6);

// Radial vector field (R', R'') on a grid_n x grid_n grid plus the critical
// point; columns R, dR, field_R, field_dR, critical. Empty for grid_n = 0.
Table phase_portrait(const ScaledParams& params, const PortraitSpec& spec);

} // namespace cornerlab
