#pragma once

#include <array>
#include <optional>

#include "cornerlab/cone_geometry.hpp"
#include "cornerlab/corner_phase.hpp"
#include "cornerlab/linear_phase.hpp"

namespace cornerlab {

struct RadialPair {
    double R = 0.0;
    double dR = 0.0;
};

// First asymptotic: exact solution of R1'' = E / R1^3 with the corner-phase
// initial data, R1^2 = E/W + W (tau - tau0)^2.
RadialPair first_asymptotic_R1(const ScaledParams& params, double tau);

// R1'' = E / R1^3, used for residual checks.
double first_asymptotic_ddR1(const ScaledParams& params, double tau);

// Angle of the first asymptotic, Theta1' = sqrt(E) / R1^2 and Theta1(0) = 0.
double first_asymptotic_Theta1(const ScaledParams& params, double tau);

double kernel_J(const ScaledParams& params, double tau, double sigma);

// Green kernel of z'' + 3 E z / R1^4 = 0; zero for sigma > tau.
double kernel_K(const ScaledParams& params, double tau, double sigma);

// Two independent solutions of the linearized equation and their derivatives;
// z1 = R1' and the Wronskian z1 z2' - z2 z1' equals 1.
struct KernelSolutions {
    double z1 = 0.0;
    double dz1 = 0.0;
    double z2 = 0.0;
    double dz2 = 0.0;
};

KernelSolutions kernel_solutions_z(const ScaledParams& params, double tau);

// I(tau) = (1 / R1(tau)) int_0^tau K(tau, s) / R1(s)^3 ds, evaluated by
// adaptive quadrature in the variable x with sigma = tau0 + kappa x.
double kernel_integral_I(const ScaledParams& params, double tau);

struct DeltaBound {
    double numeric = 0.0;  // max of I over a tau-grid on [0, 1]
    double analytic = 0.0; // 4 / E
    double argmax_tau = 0.0;
};

DeltaBound delta_bound(const ScaledParams& params, int grid_points = 401);

// Second asymptotic: linear over-damped motion matched to (R, R') at tau1.
RadialPair second_asymptotic_R2(const RadialPair& match, double tau1, const DampingParams& damping, double tau);

// I2(tau) = (1 / R2(tau)) int_tau1^tau K2(tau - s) / R2(s)^3 ds.
double second_kernel_integral(const RadialPair& match, double tau1, const DampingParams& damping, double tau);

struct AsymptoticTimes {
    double gamma1 = 0.0;
    double zeta = 0.0;
    double tau1 = 0.0; // eta^gamma1, end of the first asymptotic
    double tau2 = 0.0; // 2 ln(xi2 / xi1) / (xi1 - xi2)
    double tau3 = 0.0; // zeta ln(1 / eta), end of the second asymptotic
    std::optional<double> tau4; // first crossing of Rbar after tau3, from trajectories
};

// gamma1 in (1, 4/3), zeta in (0, 1/|xi1|); throws invalid-exponent otherwise.
AsymptoticTimes asymptotic_times(double eta, double gamma1, double zeta, const DampingParams& damping);

double default_zeta(const DampingParams& damping);

double critical_point(double E, double eps);

double lyapunov_F(double R, double dR, double E, double eps);

// dF/dtau along the scaled radial flow, computed from the gradient of F and
// radial_rhs (equals -4 alpha R'^2).
double lyapunov_F_rate(const ScaledState& state, const ScaledParams& params);

struct Mat2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;
};

struct LyapunovData {
    Mat2 Q;
    double lambda1 = 0.0; // smallest eigenvalue
    double lambda2 = 0.0; // largest eigenvalue
};

// Q = int_0^inf exp(s M^T) exp(s M) ds for M = [[0, 1], [-1, -2 alpha]],
// i.e. the solution of M^T Q + Q M = -I.
LyapunovData lyapunov_Q(const DampingParams& damping);

// Residual M^T Q + Q M + I.
Mat2 lyapunov_residual(const LyapunovData& data, const DampingParams& damping);

double quadratic_form(const Mat2& Q, double x1, double x2);

struct TrappingThreshold {
    double Rc = 0.0;
    double root_bound = 0.0;  // (4 E lambda2^{3/2} / lambda1^{1/2})^{1/4}
    double plain_bound = 0.0; // 4 E lambda2^{3/2} / lambda1^{1/2}, reported for comparison
    double Rbar = 0.0;        // (1 + margin) max(root_bound, Rc)
    double Fbar = 0.0;        // Lyapunov level Rbar^2 + E(1-eps)^2/Rbar^2 + xi1^2 Rbar^2
};

TrappingThreshold trapping_threshold(double E, double eps, const DampingParams& damping, double margin = 0.01);

struct ObtuseExponents {
    double r = 0.0;
    double lower_bound_exponent = 0.0; // max(2 - r, gamma1)
};

ObtuseExponents obtuse_exponents(double gamma1, const DampingParams& damping);

enum class ExitBranch { acute, obtuse };

struct ExitEquivalents {
    ExitBranch branch = ExitBranch::acute;
    double tau_bar_est = 0.0; // exit time (acute) or tau3 (obtuse)
    double R_est = 0.0;
    double dR_est = 0.0;
    double dTheta_est = 0.0;
};

// Acute corners: equivalents at the exit time. Right and obtuse corners:
// equivalents of the second asymptotic at tau3.
ExitEquivalents exit_equivalents(const ScaledParams& params, const ConeGeometry& cone,
                                 std::optional<double> zeta = std::nullopt);

} // namespace cornerlab
