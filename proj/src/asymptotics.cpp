#include "cornerlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "cornerlab/error.hpp"
#include "cornerlab/quadrature.hpp"

namespace cornerlab {

RadialPair first_asymptotic_R1(const ScaledParams& params, double tau)
{
    const double d = tau - params.tau0;
    const double R = std::sqrt(params.E / params.W + params.W * d * d);
    return {R, params.W * d / R};
}

double first_asymptotic_ddR1(const ScaledParams& params, double tau)
{
    const double R = first_asymptotic_R1(params, tau).R;
    return params.E / (R * R * R);
}

double first_asymptotic_Theta1(const ScaledParams& params, double tau)
{
    const double sE = std::sqrt(params.E);
    return std::atan(params.W * (tau - params.tau0) / sE) + std::atan(params.W * params.tau0 / sE);
}

double kernel_J(const ScaledParams& params, double tau, double sigma)
{
    return params.E / params.W + params.W * (sigma - params.tau0) * (tau - params.tau0);
}

double kernel_K(const ScaledParams& params, double tau, double sigma)
{
    if (sigma > tau) {
        return 0.0;
    }
    const double Rt = first_asymptotic_R1(params, tau).R;
    const double Rs = first_asymptotic_R1(params, sigma).R;
    return (tau - sigma) * kernel_J(params, tau, sigma) / (Rt * Rs);
}

KernelSolutions kernel_solutions_z(const ScaledParams& params, double tau)
{
    const RadialPair r = first_asymptotic_R1(params, tau);
    const double d = tau - params.tau0;
    KernelSolutions z;
    z.z1 = r.dR;
    z.dz1 = params.E / (r.R * r.R * r.R);
    const double g = -params.E / (params.W * params.W) + tau * d;
    z.z2 = g / r.R;
    z.dz2 = (tau + d) / r.R - g * r.dR / (r.R * r.R);
    return z;
}

double kernel_integral_I(const ScaledParams& params, double tau)
{
    if (tau <= 0.0) {
        return 0.0;
    }
    // With sigma = tau0 + kappa x and y = (tau - tau0) / kappa the integral
    // becomes (1 / E) (1 / (1 + y^2)) int_a^y (y - x)(1 + x y) / (1 + x^2)^2 dx.
    const double a = -params.tau0 / params.kappa;
    const double y = (tau - params.tau0) / params.kappa;
    const auto f = [y](double x) {
        const double q = 1.0 + x * x;
        return (y - x) * (1.0 + x * y) / (q * q);
    };
    std::vector<double> cuts;
    if (a < 0.0 && y > 0.0) {
        cuts.push_back(0.0);
    }
    const double inner = quad::integrate(f, a, y, 1e-15, 1e-12, cuts).value;
    return inner / (params.E * (1.0 + y * y));
}

DeltaBound delta_bound(const ScaledParams& params, int grid_points)
{
    if (grid_points < 2) {
        throw Error(ErrorKind::invalid_input, "delta grid needs at least two points");
    }
    DeltaBound out;
    out.analytic = 4.0 / params.E;
    for (int i = 0; i < grid_points; ++i) {
        const double tau = static_cast<double>(i) / (grid_points - 1);
        const double v = kernel_integral_I(params, tau);
        if (v > out.numeric) {
            out.numeric = v;
            out.argmax_tau = tau;
        }
    }
    return out;
}

RadialPair second_asymptotic_R2(const RadialPair& match, double tau1, const DampingParams& damping, double tau)
{
    const KernelValues kv = kernels_K2_H2(damping, tau - tau1);
    return {kv.K2 * match.dR + kv.H2 * match.R, kv.dK2 * match.dR + kv.dH2 * match.R};
}

double second_kernel_integral(const RadialPair& match, double tau1, const DampingParams& damping, double tau)
{
    if (tau <= tau1) {
        return 0.0;
    }
    const auto f = [&](double s) {
        const double R = second_asymptotic_R2(match, tau1, damping, s).R;
        return kernels_K2_H2(damping, tau - s).K2 / (R * R * R);
    };
    const double R = second_asymptotic_R2(match, tau1, damping, tau).R;
    return quad::integrate(f, tau1, tau, 0.0, 1e-12).value / R;
}

double default_zeta(const DampingParams& damping) { return 0.5 / std::abs(damping.xi1); }

AsymptoticTimes asymptotic_times(double eta, double gamma1, double zeta, const DampingParams& damping)
{
    if (!(eta > 0.0 && eta < 1.0)) {
        throw Error(ErrorKind::invalid_scale, "eta must lie in (0, 1)");
    }
    if (!(gamma1 > 1.0 && gamma1 < 4.0 / 3.0)) {
        throw Error(ErrorKind::invalid_exponent, "gamma1 must lie in (1, 4/3)");
    }
    if (!(zeta > 0.0 && zeta < 1.0 / std::abs(damping.xi1))) {
        throw Error(ErrorKind::invalid_exponent, "zeta must lie in (0, 1/|xi1|)");
    }
    AsymptoticTimes t;
    t.gamma1 = gamma1;
    t.zeta = zeta;
    t.tau1 = std::pow(eta, gamma1);
    t.tau2 = 2.0 * std::log(damping.xi2 / damping.xi1) / (damping.xi1 - damping.xi2);
    t.tau3 = zeta * std::log(1.0 / eta);
    return t;
}

double critical_point(double E, double eps) { return std::sqrt(std::sqrt(E * (1.0 - eps) * (1.0 - eps))); }

double lyapunov_F(double R, double dR, double E, double eps)
{
    return R * R + E * (1.0 - eps) * (1.0 - eps) / (R * R) + dR * dR;
}

double lyapunov_F_rate(const ScaledState& state, const ScaledParams& params)
{
    const RadialRates rates = radial_rhs(state, params);
    const double R = state.R;
    const double dF_dR = 2.0 * R - 2.0 * params.central_coefficient() / (R * R * R);
    return dF_dR * rates.dR + 2.0 * state.dR * rates.ddR;
}

LyapunovData lyapunov_Q(const DampingParams& damping)
{
    const double a = damping.alpha;
    LyapunovData out;
    out.Q = {a + 0.5 / a, 0.5, 0.5, 0.5 / a};
    const double mean = 0.5 * (out.Q.a11 + out.Q.a22);
    const double half_gap = std::hypot(0.5 * (out.Q.a11 - out.Q.a22), out.Q.a12);
    out.lambda1 = mean - half_gap;
    out.lambda2 = mean + half_gap;
    return out;
}

Mat2 lyapunov_residual(const LyapunovData& data, const DampingParams& damping)
{
    const Mat2 M{0.0, 1.0, -1.0, -2.0 * damping.alpha};
    const Mat2& Q = data.Q;
    // M^T Q
    const Mat2 A{M.a11 * Q.a11 + M.a21 * Q.a21, M.a11 * Q.a12 + M.a21 * Q.a22,
                 M.a12 * Q.a11 + M.a22 * Q.a21, M.a12 * Q.a12 + M.a22 * Q.a22};
    // Q M
    const Mat2 B{Q.a11 * M.a11 + Q.a12 * M.a21, Q.a11 * M.a12 + Q.a12 * M.a22,
                 Q.a21 * M.a11 + Q.a22 * M.a21, Q.a21 * M.a12 + Q.a22 * M.a22};
    return {A.a11 + B.a11 + 1.0, A.a12 + B.a12, A.a21 + B.a21, A.a22 + B.a22 + 1.0};
}

double quadratic_form(const Mat2& Q, double x1, double x2)
{
    return Q.a11 * x1 * x1 + (Q.a12 + Q.a21) * x1 * x2 + Q.a22 * x2 * x2;
}

TrappingThreshold trapping_threshold(double E, double eps, const DampingParams& damping, double margin)
{
    if (!(E > 0.0) || !(eps >= 0.0 && eps < 1.0) || !(margin >= 0.0)) {
        throw Error(ErrorKind::invalid_input, "trapping threshold needs E > 0, eps in [0, 1) and margin >= 0");
    }
    const LyapunovData lyap = lyapunov_Q(damping);
    TrappingThreshold t;
    t.Rc = critical_point(E, eps);
    t.plain_bound = 4.0 * E * std::pow(lyap.lambda2, 1.5) / std::sqrt(lyap.lambda1);
    t.root_bound = std::sqrt(std::sqrt(t.plain_bound));
    t.Rbar = (1.0 + margin) * std::max(t.root_bound, t.Rc);
    const double R2 = t.Rbar * t.Rbar;
    t.Fbar = R2 + E * (1.0 - eps) * (1.0 - eps) / R2 + damping.xi1 * damping.xi1 * R2;
    return t;
}

ObtuseExponents obtuse_exponents(double gamma1, const DampingParams& damping)
{
    if (!(gamma1 > 1.0 && gamma1 < 4.0 / 3.0)) {
        throw Error(ErrorKind::invalid_exponent, "gamma1 must lie in (1, 4/3)");
    }
    ObtuseExponents out;
    out.r = std::min(gamma1, 4.0 * damping.sqrt_delta() / std::abs(damping.xi1));
    out.lower_bound_exponent = std::max(2.0 - out.r, gamma1);
    return out;
}

ExitEquivalents exit_equivalents(const ScaledParams& params, const ConeGeometry& cone, std::optional<double> zeta)
{
    const DampingParams& d = params.damping;
    const double two_sd = 2.0 * d.sqrt_delta();
    ExitEquivalents out;
    if (cone.acute()) {
        out.branch = ExitBranch::acute;
        out.tau_bar_est = params.tau0 + std::sqrt(params.E) * std::tan(cone.theta_bar()) / params.W;
        out.R_est = params.init.dr0 * params.eta / (cone.cos_theta() * two_sd);
        out.dR_est = params.init.ds0 * cone.sin_theta() / params.eta;
    } else {
        const double z = zeta.value_or(default_zeta(d));
        if (!(z > 0.0 && z < 1.0 / std::abs(d.xi1))) {
            throw Error(ErrorKind::invalid_exponent, "zeta must lie in (0, 1/|xi1|)");
        }
        out.branch = ExitBranch::obtuse;
        out.tau_bar_est = z * std::log(1.0 / params.eta);
        out.R_est = params.init.ds0 * std::pow(params.eta, -(1.0 + z * d.xi1)) / two_sd;
        out.dR_est = d.xi1 * out.R_est;
    }
    out.dTheta_est = params.scaled_momentum() / (out.R_est * out.R_est);
    return out;
}

} // namespace cornerlab
