#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "cornerlab/asymptotics.hpp"
#include "cornerlab/error.hpp"
#include "cornerlab/quadrature.hpp"

using namespace cornerlab;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;
const InitialData unit{-1, 1, 1};

double derivative(const std::function<double(double)>& f, double x, double h)
{
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

double second_derivative(const std::function<double(double)>& f, double x, double h)
{
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

ScaledParams k100() { return scaled_params_from_physical(unit, characteristic_roots(2.0), 100.0); }

// Parameters built from rounded constants (E, W, tau0) only.
ScaledParams rounded()
{
    ScaledParams p;
    p.damping = characteristic_roots(2.0);
    p.E = 1.0 / 12.0;
    p.W = 14.5734;
    p.tau0 = 1.0513e-4;
    p.kappa = std::sqrt(p.E) / p.W;
    return p;
}

// Closed form of the delta integral in the scaled variable.
double closed_form_I(const ScaledParams& p, double tau)
{
    const double a = -p.tau0 / p.kappa;
    const double y = (tau - p.tau0) / p.kappa;
    const auto A = [y](double x) { return y * x / (1 + x * x) - (y * y - 1) / (2 * (1 + x * x)); };
    return (A(y) - A(a)) / (p.E * (1 + y * y));
}

} // namespace

TEST_SUITE("asymptotics")
{
    TEST_CASE("first asymptotic values")
    {
        const ScaledParams p = k100();
        const RadialPair v = first_asymptotic_R1(p, p.tau0);
        CHECK(v.R == Approx(std::sqrt(p.E / p.W)).epsilon(1e-15));
        CHECK(v.dR == 0.0);
        const RadialPair z = first_asymptotic_R1(p, 0.0);
        CHECK(z.R == Approx(p.R0).epsilon(1e-14));
        CHECK(z.dR == Approx(p.dR0).epsilon(1e-12));
        CHECK(first_asymptotic_R1(p, 0.01).R == Approx(0.08452026238313758).epsilon(1e-13));
        CHECK(first_asymptotic_R1(rounded(), 0.01).R == Approx(0.084528).epsilon(1e-5));
    }

    TEST_CASE("first asymptotic solves R'' = E / R^3 with its first integral")
    {
        for (const ScaledParams& p : {k100(), scaled_params_direct(1e-2, std::nullopt, unit, characteristic_roots(2.0))}) {
            for (int i = 1; i <= 100; ++i) {
                const double tau = p.kappa * 0.05 * i;
                const RadialPair r = first_asymptotic_R1(p, tau);
                CHECK(r.dR * r.dR + p.E / (r.R * r.R) == Approx(p.W).epsilon(1e-12));
                const double h = 3e-3 * std::max(p.kappa, std::abs(tau - p.tau0));
                const auto R = [&](double s) { return first_asymptotic_R1(p, s).R; };
                const double ddR = first_asymptotic_ddR1(p, tau);
                CHECK(ddR == Approx(p.E / std::pow(r.R, 3)).epsilon(1e-15));
                CHECK(second_derivative(R, tau, h) == Approx(ddR).epsilon(1e-8));
                CHECK(derivative(R, tau, h) == Approx(r.dR).epsilon(1e-8).scale(std::sqrt(p.W)));
                const auto Th = [&](double s) { return first_asymptotic_Theta1(p, s); };
                CHECK(derivative(Th, tau, h) == Approx(std::sqrt(p.E) / (r.R * r.R)).epsilon(1e-8));
            }
        }
    }

    TEST_CASE("first asymptotic angle")
    {
        const ScaledParams p = k100();
        const double sE = std::sqrt(p.E);
        CHECK(std::abs(first_asymptotic_Theta1(p, 0.0)) <= 1e-14);
        CHECK(first_asymptotic_Theta1(p, p.tau0) == Approx(std::atan(p.W * p.tau0 / sE)).epsilon(1e-15));
        CHECK(first_asymptotic_Theta1(p, 1e12) == Approx(pi / 2 + std::atan(p.W * p.tau0 / sE)).epsilon(1e-10));
        const double th = first_asymptotic_Theta1(p, 0.5 * p.eta * p.eta);
        CHECK(th == Approx(1.051186249739416).epsilon(1e-12));
        CHECK(std::abs(th / (pi / 3) - 1) < 0.005);
        double prev = -1.0;
        for (double tau = 0.0; tau < 10.0; tau += 0.01) {
            const double t = first_asymptotic_Theta1(p, tau);
            CHECK(t > prev);
            CHECK(t < pi);
            prev = t;
        }
    }

    TEST_CASE("kernel K")
    {
        const ScaledParams p = k100();
        CHECK(kernel_K(p, 0.01, 0.005) == Approx(0.004878320414490391).epsilon(1e-12));
        CHECK(kernel_K(rounded(), 0.01, 0.005) == Approx(4.878e-3).epsilon(1e-3));
        CHECK(kernel_K(p, 0.005, 0.01) == 0.0);
        for (double s : {0.0, 1e-5, 1e-3, 0.05}) {
            CHECK(kernel_K(p, s, s) == 0.0);
            const double h = 1e-7;
            const double slope = (kernel_K(p, s + h, s) - kernel_K(p, s, s)) / h;
            CHECK(slope == Approx(1.0).epsilon(1e-5));
            CHECK(kernel_J(p, s, s) == Approx(std::pow(first_asymptotic_R1(p, s).R, 2)).epsilon(1e-14));
        }
    }

    TEST_CASE("kernel solutions: Wronskian, residuals and Green representation")
    {
        const ScaledParams p = k100();
        CHECK(kernel_solutions_z(p, p.tau0).z1 == 0.0);
        for (int i = 0; i < 100; ++i) {
            const double tau = 0.001 * i;
            const KernelSolutions z = kernel_solutions_z(p, tau);
            CHECK(z.z1 * z.dz2 - z.z2 * z.dz1 == Approx(1.0).epsilon(1e-10));
        }
        for (double tau : {0.002, 0.01, 0.05}) {
            const double R1 = first_asymptotic_R1(p, tau).R;
            const double h = 3e-3 * std::max(p.kappa, std::abs(tau - p.tau0));
            const double c = 3 * p.E / std::pow(R1, 4);
            const auto z1 = [&](double s) { return kernel_solutions_z(p, s).z1; };
            const auto z2 = [&](double s) { return kernel_solutions_z(p, s).z2; };
            CHECK(second_derivative(z1, tau, h) == Approx(-c * z1(tau)).epsilon(1e-8));
            CHECK(second_derivative(z2, tau, h) == Approx(-c * z2(tau)).epsilon(1e-8));
            CHECK(derivative(z2, tau, h) == Approx(kernel_solutions_z(p, tau).dz2).epsilon(1e-8));
            for (double s : {0.0, 0.3 * tau, tau}) {
                const KernelSolutions a = kernel_solutions_z(p, tau);
                const KernelSolutions b = kernel_solutions_z(p, s);
                CHECK(kernel_K(p, tau, s) == Approx(b.z1 * a.z2 - b.z2 * a.z1).epsilon(1e-9).scale(1e-3));
            }
        }
    }

    TEST_CASE("kernel positivity for tau <= 0.1")
    {
        for (double eta : {0.26, 1e-2, 1e-3}) {
            const ScaledParams p = scaled_params_direct(eta, std::nullopt, unit, characteristic_roots(2.0));
            for (int i = 0; i <= 200; ++i) {
                const double tau = 0.1 * i / 200;
                for (int j = 0; j <= i; ++j) {
                    CHECK(kernel_K(p, tau, 0.1 * j / 200) >= 0.0);
                }
            }
        }
    }

    TEST_CASE("delta integral: closed form, x-quadrature and sigma-quadrature agree")
    {
        const ScaledParams p = k100();
        CHECK(kernel_integral_I(p, 0.0) == 0.0);
        for (double tau : {1e-5, 1e-4, 1e-3, 0.01, 0.1, 0.5, 1.0}) {
            const double a = kernel_integral_I(p, tau);
            CHECK(a == Approx(closed_form_I(p, tau)).epsilon(1e-9));
            const auto f = [&](double s) { return kernel_K(p, tau, s) / std::pow(first_asymptotic_R1(p, s).R, 3); };
            const double b = quad::integrate(f, 0.0, tau, 0.0, 1e-10, {p.tau0}).value / first_asymptotic_R1(p, tau).R;
            CHECK(a == Approx(b).epsilon(1e-8));
        }
        const DeltaBound d = delta_bound(p);
        CHECK(d.analytic == Approx(48.0).epsilon(1e-14));
        CHECK(d.numeric <= d.analytic);
        CHECK(d.numeric == Approx(1.0 / (2.0 * p.E)).epsilon(0.01));
        CHECK_THROWS_AS(delta_bound(p, 1), Error);
    }

    TEST_CASE("second asymptotic")
    {
        const DampingParams d = characteristic_roots(1.25);
        const RadialPair m{1.0, 2.0};
        const RadialPair a = second_asymptotic_R2(m, 0.3, d, 0.3);
        CHECK(a.R == 1.0);
        CHECK(a.dR == 2.0);
        CHECK(second_asymptotic_R2(m, 0.3, d, 1.3).R == Approx(1.391856287172668).epsilon(1e-13));
        double prev = 2.0;
        for (double tau = 5.0; tau < 200.0; tau += 5.0) {
            const double R = second_asymptotic_R2(m, 0.3, d, tau).R;
            CHECK(R > 0.0);
            CHECK(R < prev);
            prev = R;
        }
        CHECK(prev < 1e-20);
        CHECK(second_kernel_integral(m, 0.3, d, 0.3) == 0.0);
        CHECK(second_kernel_integral(m, 0.3, d, 2.0) > 0.0);
    }

    TEST_CASE("time scales")
    {
        const DampingParams d = characteristic_roots(2.0);
        const AsymptoticTimes t = asymptotic_times(1e-3, 1.2, default_zeta(d), d);
        CHECK(t.tau1 == Approx(2.51188643150958e-4).epsilon(1e-13));
        CHECK(t.tau3 == Approx(default_zeta(d) * std::log(1e3)).epsilon(1e-15));
        CHECK_FALSE(t.tau4);
        const DampingParams e = characteristic_roots(1.25);
        CHECK(asymptotic_times(1e-3, 1.2, 1.0, e).tau2 == Approx(1.8483924814931876).epsilon(1e-14));
        CHECK_THROWS_WITH_AS(asymptotic_times(1e-3, 1.5, 1.0, d), doctest::Contains("gamma1"), Error);
        CHECK_THROWS_AS(asymptotic_times(1e-3, 1.0, 1.0, d), Error);
        CHECK_THROWS_AS(asymptotic_times(1e-3, 1.2, 1.0 / std::abs(d.xi1), d), Error);
        CHECK_THROWS_AS(asymptotic_times(1e-3, 1.2, 0.0, d), Error);
        for (double alpha : {1.25, 2.0, 3.0}) {
            const DampingParams q = characteristic_roots(alpha);
            for (double eta = 1e-2; eta > 1e-12; eta *= 0.1) {
                const AsymptoticTimes s = asymptotic_times(eta, 1.2, default_zeta(q), q);
                CHECK(s.tau1 < s.tau2);
                CHECK(s.tau2 < s.tau3);
            }
        }
    }

    TEST_CASE("critical point and Lyapunov functional")
    {
        CHECK(critical_point(1.0 / 12, 0.0) == Approx(0.537284965911771).epsilon(1e-14));
        CHECK(critical_point(1.0, 0.0) == 1.0);
        CHECK(critical_point(1.0 / 12, 0.5) == Approx(0.37991784282579627).epsilon(1e-14));
        const double Rc = critical_point(1.0 / 12, 0.0);
        CHECK(lyapunov_F(Rc, 0.0, 1.0 / 12, 0.0) == Approx(0.5773502691896257).epsilon(1e-14));
        CHECK(lyapunov_F(1.0, 0.0, 1.0, 0.0) == 2.0);

        ScaledParams p = scaled_params_direct(1e-3, 0.0, unit, characteristic_roots(2.0));
        CHECK(lyapunov_F_rate({0, 1.0, 1.0, 0}, p) == Approx(-8.0).epsilon(1e-14));
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.01, 3.0);
        for (int i = 0; i < 200; ++i) {
            const double R = u(rng);
            const double dR = u(rng) - 1.5;
            CHECK(lyapunov_F_rate({0, R, dR, 0}, p) == Approx(-4 * 2.0 * dR * dR).epsilon(1e-12).scale(1e-12));
        }
    }

    TEST_CASE("Lyapunov matrix")
    {
        const DampingParams d = characteristic_roots(2.0);
        const LyapunovData L = lyapunov_Q(d);
        CHECK(L.Q.a11 == 2.25);
        CHECK(L.Q.a12 == 0.5);
        CHECK(L.Q.a21 == 0.5);
        CHECK(L.Q.a22 == 0.25);
        CHECK(L.lambda1 == Approx(0.13196601125010515).epsilon(1e-14));
        CHECK(L.lambda2 == Approx(2.368033988749895).epsilon(1e-14));
        for (double alpha : {1.01, 1.5, 2.0, 7.0}) {
            const DampingParams q = characteristic_roots(alpha);
            const LyapunovData M = lyapunov_Q(q);
            const Mat2 r = lyapunov_residual(M, q);
            CHECK(std::abs(r.a11) <= 1e-14);
            CHECK(std::abs(r.a12) <= 1e-14);
            CHECK(std::abs(r.a21) <= 1e-14);
            CHECK(std::abs(r.a22) <= 1e-14);
            CHECK(M.lambda1 > 0.0);
            CHECK(M.lambda1 <= M.lambda2);
            std::mt19937_64 rng(5);
            std::normal_distribution<double> n;
            for (int i = 0; i < 200; ++i) {
                const double x1 = n(rng), x2 = n(rng);
                const double q2 = x1 * x1 + x2 * x2;
                const double v = quadratic_form(M.Q, x1, x2);
                CHECK(v >= M.lambda1 * q2 * (1 - 1e-12));
                CHECK(v <= M.lambda2 * q2 * (1 + 1e-12));
            }
        }
    }

    TEST_CASE("trapping threshold")
    {
        const DampingParams d = characteristic_roots(2.0);
        const TrappingThreshold t = trapping_threshold(1.0 / 12, 0.0, d);
        CHECK(t.plain_bound == Approx(3.343717649791509).epsilon(1e-14));
        CHECK(t.root_bound == Approx(1.352251274397874).epsilon(1e-14));
        CHECK(t.Rbar == Approx(1.365773787141853).epsilon(1e-14));
        CHECK(t.Rbar > std::max(t.root_bound, t.Rc));
        const TrappingThreshold small = trapping_threshold(1e-12, 0.0, d);
        CHECK(small.Rbar < 1e-2);
        CHECK_THROWS_AS(trapping_threshold(0.0, 0.0, d), Error);
    }

    TEST_CASE("obtuse exponents")
    {
        const ObtuseExponents a = obtuse_exponents(1.2, characteristic_roots(2.0));
        CHECK(a.r == 1.2);
        CHECK(a.lower_bound_exponent == 1.2);
        const DampingParams d11 = characteristic_roots(1.1);
        CHECK(4 * d11.sqrt_delta() / std::abs(d11.xi1) == Approx(2.8563333057805713).epsilon(1e-14));
        CHECK(obtuse_exponents(1.2, d11).r == 1.2);
        const ObtuseExponents b = obtuse_exponents(1.01, characteristic_roots(std::sqrt(81.0 / 80.0)));
        CHECK(b.r == Approx(0.5).epsilon(1e-14));
        CHECK(b.lower_bound_exponent == Approx(1.5).epsilon(1e-14));
        CHECK_THROWS_AS(obtuse_exponents(1.4, d11), Error);
    }

    TEST_CASE("exit equivalents")
    {
        const double eta = 1e-3;
        const ScaledParams p = scaled_params_direct(eta, std::nullopt, unit, characteristic_roots(2.0));
        const ExitEquivalents a = exit_equivalents(p, ConeGeometry(pi / 3));
        CHECK(a.branch == ExitBranch::acute);
        CHECK(a.tau_bar_est == Approx(0.5 * eta * eta).epsilon(1e-6));
        CHECK(a.R_est == Approx(0.5773502691896258 * eta).epsilon(1e-14));
        CHECK(a.dR_est == Approx(0.8660254037844386 / eta).epsilon(1e-14));
        const ExitEquivalents b = exit_equivalents(p, ConeGeometry(2 * pi / 3));
        CHECK(b.branch == ExitBranch::obtuse);
        const double z = default_zeta(p.damping);
        CHECK(b.R_est == Approx(std::pow(eta, -(1 + z * p.damping.xi1)) / (2 * std::sqrt(3.0))).epsilon(1e-14));
        CHECK(b.dR_est == Approx(p.damping.xi1 * b.R_est).epsilon(1e-15));
        CHECK(exit_equivalents(p, ConeGeometry(pi / 2)).branch == ExitBranch::obtuse);
    }
}
