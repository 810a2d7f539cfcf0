#include "cornerlab/studies.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "cornerlab/error.hpp"
#include "cornerlab/moreau_limit.hpp"
#include "cornerlab/simulation.hpp"

namespace cornerlab {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// Integrator nodes in [a, b] plus uniform and logarithmic refinements.
std::vector<double> sample_taus(const CornerResult& run, double a, double b, int n)
{
    std::vector<double> out;
    for (const ScaledState& s : run.samples) {
        if (s.tau >= a && s.tau <= b) {
            out.push_back(s.tau);
        }
    }
    const std::vector<double> lin = uniform_grid(a, b, n);
    out.insert(out.end(), lin.begin(), lin.end());
    const double lo = a > 0.0 ? a : b * 1e-12;
    const double ratio = std::log(b / lo);
    for (int i = 0; i < n; ++i) {
        out.push_back(lo * std::exp(ratio * i / (n - 1)));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    out.erase(std::remove_if(out.begin(), out.end(), [a, b](double t) { return t < a || t > b; }), out.end());
    return out;
}

// First tau >= from where pred holds, refined by bisection between nodes.
std::optional<double> first_time(const CornerResult& run, double from, const std::function<bool(const ScaledState&)>& pred)
{
    if (from > run.covered_end()) {
        return std::nullopt;
    }
    double prev = from;
    if (pred(run.at(from))) {
        return from;
    }
    for (const ScaledState& s : run.samples) {
        if (s.tau <= from) {
            continue;
        }
        if (pred(s)) {
            double lo = prev;
            double hi = s.tau;
            for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
                const double mid = 0.5 * (lo + hi);
                (pred(run.at(mid)) ? hi : lo) = mid;
            }
            return hi;
        }
        prev = s.tau;
    }
    return std::nullopt;
}

} // namespace

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw Error(ErrorKind::invalid_input, "a slope fit needs at least two points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw Error(ErrorKind::invalid_input, "a slope fit needs distinct abscissae");
    }
    return sxy / sxx;
}

std::vector<double> uniform_grid(double a, double b, int n)
{
    if (n <= 0) {
        return {};
    }
    if (n == 1) {
        return {a};
    }
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = i == n - 1 ? b : a + (b - a) * i / (n - 1);
    }
    return out;
}

ConvergenceStudy convergence_study(const SimConfig& config, const std::vector<double>& k_list, double T)
{
    if (k_list.empty()) {
        throw Error(ErrorKind::invalid_config, "k_list must not be empty");
    }
    if (!(T > config.window_start)) {
        throw Error(ErrorKind::invalid_config, "the horizon must exceed window_start");
    }
    ConvergenceStudy study;
    study.table.columns = {"k", "sup_error", "local_order"};
    const LimitTrajectory limit = make_limit_trajectory(config.init, cone_of(config));
    const std::vector<double> grid = uniform_grid(config.window_start, T, convergence_grid_points);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < k_list.size(); ++i) {
        SimConfig cfg = config;
        cfg.mode = Mode::physical;
        cfg.k = k_list[i];
        cfg.t_end = T;
        const PiecewiseSolution sol = solve_piecewise(cfg);
        double err = 0.0;
        for (double t : grid) {
            err = std::max(err, norm(sol.evaluate(t).u - limit.at(t)));
        }
        const double x = -0.5 * std::log(k_list[i]);
        const double local = i == 0 ? nan : (std::log(err) - ys.back()) / (x - xs.back());
        xs.push_back(x);
        ys.push_back(std::log(err));
        study.table.add_row({k_list[i], err, local});
    }
    if (xs.size() >= 2) {
        study.fitted_order = least_squares_slope(xs, ys);
    }
    return study;
}

AsymptoticErrors asymptotic_errors(const ScaledParams& params, const ConeGeometry& cone, double gamma1, double zeta,
                                   CornerControls controls)
{
    AsymptoticErrors out;
    out.times = asymptotic_times(params.eta, gamma1, zeta, params.damping);
    controls.zeta = zeta;
    controls.stop_at_exit = false;
    const double needed = 1.05 * out.times.tau3;
    controls.horizon = std::max(controls.horizon.value_or(0.0), std::max(needed, default_corner_horizon(params, cone, controls)));
    out.run = integrate_corner(params, cone, controls);
    if (out.run.exited) {
        out.tau_bar = out.run.exit_tau;
    }

    const int n = 1000;
    const double tau1 = out.times.tau1;
    for (double tau : sample_taus(out.run, 0.0, tau1, n)) {
        const double R = out.run.at(tau).R;
        const double R1 = first_asymptotic_R1(params, tau).R;
        out.err_R1 = std::max(out.err_R1, std::abs(R - R1) / R1);
    }
    const double eta3 = params.eta * params.eta * params.eta;
    if (eta3 < tau1) {
        for (double tau : sample_taus(out.run, eta3, tau1, n)) {
            const double dR = out.run.at(tau).dR;
            const double dR1 = first_asymptotic_R1(params, tau).dR;
            out.err_dR1 = std::max(out.err_dR1, std::abs(dR - dR1) / std::abs(dR1));
        }
    }
    const ScaledState m = out.run.at(tau1);
    const RadialPair match{m.R, m.dR};
    for (double tau : sample_taus(out.run, tau1, out.times.tau3, n)) {
        const double R = out.run.at(tau).R;
        const double R2 = second_asymptotic_R2(match, tau1, params.damping, tau).R;
        out.err_R2 = std::max(out.err_R2, std::abs(R - R2) / R2);
    }
    return out;
}

AsymptoticReport asymptotic_report(const SimConfig& config, const std::vector<double>& eta_list)
{
    if (eta_list.empty()) {
        throw Error(ErrorKind::invalid_config, "eta_list must not be empty");
    }
    const DampingParams damping = damping_of(config);
    const ConeGeometry cone = cone_of(config);
    const double zeta = zeta_of(config);
    AsymptoticReport report;
    report.table.columns = {"eta", "eps", "tau1", "tau3", "err_R1", "err_dR1", "err_R2",
                            "tau_bar", "tau_bar_est", "tau_bar_ratio"};
    std::vector<double> xs, y1, yd, y2;
    for (double eta : eta_list) {
        const ScaledParams params = scaled_params_direct(eta, config.eps, config.init, damping);
        const AsymptoticErrors e = asymptotic_errors(params, cone, config.gamma1, zeta, controls_of(config));
        const ExitEquivalents eq = exit_equivalents(params, cone, zeta);
        const double tau_bar = e.tau_bar.value_or(nan);
        const double ratio = eq.branch == ExitBranch::acute ? tau_bar / eq.tau_bar_est : nan;
        report.table.add_row({eta, params.eps, e.times.tau1, e.times.tau3, e.err_R1, e.err_dR1, e.err_R2, tau_bar,
                              eq.branch == ExitBranch::acute ? eq.tau_bar_est : nan, ratio});
        xs.push_back(std::log(eta));
        y1.push_back(std::log(e.err_R1));
        yd.push_back(std::log(e.err_dR1));
        y2.push_back(std::log(e.err_R2));
    }
    if (xs.size() >= 2) {
        report.order_R1 = least_squares_slope(xs, y1);
        report.order_dR1 = least_squares_slope(xs, yd);
        report.order_R2 = least_squares_slope(xs, y2);
    }
    return report;
}

AttractorStudy attractor_study(const ScaledParams& params, const ConeGeometry& cone, double zeta,
                               CornerControls controls, double settle_tol)
{
    const LyapunovData lyap = lyapunov_Q(params.damping);
    AttractorStudy out;
    out.threshold = trapping_threshold(params.E, params.eps, params.damping);
    out.required_rate = 1.0 / (2.0 * lyap.lambda2);
    out.tau3 = zeta * std::log(1.0 / params.eta);
    out.deadline = out.tau3 + 20.0 * 2.0 * lyap.lambda2;

    controls.zeta = zeta;
    controls.detect_exit = false;
    controls.stop_at_exit = false;
    controls.horizon = out.deadline;
    const CornerResult run = integrate_corner(params, cone, controls);

    const double Rbar = out.threshold.Rbar;
    const double Rc = out.threshold.Rc;
    out.tau4 = first_time(run, out.tau3, [Rbar](const ScaledState& s) { return s.R <= Rbar; });
    if (!out.tau4) {
        return out;
    }
    out.tau_settle = first_time(run, *out.tau4, [Rc, settle_tol](const ScaledState& s) {
        return std::abs(s.R - Rc) + std::abs(s.dR) < settle_tol;
    });
    if (*out.tau4 > out.tau3) {
        const ScaledState a = run.at(out.tau3);
        const ScaledState b = run.at(*out.tau4);
        out.outer_rate = std::log(quadratic_form(lyap.Q, a.R, a.dR) / quadratic_form(lyap.Q, b.R, b.dR)) /
                         (*out.tau4 - out.tau3);
    }
    if (out.tau_settle && *out.tau_settle > *out.tau4) {
        const ScaledState a = run.at(*out.tau4);
        const ScaledState b = run.at(*out.tau_settle);
        out.inner_rate = std::log(quadratic_form(lyap.Q, a.R - Rc, a.dR) / quadratic_form(lyap.Q, b.R - Rc, b.dR)) /
                         (*out.tau_settle - *out.tau4);
    }
    return out;
}

Table phase_portrait(const ScaledParams& params, const PortraitSpec& spec)
{
    if (!(spec.r_min > 0.0) || spec.r_max < spec.r_min || spec.dr_max < spec.dr_min || spec.n < 0) {
        throw Error(ErrorKind::invalid_input, "portrait ranges need 0 < r_min <= r_max, dr_min <= dr_max, n >= 0");
    }
    Table table;
    table.columns = {"R", "dR", "field_R", "field_dR", "critical"};
    if (spec.n == 0) {
        return table;
    }
    for (double R : uniform_grid(spec.r_min, spec.r_max, spec.n)) {
        for (double dR : uniform_grid(spec.dr_min, spec.dr_max, spec.n)) {
            const RadialRates f = radial_rhs({0.0, R, dR, 0.0}, params);
            table.add_row({R, dR, f.dR, f.ddR, 0.0});
        }
    }
    const double Rc = critical_point(params.E, params.eps);
    const RadialRates f = radial_rhs({0.0, Rc, 0.0, 0.0}, params);
    table.add_row({Rc, 0.0, f.dR, f.ddR, 1.0});
    return table;
}

} // namespace cornerlab
