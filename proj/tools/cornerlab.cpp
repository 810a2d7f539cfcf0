#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cornerlab/config.hpp"
#include "cornerlab/error.hpp"
#include "cornerlab/simulation.hpp"
#include "cornerlab/studies.hpp"
#include "cornerlab/table.hpp"

namespace {

using namespace cornerlab;

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_numeric = 3;

struct Overrides {
    std::string config_path;
    std::optional<double> k;
    std::optional<double> eta;
    std::optional<double> theta_bar;
    std::optional<std::string> out;
};

void add_common(CLI::App* sub, Overrides& o)
{
    sub->add_option("--config", o.config_path, "Configuration file (key = value lines)")->required();
    sub->add_option("--k", o.k, "Stiffness; selects physical mode");
    sub->add_option("--eta", o.eta, "Corner scale eta; selects scaled mode");
    sub->add_option("--theta-bar", o.theta_bar, "Corner angle in (0, pi)");
    sub->add_option("--out", o.out, "Output CSV path (default: stdout)");
}

SimConfig resolve(const Overrides& o)
{
    SimConfig c = load_config(o.config_path);
    if (o.k) {
        c.k = *o.k;
        c.k_list = {*o.k};
        c.mode = Mode::physical;
    }
    if (o.eta) {
        c.eta = *o.eta;
        c.eta_list = {*o.eta};
        c.mode = Mode::scaled;
    }
    if (o.theta_bar) {
        c.theta_bar = *o.theta_bar;
    }
    if (o.out) {
        c.out = *o.out;
    }
    validate(c);
    return c;
}

void emit(const Table& table, const SimConfig& c)
{
    if (c.out.empty()) {
        write_csv(table, std::cout);
    } else {
        write_csv(table, c.out);
    }
}

void print_order(const char* name, const std::optional<double>& v)
{
    if (v) {
        std::fprintf(stderr, "%s = %s\n", name, format_number(*v).c_str());
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Penalized corner impact: simulation, convergence and asymptotic checks"};
    app.require_subcommand(1);

    Overrides sim_o, conv_o, asym_o, port_o;
    auto* sim = app.add_subcommand("simulate",
                                   "Full penalized trajectory (physical mode).\n"
                                   "CSV columns: t,u1,u2,v1,v2,phase (phase: R1-phase|corner|R3-phase)");
    add_common(sim, sim_o);
    auto* conv = app.add_subcommand("converge",
                                    "Sup distance to the Moreau limit on [window_start, t_end] over k_list.\n"
                                    "CSV columns: k,sup_error,local_order; fitted order on stderr");
    add_common(conv, conv_o);
    auto* asym = app.add_subcommand("asym-report",
                                    "First/second asymptotic errors and exit time over eta_list (scaled mode).\n"
                                    "CSV columns: eta,eps,tau1,tau3,err_R1,err_dR1,err_R2,tau_bar,tau_bar_est,"
                                    "tau_bar_ratio; fitted orders on stderr");
    add_common(asym, asym_o);
    auto* port = app.add_subcommand("phase-portrait",
                                    "Radial vector field on the portrait grid plus the critical point.\n"
                                    "CSV columns: R,dR,field_R,field_dR,critical");
    add_common(port, port_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_validation;
    }

    try {
        if (*sim) {
            const SimConfig c = resolve(sim_o);
            const Trajectory traj = simulate_full(c);
            emit(traj.to_table(), c);
            std::fprintf(stderr, "entry jump: position %s velocity %s\n",
                         format_number(traj.jumps.entry_position).c_str(),
                         format_number(traj.jumps.entry_velocity).c_str());
            if (traj.jumps.exit_position) {
                std::fprintf(stderr, "exit at t = %s; jump: position %s velocity %s\n",
                             format_number(traj.t_exit).c_str(), format_number(*traj.jumps.exit_position).c_str(),
                             format_number(*traj.jumps.exit_velocity).c_str());
            }
        } else if (*conv) {
            const SimConfig c = resolve(conv_o);
            const ConvergenceStudy study = convergence_study(c, c.k_list, end_time_of(c));
            emit(study.table, c);
            print_order("fitted_order", study.fitted_order);
        } else if (*asym) {
            const SimConfig c = resolve(asym_o);
            const AsymptoticReport report = asymptotic_report(c, c.eta_list);
            emit(report.table, c);
            print_order("order_R1", report.order_R1);
            print_order("order_dR1", report.order_dR1);
            print_order("order_R2", report.order_R2);
        } else if (*port) {
            const SimConfig c = resolve(port_o);
            emit(phase_portrait(scaled_params_of(c), c.portrait), c);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return is_validation_error(e.kind()) ? exit_validation : exit_numeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_numeric;
    }
    return exit_ok;
}
