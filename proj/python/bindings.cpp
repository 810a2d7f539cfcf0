#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

#include "cornerlab/asymptotics.hpp"
#include "cornerlab/config.hpp"
#include "cornerlab/corner_phase.hpp"
#include "cornerlab/error.hpp"
#include "cornerlab/moreau_limit.hpp"
#include "cornerlab/simulation.hpp"
#include "cornerlab/studies.hpp"

namespace py = pybind11;
using namespace cornerlab;

namespace {

using Pair = std::tuple<double, double>;

Vec2 to_vec(const Pair& p) { return {std::get<0>(p), std::get<1>(p)}; }
Pair to_pair(const Vec2& v) { return {v.x1, v.x2}; }

py::dict table_to_dict(const Table& table)
{
    py::dict out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        py::list column;
        for (const auto& row : table.rows) {
            std::visit([&column](const auto& v) { column.append(v); }, row[c]);
        }
        out[py::str(table.columns[c])] = column;
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Penalized corner impact: geometry, scaled corner dynamics, asymptotics and Moreau limit";

    py::exception<Error>(m, "CornerlabError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error& e) {
            const py::object type = py::module_::import("cornerlab._core").attr("CornerlabError");
            py::object exc = type(e.what());
            exc.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(type.ptr(), exc.ptr());
        }
    });

    py::class_<DampingParams>(m, "DampingParams")
        .def_readonly("alpha", &DampingParams::alpha)
        .def_readonly("delta", &DampingParams::delta)
        .def_readonly("xi1", &DampingParams::xi1)
        .def_readonly("xi2", &DampingParams::xi2);
    m.def("characteristic_roots", &characteristic_roots, py::arg("alpha"));

    py::class_<InitialData>(m, "InitialData")
        .def(py::init([](double s0, double dr0, double ds0) { return InitialData{s0, dr0, ds0}; }),
             py::arg("s0") = -1.0, py::arg("dr0") = 1.0, py::arg("ds0") = 1.0)
        .def_readwrite("s0", &InitialData::s0)
        .def_readwrite("dr0", &InitialData::dr0)
        .def_readwrite("ds0", &InitialData::ds0);
    m.def("first_crossing_time", &first_crossing_time, py::arg("init"));

    py::class_<ConeGeometry>(m, "ConeGeometry")
        .def(py::init<double>(), py::arg("theta_bar"))
        .def_property_readonly("theta_bar", &ConeGeometry::theta_bar)
        .def_property_readonly("acute", &ConeGeometry::acute)
        .def_property_readonly("normal2", [](const ConeGeometry& c) { return to_pair(c.normal2()); });

    m.def("classify_region",
          [](const Pair& p, const ConeGeometry& c) { return std::string(to_string(classify_region(to_vec(p), c))); },
          py::arg("point"), py::arg("cone"));
    m.def("project_onto_cone", [](const Pair& p, const ConeGeometry& c) { return to_pair(project_onto_cone(to_vec(p), c)); },
          py::arg("point"), py::arg("cone"));
    m.def("tangent_cone_project",
          [](const Pair& p, const Pair& v, const ConeGeometry& c) {
              return to_pair(tangent_cone_project(to_vec(p), to_vec(v), c));
          },
          py::arg("point"), py::arg("velocity"), py::arg("cone"));

    py::class_<ScaledParams>(m, "ScaledParams")
        .def_readonly("eta", &ScaledParams::eta)
        .def_readonly("eps", &ScaledParams::eps)
        .def_readonly("E", &ScaledParams::E)
        .def_readonly("R0", &ScaledParams::R0)
        .def_readonly("dR0", &ScaledParams::dR0)
        .def_readonly("W", &ScaledParams::W)
        .def_readonly("tau0", &ScaledParams::tau0)
        .def_readonly("kappa", &ScaledParams::kappa)
        .def_readonly("k", &ScaledParams::k)
        .def_readonly("gamma", &ScaledParams::gamma);
    m.def("scaled_params_from_physical",
          [](const InitialData& init, double alpha, double k) {
              return scaled_params_from_physical(init, characteristic_roots(alpha), k);
          },
          py::arg("init"), py::arg("alpha"), py::arg("k"));
    m.def("scaled_params_direct",
          [](double eta, std::optional<double> eps, const InitialData& init, double alpha) {
              return scaled_params_direct(eta, eps, init, characteristic_roots(alpha));
          },
          py::arg("eta"), py::arg("eps") = py::none(), py::arg("init") = InitialData{}, py::arg("alpha") = 2.0);

    m.def("integrate_corner",
          [](const ScaledParams& params, const ConeGeometry& cone, std::optional<double> horizon, bool stop_at_exit) {
              CornerControls controls;
              controls.horizon = horizon;
              controls.stop_at_exit = stop_at_exit;
              const CornerResult r = integrate_corner(params, cone, controls);
              py::dict out;
              out["exited"] = r.exited;
              out["exit_tau"] = r.exit_tau;
              out["horizon"] = r.horizon;
              out["momentum_drift"] = r.momentum_drift;
              py::list tau, R, dR, theta;
              for (const ScaledState& s : r.samples) {
                  tau.append(s.tau);
                  R.append(s.R);
                  dR.append(s.dR);
                  theta.append(s.Theta);
              }
              out["tau"] = tau;
              out["R"] = R;
              out["dR"] = dR;
              out["Theta"] = theta;
              return out;
          },
          py::arg("params"), py::arg("cone"), py::arg("horizon") = py::none(), py::arg("stop_at_exit") = true);

    m.def("first_asymptotic_R1", [](const ScaledParams& p, double tau) {
        const RadialPair r = first_asymptotic_R1(p, tau);
        return Pair{r.R, r.dR};
    });
    m.def("critical_point", &critical_point, py::arg("E"), py::arg("eps") = 0.0);
    m.def("lyapunov_eigenvalues", [](double alpha) {
        const LyapunovData d = lyapunov_Q(characteristic_roots(alpha));
        return Pair{d.lambda1, d.lambda2};
    });

    m.def("limit_trajectory",
          [](const InitialData& init, const ConeGeometry& cone, double t) {
              return to_pair(limit_trajectory(init, cone, t));
          },
          py::arg("init"), py::arg("cone"), py::arg("t"));

    m.def("simulate",
          [](const std::string& config_text) { return table_to_dict(simulate_full(parse_config(config_text)).to_table()); },
          py::arg("config_text"), "Full trajectory as a dict of columns t, u1, u2, v1, v2, phase.");
    m.def("phase_portrait",
          [](const std::string& config_text) {
              const SimConfig c = parse_config(config_text);
              return table_to_dict(phase_portrait(scaled_params_of(c), c.portrait));
          },
          py::arg("config_text"));
}
