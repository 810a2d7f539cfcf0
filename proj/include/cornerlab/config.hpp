#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cornerlab/cone_geometry.hpp"
#include "cornerlab/corner_phase.hpp"
#include "cornerlab/linear_phase.hpp"

namespace cornerlab {

enum class Mode { physical, scaled };

struct PortraitSpec {
    double r_min = 0.05;
    double r_max = 3.0;
    double dr_min = -2.0;
    double dr_max = 2.0;
    int n = 21;
};

struct SimConfig {
    double alpha = 2.0;
    double theta_bar = 1.0471975511965976; // pi / 3
    InitialData init;
    Mode mode = Mode::physical;
    double k = 100.0;
    double eta = 1e-3;
    std::optional<double> eps; // absent: derived from eta
    double gamma1 = 1.2;
    std::optional<double> zeta; // absent: 0.5 / |xi1|
    double atol = 1e-12;
    double rtol = 1e-10;
    double horizon_safety = 1.0;
    std::optional<double> t_end; // absent: 2 t0
    std::vector<double> k_list{1e2, 1e3, 1e4};
    std::vector<double> eta_list{1e-2, 1e-3, 1e-4};
    double window_start = 0.0;
    PortraitSpec portrait;
    std::string out;
};

// Parses `key = value` lines; `#` starts a comment. Lists are comma
// separated. Syntax errors and unknown keys name the line; the result is
// validated before it is returned.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);

// Re-checks every parameter constraint; throws with the violated invariant.
void validate(const SimConfig& config);

DampingParams damping_of(const SimConfig& config);
ConeGeometry cone_of(const SimConfig& config);
double end_time_of(const SimConfig& config);
double zeta_of(const SimConfig& config);
// Physical mode uses k, scaled mode uses (eta, eps).
ScaledParams scaled_params_of(const SimConfig& config);
CornerControls controls_of(const SimConfig& config);

} // namespace cornerlab
