#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cornerlab/config.hpp"
#include "cornerlab/corner_phase.hpp"
#include "cornerlab/table.hpp"

namespace cornerlab {

enum class Phase { r1, corner, r3 };

// "R1-phase", "corner", "R3-phase".
std::string_view to_string(Phase phase);

struct PhasePoint {
    double t = 0.0;
    Vec2 u;
    Vec2 v;
    Phase phase = Phase::r1;
};

// Differences between the states on both sides of a phase change.
struct HandoffJumps {
    double entry_position = 0.0;
    double entry_velocity = 0.0;
    std::optional<double> exit_position;
    std::optional<double> exit_velocity;
};

// Penalized trajectory on [0, t_end] assembled from the closed-form R1 phase,
// the scaled corner integration and the closed-form motion beyond face 2.
class PiecewiseSolution {
public:
    double t0 = 0.0;
    double t_end = 0.0;
    double sqrt_k = 0.0;
    ScaledParams params;
    CornerResult corner;
    bool exited = false;
    double t_exit = 0.0;
    // Face-2 coordinates at the exit: distance beyond the face and rates.
    double y1_exit = 0.0;
    double dy1_exit = 0.0;
    double dy2_exit = 0.0;
    HandoffJumps jumps;

    PhasePoint evaluate(double t) const;
    const ConeGeometry& cone() const noexcept { return cone_; }

private:
    friend PiecewiseSolution solve_piecewise(const SimConfig& config);
    ConeGeometry cone_{1.0};
};

// Requires physical mode; throws scale-free-run otherwise.
PiecewiseSolution solve_piecewise(const SimConfig& config);

struct Trajectory {
    std::vector<PhasePoint> samples; // strictly increasing t
    HandoffJumps jumps;
    double momentum_drift = 0.0;
    bool exited = false;
    double t_exit = 0.0;
    std::optional<double> min_face_distance; // min of u . normal2 over the R3 phase

    // Columns t, u1, u2, v1, v2, phase.
    Table to_table() const;
};

// Points per phase on the uniform refinement.
inline constexpr int phase_refinement = 501;

Trajectory simulate_full(const SimConfig& config);

} // namespace cornerlab
