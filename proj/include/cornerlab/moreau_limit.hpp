#pragma once

#include "cornerlab/cone_geometry.hpp"
#include "cornerlab/linear_phase.hpp"
#include "cornerlab/vec2.hpp"

namespace cornerlab {

enum class LimitBranch { acute, obtuse };

// Limit of the penalized trajectories as k -> infinity for first impact on
// face 1: sliding along face 1 up to the vertex at t0, then sliding along
// face 2 (acute corner) or rest at the vertex (right or obtuse corner).
struct LimitTrajectory {
    double t0 = 0.0;
    LimitBranch branch = LimitBranch::acute;
    Vec2 u0;
    Vec2 v_pre;  // Pi1 u'(0)
    Vec2 v_post; // Pi2 Pi1 u'(0), or zero

    // Position at t >= 0.
    Vec2 at(double t) const;
    // Velocity at t >= 0, right-continuous at t0.
    Vec2 velocity(double t) const;
};

LimitTrajectory make_limit_trajectory(const InitialData& init, const ConeGeometry& cone);

Vec2 limit_trajectory(const InitialData& init, const ConeGeometry& cone, double t);

// Moreau's impact rule with zero restitution: the incoming velocity is
// replaced by its projection onto the tangent cone at the contact point.
Vec2 moreau_velocity_jump(const Vec2& v_in, const Vec2& point, const ConeGeometry& cone);

} // namespace cornerlab
