#pragma once

#include <string_view>

#include "cornerlab/vec2.hpp"

namespace cornerlab {

// Labels of the plane partition induced by the angular set
//   K = { x1 <= 0, x1 cos(theta_bar) + x2 sin(theta_bar) <= 0 }.
// R1 is the slab beyond face 1, R3 the slab beyond face 2 and R2 the normal
// cone at the vertex (the polar cone of K).
enum class Region { K, R1, R2, R3 };

std::string_view to_string(Region region);

class ConeGeometry {
public:
    // theta_bar must lie in (0, pi).
    explicit ConeGeometry(double theta_bar);

    double theta_bar() const noexcept { return theta_bar_; }
    double sin_theta() const noexcept { return sin_; }
    double cos_theta() const noexcept { return cos_; }

    // Outward unit normals of the two faces.
    static constexpr Vec2 normal1() noexcept { return {1.0, 0.0}; }
    Vec2 normal2() const noexcept { return {cos_, sin_}; }
    // Unit direction of face 2, pointing away from the vertex.
    Vec2 face2_direction() const noexcept { return {-sin_, cos_}; }

    bool acute() const noexcept;

private:
    double theta_bar_;
    double sin_;
    double cos_;
};

// Boundary points are resolved with the priority K > R1 > R2 > R3.
Region classify_region(const Vec2& point, const ConeGeometry& cone);

// Euclidean projection P_K.
Vec2 project_onto_cone(const Vec2& point, const ConeGeometry& cone);

// Unit vector along u - P_K u, zero inside K.
Vec2 penalty_direction(const Vec2& point, const ConeGeometry& cone);

// Normal damping extraction G(u, v) = (v . n) n with n = penalty_direction(u).
Vec2 damping_force_G(const Vec2& point, const Vec2& velocity, const ConeGeometry& cone);

// Orthogonal projections onto the face lines {x1 = 0} and {x . normal2 = 0}.
Vec2 pi1(const Vec2& velocity);
Vec2 pi2(const Vec2& velocity, const ConeGeometry& cone);

enum class BoundaryPart { face1, face2, vertex };

// Throws invalid-input when the point is not on the boundary of K.
BoundaryPart locate_on_boundary(const Vec2& point, const ConeGeometry& cone);

// Projection of a velocity onto the tangent cone of K at a boundary point.
// On a face the tangent cone is the closed half-plane behind it, so an
// outgoing velocity loses its normal part and an incoming one is kept; at the
// vertex the tangent cone is K itself.
Vec2 tangent_cone_project(const Vec2& point, const Vec2& velocity, const ConeGeometry& cone);

} // namespace cornerlab
