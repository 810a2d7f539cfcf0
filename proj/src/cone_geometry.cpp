#include "cornerlab/cone_geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cornerlab/error.hpp"

namespace cornerlab {

namespace {

constexpr double boundary_tolerance = 1e-12;

void require_finite(const Vec2& v, const char* what)
{
    if (!is_finite(v)) {
        std::ostringstream msg;
        msg << what << " has non-finite coordinates";
        throw Error(ErrorKind::invalid_input, msg.str());
    }
}

} // namespace

std::string_view to_string(Region region)
{
    switch (region) {
    case Region::K: return "K";
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    case Region::R3: return "R3";
    }
    return "?";
}

ConeGeometry::ConeGeometry(double theta_bar) : theta_bar_(theta_bar), sin_(0.0), cos_(0.0)
{
    if (!(theta_bar > 0.0 && theta_bar < std::numbers::pi)) {
        throw Error(ErrorKind::invalid_input, "theta_bar must lie in (0, pi)");
    }
    sin_ = std::sin(theta_bar);
    cos_ = std::cos(theta_bar);
}

bool ConeGeometry::acute() const noexcept { return theta_bar_ < std::numbers::pi / 2; }

Region classify_region(const Vec2& point, const ConeGeometry& cone)
{
    require_finite(point, "point");
    const double s = cone.sin_theta();
    const double c = cone.cos_theta();
    const double along_n2 = point.x1 * c + point.x2 * s;
    const double along_d = -point.x1 * s + point.x2 * c;

    if (point.x1 <= 0.0 && along_n2 <= 0.0) {
        return Region::K;
    }
    if (point.x1 >= 0.0 && point.x2 <= 0.0) {
        return Region::R1;
    }
    if (point.x2 >= 0.0 && along_d <= 0.0) {
        return Region::R2;
    }
    // The remaining set is exactly {along_n2 > 0, along_d > 0} up to rounding.
    return Region::R3;
}

Vec2 project_onto_cone(const Vec2& point, const ConeGeometry& cone)
{
    switch (classify_region(point, cone)) {
    case Region::K: return point;
    case Region::R1: return {0.0, point.x2};
    case Region::R2: return {0.0, 0.0};
    case Region::R3: {
        const Vec2 d = cone.face2_direction();
        return dot(point, d) * d;
    }
    }
    return point;
}

Vec2 penalty_direction(const Vec2& point, const ConeGeometry& cone)
{
    const Vec2 gap = point - project_onto_cone(point, cone);
    const double len = norm(gap);
    if (len == 0.0) {
        return {0.0, 0.0};
    }
    return (1.0 / len) * gap;
}

Vec2 damping_force_G(const Vec2& point, const Vec2& velocity, const ConeGeometry& cone)
{
    require_finite(velocity, "velocity");
    const Vec2 n = penalty_direction(point, cone);
    return dot(velocity, n) * n;
}

Vec2 pi1(const Vec2& velocity) { return {0.0, velocity.x2}; }

Vec2 pi2(const Vec2& velocity, const ConeGeometry& cone)
{
    const Vec2 d = cone.face2_direction();
    return dot(velocity, d) * d;
}

BoundaryPart locate_on_boundary(const Vec2& point, const ConeGeometry& cone)
{
    require_finite(point, "point");
    const double tol = boundary_tolerance * (1.0 + norm(point));
    if (norm(point) <= tol) {
        return BoundaryPart::vertex;
    }
    // Face 1 is {x1 = 0, x2 < 0}; face 2 is {t d : t > 0}.
    if (std::abs(point.x1) <= tol && point.x2 < 0.0) {
        return BoundaryPart::face1;
    }
    const double along_n2 = dot(point, cone.normal2());
    if (std::abs(along_n2) <= tol && dot(point, cone.face2_direction()) > 0.0) {
        return BoundaryPart::face2;
    }
    throw Error(ErrorKind::invalid_input, "point is not on the boundary of K");
}

Vec2 tangent_cone_project(const Vec2& point, const Vec2& velocity, const ConeGeometry& cone)
{
    require_finite(velocity, "velocity");
    switch (locate_on_boundary(point, cone)) {
    case BoundaryPart::face1:
        return velocity.x1 > 0.0 ? pi1(velocity) : velocity;
    case BoundaryPart::face2:
        return dot(velocity, cone.normal2()) > 0.0 ? pi2(velocity, cone) : velocity;
    case BoundaryPart::vertex:
        return project_onto_cone(velocity, cone);
    }
    return velocity;
}

} // namespace cornerlab
