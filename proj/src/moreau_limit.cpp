#include "cornerlab/moreau_limit.hpp"

#include "cornerlab/error.hpp"

namespace cornerlab {

LimitTrajectory make_limit_trajectory(const InitialData& init, const ConeGeometry& cone)
{
    validate(init);
    LimitTrajectory lt;
    lt.t0 = first_crossing_time(init);
    lt.u0 = {0.0, init.s0};
    lt.v_pre = pi1({init.dr0, init.ds0});
    if (cone.acute()) {
        lt.branch = LimitBranch::acute;
        lt.v_post = pi2(lt.v_pre, cone);
    } else {
        lt.branch = LimitBranch::obtuse;
        lt.v_post = {0.0, 0.0};
    }
    return lt;
}

Vec2 LimitTrajectory::at(double t) const
{
    if (!(t >= 0.0)) {
        throw Error(ErrorKind::invalid_input, "limit trajectory is defined for t >= 0");
    }
    if (t <= t0) {
        return u0 + t * v_pre;
    }
    return (t - t0) * v_post;
}

Vec2 LimitTrajectory::velocity(double t) const
{
    if (!(t >= 0.0)) {
        throw Error(ErrorKind::invalid_input, "limit trajectory is defined for t >= 0");
    }
    return t < t0 ? v_pre : v_post;
}

Vec2 limit_trajectory(const InitialData& init, const ConeGeometry& cone, double t)
{
    return make_limit_trajectory(init, cone).at(t);
}

Vec2 moreau_velocity_jump(const Vec2& v_in, const Vec2& point, const ConeGeometry& cone)
{
    return tangent_cone_project(point, v_in, cone);
}

} // namespace cornerlab
