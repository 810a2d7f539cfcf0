#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cornerlab/error.hpp"
#include "cornerlab/moreau_limit.hpp"

using namespace cornerlab;
using doctest::Approx;

namespace {
constexpr double pi = std::numbers::pi;
const InitialData unit{-1, 1, 1};
} // namespace

TEST_SUITE("moreau_limit")
{
    TEST_CASE("examples for unit data")
    {
        const ConeGeometry acute(pi / 3);
        const Vec2 a = limit_trajectory(unit, acute, 0.5);
        CHECK(a.x1 == 0.0);
        CHECK(a.x2 == -0.5);
        const Vec2 b = limit_trajectory(unit, acute, 2.0);
        CHECK(b.x1 == Approx(-0.4330127018922193).epsilon(1e-14));
        CHECK(b.x2 == Approx(0.25).epsilon(1e-14));
        const Vec2 c = limit_trajectory(unit, ConeGeometry(2 * pi / 3), 2.0);
        CHECK(c.x1 == 0.0);
        CHECK(c.x2 == 0.0);
        CHECK(limit_trajectory(unit, ConeGeometry(pi / 2), 5.0).x2 == 0.0);
        CHECK_THROWS_AS(limit_trajectory(unit, acute, -0.1), Error);
    }

    TEST_CASE("velocity jumps")
    {
        const ConeGeometry acute(pi / 3);
        const Vec2 j = moreau_velocity_jump({0, 1}, {0, 0}, acute);
        CHECK(j.x1 == Approx(-0.4330127018922193).epsilon(1e-14));
        CHECK(j.x2 == Approx(0.25).epsilon(1e-14));
        const Vec2 z = moreau_velocity_jump({0, 1}, {0, 0}, ConeGeometry(2 * pi / 3));
        CHECK(z.x1 == 0.0);
        CHECK(z.x2 == 0.0);
        // An incoming velocity at a face is unchanged; an outgoing one loses its normal part.
        const Vec2 in = moreau_velocity_jump({-1, 2}, {0, -1}, acute);
        CHECK(in.x1 == -1.0);
        CHECK(in.x2 == 2.0);
        const Vec2 out = moreau_velocity_jump({1, 1}, {0, -1}, acute);
        CHECK(out.x1 == 0.0);
        CHECK(out.x2 == 1.0);
    }

    TEST_CASE("structure of the limit trajectory")
    {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> pos(0.1, 3.0);
        std::uniform_real_distribution<double> ang(0.05, pi - 0.05);
        for (int i = 0; i < 300; ++i) {
            const InitialData init{-pos(rng), pos(rng), pos(rng)};
            const ConeGeometry cone(ang(rng));
            const LimitTrajectory lt = make_limit_trajectory(init, cone);
            CHECK(lt.t0 == Approx(-init.s0 / init.ds0).epsilon(1e-15));
            CHECK(lt.branch == (cone.acute() ? LimitBranch::acute : LimitBranch::obtuse));

            // Continuity at t0 and the vertex reached there.
            CHECK(norm(lt.at(lt.t0)) <= 1e-14 * (1 + std::abs(init.s0)));
            const double h = 1e-9 * lt.t0;
            CHECK(norm(lt.at(lt.t0 + h) - lt.at(lt.t0 - h)) <= 2 * h * norm(lt.v_pre) + 1e-14 * (1 + std::abs(init.s0)));

            // Energy does not increase across the jump.
            CHECK(norm(lt.v_post) <= norm(lt.v_pre) * (1 + 1e-15));
            if (cone.acute()) {
                CHECK(norm(lt.v_post) == Approx(init.ds0 * std::abs(cone.cos_theta())).epsilon(1e-13));
            } else {
                CHECK(norm(lt.v_post) == 0.0);
            }

            // The whole path stays in K, up to rounding on the faces.
            for (double t : {0.0, 0.5 * lt.t0, lt.t0, 1.5 * lt.t0, 10 * lt.t0}) {
                const Vec2 u = lt.at(t);
                CHECK(norm(project_onto_cone(u, cone) - u) <= 1e-12 * (1 + norm(u)));
            }

            // Two successive Moreau jumps: face 1 at t = 0, then the vertex at t0.
            const Vec2 v1 = moreau_velocity_jump({init.dr0, init.ds0}, lt.u0, cone);
            CHECK(norm(v1 - lt.v_pre) <= 1e-15 * norm(v1));
            const Vec2 v2 = moreau_velocity_jump(v1, {0, 0}, cone);
            CHECK(norm(v2 - lt.v_post) <= 1e-13 * (1 + norm(v1)));
            CHECK(norm(lt.velocity(lt.t0 + 1) - lt.v_post) == 0.0);
            CHECK(norm(lt.velocity(0.0) - lt.v_pre) == 0.0);
        }
    }
}
