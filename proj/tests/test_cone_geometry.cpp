#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "cornerlab/cone_geometry.hpp"
#include "cornerlab/error.hpp"

using namespace cornerlab;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

bool in_K(const Vec2& x, const ConeGeometry& c, double tol = 1e-12)
{
    return x.x1 <= tol && dot(x, c.normal2()) <= tol;
}

} // namespace

TEST_SUITE("cone_geometry")
{
    TEST_CASE("construction and normals")
    {
        const ConeGeometry c(pi / 3);
        CHECK(norm(c.normal2()) == Approx(1.0).epsilon(1e-15));
        CHECK(norm(ConeGeometry::normal1()) == 1.0);
        CHECK(c.acute());
        CHECK_FALSE(ConeGeometry(2 * pi / 3).acute());
        CHECK_FALSE(ConeGeometry(pi / 2).acute());
        CHECK_THROWS_AS(ConeGeometry{0.0}, Error);
        CHECK_THROWS_AS(ConeGeometry{pi}, Error);
        CHECK_THROWS_AS(ConeGeometry(std::nan("")), Error);
    }

    TEST_CASE("classification examples")
    {
        const ConeGeometry c(pi / 3);
        CHECK(classify_region({-1, -1}, c) == Region::K);
        CHECK(classify_region({1, -1}, c) == Region::R1);
        CHECK(classify_region({1, 1}, c) == Region::R2);
        CHECK(classify_region({-1, 2}, c) == Region::R3);
        // Both R3 inequalities at (-1, 2).
        const Vec2 x{-1, 2};
        CHECK(dot(x, c.normal2()) == Approx(1.2320508075688772).epsilon(1e-15));
        CHECK(dot(x, c.face2_direction()) == Approx(1.8660254037844386).epsilon(1e-15));
        CHECK_THROWS_AS(classify_region({std::nan(""), 0.0}, c), Error);
        CHECK_THROWS_AS(classify_region({std::numeric_limits<double>::infinity(), 0.0}, c), Error);
    }

    TEST_CASE("boundary tie-break follows K > R1 > R2 > R3")
    {
        const ConeGeometry c(pi / 3);
        CHECK(classify_region({0, -1}, c) == Region::K);  // face 1
        CHECK(classify_region({0, 0}, c) == Region::K);   // vertex
        CHECK(classify_region({1, 0}, c) == Region::R1);  // R1 / R2 boundary
        const Vec2 n2 = c.normal2();
        CHECK(classify_region(n2, c) == Region::R2);      // R2 / R3 boundary
        CHECK(classify_region(c.face2_direction(), c) == Region::K);
    }

    TEST_CASE("projection examples")
    {
        const ConeGeometry c(pi / 3);
        const Vec2 a = project_onto_cone({-1, -1}, c);
        CHECK(a.x1 == -1.0);
        CHECK(a.x2 == -1.0);
        const Vec2 b = project_onto_cone({1, 1}, c);
        CHECK(b.x1 == 0.0);
        CHECK(b.x2 == 0.0);
        const Vec2 p = project_onto_cone({-1, 2}, c);
        CHECK(p.x1 == Approx(-1.6160254037844386).epsilon(1e-15));
        CHECK(p.x2 == Approx(0.9330127018922193).epsilon(1e-15));
        const Vec2 q = project_onto_cone({1, -1}, c);
        CHECK(q.x1 == 0.0);
        CHECK(q.x2 == -1.0);
    }

    TEST_CASE("penalty direction and damping force")
    {
        const ConeGeometry c(pi / 3);
        CHECK(norm(penalty_direction({-1, -1}, c)) == 0.0);
        const Vec2 d1 = penalty_direction({1, -1}, c);
        CHECK(d1.x1 == 1.0);
        CHECK(d1.x2 == 0.0);
        const Vec2 d2 = penalty_direction({1, 1}, c);
        CHECK(d2.x1 == Approx(std::sqrt(0.5)).epsilon(1e-15));
        CHECK(d2.x2 == Approx(std::sqrt(0.5)).epsilon(1e-15));
        const Vec2 g0 = damping_force_G({-1, -1}, {3, 4}, c);
        CHECK(norm(g0) == 0.0);
        const Vec2 g1 = damping_force_G({1, 0}, {2, 3}, c);
        CHECK(g1.x1 == Approx(2.0));
        CHECK(g1.x2 == Approx(0.0));
        const Vec2 g2 = damping_force_G({std::sqrt(0.5), std::sqrt(0.5)}, {1, 0}, c);
        CHECK(g2.x1 == Approx(0.5).epsilon(1e-14));
        CHECK(g2.x2 == Approx(0.5).epsilon(1e-14));
    }

    TEST_CASE("face projections")
    {
        const ConeGeometry c(pi / 3);
        const Vec2 a = pi1({1, 1});
        CHECK(a.x1 == 0.0);
        CHECK(a.x2 == 1.0);
        const Vec2 b = pi2({0, 1}, c);
        CHECK(b.x1 == Approx(-0.4330127018922193).epsilon(1e-15));
        CHECK(b.x2 == Approx(0.25).epsilon(1e-15));
        const Vec2 d = c.face2_direction();
        const Vec2 e = pi2(d, c);
        CHECK(e.x1 == Approx(d.x1).epsilon(1e-15));
        CHECK(e.x2 == Approx(d.x2).epsilon(1e-15));
    }

    TEST_CASE("tangent cone projection")
    {
        const ConeGeometry acute(pi / 3);
        const ConeGeometry obtuse(2 * pi / 3);
        const Vec2 a = tangent_cone_project({0, -1}, {1, 1}, acute);
        CHECK(a.x1 == 0.0);
        CHECK(a.x2 == 1.0);
        const Vec2 b = tangent_cone_project({0, 0}, {1, 1}, obtuse);
        CHECK(norm(b) == 0.0);
        const Vec2 c = tangent_cone_project({0, 0}, {-1, -1}, acute);
        CHECK(c.x1 == -1.0);
        CHECK(c.x2 == -1.0);
        // Incoming velocity on a face is kept.
        const Vec2 d = tangent_cone_project({0, -1}, {-2, 1}, acute);
        CHECK(d.x1 == -2.0);
        // Face 2 interior, outgoing velocity loses its normal part.
        const Vec2 f2 = 2.0 * acute.face2_direction();
        const Vec2 e = tangent_cone_project(f2, {0, 1}, acute);
        CHECK(e.x1 == Approx(-0.4330127018922193));
        CHECK(e.x2 == Approx(0.25));
        CHECK_THROWS_AS(tangent_cone_project({-1, -1}, {1, 0}, acute), Error);
        CHECK(locate_on_boundary({0, 0}, acute) == BoundaryPart::vertex);
        CHECK(locate_on_boundary({0, -3}, acute) == BoundaryPart::face1);
        CHECK(locate_on_boundary(f2, acute) == BoundaryPart::face2);
    }

    TEST_CASE("projection properties on random samples")
    {
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> coord(-5.0, 5.0);
        std::uniform_real_distribution<double> angle(0.05, pi - 0.05);
        for (int trial = 0; trial < 2000; ++trial) {
            const ConeGeometry c(angle(rng));
            const Vec2 x{coord(rng), coord(rng)};
            const Vec2 y{coord(rng), coord(rng)};
            const Vec2 px = project_onto_cone(x, c);
            const Vec2 py = project_onto_cone(y, c);
            CHECK(in_K(px, c));
            // Idempotence.
            CHECK(norm(project_onto_cone(px, c) - px) <= 1e-12);
            // Non-expansiveness.
            CHECK(norm(px - py) <= norm(x - y) + 1e-12);
            // Variational inequality against the generators and points of K.
            const Vec2 r = x - px;
            const Vec2 gens[] = {{0, -1}, c.face2_direction(), {0, 0}, project_onto_cone(y, c)};
            for (const Vec2& z : gens) {
                CHECK(dot(r, z - px) <= 1e-12 * (1.0 + norm(z)) * (1.0 + norm(x)));
            }
            // Case used by P_K agrees with the region label.
            switch (classify_region(x, c)) {
            case Region::K:
                CHECK(norm(px - x) == 0.0);
                break;
            case Region::R1:
                CHECK(px.x1 == 0.0);
                CHECK(px.x2 == x.x2);
                break;
            case Region::R2:
                CHECK(norm(px) == 0.0);
                break;
            case Region::R3: {
                const Vec2 d = c.face2_direction();
                CHECK(norm(px - dot(x, d) * d) <= 1e-14 * (1.0 + norm(x)));
                break;
            }
            }
        }
    }

    TEST_CASE("Moreau decomposition at the vertex")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> coord(-3.0, 3.0);
        for (double theta : {pi / 6, pi / 3, pi / 2, 2 * pi / 3, 5 * pi / 6}) {
            const ConeGeometry c(theta);
            for (int i = 0; i < 500; ++i) {
                const Vec2 v{coord(rng), coord(rng)};
                const Vec2 t = tangent_cone_project({0, 0}, v, c);
                const Vec2 n = v - t;
                CHECK(std::abs(dot(t, n)) <= 1e-12);
                // The normal part lies in the polar cone of K.
                CHECK(n.x2 >= -1e-12);
                CHECK(dot(n, c.face2_direction()) <= 1e-12);
                CHECK(norm(t) <= norm(v) + 1e-15);
            }
        }
    }

    TEST_CASE("boundary formulas agree on shared boundaries")
    {
        const ConeGeometry c(pi / 3);
        const Vec2 d = c.face2_direction();
        const Vec2 n2 = c.normal2();
        // K/R1 boundary: both formulas give the point itself.
        CHECK(norm(project_onto_cone({0, -2}, c) - Vec2{0, -2}) == 0.0);
        // R1/R2 boundary (positive x1 axis): (0, x2) = 0.
        CHECK(norm(project_onto_cone({2, 0}, c)) == 0.0);
        // R2/R3 boundary (ray along normal2): (x.d) d = 0.
        CHECK(norm(project_onto_cone(2.0 * n2, c)) <= 1e-15);
        // K/R3 boundary (face 2).
        CHECK(norm(project_onto_cone(2.0 * d, c) - 2.0 * d) <= 1e-15);
    }
}
