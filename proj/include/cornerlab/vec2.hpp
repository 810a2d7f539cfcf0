#pragma once

#include <cmath>

namespace cornerlab {

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    constexpr Vec2& operator+=(const Vec2& o) noexcept
    {
        x1 += o.x1;
        x2 += o.x2;
        return *this;
    }
    constexpr Vec2& operator-=(const Vec2& o) noexcept
    {
        x1 -= o.x1;
        x2 -= o.x2;
        return *this;
    }
    friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) noexcept { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) noexcept { return a -= b; }
    friend constexpr Vec2 operator-(const Vec2& a) noexcept { return {-a.x1, -a.x2}; }
    friend constexpr Vec2 operator*(double s, const Vec2& a) noexcept { return {s * a.x1, s * a.x2}; }
    friend constexpr Vec2 operator*(const Vec2& a, double s) noexcept { return {s * a.x1, s * a.x2}; }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(const Vec2& a, const Vec2& b) noexcept { return a.x1 * b.x1 + a.x2 * b.x2; }

// z-component of a x b
constexpr double cross(const Vec2& a, const Vec2& b) noexcept { return a.x1 * b.x2 - a.x2 * b.x1; }

inline double norm(const Vec2& a) noexcept { return std::hypot(a.x1, a.x2); }

inline bool is_finite(const Vec2& a) noexcept { return std::isfinite(a.x1) && std::isfinite(a.x2); }

} // namespace cornerlab
