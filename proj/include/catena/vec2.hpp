#pragma once

#include <cmath>

namespace catena {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double a) const { return {x * a, y * a}; }
    Vec2 operator/(double a) const { return {x / a, y / a}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double a) { x *= a; y *= a; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
    // Left normal: the tangent rotated by +90 degrees.
    Vec2 left_normal() const { return {-y, x}; }
};

inline Vec2 operator*(double a, const Vec2& v) { return {a * v.x, a * v.y}; }

}  // namespace catena
