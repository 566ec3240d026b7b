#ifndef HMCF_VEC2_HPP
#define HMCF_VEC2_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace hmcf {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double c) { x *= c; y *= c; return *this; }
};

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator*(double c, Vec2 a) { return a *= c; }
inline Vec2 operator*(Vec2 a, double c) { return a *= c; }
inline Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

// Clockwise quarter turn: rot(T) is the outward normal of a counterclockwise
// curve when T is the unit tangent.
inline Vec2 rot(const Vec2& a) { return {a.y, -a.x}; }

using RealField = std::vector<double>;
using VecField  = std::vector<Vec2>;

inline VecField operator+(VecField a, const VecField& b) {
    for (std::size_t j = 0; j < a.size(); ++j) a[j] += b[j];
    return a;
}
inline VecField operator-(VecField a, const VecField& b) {
    for (std::size_t j = 0; j < a.size(); ++j) a[j] -= b[j];
    return a;
}
inline VecField operator*(double c, VecField a) {
    for (auto& v : a) v *= c;
    return a;
}

inline void axpy(double c, const VecField& x, VecField& y) {
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += c * x[j];
}

inline double max_abs(const VecField& a) {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::max(std::fabs(v.x), std::fabs(v.y)));
    return m;
}

inline bool all_finite(const RealField& a) {
    for (double v : a) if (!std::isfinite(v)) return false;
    return true;
}
inline bool all_finite(const VecField& a) {
    for (const auto& v : a) if (!std::isfinite(v.x) || !std::isfinite(v.y)) return false;
    return true;
}

} // namespace hmcf

#endif
