#ifndef TONGUE_CORE_TORUS_HPP
#define TONGUE_CORE_TORUS_HPP

#include <cmath>

namespace tongue {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Canonical torus representative in [0, 2*pi).
inline double wrap_angle(double x) {
    double m = std::fmod(x, kTwoPi);
    if (m < 0.0) m += kTwoPi;
    // fmod of a slightly negative x can round up to exactly 2*pi
    if (m >= kTwoPi) m -= kTwoPi;
    return m;
}

// Signed representative of x mod 2*pi in (-pi, pi].
inline double wrap_signed(double x) {
    double d = std::remainder(x, kTwoPi);
    if (d <= -kPi) d += kTwoPi;
    return d;
}

// Shortest distance between two angles on the circle.
inline double torus_distance(double a, double b) {
    return std::fabs(wrap_signed(a - b));
}

}  // namespace tongue

#endif
