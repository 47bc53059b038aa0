#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavem/integral_curves.hpp"
#include "wavem/manifold.hpp"

namespace wavem::testing {

// Data of the four worked examples, as states.
inline constexpr StatePoint kEx1Left{-0.2430769231, -0.6365384615};
inline constexpr StatePoint kEx1Right{0.85, 3.2};
inline constexpr StatePoint kEx1RightAlt{-0.6, -1.1};
inline constexpr StatePoint kEx3Left{-0.125, 3.5};
inline constexpr StatePoint kEx3Right{9.048076925, 14.03846154};
inline constexpr StatePoint kEx4Left{0.125, -2.5};
inline constexpr StatePoint kEx4Right{3.0, 4.0};

// Left states as points of C_s.
inline constexpr ManifoldPoint kEx1Point{-5.0, -0.065, 0.0};
inline constexpr ManifoldPoint kEx2Point{1.0, -1.0, 0.0};
inline constexpr ManifoldPoint kEx3Point{-1.0, -4.0, 0.0};
inline constexpr ManifoldPoint kEx4Point{1.0, -2.0, 0.0};

// Angle between the state-space image of the rarefaction through (z, t) and
// the eigenvector of DF for the eigenvalue speed(z, t). The tangent is a
// central difference over a short RK4 solve, so it follows the integrator.
inline double rarefaction_tangent_angle(double z, double t, const ModelParams& P) {
    const double h = 1e-5 * std::max(1.0, std::abs(z));
    const StatePoint a = state_of(z - h, rarefaction_t_at(z, t, z - h, P, h), 0.0, P);
    const StatePoint b = state_of(z + h, rarefaction_t_at(z, t, z + h, P, h), 0.0, P);
    const double du = b.u - a.u, dv = b.v - a.v;
    const Mat2 J = jacobian(state_of(z, t, 0.0, P), P);
    const double s = speed(z, t, P);
    double ru = J[0][1], rv = s - J[0][0];
    if (std::hypot(ru, rv) < std::hypot(s - J[1][1], J[1][0])) {
        ru = s - J[1][1];
        rv = J[1][0];
    }
    const double angle = std::abs(std::atan2(du * rv - dv * ru, du * ru + dv * rv));
    return std::min(angle, std::numbers::pi - angle);
}

}  // namespace wavem::testing
