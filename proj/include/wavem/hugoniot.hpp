#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavem/manifold.hpp"
#include "wavem/wave_arc.hpp"

namespace wavem {

// Hugoniot curve sh(W0) (left state fixed) or, with prime = true, the
// Hugoniot' curve sh'(W0) (right state fixed). Both are graphs over z.
class HugoniotCurve {
public:
    HugoniotCurve(StatePoint base, bool prime, const ModelParams& P);

    const StatePoint& base() const noexcept { return base_; }
    bool prime() const noexcept { return prime_; }
    const ModelParams& params() const noexcept { return P_; }

    ManifoldPoint at(double z) const;
    double speed_at(double z) const;
    // Exact derivative of the shock speed along the curve.
    double dspeed_dz(double z) const;
    std::vector<ManifoldPoint> sample(double z0, double z1, int n) const;

private:
    StatePoint base_;
    bool prime_;
    ModelParams P_;
};

// Closed-form (t, Y) of sh(W0) at z.
std::pair<double, double> hugoniot_tY(const StatePoint& W0, double z, const ModelParams& P);
// t-component exactly as printed in the source parametrization, kept only to
// document that it disagrees with the data it is meant to reproduce.
double hugoniot_t_printed(const StatePoint& W0, double z, const ModelParams& P);
// Ground truth: solve the 2x2 linear system for (t, Y) at fixed z.
std::pair<double, double> hugoniot_oracle(const StatePoint& W0, double z, const ModelParams& P);

HugoniotCurve hugoniot_from_state(const StatePoint& W0, const ModelParams& P);
HugoniotCurve hugoniot_through_point(const ManifoldPoint& Q0, const ModelParams& P);
HugoniotCurve hugoniot_prime_through_point(const ManifoldPoint& Q0, const ModelParams& P);

// Coefficients (a, b, c) of the quadratic in z whose roots are the crossings
// of sh(W0) with the characteristic plane; the discriminant is 4 E_ss.
struct CrossingQuadratic {
    double a, b, c;
    double discriminant() const { return b * b - 4.0 * a * c; }
};
CrossingQuadratic c_crossing_quadratic(const StatePoint& W0, const ModelParams& P);

struct CPair {
    ManifoldPoint slow;  // t < 0
    ManifoldPoint fast;  // t > 0
};
// Both points of the characteristic plane whose state is W. Throws
// NoIntersection inside the elliptic region and Tangency on its boundary.
CPair lift_to_c(const StatePoint& W, const ModelParams& P);
CPair c_intersections(const HugoniotCurve& curve);

// Closed-form partner of a characteristic point along its Hugoniot curve.
ManifoldPoint lemma1_partner(double z0, double t0, const ModelParams& P);

struct CProjections {
    ManifoldPoint Us, Uf, Ups, Upf;
};
CProjections projections(const ManifoldPoint& Q, const ModelParams& P);

enum class SonicSide { Slow, Fast };
const char* to_string(SonicSide s);

struct SonPrimeCrossing {
    ManifoldPoint point;
    SonicSide side;
};
// Crossings of a Hugoniot curve with the sonic' surface over the working window.
std::vector<SonPrimeCrossing> son_prime_intersections(const HugoniotCurve& curve);
SonicSide son_prime_side(const ManifoldPoint& Q, const ModelParams& P);
// t of the characteristic partner that shares the speed of a sonic' point.
double t_c2(double z0, double Y0, const ModelParams& P);
double z_c2(double z0, double Y0, const ModelParams& P);
double z_c1(double z0, const ModelParams& P);
double s_c2(double z0, double Y0, const ModelParams& P);

// Qto lies on sh(Qfrom): left state W(Qto) = W(Qfrom), right state W'(Qto).
LaxVerdict lax_classify(const ManifoldPoint& Qfrom, const ManifoldPoint& Qto, const ModelParams& P);

}  // namespace wavem

namespace wavem {

// Forward (decreasing speed) shock arc along sh(Qstart), for Qstart on the
// slow characteristic half-plane or the slow sonic' sheet. Stops on the sonic
// surface or when |z| leaves the working window.
WaveArc forward_shock_arc(const ManifoldPoint& Qstart, const ModelParams& P, double z_max = kZMax);
// Backward (increasing speed) arc for Qstart on the fast half-plane or the fast sonic' sheet.
WaveArc backward_shock_arc(const ManifoldPoint& Qstart, const ModelParams& P, double z_max = kZMax);

}  // namespace wavem

namespace wavem {

// Cubic in z (highest degree first) whose roots are the points of sh(W) with
// shock speed sigma.
std::array<double, 4> speed_match_cubic(const StatePoint& W, double sigma, const ModelParams& P);

}  // namespace wavem
