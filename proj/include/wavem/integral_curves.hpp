#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "wavem/manifold.hpp"
#include "wavem/wave_arc.hpp"

namespace wavem {

inline constexpr double kOdeStep = 1e-3;
inline constexpr double kEventTol = 1e-10;

enum class CurveMode { Forward, Backward };

// dt/dz of rarefaction curves on the characteristic plane.
double rarefaction_field(double z, double t, const ModelParams& P);
// Numerator of ds/dz along rarefactions; its denominator is positive.
double ds_dz_numerator(double z, double t, const ModelParams& P);
// Exact total derivative of the eigenvalue along the rarefaction through (z, t).
double ds_dz_rarefaction(double z, double t, const ModelParams& P);
// One classic RK4 step of size dz.
double rarefaction_step(double z, double t, double dz, const ModelParams& P);
// t at z1 on the rarefaction through (z0, t0), with steps no larger than h.
double rarefaction_t_at(double z0, double t0, double z1, const ModelParams& P, double h = kOdeStep);

struct RarefactionArc {
    std::vector<ManifoldPoint> samples;  // Y = 0 throughout
    std::vector<double> speeds;
    bool slow = true;
    CurveMode mode = CurveMode::Forward;
    StopEvent stop = StopEvent::None;
    // Sign of the z-step; zero for a zero-length arc.
    int direction = 0;
};

// Forward arcs live in t < 0 with increasing speed, backward arcs in t > 0
// with decreasing speed. Stops on coincidence, inflection, tangency or |z| bound.
RarefactionArc integrate_rarefaction(double z0, double t0, CurveMode mode, const ModelParams& P,
                                     double h = kOdeStep, double z_max = kZMax);

// Speed-preserving projection from a sonic' point (z1, Y1) to the
// characteristic plane. Undefined at z1 = 0.
std::pair<double, double> composite_projection_T(double z1, double Y1, const ModelParams& P);
// Unit direction (dz1, dY1) of the pullback of the rarefaction field under T,
// oriented so that the image moves toward increasing z.
std::array<double, 2> composite_field(double z1, double Y1, const ModelParams& P);

// The sonic' point on sh(W(Pc)) that shares the speed of the characteristic
// point Pc, taking the root closest to z_guess. Empty when the two candidate
// roots have merged and left the real line.
std::optional<ManifoldPoint> composite_partner(const ManifoldPoint& Pc, double z_guess, const ModelParams& P);

struct CompositeSample {
    ManifoldPoint q;     // point on the sonic' sheet
    ManifoldPoint link;  // its image on the characteristic plane
    double s = 0.0;
};

struct CompositeArc {
    std::vector<CompositeSample> samples;
    StopEvent stop = StopEvent::None;
    CurveMode mode = CurveMode::Forward;
    // Sign of the z-step taken along the rarefaction that is retraced.
    int direction = 0;
};

// Composite arc from an inflection point. The image point retraces the
// rarefaction that reached the inflection, stepping in z along `direction`
// (the opposite of that rarefaction's own direction), so the speed decreases
// (forward) or increases (backward) until the double contact, s_target, or a
// singularity. Both sides of the inflection look alike locally, which is why
// the direction must come from the caller.
CompositeArc integrate_composite(double z_start, double t_start, CurveMode mode, int direction,
                                 std::optional<double> s_target,
                                 const ModelParams& P, double h = kOdeStep, double z_max = kZMax);

}  // namespace wavem
