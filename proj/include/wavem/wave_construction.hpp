#pragma once

#include <optional>
#include <vector>

#include "wavem/hugoniot.hpp"
#include "wavem/integral_curves.hpp"
#include "wavem/wave_arc.hpp"

namespace wavem {

enum class CsRegion { Ia, Ib, II, III };
const char* to_string(CsRegion r);
// Region I is the union of Ia and Ib.
inline bool in_region_I(CsRegion r) { return r == CsRegion::Ia || r == CsRegion::Ib; }

// Rarefactions through the two double-contact points of C, integrated toward
// decreasing z, plus the point z_hat where the fast one reaches t = 0.
struct Separatrices {
    std::vector<ManifoldPoint> r_s;  // through (z_crit1, t1)
    std::vector<ManifoldPoint> r_f;  // through (z_crit2, t2), continued past t = 0
    double z_hat = 0.0;
    // Leftmost z reached by r_s while t < 0.
    double r_s_end = 0.0;
    // t on a separatrix at z, or nullopt outside its sampled range.
    std::optional<double> t_at(const std::vector<ManifoldPoint>& curve, double z, const ModelParams& P) const;
};
// Computed once per parameter set and cached.
const Separatrices& separatrices(const ModelParams& P);

CsRegion classify_cs_region(double z, double t, const ModelParams& P);

// Local wave curve from a point of C. Arcs are kept in fields named after
// their role; arcs() returns them in construction order.
struct WaveCurve {
    CurveMode mode = CurveMode::Forward;
    ManifoldPoint start;
    int case_number = 1;
    bool complete = true;
    WaveArc shock;                        // H1 / H2
    WaveArc rarefaction;                  // R1 / R2 from the start point
    std::optional<WaveArc> composite;     // C1 / C2 from the inflection
    std::optional<WaveArc> nonlocal;      // Case 2 continuation
    std::optional<WaveArc> jump;          // Case 3 Hugoniot' arc from P3 back to C
    std::optional<WaveArc> continuation;  // Case 3 rarefaction after the jump
    std::vector<ManifoldPoint> junctions;  // P0, P1, P3, P4, ... as reached

    std::vector<const WaveArc*> arcs() const;
};

WaveCurve forward_wave_curve(const ManifoldPoint& Q0, const ModelParams& P);
WaveCurve backward_wave_sequence(const ManifoldPoint& Q0, const ModelParams& P);

// Exact point of an arc at a fractional sample index, used to refine crossings.
ArcSample evaluate_arc(const WaveArc& arc, double param, const ModelParams& P);

struct SaturatedSheet {
    ArcType generator_type = ArcType::H1;
    std::vector<ManifoldPoint> generators;
    std::vector<double> z_grid;
    // fibers[i][j]: point of sh'(generators[i]) at z_grid[j].
    std::vector<std::vector<ManifoldPoint>> fibers;
};

struct SaturatedSurface {
    std::vector<SaturatedSheet> sheets;  // one per arc of the generating curve
};

inline constexpr int kFiberSamples = 400;

// Grid of n values of z covering [-z_max, z_max], dense near the origin.
std::vector<double> fiber_grid(int n, double z_max = kZMax);
SaturatedSurface saturate(const WaveCurve& C, const ModelParams& P, int n_fiber = kFiberSamples,
                          int max_generators = 200);

}  // namespace wavem
