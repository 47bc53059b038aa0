#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wavem/wave_construction.hpp"

namespace wavem {

struct LiftResult {
    ManifoldPoint Us;  // slow half of C
    ManifoldPoint Uf;  // fast half of C
};
// Throws EllipticState inside the ellipse and TangentState on it.
LiftResult lift_state(const StatePoint& W, const ModelParams& P);

enum class WaveType { S1, R1, C1Shock, S2, R2, C2Shock };
const char* to_string(WaveType t);
// Accepts the short forms "C1" and "C2" for the characteristic shocks.
std::optional<WaveType> wave_type_from_string(std::string_view s);
inline bool is_shock(WaveType t) { return t != WaveType::R1 && t != WaveType::R2; }
inline int family(WaveType t) {
    return (t == WaveType::S1 || t == WaveType::R1 || t == WaveType::C1Shock) ? 1 : 2;
}

struct Wave {
    WaveType type = WaveType::S1;
    StatePoint from, to;
    // Equal for shocks; speeds at `from` and `to` for rarefactions.
    double speed_from = 0.0;
    double speed_to = 0.0;
    // States along a rarefaction fan, from `from` to `to`.
    std::vector<StatePoint> samples;
    // Manifold point representing a shock: W = right state for family 2,
    // W = left state for family 1.
    std::optional<ManifoldPoint> shock_point;
    std::optional<LaxVerdict> lax;
    double rh = 0.0;  // max-norm Rankine-Hugoniot residual of a shock
};

struct RiemannSolution {
    ModelParams params;
    StatePoint left, right;
    std::vector<Wave> waves;
    std::vector<StatePoint> middle_states;
    bool compatible = true;
    int alternates_count = 0;
    // Arc types of the winning crossing, e.g. "H1" and "C2"; empty when WL = WR.
    std::string forward_arc, backward_arc;
    std::vector<std::string> failures;  // reasons the winning candidate would be rejected (empty if compatible)
};

struct SolveOptions {
    // Tolerance on the state-space mismatch of a refined crossing.
    double crossing_tol = 1e-10;
};

std::vector<WaveType> wave_types(const RiemannSolution& s);

// Throws NoIntersection when no crossing exists in the window and
// IncompatibleSequence when every crossing violates speed order or Lax.
RiemannSolution solve(const StatePoint& WL, const StatePoint& WR, const ModelParams& P,
                      const SolveOptions& opt = {});

struct ContinuityReport {
    double delta = 0.0;
    int trials = 0;
    int skipped = 0;            // perturbations rejected (non-hyperbolic or region change)
    bool sequence_changed = false;
    int solve_failures = 0;
    double max_displacement = 0.0;
    double ratio = 0.0;         // max_displacement / delta
};
ContinuityReport continuity_probe(const StatePoint& WL, const StatePoint& WR, double delta, int n,
                                  const ModelParams& P, std::uint64_t seed = 0);

}  // namespace wavem
