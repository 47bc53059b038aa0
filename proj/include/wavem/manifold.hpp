#pragma once

#include "wavem/flux_model.hpp"

namespace wavem {

// Point of the blown-up wave manifold: z = (u-u')/(v-v'), Y = v - v',
// t measured along the rules of the characteristic plane Y = 0.
struct ManifoldPoint {
    double z = 0.0;
    double t = 0.0;
    double Y = 0.0;
};

struct StateTriple {
    StatePoint W;
    StatePoint Wp;
    double s = 0.0;
};

inline constexpr double kZMax = 1e3;
inline constexpr double kSurfaceTol = 1e-12;

// Left state W(Q); the primed state is W(z, t, -Y).
StatePoint state_of(double z, double t, double Y, const ModelParams& P);
StateTriple manifold_to_states(const ManifoldPoint& Q, const ModelParams& P);
ManifoldPoint states_to_manifold(const StatePoint& W, const StatePoint& Wp, const ModelParams& P);

double speed(double z, double t, const ModelParams& P);
inline double speed(const ManifoldPoint& Q, const ModelParams& P) { return speed(Q.z, Q.t, P); }
// Partial derivatives of speed(z, t).
double speed_dz(double z, double t, const ModelParams& P);
double speed_dt(double z, const ModelParams& P);

double son_value(const ManifoldPoint& Q, const ModelParams& P);
double son_prime_value(const ManifoldPoint& Q, const ModelParams& P);
// Coefficient of Y in both sonic polynomials; vanishes on the double sonic lines.
double sonic_y_coefficient(double z, const ModelParams& P);
// Y of the sonic' sheet over (z, t); throws Singularity on the double sonic lines.
double son_prime_Y(double z, double t, const ModelParams& P);
// t of the sonic' sheet over (z, Y); throws PoleAtZero for z = 0.
double son_prime_t(double z, double Y, const ModelParams& P);
// Scale that equalizes polynomial magnitudes across z in membership tests.
double surface_scale(double z);

// t on the inflection locus; throws PoleAtZero at z = 0.
double inflection_t(double z, const ModelParams& P);

struct DoubleSonic {
    double z_crit1, t1;
    double z_crit2, t2;
};
DoubleSonic double_sonic(const ModelParams& P);

ManifoldPoint hysteresis_point(double z, const ModelParams& P);

double scc_value(const ManifoldPoint& Q, const ModelParams& P);
double coincidence_surface_value(const ManifoldPoint& Q, const ModelParams& P);
double coincidence_prime_value(const ManifoldPoint& Q, const ModelParams& P);

enum class RegionId {
    SSPosZPosY,
    SSPosZNegY,
    SSNegZPosY,
    SSNegZNegY,
    LateralPosZPosY,
    LateralPosZNegY,
    LateralNegZPosY,
    LateralNegZNegY,
    OverBridge,
    UnderBridge,
    OverTunnel,
    UnderTunnel,
};
const char* to_string(RegionId r);
RegionId region_of(const ManifoldPoint& Q, const ModelParams& P);

bool l2_holds(const ManifoldPoint& Q, const ModelParams& P);

}  // namespace wavem
