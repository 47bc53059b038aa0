#include "wavem/manifold.hpp"

#include <cmath>

#include "wavem/errors.hpp"

namespace wavem {

namespace {

// Polynomials shared by the two sonic surfaces:
//   son'(z,t,Y) = -2c A(z) t + K(z) Y - 2c B(z),   son(z,t,Y) = son'(z,t,-Y)
double sonic_A(double z, double b1) {
    const double z2 = z * z;
    return z * ((b1 + 1.0) * z2 * z2 + (b1 + 4.0) * z2 + 3.0);
}
double sonic_B(double z, double b1) { return (b1 - 1.0) * z * z + 1.0; }

}  // namespace

StatePoint state_of(double z, double t, double Y, const ModelParams& P) {
    const double c = P.c();
    const double q = z * z + 1.0;
    const double Ut = 2.0 * c * z / q + c * t * (z * z - 1.0);
    const double V1 = c / q + c * t * z;
    return {(Ut - P.a1 + P.a4) / P.b1 + 0.5 * z * Y, V1 - P.a3 + 0.5 * Y};
}

StateTriple manifold_to_states(const ManifoldPoint& Q, const ModelParams& P) {
    return {state_of(Q.z, Q.t, Q.Y, P), state_of(Q.z, Q.t, -Q.Y, P), speed(Q.z, Q.t, P)};
}

ManifoldPoint states_to_manifold(const StatePoint& W, const StatePoint& Wp, const ModelParams& P) {
    const double Y = W.v - Wp.v;
    if (std::abs(Y) < 1e-12) {
        throw WaveError(ErrorKind::DegenerateDirection, "v - v' vanishes; point lies on the plane at infinity");
    }
    const double z = (W.u - Wp.u) / Y;
    const double c = P.c();
    const double q = z * z + 1.0;
    // Midpoint of the pair fixes (Ut, V1); t follows from both components in
    // the least-squares sense, exact whenever the pair satisfies the jump condition.
    const double Ut = 0.5 * P.b1 * (W.u + Wp.u) + P.a1 - P.a4;
    const double V1 = 0.5 * (W.v + Wp.v) + P.a3;
    const double r1 = Ut - 2.0 * c * z / q;
    const double r2 = V1 - c / q;
    const double m = z * z - 1.0;
    const double t = (m * r1 + z * r2) / (c * (m * m + z * z));
    return {z, t, Y};
}

double speed(double z, double t, const ModelParams& P) {
    const double b1 = P.b1, z2 = z * z;
    const double num = (b1 + 1.0) * t * z2 * z2 + b1 * z2 * t + (b1 + 2.0) * z - t;
    return P.c() * num / (b1 * (z2 + 1.0)) + P.kappa();
}

double speed_dz(double z, double t, const ModelParams& P) {
    const double b1 = P.b1, z2 = z * z;
    const double num = (b1 + 1.0) * t * z2 * z2 + b1 * z2 * t + (b1 + 2.0) * z - t;
    const double dnum = 4.0 * (b1 + 1.0) * t * z2 * z + 2.0 * b1 * z * t + (b1 + 2.0);
    const double den = z2 + 1.0;
    return P.c() * (dnum * den - num * 2.0 * z) / (b1 * den * den);
}

double speed_dt(double z, const ModelParams& P) {
    const double b1 = P.b1, z2 = z * z;
    return P.c() * ((b1 + 1.0) * z2 * z2 + b1 * z2 - 1.0) / (b1 * (z2 + 1.0));
}

double sonic_y_coefficient(double z, const ModelParams& P) {
    const double z2 = z * z;
    return (P.b1 + 1.0) * z2 * z2 + P.b1 * z2 - 1.0;
}

double son_prime_value(const ManifoldPoint& Q, const ModelParams& P) {
    const double c = P.c();
    return -2.0 * c * sonic_A(Q.z, P.b1) * Q.t + sonic_y_coefficient(Q.z, P) * Q.Y -
           2.0 * c * sonic_B(Q.z, P.b1);
}

double son_value(const ManifoldPoint& Q, const ModelParams& P) {
    return son_prime_value({Q.z, Q.t, -Q.Y}, P);
}

double son_prime_Y(double z, double t, const ModelParams& P) {
    const double k = sonic_y_coefficient(z, P);
    if (k == 0.0) throw WaveError(ErrorKind::Singularity, "sonic' sheet is vertical on the double sonic line");
    const double c = P.c();
    return 2.0 * c * (sonic_A(z, P.b1) * t + sonic_B(z, P.b1)) / k;
}

double son_prime_t(double z, double Y, const ModelParams& P) {
    if (z == 0.0) throw WaveError(ErrorKind::PoleAtZero, "sonic' t undefined at z = 0");
    const double c = P.c();
    return (sonic_y_coefficient(z, P) * Y - 2.0 * c * sonic_B(z, P.b1)) / (2.0 * c * sonic_A(z, P.b1));
}

double surface_scale(double z) {
    const double a = 1.0 + std::abs(z);
    return a * a * a * a * a;
}

double inflection_t(double z, const ModelParams& P) {
    if (z == 0.0) throw WaveError(ErrorKind::PoleAtZero, "inflection locus has a pole at z = 0");
    return -sonic_B(z, P.b1) / sonic_A(z, P.b1);
}

DoubleSonic double_sonic(const ModelParams& P) {
    const double r = std::sqrt(P.b1 + 1.0);
    const double t1 = -P.b1 * r / (2.0 * (P.b1 + 2.0));
    return {1.0 / r, t1, -1.0 / r, -t1};
}

ManifoldPoint hysteresis_point(double z, const ModelParams& P) {
    const double b1 = P.b1, z2 = z * z;
    const double D = (b1 + 1.0) * (b1 + 1.0) * z2 * z2 + 2.0 * (b1 + 3.0) * z2 + 1.0;
    const double B = sonic_B(z, b1);
    const double t = -(b1 + 2.0) * z * B / ((z2 + 1.0) * D);
    const double Y = -2.0 * P.c() * B / D;
    return {z, t, Y};
}

double scc_value(const ManifoldPoint& Q, const ModelParams& P) {
    const double b1 = P.b1, c = P.c();
    const double z = Q.z, t = Q.t, Y = Q.Y, q = z * z + 1.0;
    const double tf1 = q * (b1 * b1 * z * z + 4.0);
    const double tf2 = 4.0 * c * z * q * (b1 * z * z - b1 + 4.0) * t + 8.0 * c * sonic_B(z, b1);
    const double tf3 = 4.0 * c * c * t * t * q * q * q;
    return (tf1 * Y * Y + tf2 * Y + tf3) / q;
}

double coincidence_surface_value(const ManifoldPoint& Q, const ModelParams& P) {
    // The saturated coincidence surface and the lifted ellipse share one
    // polynomial: alpha_M is a quarter of the SCC value.
    return 0.25 * scc_value(Q, P);
}

double coincidence_prime_value(const ManifoldPoint& Q, const ModelParams& P) {
    return coincidence_surface_value({Q.z, Q.t, -Q.Y}, P);
}

const char* to_string(RegionId r) {
    switch (r) {
        case RegionId::SSPosZPosY: return "SS'(+z,+Y)";
        case RegionId::SSPosZNegY: return "SS'(+z,-Y)";
        case RegionId::SSNegZPosY: return "SS'(-z,+Y)";
        case RegionId::SSNegZNegY: return "SS'(-z,-Y)";
        case RegionId::LateralPosZPosY: return "Lateral(+z,+Y)";
        case RegionId::LateralPosZNegY: return "Lateral(+z,-Y)";
        case RegionId::LateralNegZPosY: return "Lateral(-z,+Y)";
        case RegionId::LateralNegZNegY: return "Lateral(-z,-Y)";
        case RegionId::OverBridge: return "OverBridge";
        case RegionId::UnderBridge: return "UnderBridge";
        case RegionId::OverTunnel: return "OverTunnel";
        case RegionId::UnderTunnel: return "UnderTunnel";
    }
    return "Unknown";
}

RegionId region_of(const ManifoldPoint& Q, const ModelParams& P) {
    const double scale = surface_scale(Q.z);
    if (std::abs(Q.Y) <= kSurfaceTol || std::abs(son_value(Q, P)) / scale <= kSurfaceTol ||
        std::abs(son_prime_value(Q, P)) / scale <= kSurfaceTol) {
        throw WaveError(ErrorKind::AmbiguousOnSurface, "point lies on a dividing surface");
    }
    // At fixed (z, t) the two sonic sheets sit at Y = +h and Y = -h; the label
    // depends on whether |Y| exceeds |h| and on which side of the double sonic
    // lines z falls.
    const double c = P.c();
    const double k = sonic_y_coefficient(Q.z, P);
    const double rhs = 2.0 * c * (sonic_A(Q.z, P.b1) * Q.t + sonic_B(Q.z, P.b1));
    const bool outside = std::abs(k * Q.Y) > std::abs(rhs);
    const bool posY = Q.Y > 0.0;
    if (k < 0.0) {
        if (posY) return outside ? RegionId::OverBridge : RegionId::UnderBridge;
        return outside ? RegionId::UnderTunnel : RegionId::OverTunnel;
    }
    const bool posZ = Q.z > 0.0;
    if (outside) {
        if (posZ) return posY ? RegionId::SSPosZPosY : RegionId::SSPosZNegY;
        return posY ? RegionId::SSNegZPosY : RegionId::SSNegZNegY;
    }
    if (posZ) return posY ? RegionId::LateralPosZPosY : RegionId::LateralPosZNegY;
    return posY ? RegionId::LateralNegZPosY : RegionId::LateralNegZNegY;
}

bool l2_holds(const ManifoldPoint& Q, const ModelParams& P) {
    return Q.z * Q.z < 1.0 / (P.b1 + 1.0);
}

}  // namespace wavem
