#pragma once

#include <array>
#include <optional>
#include <vector>

namespace wavem {

// Coefficients of the quadratic flux
//   f = v^2/2 + (b1+1) u^2/2 + a1 u + a2 v
//   g = u v + a3 u + a4 v
// c = a3 - a2 is derived, never stored independently.
struct ModelParams {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 1.0;
    double a4 = 0.0;
    double b1 = 8.0;

    double c() const noexcept { return a3 - a2; }
    // Constant shift of every shock speed produced by the linear flux terms.
    double kappa() const noexcept { return (a4 * (b1 + 1.0) - a1) / b1; }
    // Throws WaveError(InvalidInput) unless b1 > 1 and c > 0 with finite values.
    void validate() const;
};

struct StatePoint {
    double u = 0.0;
    double v = 0.0;
};

using Mat2 = std::array<std::array<double, 2>, 2>;

struct EigenData {
    double alpha1 = 0.0;  // trace of DF
    double alpha2 = 0.0;  // discriminant of the characteristic polynomial
    bool real = false;    // alpha2 >= 0
    double lambda_s = 0.0;
    double lambda_f = 0.0;
};

enum class RegionClass { Hyperbolic, Elliptic, Boundary };
const char* to_string(RegionClass r);

inline constexpr double kBoundaryBand = 1e-12;

std::array<double, 2> flux(const StatePoint& W, const ModelParams& P);
Mat2 jacobian(const StatePoint& W, const ModelParams& P);
EigenData eigen(const StatePoint& W, const ModelParams& P);

// alpha2 / c^2: the normalized ellipse form used for classification.
double alpha2_normalized(const StatePoint& W, const ModelParams& P);
RegionClass classify_state(const StatePoint& W, const ModelParams& P);

// F(W) - F(W') - s (W - W')
std::array<double, 2> rh_residual(const StatePoint& W, const StatePoint& Wp, double s,
                                  const ModelParams& P);

// Points on the boundary of the elliptic region, evenly spaced in angle.
std::vector<StatePoint> coincidence_ellipse(const ModelParams& P, int n);

}  // namespace wavem
