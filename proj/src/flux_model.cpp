#include "wavem/flux_model.hpp"

#include <cmath>
#include <numbers>

#include "wavem/errors.hpp"

namespace wavem {

void ModelParams::validate() const {
    for (double x : {a1, a2, a3, a4, b1}) {
        if (!std::isfinite(x)) throw WaveError(ErrorKind::InvalidInput, "non-finite coefficient");
    }
    if (!(b1 > 1.0)) throw WaveError(ErrorKind::InvalidInput, "b1 must exceed 1");
    if (!(c() > 0.0)) throw WaveError(ErrorKind::InvalidInput, "a3 - a2 must be positive");
}

const char* to_string(RegionClass r) {
    switch (r) {
        case RegionClass::Hyperbolic: return "Hyperbolic";
        case RegionClass::Elliptic: return "Elliptic";
        case RegionClass::Boundary: return "Boundary";
    }
    return "Unknown";
}

std::array<double, 2> flux(const StatePoint& W, const ModelParams& P) {
    const double u = W.u, v = W.v;
    const double f = 0.5 * v * v + 0.5 * (P.b1 + 1.0) * u * u + P.a1 * u + P.a2 * v;
    const double g = u * v + P.a3 * u + P.a4 * v;
    return {f, g};
}

Mat2 jacobian(const StatePoint& W, const ModelParams& P) {
    return {{{(P.b1 + 1.0) * W.u + P.a1, W.v + P.a2},
             {W.v + P.a3, W.u + P.a4}}};
}

EigenData eigen(const StatePoint& W, const ModelParams& P) {
    EigenData e;
    const double k = P.b1 * W.u + P.a1 - P.a4;
    e.alpha1 = (P.b1 + 2.0) * W.u + P.a1 + P.a4;
    e.alpha2 = k * k + 4.0 * (W.v + P.a2) * (W.v + P.a3);
    e.real = e.alpha2 >= 0.0;
    if (e.real) {
        const double r = std::sqrt(e.alpha2);
        e.lambda_s = 0.5 * (e.alpha1 - r);
        e.lambda_f = 0.5 * (e.alpha1 + r);
    }
    return e;
}

double alpha2_normalized(const StatePoint& W, const ModelParams& P) {
    const double c = P.c();
    return eigen(W, P).alpha2 / (c * c);
}

RegionClass classify_state(const StatePoint& W, const ModelParams& P) {
    const double a = alpha2_normalized(W, P);
    if (std::abs(a) <= kBoundaryBand) return RegionClass::Boundary;
    return a > 0.0 ? RegionClass::Hyperbolic : RegionClass::Elliptic;
}

std::array<double, 2> rh_residual(const StatePoint& W, const StatePoint& Wp, double s,
                                  const ModelParams& P) {
    const auto F = flux(W, P);
    const auto Fp = flux(Wp, P);
    return {F[0] - Fp[0] - s * (W.u - Wp.u), F[1] - Fp[1] - s * (W.v - Wp.v)};
}

std::vector<StatePoint> coincidence_ellipse(const ModelParams& P, int n) {
    if (n < 3) throw WaveError(ErrorKind::InvalidInput, "ellipse needs at least 3 points");
    // (b1 u + a1 - a4)^2 + (2v + a2 + a3)^2 = c^2
    const double c = P.c();
    const double uc = -(P.a1 - P.a4) / P.b1;
    const double vc = -0.5 * (P.a2 + P.a3);
    std::vector<StatePoint> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * i / n;
        out.push_back({uc + c / P.b1 * std::cos(th), vc + 0.5 * c * std::sin(th)});
    }
    return out;
}

}  // namespace wavem
