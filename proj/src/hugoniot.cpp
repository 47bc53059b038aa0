#include "wavem/hugoniot.hpp"

#include <algorithm>
#include <cmath>

#include "wavem/errors.hpp"

namespace wavem {

namespace {

double shift_K(const StatePoint& W0, const ModelParams& P) { return P.b1 * W0.u + P.a1 - P.a4; }

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Speed along sh(W0) written as kappa + N(z) / (b1 D(z)) with N cubic and
// D = (b1-1) z^2 + 1. Returns {N, N', D, D'}.
struct SpeedParts {
    double N, dN, D, dD;
};
SpeedParts speed_parts(const StatePoint& W0, double z, const ModelParams& P) {
    const double b1 = P.b1, c = P.c(), K = shift_K(W0, P);
    const double n3 = b1 * (b1 + 1.0) * (W0.v + P.a3);
    const double n2 = -(b1 + 1.0) * K;
    const double n1 = b1 * (c - W0.v - P.a2);
    const double n0 = K;
    return {((n3 * z + n2) * z + n1) * z + n0, (3.0 * n3 * z + 2.0 * n2) * z + n1,
            (b1 - 1.0) * z * z + 1.0, 2.0 * (b1 - 1.0) * z};
}

}  // namespace

HugoniotCurve::HugoniotCurve(StatePoint base, bool prime, const ModelParams& P)
    : base_(base), prime_(prime), P_(P) {}

ManifoldPoint HugoniotCurve::at(double z) const {
    const auto [t, Y] = hugoniot_tY(base_, z, P_);
    return {z, t, prime_ ? -Y : Y};
}

double HugoniotCurve::speed_at(double z) const {
    const SpeedParts p = speed_parts(base_, z, P_);
    return P_.kappa() + p.N / (P_.b1 * p.D);
}

double HugoniotCurve::dspeed_dz(double z) const {
    const SpeedParts p = speed_parts(base_, z, P_);
    return (p.dN * p.D - p.N * p.dD) / (P_.b1 * p.D * p.D);
}

std::vector<ManifoldPoint> HugoniotCurve::sample(double z0, double z1, int n) const {
    std::vector<ManifoldPoint> out;
    if (n <= 0) return out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double z = n == 1 ? z0 : z0 + (z1 - z0) * i / (n - 1);
        out.push_back(at(z));
    }
    return out;
}

std::pair<double, double> hugoniot_tY(const StatePoint& W0, double z, const ModelParams& P) {
    const double b1 = P.b1, c = P.c(), K = shift_K(W0, P);
    const double z2 = z * z;
    const double D = (b1 - 1.0) * z2 + 1.0;
    const double tnum = b1 * (W0.v + P.a3) * z2 * z - K * z2 + (b1 * (W0.v + P.a2) + 2.0 * c) * z - K;
    const double t = tnum / (c * (z2 + 1.0) * D);
    const double Y = (-2.0 * (W0.v + P.a3) * z2 + 2.0 * K * z + 2.0 * (W0.v + P.a2)) / D;
    return {t, Y};
}

double hugoniot_t_printed(const StatePoint& W0, double z, const ModelParams& P) {
    const double b1 = P.b1, c = P.c(), K = shift_K(W0, P);
    const double z2 = z * z;
    const double tnum = (W0.v + P.a3) * b1 * z2 * z + K * z2 - (b1 * (W0.v + P.a2) + 2.0 * c) * z + K;
    return tnum / (c * (z2 + 1.0) * ((b1 - 1.0) * z2 + 1.0));
}

std::pair<double, double> hugoniot_oracle(const StatePoint& W0, double z, const ModelParams& P) {
    // u(z,t,Y) = u0 and v(z,t,Y) = v0 are linear in (t, Y) at fixed z.
    const double c = P.c(), q = z * z + 1.0;
    const double a11 = c * (z * z - 1.0), a12 = 0.5 * P.b1 * z;
    const double a21 = c * z, a22 = 0.5;
    const double r1 = shift_K(W0, P) - 2.0 * c * z / q;
    const double r2 = W0.v + P.a3 - c / q;
    const double det = a11 * a22 - a12 * a21;
    return {(r1 * a22 - a12 * r2) / det, (a11 * r2 - a21 * r1) / det};
}

HugoniotCurve hugoniot_from_state(const StatePoint& W0, const ModelParams& P) {
    return HugoniotCurve(W0, false, P);
}

HugoniotCurve hugoniot_through_point(const ManifoldPoint& Q0, const ModelParams& P) {
    return HugoniotCurve(state_of(Q0.z, Q0.t, Q0.Y, P), false, P);
}

HugoniotCurve hugoniot_prime_through_point(const ManifoldPoint& Q0, const ModelParams& P) {
    return HugoniotCurve(state_of(Q0.z, Q0.t, -Q0.Y, P), true, P);
}

CrossingQuadratic c_crossing_quadratic(const StatePoint& W0, const ModelParams& P) {
    return {-2.0 * (W0.v + P.a3), 2.0 * shift_K(W0, P), 2.0 * (W0.v + P.a2)};
}

CPair lift_to_c(const StatePoint& W, const ModelParams& P) {
    const double a2n = alpha2_normalized(W, P);
    if (std::abs(a2n) <= kBoundaryBand) throw WaveError(ErrorKind::Tangency, "state lies on the coincidence ellipse");
    if (a2n < 0.0) throw WaveError(ErrorKind::NoIntersection, "state lies in the elliptic region");
    const CrossingQuadratic q = c_crossing_quadratic(W, P);
    if (q.a == 0.0) throw WaveError(ErrorKind::NoIntersection, "one characteristic crossing is at infinity");
    const double sq = std::sqrt(q.discriminant());
    const double m = -0.5 * (q.b + (q.b >= 0.0 ? sq : -sq));
    double r1 = m / q.a;
    double r2 = m != 0.0 ? q.c / m : -r1;
    ManifoldPoint A{r1, hugoniot_tY(W, r1, P).first, 0.0};
    ManifoldPoint B{r2, hugoniot_tY(W, r2, P).first, 0.0};
    if (A.t > B.t) std::swap(A, B);
    if (!(A.t < 0.0 && B.t > 0.0)) {
        throw WaveError(ErrorKind::Tangency, "characteristic crossings do not straddle the coincidence line");
    }
    return {A, B};
}

CPair c_intersections(const HugoniotCurve& curve) {
    // The characteristic crossings of sh(W0) and of sh'(W0) are the same points of Y = 0.
    return lift_to_c(curve.base(), curve.params());
}

ManifoldPoint lemma1_partner(double z0, double t0, const ModelParams& /*P*/) {
    const double q = z0 * z0 + 1.0;
    const double z1 = -(t0 * q - z0) / (t0 * z0 * q + 1.0);
    const double w = t0 * z0 * z0 * z0 + t0 * z0 + 1.0;
    const double t1 = -t0 * w * w / (t0 * t0 * q * q + 1.0);
    return {z1, t1, 0.0};
}

CProjections projections(const ManifoldPoint& Q, const ModelParams& P) {
    const StateTriple st = manifold_to_states(Q, P);
    const CPair a = lift_to_c(st.W, P);
    const CPair b = lift_to_c(st.Wp, P);
    return {a.slow, a.fast, b.slow, b.fast};
}

const char* to_string(SonicSide s) { return s == SonicSide::Slow ? "slow" : "fast"; }

double z_c1(double z0, const ModelParams& P) { return ((P.b1 + 1.0) * z0 * z0 + 1.0) / (2.0 * z0); }

double z_c2(double z0, double Y0, const ModelParams& P) {
    const double c = P.c();
    return -2.0 * (Y0 - c) * z0 / ((P.b1 + 1.0) * Y0 * z0 * z0 + Y0 + 2.0 * c);
}

double t_c2(double z0, double Y0, const ModelParams& P) {
    const double b1 = P.b1, c = P.c(), z2 = z0 * z0;
    const double A = (b1 + 1.0) * (b1 + 1.0) * z2 * z2 + 2.0 * (b1 + 3.0) * z2 + 1.0;
    const double B = 2.0 * c * ((b1 - 1.0) * z2 + 1.0);
    const double D = 4.0 * c * ((b1 - 1.0) * z2 + 1.0);
    const double E = 4.0 * c * c * (z2 + 1.0);
    const double w = ((b1 + 1.0) * z2 + 1.0) * Y0 + 2.0 * c;
    return -(A * Y0 + B) * w * w / (2.0 * c * z0 * ((b1 + 1.0) * z2 + 3.0) * (A * Y0 * Y0 + D * Y0 + E));
}

double s_c2(double z0, double Y0, const ModelParams& P) {
    const double b1 = P.b1, c = P.c(), z2 = z0 * z0;
    const double k = (b1 + 1.0) * z2 - 1.0;
    return (k * k * Y0 + 6.0 * c * (b1 + 1.0) * z2 + 2.0 * c) / (2.0 * b1 * z0 * ((b1 + 1.0) * z2 + 3.0)) +
           P.kappa();
}

SonicSide son_prime_side(const ManifoldPoint& Q, const ModelParams& P) {
    if (std::abs(son_prime_value(Q, P)) / surface_scale(Q.z) > 1e-8) {
        throw WaveError(ErrorKind::NotOnSurface, "point is not on the sonic' surface");
    }
    const double b1 = P.b1, z2 = Q.z * Q.z;
    const double A = (b1 + 1.0) * (b1 + 1.0) * z2 * z2 + 2.0 * (b1 + 3.0) * z2 + 1.0;
    const double B = 2.0 * P.c() * ((b1 - 1.0) * z2 + 1.0);
    if (std::abs(Q.z) < 1e-12 || std::abs(A * Q.Y + B) < 1e-12 * (A + B)) {
        throw WaveError(ErrorKind::NotOnSurface, "point is on the slow/fast boundary of the sonic' surface");
    }
    return t_c2(Q.z, Q.Y, P) < 0.0 ? SonicSide::Slow : SonicSide::Fast;
}

std::vector<SonPrimeCrossing> son_prime_intersections(const HugoniotCurve& curve) {
    const ModelParams& P = curve.params();
    auto f = [&](double z) { return son_prime_value(curve.at(z), P) / surface_scale(z); };
    // Grid uniform in asinh(z) so that both the core and the far field are resolved.
    const int n = 8000;
    const double umax = std::asinh(kZMax);
    std::vector<double> zs(n + 1), fs(n + 1);
    for (int i = 0; i <= n; ++i) {
        zs[i] = std::sinh(-umax + 2.0 * umax * i / n);
        fs[i] = f(zs[i]);
    }
    std::vector<double> roots;
    auto bisect = [&](double a, double b, double fa) {
        for (int it = 0; it < 200 && std::abs(b - a) > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
            const double m = 0.5 * (a + b);
            const double fm = f(m);
            if ((fm < 0.0) == (fa < 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };
    for (int i = 0; i < n; ++i) {
        if (fs[i] == 0.0) {
            roots.push_back(zs[i]);
        } else if ((fs[i] < 0.0) != (fs[i + 1] < 0.0) && fs[i + 1] != 0.0) {
            roots.push_back(bisect(zs[i], zs[i + 1], fs[i]));
        } else if (i > 0 && std::abs(fs[i]) < std::abs(fs[i - 1]) && std::abs(fs[i]) < std::abs(fs[i + 1]) &&
                   (fs[i - 1] < 0.0) == (fs[i + 1] < 0.0)) {
            // Possible tangency: minimize |son'| by golden section and accept a touch.
            double a = zs[i - 1], b = zs[i + 1];
            const double g = 0.5 * (std::sqrt(5.0) - 1.0);
            for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
                const double x1 = b - g * (b - a), x2 = a + g * (b - a);
                if (std::abs(f(x1)) < std::abs(f(x2))) b = x2; else a = x1;
            }
            const double zm = 0.5 * (a + b);
            if (std::abs(f(zm)) < 1e-9) roots.push_back(zm);
        }
    }
    std::vector<SonPrimeCrossing> out;
    for (double z : roots) {
        const ManifoldPoint X = curve.at(z);
        const double s = speed(X, P);
        try {
            const CPair c = lift_to_c(state_of(X.z, X.t, X.Y, P), P);
            const double ds = std::abs(s - speed(c.slow, P));
            const double df = std::abs(s - speed(c.fast, P));
            out.push_back({X, ds <= df ? SonicSide::Slow : SonicSide::Fast});
        } catch (const WaveError&) {
            // Crossings whose left state is not hyperbolic carry no speed tag.
        }
    }
    return out;
}

const char* to_string(LaxKind k) {
    switch (k) {
        case LaxKind::Forward1: return "Forward1";
        case LaxKind::Backward2: return "Backward2";
        case LaxKind::Inadmissible: return "Inadmissible";
    }
    return "Unknown";
}

LaxVerdict lax_classify(const ManifoldPoint& /*Qfrom*/, const ManifoldPoint& Qto, const ModelParams& P) {
    const CProjections pr = projections(Qto, P);
    const double s = speed(Qto, P);
    const double tol = 1e-10 * (1.0 + std::abs(s));
    LaxVerdict v;
    v.checked_at = Qto;
    const bool l11 = s <= speed(pr.Us, P) + tol;
    const bool l21 = s >= speed(pr.Uf, P) - tol;
    const bool l2 = speed(pr.Ups, P) - tol <= s && s <= speed(pr.Upf, P) + tol;
    v.conditions = {{"L1.1", l11}, {"L2.1", l21}, {"L2", l2}};
    if (l11 && l2) v.kind = LaxKind::Forward1;
    else if (l21 && l2) v.kind = LaxKind::Backward2;
    else v.kind = LaxKind::Inadmissible;
    return v;
}

namespace {

WaveArc shock_arc(const ManifoldPoint& Qstart, const ModelParams& P, double z_max, bool forward) {
    const StatePoint W = state_of(Qstart.z, Qstart.t, Qstart.Y, P);
    const HugoniotCurve sh(W, false, P);
    const bool on_c = std::abs(Qstart.Y) <= 1e-12;
    bool ok = false;
    if (on_c) {
        ok = forward ? Qstart.t < 0.0 : Qstart.t > 0.0;
    } else {
        try {
            const SonicSide side = son_prime_side(Qstart, P);
            ok = forward ? side == SonicSide::Slow : side == SonicSide::Fast;
        } catch (const WaveError&) {
            ok = false;
        }
    }
    if (!ok) throw WaveError(ErrorKind::StartOffLocus, "shock arc must start on C or on the matching sonic' sheet");

    WaveArc arc;
    arc.type = forward ? (on_c ? ArcType::H1 : ArcType::NLH1) : (on_c ? ArcType::H2 : ArcType::NLH2);
    arc.base = W;
    auto push = [&](double z) {
        const ManifoldPoint q = sh.at(z);
        arc.samples.push_back({q, sh.speed_at(z), q});
    };
    double z = Qstart.z;
    arc.samples.push_back({Qstart, speed(Qstart, P), Qstart});
    auto son_at = [&](double zz) { return son_value(sh.at(zz), P); };
    double f0 = son_at(z);
    const double ds = sh.dspeed_dz(z);
    if (ds == 0.0 || std::abs(f0) / surface_scale(z) <= kSurfaceTol) {
        arc.stop = StopEvent::Son;
        return arc;
    }
    const double dir = forward ? -sgn(ds) : sgn(ds);
    while (true) {
        const double h = 1e-3 * std::max(1.0, std::abs(z));
        double zn = z + dir * h;
        if (std::abs(zn) >= z_max) {
            push(std::copysign(z_max, zn));
            arc.stop = StopEvent::Bound;
            break;
        }
        const double fn = son_at(zn);
        if ((fn < 0.0) != (f0 < 0.0) || fn == 0.0) {
            double a = z, b = zn, fa = f0;
            while (std::abs(b - a) > 1e-10 * std::max(1.0, std::abs(a))) {
                const double m = 0.5 * (a + b);
                const double fm = son_at(m);
                if ((fm < 0.0) == (fa < 0.0) && fm != 0.0) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            push(0.5 * (a + b));
            arc.stop = StopEvent::Son;
            break;
        }
        push(zn);
        z = zn;
        f0 = fn;
    }
    if (arc.samples.size() >= 2) {
        // Verdict at a point strictly inside the first step.
        const ManifoldPoint inner = sh.at(0.5 * (arc.samples[0].q.z + arc.samples[1].q.z));
        try {
            arc.verdict = lax_classify(Qstart, inner, P);
        } catch (const WaveError&) {
            arc.verdict.reset();
        }
    }
    return arc;
}

}  // namespace

WaveArc forward_shock_arc(const ManifoldPoint& Qstart, const ModelParams& P, double z_max) {
    return shock_arc(Qstart, P, z_max, true);
}

WaveArc backward_shock_arc(const ManifoldPoint& Qstart, const ModelParams& P, double z_max) {
    return shock_arc(Qstart, P, z_max, false);
}

}  // namespace wavem

namespace wavem {

std::array<double, 4> speed_match_cubic(const StatePoint& W, double sigma, const ModelParams& P) {
    // b1 D(z) (sigma - kappa) = N(z)
    const double b1 = P.b1, c = P.c(), K = shift_K(W, P);
    const double m = b1 * (sigma - P.kappa());
    return {b1 * (b1 + 1.0) * (W.v + P.a3), -(b1 + 1.0) * K - m * (b1 - 1.0), b1 * (c - W.v - P.a2), K - m};
}

}  // namespace wavem
