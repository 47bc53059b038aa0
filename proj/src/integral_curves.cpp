#include "wavem/integral_curves.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "wavem/errors.hpp"
#include "wavem/hugoniot.hpp"

namespace wavem {

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

template <typename T>
T field_impl(T z, T t, double b1) {
    const T z2 = z * z;
    const T num = -t * (b1 - 2.0) * z2 * z2 * z - 2.0 * t * (b1 - 2.0) * z2 * z + 2.0 * (b1 - 1.0) * z2 -
                  t * (b1 - 2.0) * z + 2.0;
    const T q = z2 + 1.0;
    return num / (q * q * (1.0 + (b1 - 1.0) * z2));
}

template <typename T>
std::pair<T, T> projection_impl(T z, T Y, double b1, double c) {
    const T z2 = z * z;
    const T A = (b1 + 1.0) * (b1 + 1.0) * z2 * z2 + 2.0 * (b1 + 3.0) * z2 + 1.0;
    const T B = 2.0 * c * ((b1 - 1.0) * z2 + 1.0);
    const T D = 4.0 * c * ((b1 - 1.0) * z2 + 1.0);
    const T E = 4.0 * c * c * (z2 + 1.0);
    const T w = ((b1 + 1.0) * z2 + 1.0) * Y + 2.0 * c;
    const T zc2 = -2.0 * (Y - c) * z / ((b1 + 1.0) * Y * z2 + Y + 2.0 * c);
    const T tc2 = -(A * Y + B) * w * w / (2.0 * c * z * ((b1 + 1.0) * z2 + 3.0) * (A * Y * Y + D * Y + E));
    return {zc2, tc2};
}

// Deflated speed-match quadratic on sh(W(Pc)) after removing the root at Pc.
struct Deflated {
    double a, b, c;
    double disc() const { return b * b - 4.0 * a * c; }
};
Deflated deflate(const ManifoldPoint& Pc, const ModelParams& P) {
    const StatePoint W = state_of(Pc.z, Pc.t, Pc.Y, P);
    const auto k = speed_match_cubic(W, speed(Pc, P), P);
    const double q2 = k[0];
    const double q1 = k[1] + q2 * Pc.z;
    const double q0 = k[2] + q1 * Pc.z;
    return {q2, q1, q0};
}

}  // namespace

double rarefaction_field(double z, double t, const ModelParams& P) { return field_impl(z, t, P.b1); }

double ds_dz_numerator(double z, double t, const ModelParams& P) {
    const double z2 = z * z;
    return z * (z2 + 1.0) * ((P.b1 + 1.0) * z2 + 3.0) * t + (P.b1 - 1.0) * z2 + 1.0;
}

double ds_dz_rarefaction(double z, double t, const ModelParams& P) {
    return speed_dz(z, t, P) + speed_dt(z, P) * rarefaction_field(z, t, P);
}

double rarefaction_step(double z, double t, double dz, const ModelParams& P) {
    const double k1 = rarefaction_field(z, t, P);
    const double k2 = rarefaction_field(z + 0.5 * dz, t + 0.5 * dz * k1, P);
    const double k3 = rarefaction_field(z + 0.5 * dz, t + 0.5 * dz * k2, P);
    const double k4 = rarefaction_field(z + dz, t + dz * k3, P);
    return t + dz / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double rarefaction_t_at(double z0, double t0, double z1, const ModelParams& P, double h) {
    const double span = z1 - z0;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / h)));
    const double dz = span / n;
    double z = z0, t = t0;
    for (int i = 0; i < n; ++i) {
        t = rarefaction_step(z, t, dz, P);
        z = z0 + span * (i + 1) / n;
    }
    return t;
}

RarefactionArc integrate_rarefaction(double z0, double t0, CurveMode mode, const ModelParams& P, double h,
                                     double z_max) {
    const bool forward = mode == CurveMode::Forward;
    if (forward ? !(t0 < 0.0) : !(t0 > 0.0)) {
        throw WaveError(ErrorKind::StartOffLocus, forward ? "forward rarefaction needs t < 0" : "backward rarefaction needs t > 0");
    }
    RarefactionArc arc;
    arc.slow = forward;
    arc.mode = mode;
    arc.samples.push_back({z0, t0, 0.0});
    arc.speeds.push_back(speed(z0, t0, P));
    const double n0 = ds_dz_numerator(z0, t0, P);
    if (std::abs(n0) / surface_scale(z0) <= 1e-14) {
        arc.stop = StopEvent::Inflection;
        return arc;
    }
    const int m = forward ? 1 : -1;
    const int dir = sgn(n0) * m;
    arc.direction = dir;
    const double side = forward ? -1.0 : 1.0;

    auto push = [&](double z, double t) {
        arc.samples.push_back({z, t, 0.0});
        arc.speeds.push_back(speed(z, t, P));
    };
    // Event functions along a partial step of fraction th; both must stay positive.
    auto coin = [&](double z, double t, double th) { return side * rarefaction_step(z, t, th * dir * h, P); };
    auto infl = [&](double z, double t, double th) {
        const double tt = rarefaction_step(z, t, th * dir * h, P);
        return ds_dz_numerator(z + th * dir * h, tt, P) * dir * m;
    };
    auto bisect = [&](auto&& g, double z, double t) {
        double lo = 0.0, hi = 1.0;
        while ((hi - lo) * h > kEventTol) {
            const double mid = 0.5 * (lo + hi);
            if (g(z, t, mid) > 0.0) lo = mid; else hi = mid;
        }
        return hi;
    };

    double z = z0, t = t0;
    while (true) {
        const double zn = z + dir * h;
        if (std::abs(zn) > z_max) {
            const double th = (z_max - std::abs(z)) / h;
            push(z + th * dir * h, rarefaction_step(z, t, th * dir * h, P));
            arc.stop = StopEvent::Bound;
            break;
        }
        const double tn = rarefaction_step(z, t, dir * h, P);
        const bool hit_coin = side * tn <= 0.0;
        const bool hit_infl = ds_dz_numerator(zn, tn, P) * dir * m <= 0.0;
        if (hit_coin || hit_infl) {
            const double th_c = hit_coin ? bisect(coin, z, t) : 2.0;
            const double th_i = hit_infl ? bisect(infl, z, t) : 2.0;
            const double th = std::min(th_c, th_i);
            double te = rarefaction_step(z, t, th * dir * h, P);
            if (th_c <= th_i) te = 0.0;  // land exactly on the coincidence line
            push(z + th * dir * h, te);
            arc.stop = th_c <= th_i ? StopEvent::Coincidence : StopEvent::Inflection;
            break;
        }
        push(zn, tn);
        z = zn;
        t = tn;
    }
    return arc;
}

std::pair<double, double> composite_projection_T(double z1, double Y1, const ModelParams& P) {
    if (z1 == 0.0) throw WaveError(ErrorKind::Singularity, "projection undefined at z1 = 0");
    return projection_impl(z1, Y1, P.b1, P.c());
}

std::array<double, 2> composite_field(double z1, double Y1, const ModelParams& P) {
    const double zc = 1.0 / std::sqrt(P.b1 + 1.0);
    if (z1 == 0.0 || (std::abs(Y1) < 1e-6 && std::abs(std::abs(z1) - zc) < 1e-6)) {
        throw WaveError(ErrorKind::Singularity, "composite field is singular here");
    }
    using C = std::complex<double>;
    const double eps = 1e-30;
    const auto [gz_re, gz_dz] = projection_impl(C(z1, eps), C(Y1, 0.0), P.b1, P.c());
    const auto [gy_re, gy_dy] = projection_impl(C(z1, 0.0), C(Y1, eps), P.b1, P.c());
    // Columns of the Jacobian of T by complex-step differentiation.
    const double j11 = gz_re.imag() / eps, j21 = gz_dz.imag() / eps;
    const double j12 = gy_re.imag() / eps, j22 = gy_dy.imag() / eps;
    const double det = j11 * j22 - j12 * j21;
    if (!std::isfinite(det) || std::abs(det) < 1e-14) {
        throw WaveError(ErrorKind::Singularity, "projection T is not locally invertible");
    }
    const auto [zt, tt] = composite_projection_T(z1, Y1, P);
    const double f = rarefaction_field(zt, tt, P);
    // Solve J d = (1, f).
    double dz = (j22 * 1.0 - j12 * f) / det;
    double dy = (-j21 * 1.0 + j11 * f) / det;
    const double nrm = std::hypot(dz, dy);
    return {dz / nrm, dy / nrm};
}

std::optional<ManifoldPoint> composite_partner(const ManifoldPoint& Pc, double z_guess, const ModelParams& P) {
    const Deflated d = deflate(Pc, P);
    const double disc = d.disc();
    if (disc < 0.0 || d.a == 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double m = -0.5 * (d.b + (d.b >= 0.0 ? sq : -sq));
    const double r1 = m / d.a;
    const double r2 = m != 0.0 ? d.c / m : r1;
    const double zq = std::abs(r1 - z_guess) <= std::abs(r2 - z_guess) ? r1 : r2;
    const StatePoint W = state_of(Pc.z, Pc.t, Pc.Y, P);
    const auto [t, Y] = hugoniot_tY(W, zq, P);
    return ManifoldPoint{zq, t, Y};
}

CompositeArc integrate_composite(double z_start, double t_start, CurveMode mode, int direction,
                                 std::optional<double> s_target, const ModelParams& P, double h, double z_max) {
    const bool forward = mode == CurveMode::Forward;
    if ((forward ? !(t_start < 0.0) : !(t_start > 0.0)) ||
        std::abs(ds_dz_numerator(z_start, t_start, P)) / surface_scale(z_start) > 1e-8) {
        throw WaveError(ErrorKind::StartOffLocus, "composite must start on the inflection locus");
    }
    CompositeArc arc;
    arc.mode = mode;
    const ManifoldPoint P1{z_start, t_start, 0.0};
    arc.samples.push_back({P1, P1, speed(P1, P)});

    if (direction != 1 && direction != -1) {
        throw WaveError(ErrorKind::InvalidInput, "composite direction must be +1 or -1");
    }
    const int dir = direction;
    arc.direction = dir;
    const double zc = 1.0 / std::sqrt(P.b1 + 1.0);
    const double s_sign = s_target ? sgn(speed(P1, P) - *s_target) : 0.0;

    double z = z_start, t = t_start, zq = z_start;
    auto point_at = [&](double th) {
        return ManifoldPoint{z + th * dir * h, rarefaction_step(z, t, th * dir * h, P), 0.0};
    };
    auto bisect = [&](auto&& good) {
        double lo = 0.0, hi = 1.0;
        while ((hi - lo) * h > kEventTol * 1e-2) {
            const double mid = 0.5 * (lo + hi);
            if (good(mid)) lo = mid; else hi = mid;
        }
        return lo;
    };
    while (true) {
        const ManifoldPoint Pn = point_at(1.0);
        const auto Qn = composite_partner(Pn, zq, P);
        const bool lost = !Qn;
        const bool crossed_dc = Qn && (std::abs(Qn->z) - zc) * (std::abs(zq) - zc) < 0.0;
        const bool hit_s = s_target && sgn(speed(Pn, P) - *s_target) != s_sign;
        const bool hit_coin = (forward ? Pn.t >= 0.0 : Pn.t <= 0.0);
        const bool hit_bound = std::abs(Pn.z) > z_max || (Qn && std::abs(Qn->z) > z_max);
        if (lost || crossed_dc) {
            const double zq0 = zq;
            const double th = bisect([&](double x) {
                const auto q = composite_partner(point_at(x), zq0, P);
                return q && (std::abs(q->z) - zc) * (std::abs(zq0) - zc) > 0.0;
            });
            const ManifoldPoint Pe = point_at(th);
            ManifoldPoint Qe = *composite_partner(Pe, zq0, P);
            // On the double contact the partner sits exactly on z = +-zc; polish
            // the rarefaction point so that it does.
            const double zt = std::copysign(zc, Qe.z);
            double a = th, fa = 0.0;
            auto g = [&](double x) {
                const ManifoldPoint Px = point_at(x);
                const auto k = speed_match_cubic(state_of(Px.z, Px.t, 0.0, P), speed(Px, P), P);
                return ((k[0] * zt + k[1]) * zt + k[2]) * zt + k[3];
            };
            fa = g(a);
            double b = std::max(0.0, th - 1e-6), fb = g(b);
            for (int it = 0; it < 60 && fb != fa && std::abs(fa) > 1e-15; ++it) {
                const double x = a - fa * (a - b) / (fa - fb);
                b = a;
                fb = fa;
                a = std::clamp(x, 0.0, 1.0);
                fa = g(a);
            }
            const ManifoldPoint Pp = point_at(a);
            const StatePoint Wp = state_of(Pp.z, Pp.t, 0.0, P);
            const auto [tq, Yq] = hugoniot_tY(Wp, zt, P);
            const ManifoldPoint Qp{zt, tq, Yq};
            if (std::abs(a - th) * h < 1e-6 && std::abs(speed(Qp, P) - speed(Pp, P)) < 1e-9 * (1.0 + std::abs(speed(Pp, P)))) {
                arc.samples.push_back({Qp, Pp, speed(Pp, P)});
            } else {
                arc.samples.push_back({Qe, Pe, speed(Pe, P)});
            }
            arc.stop = StopEvent::DoubleContact;
            break;
        }
        if (hit_s) {
            const double th = bisect([&](double x) { return sgn(speed(point_at(x), P) - *s_target) == s_sign; });
            const ManifoldPoint Pe = point_at(th);
            const auto Qe = composite_partner(Pe, zq, P);
            arc.samples.push_back({Qe ? *Qe : Pe, Pe, speed(Pe, P)});
            arc.stop = StopEvent::SpeedMatch;
            break;
        }
        if (hit_coin) {
            arc.stop = StopEvent::Coincidence;
            break;
        }
        if (hit_bound) {
            arc.stop = StopEvent::Bound;
            break;
        }
        arc.samples.push_back({*Qn, Pn, speed(Pn, P)});
        z = Pn.z;
        t = Pn.t;
        zq = Qn->z;
    }
    return arc;
}

}  // namespace wavem
