#include "wavem/wave_construction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "wavem/errors.hpp"

namespace wavem {

const char* to_string(CsRegion r) {
    switch (r) {
        case CsRegion::Ia: return "Ia";
        case CsRegion::Ib: return "Ib";
        case CsRegion::II: return "II";
        case CsRegion::III: return "III";
    }
    return "unknown";
}

namespace {

// Plain leftward integration of the rarefaction field, ignoring every event
// except the |z| bound.
std::vector<ManifoldPoint> integrate_left(double z, double t, const ModelParams& P, double z_max) {
    std::vector<ManifoldPoint> out{{z, t, 0.0}};
    while (z > -z_max) {
        const double h = std::min(kOdeStep * std::max(1.0, std::abs(z)), z + z_max);
        t = rarefaction_step(z, t, -h, P);
        z -= h;
        out.push_back({z, t, 0.0});
    }
    return out;
}

Separatrices build_separatrices(const ModelParams& P) {
    const DoubleSonic d = double_sonic(P);
    Separatrices S;
    S.r_s = integrate_left(d.z_crit1, d.t1, P, kZMax);
    S.r_f = integrate_left(d.z_crit2, d.t2, P, kZMax);
    S.r_s_end = S.r_s.back().z;
    for (std::size_t i = 1; i < S.r_s.size(); ++i) {
        if (S.r_s[i].t >= 0.0) {
            S.r_s_end = S.r_s[i - 1].z;
            S.r_s.resize(i);
            break;
        }
    }
    S.z_hat = -kZMax;
    for (std::size_t i = 1; i < S.r_f.size(); ++i) {
        if (S.r_f[i].t < 0.0 && S.r_f[i - 1].t >= 0.0) {
            double a = S.r_f[i - 1].z, b = S.r_f[i].z;
            const double z0 = a, t0 = S.r_f[i - 1].t;
            while (std::abs(a - b) > kEventTol) {
                const double m = 0.5 * (a + b);
                if (rarefaction_step(z0, t0, m - z0, P) >= 0.0) a = m; else b = m;
            }
            S.z_hat = 0.5 * (a + b);
            break;
        }
    }
    return S;
}

}  // namespace

std::optional<double> Separatrices::t_at(const std::vector<ManifoldPoint>& curve, double z,
                                         const ModelParams& P) const {
    if (curve.empty() || z > curve.front().z || z < curve.back().z) return std::nullopt;
    // Samples are ordered by decreasing z.
    const auto it = std::lower_bound(curve.begin(), curve.end(), z,
                                     [](const ManifoldPoint& q, double v) { return q.z > v; });
    if (it == curve.begin()) return curve.front().t;
    const ManifoldPoint& prev = *(it - 1);
    return rarefaction_step(prev.z, prev.t, z - prev.z, P);
}

const Separatrices& separatrices(const ModelParams& P) {
    static std::mutex mu;
    static std::map<std::tuple<double, double, double, double, double>, Separatrices> cache;
    const auto key = std::make_tuple(P.a1, P.a2, P.a3, P.a4, P.b1);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build_separatrices(P)).first;
    return it->second;
}

CsRegion classify_cs_region(double z, double t, const ModelParams& P) {
    if (!(t < 0.0)) throw WaveError(ErrorKind::InvalidInput, "region classification needs a point with t < 0");
    if (z > 0.0 && t < inflection_t(z, P)) return CsRegion::III;
    const Separatrices& S = separatrices(P);
    const double zc = 1.0 / std::sqrt(P.b1 + 1.0);
    if (z < zc) {
        const auto rs = S.t_at(S.r_s, z, P);
        if (rs && t < *rs) return CsRegion::II;
    }
    if (z <= S.z_hat) {
        const auto rf = S.t_at(S.r_f, z, P);
        if (rf && t > *rf) return CsRegion::Ia;
    }
    return CsRegion::Ib;
}

std::vector<const WaveArc*> WaveCurve::arcs() const {
    std::vector<const WaveArc*> out{&shock, &rarefaction};
    for (const auto* a : {&composite, &nonlocal, &jump, &continuation}) {
        if (*a) out.push_back(&**a);
    }
    return out;
}

namespace {

WaveArc rarefaction_to_arc(const RarefactionArc& R, ArcType type) {
    WaveArc arc;
    arc.type = type;
    arc.stop = R.stop;
    arc.samples.reserve(R.samples.size());
    for (std::size_t i = 0; i < R.samples.size(); ++i) {
        arc.samples.push_back({R.samples[i], R.speeds[i], R.samples[i]});
    }
    return arc;
}

WaveArc composite_to_arc(const CompositeArc& C, ArcType type) {
    WaveArc arc;
    arc.type = type;
    arc.stop = C.stop;
    for (const auto& s : C.samples) arc.samples.push_back({s.q, s.s, s.link});
    return arc;
}

WaveCurve build_curve(const ManifoldPoint& Q0, const ModelParams& P, bool forward) {
    P.validate();
    if (std::abs(Q0.Y) > kSurfaceTol || (forward ? !(Q0.t < 0.0) : !(Q0.t > 0.0))) {
        throw WaveError(ErrorKind::StartOffLocus,
                        forward ? "forward curve must start on the slow half of C" : "backward curve must start on the fast half of C");
    }
    const CurveMode mode = forward ? CurveMode::Forward : CurveMode::Backward;
    WaveCurve W;
    W.mode = mode;
    W.start = {Q0.z, Q0.t, 0.0};
    W.junctions.push_back(W.start);
    W.shock = forward ? forward_shock_arc(W.start, P) : backward_shock_arc(W.start, P);

    const RarefactionArc R = integrate_rarefaction(Q0.z, Q0.t, mode, P);
    W.rarefaction = rarefaction_to_arc(R, forward ? ArcType::R1 : ArcType::R2);
    if (R.stop != StopEvent::Inflection) return W;

    const ManifoldPoint P1 = R.samples.back();
    W.junctions.push_back(P1);
    const std::optional<double> s_target =
        R.samples.size() > 1 ? std::optional<double>(speed(W.start, P)) : std::nullopt;
    // With a zero-length rarefaction there is no side to retrace; step toward
    // the origin, the side the speed falls off along the forward family.
    const int dir = R.direction != 0 ? -R.direction : (P1.z > 0.0 ? -1 : 1);
    const CompositeArc C = integrate_composite(P1.z, P1.t, mode, dir, s_target, P);
    W.composite = composite_to_arc(C, forward ? ArcType::C1 : ArcType::C2);
    const CompositeSample& last = C.samples.back();

    if (C.stop == StopEvent::SpeedMatch) {
        W.case_number = 2;
        W.junctions.push_back(last.q);
        try {
            W.nonlocal = forward ? forward_shock_arc(last.q, P) : backward_shock_arc(last.q, P);
        } catch (const WaveError&) {
            W.complete = false;
        }
    } else if (C.stop == StopEvent::DoubleContact) {
        W.case_number = 3;
        const ManifoldPoint P3 = last.q;
        W.junctions.push_back(P3);
        const StatePoint Wp = state_of(P3.z, P3.t, -P3.Y, P);
        CPair lift;
        try {
            lift = lift_to_c(Wp, P);
        } catch (const WaveError&) {
            W.complete = false;
            return W;
        }
        const ManifoldPoint P4 = forward ? lift.slow : lift.fast;
        W.junctions.push_back(P4);
        // Hugoniot' arc from P3 to the half of C with the same family.
        const HugoniotCurve shp(Wp, true, P);
        WaveArc jump;
        jump.type = ArcType::HugPrime;
        jump.base = Wp;
        jump.stop = StopEvent::None;
        const int n = 64;
        for (int i = 0; i <= n; ++i) {
            const double z = P3.z + (P4.z - P3.z) * i / n;
            const ManifoldPoint q = i == 0 ? P3 : (i == n ? P4 : shp.at(z));
            jump.samples.push_back({q, speed(q, P), q});
        }
        W.jump = jump;
        const RarefactionArc R2 = integrate_rarefaction(P4.z, P4.t, mode, P);
        // The curve ends at P5; a second inflection there is not followed.
        W.continuation = rarefaction_to_arc(R2, forward ? ArcType::R1 : ArcType::R2);
        W.junctions.push_back(R2.samples.back());
    } else if (C.stop == StopEvent::Singularity) {
        W.complete = false;
    }
    return W;
}

}  // namespace

WaveCurve forward_wave_curve(const ManifoldPoint& Q0, const ModelParams& P) { return build_curve(Q0, P, true); }

WaveCurve backward_wave_sequence(const ManifoldPoint& Q0, const ModelParams& P) {
    return build_curve(Q0, P, false);
}

ArcSample evaluate_arc(const WaveArc& arc, double param, const ModelParams& P) {
    if (arc.samples.empty()) throw WaveError(ErrorKind::InvalidInput, "empty arc");
    const double last = static_cast<double>(arc.samples.size() - 1);
    param = std::clamp(param, 0.0, last);
    const std::size_t i = std::min(static_cast<std::size_t>(param), arc.samples.size() > 1 ? arc.samples.size() - 2 : 0);
    const double f = param - static_cast<double>(i);
    const ArcSample& a = arc.samples[i];
    const ArcSample& b = arc.samples.size() > 1 ? arc.samples[i + 1] : a;
    auto lerp = [f](double x, double y) { return x + f * (y - x); };
    switch (arc.type) {
        case ArcType::H1:
        case ArcType::H2:
        case ArcType::NLH1:
        case ArcType::NLH2: {
            const HugoniotCurve sh(arc.base, false, P);
            const double z = lerp(a.q.z, b.q.z);
            const ManifoldPoint q = sh.at(z);
            return {q, sh.speed_at(z), q};
        }
        case ArcType::HugPrime: {
            const HugoniotCurve shp(arc.base, true, P);
            const ManifoldPoint q = shp.at(lerp(a.q.z, b.q.z));
            return {q, speed(q, P), q};
        }
        case ArcType::R1:
        case ArcType::R2: {
            const double z = lerp(a.q.z, b.q.z);
            const ManifoldPoint q{z, rarefaction_step(a.q.z, a.q.t, z - a.q.z, P), 0.0};
            return {q, speed(q, P), q};
        }
        case ArcType::C1:
        case ArcType::C2: {
            const double z = lerp(a.link.z, b.link.z);
            const ManifoldPoint link{z, rarefaction_step(a.link.z, a.link.t, z - a.link.z, P), 0.0};
            const auto q = composite_partner(link, lerp(a.q.z, b.q.z), P);
            if (!q) {
                const ManifoldPoint ql{lerp(a.q.z, b.q.z), lerp(a.q.t, b.q.t), lerp(a.q.Y, b.q.Y)};
                return {ql, lerp(a.s, b.s), link};
            }
            return {*q, speed(link, P), link};
        }
    }
    return a;
}

std::vector<double> fiber_grid(int n, double z_max) {
    if (n < 2) throw WaveError(ErrorKind::InvalidInput, "fiber grid needs at least two samples");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double a = std::asinh(z_max);
    for (int j = 0; j < n; ++j) {
        const double x = -1.0 + 2.0 * j / (n - 1);
        g[static_cast<std::size_t>(j)] = std::sinh(a * x);
    }
    g.front() = -z_max;
    g.back() = z_max;
    return g;
}

SaturatedSurface saturate(const WaveCurve& C, const ModelParams& P, int n_fiber, int max_generators) {
    SaturatedSurface S;
    const std::vector<double> grid = fiber_grid(n_fiber);
    for (const WaveArc* arc : C.arcs()) {
        if (arc->empty()) continue;
        SaturatedSheet sheet;
        sheet.generator_type = arc->type;
        sheet.z_grid = grid;
        const std::size_t n = arc->samples.size();
        const std::size_t m = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, max_generators)));
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t i = m == 1 ? 0 : k * (n - 1) / (m - 1);
            const ManifoldPoint& U = arc->samples[i].q;
            sheet.generators.push_back(U);
            const HugoniotCurve fiber(state_of(U.z, U.t, -U.Y, P), true, P);
            std::vector<ManifoldPoint> pts;
            pts.reserve(grid.size());
            for (double z : grid) pts.push_back(fiber.at(z));
            sheet.fibers.push_back(std::move(pts));
        }
        S.sheets.push_back(std::move(sheet));
    }
    return S;
}

}  // namespace wavem
