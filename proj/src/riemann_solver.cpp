#include "wavem/riemann_solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "wavem/errors.hpp"

namespace wavem {

LiftResult lift_state(const StatePoint& W, const ModelParams& P) {
    P.validate();
    switch (classify_state(W, P)) {
        case RegionClass::Elliptic:
            throw WaveError(ErrorKind::EllipticState, "state lies in the elliptic region");
        case RegionClass::Boundary:
            throw WaveError(ErrorKind::TangentState, "state lies on the coincidence ellipse");
        case RegionClass::Hyperbolic:
            break;
    }
    try {
        const CPair c = lift_to_c(W, P);
        return {c.slow, c.fast};
    } catch (const WaveError& e) {
        if (e.kind() == ErrorKind::NoIntersection) throw WaveError(ErrorKind::EllipticState, e.what());
        throw WaveError(ErrorKind::TangentState, e.what());
    }
}

const char* to_string(WaveType t) {
    switch (t) {
        case WaveType::S1: return "S1";
        case WaveType::R1: return "R1";
        case WaveType::C1Shock: return "C1-shock";
        case WaveType::S2: return "S2";
        case WaveType::R2: return "R2";
        case WaveType::C2Shock: return "C2-shock";
    }
    return "unknown";
}

std::optional<WaveType> wave_type_from_string(std::string_view s) {
    if (s == "S1") return WaveType::S1;
    if (s == "R1") return WaveType::R1;
    if (s == "C1-shock" || s == "C1") return WaveType::C1Shock;
    if (s == "S2") return WaveType::S2;
    if (s == "R2") return WaveType::R2;
    if (s == "C2-shock" || s == "C2") return WaveType::C2Shock;
    return std::nullopt;
}

std::vector<WaveType> wave_types(const RiemannSolution& s) {
    std::vector<WaveType> out;
    for (const auto& w : s.waves) out.push_back(w.type);
    return out;
}

namespace {

using Vec2 = std::array<double, 2>;

Vec2 to_vec(const StatePoint& W) { return {W.u, W.v}; }
StatePoint left_of(const ManifoldPoint& q, const ModelParams& P) { return state_of(q.z, q.t, q.Y, P); }
StatePoint right_of(const ManifoldPoint& q, const ModelParams& P) { return state_of(q.z, q.t, -q.Y, P); }

// State reached at the far end of a wave group generated by an arc sample.
// For every arc this is the primed state of the sample; on C it equals W.
StatePoint reached_state(const ArcSample& a, const ModelParams& P) { return right_of(a.q, P); }

struct Polyline {
    const WaveArc* arc = nullptr;
    std::vector<Vec2> pts;
};

Polyline state_polyline(const WaveArc& arc, const ModelParams& P) {
    Polyline pl;
    pl.arc = &arc;
    pl.pts.reserve(arc.samples.size());
    for (const auto& s : arc.samples) pl.pts.push_back(to_vec(reached_state(s, P)));
    return pl;
}

struct Box {
    double x0, x1, y0, y1;
    bool overlaps(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

Box box_of(const std::vector<Vec2>& p, std::size_t i0, std::size_t i1) {
    Box b{p[i0][0], p[i0][0], p[i0][1], p[i0][1]};
    for (std::size_t i = i0 + 1; i <= i1; ++i) {
        b.x0 = std::min(b.x0, p[i][0]);
        b.x1 = std::max(b.x1, p[i][0]);
        b.y0 = std::min(b.y0, p[i][1]);
        b.y1 = std::max(b.y1, p[i][1]);
    }
    return b;
}

struct Crossing {
    double a = 0.0;  // fractional sample index on the forward arc
    double b = 0.0;  // fractional sample index on the backward arc
};

// Proper segment-segment crossings of two polylines, pruned by chunk boxes.
std::vector<Crossing> polyline_crossings(const Polyline& A, const Polyline& B) {
    std::vector<Crossing> out;
    if (A.pts.size() < 2 || B.pts.size() < 2) return out;
    constexpr std::size_t kChunk = 32;
    auto chunks = [](const std::vector<Vec2>& p) {
        std::vector<std::pair<std::size_t, Box>> c;
        for (std::size_t i = 0; i + 1 < p.size(); i += kChunk) {
            const std::size_t j = std::min(i + kChunk, p.size() - 1);
            c.push_back({i, box_of(p, i, j)});
        }
        return c;
    };
    const auto ca = chunks(A.pts), cb = chunks(B.pts);
    for (const auto& [ia, ba] : ca) {
        for (const auto& [ib, bb] : cb) {
            if (!ba.overlaps(bb)) continue;
            const std::size_t ea = std::min(ia + kChunk, A.pts.size() - 1);
            const std::size_t eb = std::min(ib + kChunk, B.pts.size() - 1);
            for (std::size_t i = ia; i < ea; ++i) {
                const Vec2 p = A.pts[i];
                const Vec2 r{A.pts[i + 1][0] - p[0], A.pts[i + 1][1] - p[1]};
                for (std::size_t j = ib; j < eb; ++j) {
                    const Vec2 q = B.pts[j];
                    const Vec2 s{B.pts[j + 1][0] - q[0], B.pts[j + 1][1] - q[1]};
                    const double den = r[0] * s[1] - r[1] * s[0];
                    if (den == 0.0) continue;
                    const Vec2 d{q[0] - p[0], q[1] - p[1]};
                    const double ta = (d[0] * s[1] - d[1] * s[0]) / den;
                    const double tb = (d[0] * r[1] - d[1] * r[0]) / den;
                    if (ta >= 0.0 && ta < 1.0 && tb >= 0.0 && tb < 1.0) {
                        out.push_back({static_cast<double>(i) + ta, static_cast<double>(j) + tb});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) { return x.a < y.a; });
    return out;
}

struct Refined {
    Crossing at;
    ArcSample fwd, bwd;
    StatePoint M;
    double mismatch = 0.0;
};

// Newton iteration on (a, b) for reached_state(F(a)) = reached_state(B(b)).
Refined refine(const WaveArc& F, const WaveArc& B, Crossing x, const ModelParams& P) {
    const double amax = static_cast<double>(F.samples.size() - 1);
    const double bmax = static_cast<double>(B.samples.size() - 1);
    auto eval = [&](double a, double b) {
        const StatePoint mf = reached_state(evaluate_arc(F, a, P), P);
        const StatePoint mb = reached_state(evaluate_arc(B, b, P), P);
        return Vec2{mf.u - mb.u, mf.v - mb.v};
    };
    const double a_lo = std::max(0.0, std::floor(x.a) - 1.0), a_hi = std::min(amax, std::floor(x.a) + 2.0);
    const double b_lo = std::max(0.0, std::floor(x.b) - 1.0), b_hi = std::min(bmax, std::floor(x.b) + 2.0);
    double a = x.a, b = x.b;
    Vec2 r = eval(a, b);
    for (int it = 0; it < 40 && std::hypot(r[0], r[1]) > 1e-15; ++it) {
        const double h = 1e-7;
        const double ap = std::min(a + h, amax), am = std::max(a - h, 0.0);
        const double bp = std::min(b + h, bmax), bm = std::max(b - h, 0.0);
        const Vec2 fa1 = eval(ap, b), fa0 = eval(am, b);
        const Vec2 fb1 = eval(a, bp), fb0 = eval(a, bm);
        const double j11 = (fa1[0] - fa0[0]) / (ap - am), j21 = (fa1[1] - fa0[1]) / (ap - am);
        const double j12 = (fb1[0] - fb0[0]) / (bp - bm), j22 = (fb1[1] - fb0[1]) / (bp - bm);
        const double det = j11 * j22 - j12 * j21;
        if (!std::isfinite(det) || det == 0.0) break;
        const double da = (j22 * r[0] - j12 * r[1]) / det;
        const double db = (-j21 * r[0] + j11 * r[1]) / det;
        const double an = std::clamp(a - da, a_lo, a_hi), bn = std::clamp(b - db, b_lo, b_hi);
        const Vec2 rn = eval(an, bn);
        if (std::hypot(rn[0], rn[1]) >= std::hypot(r[0], r[1])) break;
        a = an;
        b = bn;
        r = rn;
    }
    Refined out;
    out.at = {a, b};
    out.fwd = evaluate_arc(F, a, P);
    out.bwd = evaluate_arc(B, b, P);
    out.M = reached_state(out.bwd, P);
    out.mismatch = std::hypot(r[0], r[1]);
    return out;
}

std::vector<StatePoint> rarefaction_path(const ManifoldPoint& from, double z_to, const ModelParams& P, int n = 32) {
    std::vector<StatePoint> out;
    double z = from.z, t = from.t;
    out.push_back(state_of(z, t, 0.0, P));
    for (int i = 1; i <= n; ++i) {
        const double zn = from.z + (z_to - from.z) * i / n;
        t = rarefaction_t_at(z, t, zn, P);
        z = zn;
        out.push_back(state_of(z, t, 0.0, P));
    }
    return out;
}

Wave rarefaction_wave(WaveType type, const ManifoldPoint& a, const ManifoldPoint& b, const ModelParams& P) {
    // a and b lie on one rarefaction curve of C; the wave runs from a to b.
    Wave w;
    w.type = type;
    w.samples = rarefaction_path(a, b.z, P);
    w.samples.back() = state_of(b.z, b.t, 0.0, P);
    w.from = w.samples.front();
    w.to = w.samples.back();
    w.speed_from = speed(a, P);
    w.speed_to = speed(b, P);
    return w;
}

Wave shock_wave(WaveType type, const StatePoint& from, const StatePoint& to, const ManifoldPoint& q,
                const ModelParams& P) {
    Wave w;
    w.type = type;
    w.from = from;
    w.to = to;
    w.speed_from = w.speed_to = speed(q, P);
    w.shock_point = q;
    try {
        w.lax = lax_classify(q, q, P);
    } catch (const WaveError&) {
        w.lax.reset();
    }
    const auto r = rh_residual(from, to, w.speed_from, P);
    w.rh = std::max(std::abs(r[0]), std::abs(r[1]));
    return w;
}

// Family-1 waves from the left datum to the state reached by g on arc F.
std::vector<Wave> family1(const WaveCurve& FC, const WaveArc& F, const ArcSample& g, const ModelParams& P) {
    const StatePoint L = left_of(FC.start, P);
    std::vector<Wave> w;
    switch (F.type) {
        case ArcType::H1:
        case ArcType::NLH1:
            w.push_back(shock_wave(WaveType::S1, L, right_of(g.q, P), g.q, P));
            break;
        case ArcType::C1:
            if (std::abs(g.link.z - FC.start.z) > 0.0) w.push_back(rarefaction_wave(WaveType::R1, FC.start, g.link, P));
            w.push_back(shock_wave(WaveType::C1Shock, left_of(g.link, P), right_of(g.q, P), g.q, P));
            break;
        case ArcType::R1:
            if (&F == &FC.rarefaction) {
                w.push_back(rarefaction_wave(WaveType::R1, FC.start, g.q, P));
            } else {
                const CompositeSample last{FC.composite->samples.back().q, FC.composite->samples.back().link,
                                           FC.composite->samples.back().s};
                w.push_back(rarefaction_wave(WaveType::R1, FC.start, last.link, P));
                w.push_back(shock_wave(WaveType::C1Shock, left_of(last.link, P), right_of(last.q, P), last.q, P));
                w.push_back(rarefaction_wave(WaveType::R1, F.samples.front().q, g.q, P));
            }
            break;
        default:
            break;
    }
    return w;
}

// Family-2 waves from the state reached by g on arc B to the right datum.
std::vector<Wave> family2(const WaveCurve& BC, const WaveArc& B, const ArcSample& g, const ModelParams& P) {
    const StatePoint R = left_of(BC.start, P);
    std::vector<Wave> w;
    switch (B.type) {
        case ArcType::H2:
        case ArcType::NLH2:
            w.push_back(shock_wave(WaveType::S2, right_of(g.q, P), R, g.q, P));
            break;
        case ArcType::C2:
            w.push_back(shock_wave(WaveType::C2Shock, right_of(g.q, P), left_of(g.link, P), g.q, P));
            if (std::abs(g.link.z - BC.start.z) > 0.0) w.push_back(rarefaction_wave(WaveType::R2, g.link, BC.start, P));
            break;
        case ArcType::R2:
            if (&B == &BC.rarefaction) {
                w.push_back(rarefaction_wave(WaveType::R2, g.q, BC.start, P));
            } else {
                const auto& last = BC.composite->samples.back();
                w.push_back(rarefaction_wave(WaveType::R2, g.q, B.samples.front().q, P));
                w.push_back(shock_wave(WaveType::C2Shock, right_of(last.q, P), left_of(last.link, P), last.q, P));
                w.push_back(rarefaction_wave(WaveType::R2, last.link, BC.start, P));
            }
            break;
        default:
            break;
    }
    return w;
}

// Reasons a wave list fails to be an admissible solution; empty when it passes.
std::vector<std::string> check_sequence(const std::vector<Wave>& waves) {
    std::vector<std::string> bad;
    double prev = -INFINITY;
    for (std::size_t i = 0; i < waves.size(); ++i) {
        const Wave& w = waves[i];
        const double lo = std::min(w.speed_from, w.speed_to);
        const double tol = 1e-9 * (1.0 + std::abs(lo));
        if (w.speed_to < w.speed_from - tol) bad.push_back(std::string(to_string(w.type)) + " speeds decrease across the fan");
        if (w.speed_from < prev - tol) bad.push_back(std::string(to_string(w.type)) + " is slower than the wave on its left");
        prev = std::max(prev, w.speed_to);
        if (is_shock(w.type)) {
            const LaxKind want = family(w.type) == 1 ? LaxKind::Forward1 : LaxKind::Backward2;
            if (!w.lax || w.lax->kind != want) bad.push_back(std::string(to_string(w.type)) + " fails the Lax test");
            if (!(w.rh < 1e-8)) bad.push_back(std::string(to_string(w.type)) + " violates Rankine-Hugoniot");
        }
    }
    return bad;
}

bool same_state(const StatePoint& a, const StatePoint& b) { return a.u == b.u && a.v == b.v; }

}  // namespace

RiemannSolution solve(const StatePoint& WL, const StatePoint& WR, const ModelParams& P, const SolveOptions& opt) {
    P.validate();
    RiemannSolution sol;
    sol.params = P;
    sol.left = WL;
    sol.right = WR;
    const LiftResult lL = lift_state(WL, P);
    const LiftResult lR = lift_state(WR, P);
    if (same_state(WL, WR)) return sol;

    const WaveCurve FC = forward_wave_curve(lL.Us, P);
    const WaveCurve BC = backward_wave_sequence(lR.Uf, P);

    std::vector<const WaveArc*> fwd;
    for (const WaveArc* a : FC.arcs()) {
        if (a->type != ArcType::HugPrime && a->samples.size() >= 2) fwd.push_back(a);
    }
    std::vector<const WaveArc*> bwd;
    for (const WaveArc* a : BC.arcs()) {
        if (a->type != ArcType::HugPrime && a->samples.size() >= 2) bwd.push_back(a);
    }

    // Pairs in search order: C2 with the H1 sheet, R2 with every sheet,
    // H2 with every sheet, then whatever remains.
    std::vector<std::pair<const WaveArc*, const WaveArc*>> order;
    auto add = [&](const WaveArc* f, const WaveArc* b) {
        for (const auto& p : order) {
            if (p.first == f && p.second == b) return;
        }
        order.push_back({f, b});
    };
    for (const WaveArc* b : bwd) {
        if (b->type != ArcType::C2) continue;
        for (const WaveArc* f : fwd) {
            if (f->type == ArcType::H1) add(f, b);
        }
    }
    for (ArcType bt : {ArcType::R2, ArcType::H2}) {
        for (const WaveArc* b : bwd) {
            if (b->type != bt || (bt == ArcType::R2 && b != &BC.rarefaction)) continue;
            for (const WaveArc* f : fwd) add(f, b);
        }
    }
    for (const WaveArc* b : bwd) {
        for (const WaveArc* f : fwd) add(f, b);
    }

    std::vector<Polyline> fpl, bpl;
    for (const WaveArc* f : fwd) fpl.push_back(state_polyline(*f, P));
    for (const WaveArc* b : bwd) bpl.push_back(state_polyline(*b, P));
    auto poly = [](std::vector<Polyline>& v, const WaveArc* a) -> const Polyline& {
        for (const auto& p : v) {
            if (p.arc == a) return p;
        }
        return v.front();
    };

    int total = 0;
    bool found = false;
    std::optional<RiemannSolution> first_incompatible;
    std::vector<StatePoint> seen;
    for (const auto& [f, b] : order) {
        for (const Crossing& x : polyline_crossings(poly(fpl, f), poly(bpl, b))) {
            const Refined r = refine(*f, *b, x, P);
            if (!(r.mismatch <= opt.crossing_tol * (1.0 + std::hypot(r.M.u, r.M.v)))) continue;
            bool dup = false;
            for (const auto& s : seen) {
                if (std::hypot(s.u - r.M.u, s.v - r.M.v) < 1e-8 * (1.0 + std::hypot(s.u, s.v))) dup = true;
            }
            if (dup) continue;
            seen.push_back(r.M);
            ++total;
            if (found) continue;
            RiemannSolution cand = sol;
            cand.forward_arc = to_string(f->type);
            cand.backward_arc = to_string(b->type);
            cand.waves = family1(FC, *f, r.fwd, P);
            const auto w2 = family2(BC, *b, r.bwd, P);
            cand.waves.insert(cand.waves.end(), w2.begin(), w2.end());
            for (std::size_t i = 0; i + 1 < cand.waves.size(); ++i) cand.middle_states.push_back(cand.waves[i].to);
            cand.failures = check_sequence(cand.waves);
            cand.compatible = cand.failures.empty();
            if (cand.compatible) {
                sol = std::move(cand);
                found = true;
            } else if (!first_incompatible) {
                first_incompatible = std::move(cand);
            }
        }
    }
    if (total == 0) throw WaveError(ErrorKind::NoIntersection, "the backward sequence does not meet the saturated surface");
    if (!found) {
        throw WaveError(ErrorKind::IncompatibleSequence,
                        "every crossing violates speed order or admissibility: " +
                            (first_incompatible->failures.empty() ? std::string("?") : first_incompatible->failures.front()));
    }
    sol.alternates_count = total - 1;
    return sol;
}

ContinuityReport continuity_probe(const StatePoint& WL, const StatePoint& WR, double delta, int n,
                                  const ModelParams& P, std::uint64_t seed) {
    const RiemannSolution base = solve(WL, WR, P);
    const auto types = wave_types(base);
    const CsRegion region = classify_cs_region(lift_state(WL, P).Us.z, lift_state(WL, P).Us.t, P);
    ContinuityReport rep;
    rep.delta = delta;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    for (int k = 0; k < n; ++k) {
        StatePoint L2 = WL, R2 = WR;
        bool ok = false;
        for (int attempt = 0; attempt < 20 && !ok; ++attempt) {
            const double a1 = angle(rng), a2 = angle(rng);
            L2 = {WL.u + delta * std::cos(a1), WL.v + delta * std::sin(a1)};
            R2 = {WR.u + delta * std::cos(a2), WR.v + delta * std::sin(a2)};
            if (classify_state(L2, P) != RegionClass::Hyperbolic || classify_state(R2, P) != RegionClass::Hyperbolic) continue;
            const ManifoldPoint us = lift_state(L2, P).Us;
            ok = classify_cs_region(us.z, us.t, P) == region;
        }
        if (!ok) {
            ++rep.skipped;
            continue;
        }
        ++rep.trials;
        try {
            const RiemannSolution s = solve(L2, R2, P);
            if (wave_types(s) != types) {
                rep.sequence_changed = true;
                continue;
            }
            for (std::size_t i = 0; i < s.middle_states.size(); ++i) {
                const double d = std::hypot(s.middle_states[i].u - base.middle_states[i].u,
                                            s.middle_states[i].v - base.middle_states[i].v);
                rep.max_displacement = std::max(rep.max_displacement, d);
            }
        } catch (const WaveError&) {
            ++rep.solve_failures;
            rep.sequence_changed = true;
        }
    }
    rep.ratio = delta > 0.0 ? rep.max_displacement / delta : 0.0;
    return rep;
}

}  // namespace wavem
