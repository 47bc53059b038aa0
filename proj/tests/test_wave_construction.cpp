#include <doctest.h>

#include <cmath>

#include "wavem/errors.hpp"
#include "wavem/riemann_solver.hpp"
#include "wavem/wave_construction.hpp"
#include "test_support.hpp"

using namespace wavem;

namespace {

StatePoint right_state(const ManifoldPoint& q, const ModelParams& P) { return state_of(q.z, q.t, -q.Y, P); }

bool segments_cross(const StatePoint& a, const StatePoint& b, const StatePoint& c, const StatePoint& d) {
    auto orient = [](const StatePoint& p, const StatePoint& q, const StatePoint& r) {
        return (q.u - p.u) * (r.v - p.v) - (q.v - p.v) * (r.u - p.u);
    };
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return (o1 > 0.0) != (o2 > 0.0) && (o3 > 0.0) != (o4 > 0.0);
}

}  // namespace

TEST_SUITE("wave_construction") {

TEST_CASE("separatrices") {
    ModelParams P;
    const Separatrices& S = separatrices(P);
    CHECK(S.z_hat == doctest::Approx(-1.41086947).epsilon(1e-7));
    CHECK(&S == &separatrices(P));  // cached
    const auto t = S.t_at(S.r_s, 1.0 / 3.0, P);
    REQUIRE(t);
    CHECK(*t == doctest::Approx(-1.2));
    CHECK(S.r_s_end < -100.0);
}

TEST_CASE("regions of the example states") {
    ModelParams P;
    CHECK(classify_cs_region(-5.0, -0.065, P) == CsRegion::Ia);
    CHECK(classify_cs_region(-1.0, -4.0, P) == CsRegion::II);
    CHECK(classify_cs_region(1.0, -2.0, P) == CsRegion::III);
    // The second example sits below the inflection locus with z > 0, which
    // is region III by construction rather than the region I it is quoted in.
    CHECK(classify_cs_region(1.0, -1.0, P) == CsRegion::III);
    CHECK(in_region_I(CsRegion::Ib));
    // Its printed uv state lifts to a region I point whose rarefaction runs
    // to the coincidence without a composite, as the example describes.
    const LiftResult l = lift_state({0.125, 0.5}, P);
    CHECK(l.Us.z == doctest::Approx(-1.0 / 3.0));
    CHECK(l.Us.t == doctest::Approx(-1.8));
    CHECK(l.Uf.z == doctest::Approx(1.0));
    CHECK(l.Uf.t == doctest::Approx(1.0));
    CHECK(classify_cs_region(l.Us.z, l.Us.t, P) == CsRegion::Ib);
    const WaveCurve F = forward_wave_curve(l.Us, P);
    CHECK(F.case_number == 1);
    CHECK(F.rarefaction.stop == StopEvent::Coincidence);
    CHECK(forward_wave_curve(testing::kEx2Point, P).case_number == 3);
    CHECK_THROWS_AS(classify_cs_region(1.0, 0.5, P), WaveError);
}

TEST_CASE("case 1 curve of the first example") {
    ModelParams P;
    const WaveCurve F = forward_wave_curve(testing::kEx1Point, P);
    CHECK(F.case_number == 1);
    CHECK(F.complete);
    CHECK(F.shock.type == ArcType::H1);
    CHECK(F.rarefaction.type == ArcType::R1);
    CHECK(F.rarefaction.stop == StopEvent::Coincidence);
    CHECK_FALSE(F.composite);
    REQUIRE(F.arcs().size() == 2);
    // H1 runs toward decreasing z and decreasing speed.
    CHECK(F.shock.samples[1].q.z < F.shock.samples[0].q.z);
    CHECK(F.shock.speed_end() < F.shock.speed_begin());
}

TEST_CASE("case 3 curves") {
    ModelParams P;
    for (const ManifoldPoint& Q : {testing::kEx3Point, testing::kEx4Point}) {
        const WaveCurve F = forward_wave_curve(Q, P);
        CHECK(F.case_number == 3);
        REQUIRE(F.composite);
        REQUIRE(F.jump);
        REQUIRE(F.continuation);
        CHECK(F.composite->type == ArcType::C1);
        CHECK(F.composite->stop == StopEvent::DoubleContact);
        const ManifoldPoint P3 = F.composite->samples.back().q;
        CHECK(std::abs(std::abs(P3.z) - 1.0 / 3.0) < 1e-8);

        const WaveArc& J = *F.jump;
        CHECK(J.type == ArcType::HugPrime);
        const ManifoldPoint P4 = J.samples.back().q;
        CHECK(std::abs(P4.Y) < 1e-12);
        CHECK(P4.t < 0.0);  // forward curves land on C_s
        const StatePoint a = state_of(P4.z, P4.t, 0.0, P), b = right_state(P3, P);
        CHECK(a.u == doctest::Approx(b.u).epsilon(1e-10));
        CHECK(a.v == doctest::Approx(b.v).epsilon(1e-10));
        for (const ArcSample& s : J.samples) {
            const StatePoint r = right_state(s.q, P);
            CHECK(r.u == doctest::Approx(b.u).epsilon(1e-10));
            CHECK(r.v == doctest::Approx(b.v).epsilon(1e-10));
        }
        // The jump lands at a different speed: at the double contact the
        // speed equals the fast eigenvalue of W'(P3), not the slow one.
        CHECK(std::abs(speed(P4, P) - speed(P3, P)) > 1.0);
        CHECK(F.continuation->samples.front().q.z == doctest::Approx(P4.z));
    }
    // Signs obtained for the composite ends.
    CHECK(forward_wave_curve(testing::kEx3Point, P).composite->samples.back().q.z > 0.0);
    CHECK(forward_wave_curve(testing::kEx4Point, P).composite->samples.back().q.z < 0.0);
}

TEST_CASE("backward sequence from the first example") {
    ModelParams P;
    const ManifoldPoint Uf = lift_state(testing::kEx1Right, P).Uf;
    const WaveCurve B = backward_wave_sequence(Uf, P);
    CHECK(B.mode == CurveMode::Backward);
    CHECK(B.shock.type == ArcType::H2);
    CHECK(B.rarefaction.type == ArcType::R2);
    REQUIRE(B.composite);
    CHECK(B.composite->type == ArcType::C2);
    for (std::size_t i = 1; i < B.rarefaction.samples.size(); ++i) {
        CHECK(B.rarefaction.samples[i].s < B.rarefaction.samples[i - 1].s);
    }
    REQUIRE(B.jump);
    CHECK(B.jump->samples.back().q.t > 0.0);  // backward curves land on C_f
}

TEST_CASE("evaluate_arc reproduces samples") {
    ModelParams P;
    const WaveCurve F = forward_wave_curve(testing::kEx4Point, P);
    for (const WaveArc* arc : F.arcs()) {
        const std::size_t i = arc->samples.size() / 3;
        const ArcSample e = evaluate_arc(*arc, static_cast<double>(i), P);
        CHECK(e.q.z == doctest::Approx(arc->samples[i].q.z).epsilon(1e-8));
        CHECK(e.q.t == doctest::Approx(arc->samples[i].q.t).epsilon(1e-8));
        CHECK(e.s == doctest::Approx(arc->samples[i].s).epsilon(1e-8));
    }
}

TEST_CASE("fiber grid") {
    const auto g = fiber_grid(101, 1000.0);
    CHECK(g.front() == -1000.0);
    CHECK(g.back() == 1000.0);
    CHECK(std::abs(g[50]) < 1e-12);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
    CHECK_THROWS_AS(fiber_grid(1), WaveError);
}

TEST_CASE("saturated surface fibers") {
    ModelParams P;
    const WaveCurve F = forward_wave_curve(testing::kEx4Point, P);
    const SaturatedSurface S = saturate(F, P, 60, 25);
    REQUIRE(S.sheets.size() == F.arcs().size());
    for (const SaturatedSheet& sheet : S.sheets) {
        for (std::size_t i = 0; i < sheet.generators.size(); ++i) {
            const ManifoldPoint& U = sheet.generators[i];
            const StatePoint w = right_state(U, P);
            for (const ManifoldPoint& X : sheet.fibers[i]) {
                const StatePoint r = right_state(X, P);
                CHECK(std::abs(r.u - w.u) < 1e-9 * (1.0 + std::abs(w.u)));
                CHECK(std::abs(r.v - w.v) < 1e-9 * (1.0 + std::abs(w.v)));
            }
            // The generator sits on its own fiber.
            const ManifoldPoint G = HugoniotCurve(w, true, P).at(U.z);
            CHECK(G.t == doctest::Approx(U.t).epsilon(1e-9));
            CHECK(G.Y == doctest::Approx(U.Y).epsilon(1e-9));
        }
    }
}

TEST_CASE("first example: C2 meets the saturated H1 sheet once") {
    ModelParams P;
    const WaveCurve F = forward_wave_curve(testing::kEx1Point, P);
    const SaturatedSurface S = saturate(F, P, 8, 2000);
    const SaturatedSheet& H1 = S.sheets.front();
    REQUIRE(H1.generator_type == ArcType::H1);
    std::vector<StatePoint> a;
    for (const auto& fiber : H1.fibers) a.push_back(right_state(fiber.front(), P));

    const WaveCurve B = backward_wave_sequence(lift_state(testing::kEx1Right, P).Uf, P);
    REQUIRE(B.composite);
    std::vector<StatePoint> b;
    for (const ArcSample& s : B.composite->samples) b.push_back(right_state(s.q, P));

    int crossings = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        for (std::size_t j = 0; j + 1 < b.size(); ++j) {
            if (segments_cross(a[i], a[i + 1], b[j], b[j + 1])) ++crossings;
        }
    }
    CHECK(crossings == 1);
}

}
