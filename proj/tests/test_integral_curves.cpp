#include <doctest.h>

#include <cmath>

#include "wavem/errors.hpp"
#include "wavem/integral_curves.hpp"
#include "test_support.hpp"

using namespace wavem;

TEST_SUITE("integral_curves") {

TEST_CASE("slow rarefaction from the first example reaches the coincidence") {
    ModelParams P;
    const RarefactionArc R = integrate_rarefaction(-5.0, -0.065, CurveMode::Forward, P);
    CHECK(R.stop == StopEvent::Coincidence);
    CHECK(R.slow);
    REQUIRE(R.samples.size() > 100);
    CHECK(std::abs(R.samples.back().t) < 1e-9);
    for (std::size_t i = 1; i < R.speeds.size(); ++i) CHECK(R.speeds[i] > R.speeds[i - 1]);
    const std::size_t stride = R.samples.size() / 100;
    for (std::size_t i = 0; i + 1 < R.samples.size(); i += stride) {
        const ManifoldPoint& q = R.samples[i];
        CHECK(testing::rarefaction_tangent_angle(q.z, q.t, P) < 1e-6);
        const EigenData e = eigen(state_of(q.z, q.t, 0.0, P), P);
        CHECK(std::abs(R.speeds[i] - e.lambda_s) < 1e-8 * (1.0 + std::abs(e.lambda_s)));
    }
}

TEST_CASE("samples follow the single-step integrator") {
    ModelParams P;
    const RarefactionArc R = integrate_rarefaction(1.0, -2.0, CurveMode::Forward, P);
    for (std::size_t i = 0; i + 1 < R.samples.size(); i += 37) {
        const ManifoldPoint &a = R.samples[i], &b = R.samples[i + 1];
        CHECK(rarefaction_t_at(a.z, a.t, b.z, P, 1e-4) == doctest::Approx(b.t).epsilon(1e-9));
    }
}

TEST_CASE("inflection stop") {
    ModelParams P;
    const RarefactionArc R = integrate_rarefaction(1.0, -2.0, CurveMode::Forward, P);
    REQUIRE(R.stop == StopEvent::Inflection);
    const ManifoldPoint e = R.samples.back();
    CHECK(std::abs(e.t - inflection_t(e.z, P)) < 1e-7 * std::abs(e.t));
    CHECK(std::abs(ds_dz_numerator(e.z, e.t, P)) < 1e-6);
    // Rarefaction moves toward smaller z from this start.
    CHECK(R.direction == -1);
}

TEST_CASE("ds/dz vanishes on the inflection locus") {
    ModelParams P;
    P.a3 = 1.4;
    for (double z : {-3.0, -0.5, 0.1, 0.8, 2.5}) {
        const double t = inflection_t(z, P);
        CHECK(std::abs(ds_dz_rarefaction(z, t, P)) < 1e-10);
    }
    // and agrees with finite differences of the speed elsewhere
    const double z = 0.7, t = -2.3, h = 1e-5;
    const double fd = (speed(z + h, rarefaction_t_at(z, t, z + h, P, h), P) -
                       speed(z - h, rarefaction_t_at(z, t, z - h, P, h), P)) / (2 * h);
    CHECK(ds_dz_rarefaction(z, t, P) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("backward rarefaction decreases speed on C_f") {
    ModelParams P;
    const RarefactionArc R = integrate_rarefaction(2.0, 2.0, CurveMode::Backward, P);
    CHECK_FALSE(R.slow);
    for (std::size_t i = 1; i < R.speeds.size(); ++i) CHECK(R.speeds[i] < R.speeds[i - 1]);
    for (const ManifoldPoint& q : R.samples) CHECK(q.t > 0.0);
}

TEST_CASE("composite from the fourth example") {
    ModelParams P;
    const RarefactionArc R = integrate_rarefaction(1.0, -2.0, CurveMode::Forward, P);
    const ManifoldPoint P1 = R.samples.back();
    const CompositeArc C = integrate_composite(P1.z, P1.t, CurveMode::Forward, -R.direction,
                                               R.speeds.front(), P);
    REQUIRE(C.samples.size() > 10);
    CHECK(C.stop == StopEvent::DoubleContact);
    CHECK(C.direction == 1);
    const CompositeSample& last = C.samples.back();
    // The double contact is reached on the sonic' sheet.
    CHECK(std::abs(std::abs(last.q.z) - 1.0 / 3.0) < 1e-8);
    CHECK(std::abs(son_value(last.q, P)) / surface_scale(last.q.z) < 1e-8);
    for (std::size_t i = 1; i < C.samples.size(); ++i) {
        const CompositeSample& s = C.samples[i];
        CHECK(s.s < C.samples[i - 1].s);
        CHECK(std::abs(son_prime_value(s.q, P)) / surface_scale(s.q.z) < 1e-9);
        CHECK(speed(s.q, P) == doctest::Approx(s.s).epsilon(1e-9));
        CHECK(speed(s.link, P) == doctest::Approx(s.s).epsilon(1e-9));
        // q lies on the Hugoniot curve of the link state.
        const StatePoint a = state_of(s.q.z, s.q.t, s.q.Y, P), b = state_of(s.link.z, s.link.t, 0.0, P);
        CHECK(a.u == doctest::Approx(b.u).epsilon(1e-9));
        CHECK(a.v == doctest::Approx(b.v).epsilon(1e-9));
    }
    // Links retrace the rarefaction.
    const CompositeSample& mid = C.samples[C.samples.size() / 2];
    CHECK(rarefaction_t_at(1.0, -2.0, mid.link.z, P, 1e-4) == doctest::Approx(mid.link.t).epsilon(1e-8));
}

TEST_CASE("projection T and its pullback field") {
    ModelParams P;
    const RarefactionArc R = integrate_rarefaction(1.0, -2.0, CurveMode::Forward, P);
    const CompositeArc C = integrate_composite(R.samples.back().z, R.samples.back().t, CurveMode::Forward,
                                               -R.direction, std::nullopt, P);
    for (std::size_t i = 5; i < C.samples.size(); i += 40) {
        const CompositeSample& s = C.samples[i];
        if (std::abs(s.q.z) < 1e-6) continue;
        const auto [zc, tc] = composite_projection_T(s.q.z, s.q.Y, P);
        CHECK(zc == doctest::Approx(s.link.z).epsilon(1e-9));
        CHECK(tc == doctest::Approx(s.link.t).epsilon(1e-9));

        const auto partner = composite_partner(s.link, s.q.z, P);
        REQUIRE(partner);
        CHECK(partner->z == doctest::Approx(s.q.z).epsilon(1e-9));
        CHECK(partner->Y == doctest::Approx(s.q.Y).epsilon(1e-9));

        // Pushing the field forward through T gives a rarefaction direction
        // with increasing z.
        const auto d = composite_field(s.q.z, s.q.Y, P);
        const double h = 1e-6;
        const auto [z1, t1] = composite_projection_T(s.q.z + h * d[0], s.q.Y + h * d[1], P);
        const auto [z0, t0] = composite_projection_T(s.q.z - h * d[0], s.q.Y - h * d[1], P);
        const double dz = z1 - z0, dt = t1 - t0;
        CHECK(dz > 0.0);
        const double slope = rarefaction_field(zc, tc, P);
        CHECK(dt / dz == doctest::Approx(slope).epsilon(1e-5));
    }
}

TEST_CASE("composite direction must be a unit sign") {
    try {
        const ModelParams P;
        integrate_composite(0.05, inflection_t(0.05, P), CurveMode::Forward, 0, std::nullopt, P);
        FAIL("expected InvalidInput");
    } catch (const WaveError& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
}

}
