#include <doctest.h>

#include <cmath>
#include <complex>

#include "wavem/errors.hpp"
#include "wavem/hugoniot.hpp"
#include "test_support.hpp"

using namespace wavem;

namespace {

ModelParams skewed() {
    ModelParams P;
    P.a1 = 0.3;
    P.a2 = -0.2;
    P.a3 = 1.5;
    P.a4 = 0.4;
    P.b1 = 3.0;
    return P;
}

}  // namespace

TEST_SUITE("hugoniot") {

TEST_CASE("corrected closed form at the first example") {
    ModelParams P;
    const HugoniotCurve H = hugoniot_from_state(testing::kEx1Left, P);
    const ManifoldPoint Q = H.at(-5.0);
    CHECK(std::abs(Q.t + 0.065) < 1e-9);
    CHECK(std::abs(Q.Y) < 1e-9);
    // The printed numerator misses the example value by a wide margin.
    const double printed = hugoniot_t_printed(testing::kEx1Left, -5.0, P);
    CHECK(printed == doctest::Approx(-0.0939).epsilon(1e-3));
}

TEST_CASE("closed form agrees with the linear-solve oracle") {
    for (const ModelParams& P : {ModelParams{}, skewed()}) {
        for (const StatePoint& W : {testing::kEx1Left, testing::kEx3Left, StatePoint{2.0, -7.0}}) {
            for (double z : {-40.0, -1.0, -0.2, 0.0, 0.6, 3.0}) {
                const auto a = hugoniot_tY(W, z, P);
                const auto b = hugoniot_oracle(W, z, P);
                CHECK(std::abs(a.first - b.first) < 1e-10 * (1.0 + std::abs(b.first)));
                CHECK(std::abs(a.second - b.second) < 1e-10 * (1.0 + std::abs(b.second)));
            }
        }
    }
}

TEST_CASE("every point of sh(W) keeps the base as left state") {
    const ModelParams P = skewed();
    const HugoniotCurve H = hugoniot_from_state({0.5, 1.5}, P);
    for (const ManifoldPoint& Q : H.sample(-10.0, 10.0, 41)) {
        const StateTriple T = manifold_to_states(Q, P);
        CHECK(T.W.u == doctest::Approx(0.5));
        CHECK(T.W.v == doctest::Approx(1.5));
        const auto r = rh_residual(T.W, T.Wp, T.s, P);
        CHECK(std::hypot(r[0], r[1]) < 1e-10);
    }
    const HugoniotCurve Hp(StatePoint{0.5, 1.5}, true, P);
    const StateTriple T = manifold_to_states(Hp.at(2.0), P);
    CHECK(T.Wp.u == doctest::Approx(0.5));
    CHECK(T.Wp.v == doctest::Approx(1.5));
}

TEST_CASE("exact speed derivative") {
    const HugoniotCurve H = hugoniot_from_state(testing::kEx4Left, skewed());
    for (double z : {-2.0, 0.3, 1.7}) {
        const double h = 1e-6;
        const double fd = (H.speed_at(z + h) - H.speed_at(z - h)) / (2 * h);
        CHECK(H.dspeed_dz(z) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("lifting states to C") {
    ModelParams P;
    const CPair a = lift_to_c(testing::kEx3Left, P);
    CHECK(a.slow.z == doctest::Approx(-1.0));
    CHECK(a.slow.t == doctest::Approx(-4.0));
    CHECK(a.fast.z == doctest::Approx(7.0 / 9.0));
    CHECK(a.fast.t > 0.0);
    const CPair b = lift_to_c(testing::kEx1Right, P);
    CHECK(b.fast.z == doctest::Approx(2.0));
    CHECK(b.fast.t == doctest::Approx(2.0));

    // The quadratic's roots are the two z values.
    const CrossingQuadratic q = c_crossing_quadratic(testing::kEx3Left, P);
    for (double z : {a.slow.z, a.fast.z}) CHECK(std::abs((q.a * z + q.b) * z + q.c) < 1e-9);
    CHECK(q.discriminant() > 0.0);

    try {
        lift_to_c({0.0, -0.5}, P);
        FAIL("expected NoIntersection");
    } catch (const WaveError& e) {
        CHECK(e.kind() == ErrorKind::NoIntersection);
    }
    try {
        lift_to_c({0.0, 0.0}, P);
        FAIL("expected Tangency");
    } catch (const WaveError& e) {
        CHECK(e.kind() == ErrorKind::Tangency);
    }
}

TEST_CASE("partner of a characteristic point") {
    ModelParams P;
    for (const ManifoldPoint& Q : {testing::kEx1Point, testing::kEx3Point, testing::kEx4Point}) {
        const ManifoldPoint R = lemma1_partner(Q.z, Q.t, P);
        CHECK(Q.t * R.t < 0.0);
        const StatePoint a = state_of(Q.z, Q.t, 0.0, P), b = state_of(R.z, R.t, 0.0, P);
        CHECK(a.u == doctest::Approx(b.u));
        CHECK(a.v == doctest::Approx(b.v));
        // Eigenvalue gap in closed form.
        const double gap = std::abs(speed(Q, P) - speed(R, P));
        CHECK(gap == doctest::Approx(P.c() * (Q.z * Q.z + 1.0) * std::abs(Q.t)));
    }
}

TEST_CASE("composite partner shares the sonic' speed") {
    for (const ModelParams& P : {ModelParams{}, skewed()}) {
        for (double z : {-2.0, -0.6, 0.25, 1.4}) {
            for (double Y : {-3.0, 0.5, 4.0}) {
                const double t = son_prime_t(z, Y, P);
                const double s = speed(z, t, P);
                CHECK(s_c2(z, Y, P) == doctest::Approx(s).epsilon(1e-12));
                CHECK(speed(z_c2(z, Y, P), t_c2(z, Y, P), P) == doctest::Approx(s).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("sonic' crossings lie on the surface") {
    ModelParams P;
    const HugoniotCurve H = hugoniot_from_state(testing::kEx1Left, P);
    const auto xs = son_prime_intersections(H);
    CHECK_FALSE(xs.empty());
    for (const SonPrimeCrossing& x : xs) {
        CHECK(std::abs(son_prime_value(x.point, P)) / surface_scale(x.point.z) < 1e-9);
        // Speed is stationary along the Hugoniot' curve through the point.
        const ManifoldPoint& q = x.point;
        const HugoniotCurve Hp(state_of(q.z, q.t, -q.Y, P), true, P);
        CHECK(std::abs(Hp.dspeed_dz(q.z)) < 1e-6 * (1.0 + std::abs(speed(q, P))));
    }
}

TEST_CASE("speed-match cubic") {
    ModelParams P;
    const StatePoint W = testing::kEx3Left;
    const double sigma = 1.25;
    const auto k = speed_match_cubic(W, sigma, P);
    const HugoniotCurve H = hugoniot_from_state(W, P);
    // Real roots by sign changes on a wide grid.
    int found = 0;
    auto poly = [&](double z) { return ((k[0] * z + k[1]) * z + k[2]) * z + k[3]; };
    for (int i = 0; i < 20000; ++i) {
        double a = -50.0 + 0.005 * i, b = a + 0.005;
        if ((poly(a) < 0.0) == (poly(b) < 0.0)) continue;
        for (int it = 0; it < 100; ++it) {
            const double m = 0.5 * (a + b);
            ((poly(m) < 0.0) == (poly(a) < 0.0) ? a : b) = m;
        }
        CHECK(H.speed_at(a) == doctest::Approx(sigma).epsilon(1e-8));
        ++found;
    }
    CHECK(found >= 1);
}

TEST_CASE("local shock arcs satisfy Lax") {
    ModelParams P;
    const WaveArc f = forward_shock_arc(testing::kEx1Point, P);
    REQUIRE(f.samples.size() > 10);
    CHECK(f.type == ArcType::H1);
    for (std::size_t i = 1; i < f.samples.size(); i += 7) {
        CHECK(lax_classify(testing::kEx1Point, f.samples[i].q, P).kind == LaxKind::Forward1);
    }
    CHECK(f.speed_end() < f.speed_begin());

    const ManifoldPoint Uf{2.0, 2.0, 0.0};
    const WaveArc b = backward_shock_arc(Uf, P);
    REQUIRE(b.samples.size() > 10);
    CHECK(b.type == ArcType::H2);
    CHECK(b.speed_end() > b.speed_begin());
    for (std::size_t i = 1; i < b.samples.size(); i += 7) {
        // The fixed state is the right state of a 2-shock.
        CHECK(lax_classify(Uf, b.samples[i].q, P).kind == LaxKind::Backward2);
    }
    REQUIRE(f.verdict);
    REQUIRE(b.verdict);
    CHECK(f.verdict->kind == LaxKind::Forward1);
    CHECK(b.verdict->kind == LaxKind::Backward2);
}

}
