#include <doctest.h>

#include <cmath>

#include "wavem/errors.hpp"
#include "wavem/flux_model.hpp"
#include "test_support.hpp"

using namespace wavem;

TEST_SUITE("flux_model") {

TEST_CASE("default parameters") {
    ModelParams P;
    CHECK(P.c() == doctest::Approx(1.0));
    CHECK(P.kappa() == 0.0);
    CHECK_NOTHROW(P.validate());
}

TEST_CASE("validate rejects degenerate coefficients") {
    ModelParams P;
    P.b1 = 1.0;
    CHECK_THROWS_AS(P.validate(), WaveError);
    P = ModelParams{};
    P.a2 = 1.0;  // c = 0
    try {
        P.validate();
        FAIL("expected InvalidInput");
    } catch (const WaveError& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
    P = ModelParams{};
    P.a1 = NAN;
    CHECK_THROWS_AS(P.validate(), WaveError);
}

TEST_CASE("jacobian matches finite differences of the flux") {
    ModelParams P;
    P.a1 = 0.3;
    P.a2 = -0.2;
    P.a4 = 0.4;
    const StatePoint W{0.7, -1.3};
    const Mat2 J = jacobian(W, P);
    const double h = 1e-6;
    const auto fu1 = flux({W.u + h, W.v}, P), fu0 = flux({W.u - h, W.v}, P);
    const auto fv1 = flux({W.u, W.v + h}, P), fv0 = flux({W.u, W.v - h}, P);
    for (int i = 0; i < 2; ++i) {
        CHECK(J[i][0] == doctest::Approx((fu1[i] - fu0[i]) / (2 * h)).epsilon(1e-8));
        CHECK(J[i][1] == doctest::Approx((fv1[i] - fv0[i]) / (2 * h)).epsilon(1e-8));
    }
}

TEST_CASE("eigenvalues solve the characteristic polynomial") {
    ModelParams P;
    const EigenData e = eigen(testing::kEx3Left, P);
    REQUIRE(e.real);
    CHECK(e.lambda_s < e.lambda_f);
    const Mat2 J = jacobian(testing::kEx3Left, P);
    for (double lam : {e.lambda_s, e.lambda_f}) {
        const double det = (J[0][0] - lam) * (J[1][1] - lam) - J[0][1] * J[1][0];
        CHECK(std::abs(det) < 1e-9);
    }
}

TEST_CASE("state classification") {
    ModelParams P;
    CHECK(classify_state({0.0, -0.5}, P) == RegionClass::Elliptic);
    CHECK(classify_state({0.0, 0.0}, P) == RegionClass::Boundary);
    CHECK(classify_state(testing::kEx1Left, P) == RegionClass::Hyperbolic);
    CHECK(classify_state(testing::kEx4Right, P) == RegionClass::Hyperbolic);
    CHECK(std::string(to_string(RegionClass::Elliptic)) == "Elliptic");
}

TEST_CASE("ellipse points sit on the boundary of the elliptic region") {
    ModelParams P;
    P.a1 = 0.25;
    P.a3 = 2.0;
    P.a4 = -0.1;
    for (const StatePoint& W : coincidence_ellipse(P, 64)) {
        CHECK(std::abs(alpha2_normalized(W, P)) < 1e-12);
    }
    CHECK_THROWS_AS(coincidence_ellipse(P, 2), WaveError);
}

TEST_CASE("rh residual vanishes for equal states") {
    const auto r = rh_residual({1.0, 2.0}, {1.0, 2.0}, 5.0, ModelParams{});
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 0.0);
}

}
