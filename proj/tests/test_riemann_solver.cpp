#include <doctest.h>

#include <cmath>
#include <fstream>
#include <string>

#include <json.hpp>

#include "wavem/errors.hpp"
#include "wavem/riemann_solver.hpp"
#include "test_support.hpp"

using namespace wavem;

namespace {

std::vector<std::string> names(const RiemannSolution& s) {
    std::vector<std::string> out;
    for (WaveType t : wave_types(s)) out.emplace_back(to_string(t));
    return out;
}

void check_admissible(const RiemannSolution& s) {
    CHECK(s.compatible);
    CHECK(s.failures.empty());
    for (std::size_t i = 0; i < s.waves.size(); ++i) {
        const Wave& w = s.waves[i];
        if (i > 0) CHECK(s.waves[i - 1].speed_to <= w.speed_from + 1e-9 * (1.0 + std::abs(w.speed_from)));
        if (i > 0) {
            CHECK(s.waves[i - 1].to.u == doctest::Approx(w.from.u).epsilon(1e-12));
            CHECK(s.waves[i - 1].to.v == doctest::Approx(w.from.v).epsilon(1e-12));
        }
        if (is_shock(w.type)) {
            REQUIRE(w.lax);
            CHECK(w.lax->kind == (family(w.type) == 1 ? LaxKind::Forward1 : LaxKind::Backward2));
            CHECK(w.rh < 1e-8);
            CHECK(w.speed_from == w.speed_to);
        } else {
            CHECK(w.speed_from <= w.speed_to);
            CHECK(w.samples.size() >= 2);
        }
    }
    CHECK(s.waves.front().from.u == doctest::Approx(s.left.u).epsilon(1e-12));
    CHECK(s.waves.back().to.v == doctest::Approx(s.right.v).epsilon(1e-12));
}

}  // namespace

TEST_SUITE("riemann_solver") {

TEST_CASE("lifting data states") {
    ModelParams P;
    const LiftResult L = lift_state(testing::kEx3Left, P);
    CHECK(L.Us.z == doctest::Approx(-1.0));
    CHECK(L.Uf.z == doctest::Approx(7.0 / 9.0));
    try {
        lift_state({0.0, -0.5}, P);
        FAIL("expected EllipticState");
    } catch (const WaveError& e) {
        CHECK(e.kind() == ErrorKind::EllipticState);
    }
    try {
        lift_state({0.0, 0.0}, P);
        FAIL("expected TangentState");
    } catch (const WaveError& e) {
        CHECK(e.kind() == ErrorKind::TangentState);
    }
}

TEST_CASE("wave type names") {
    CHECK(std::string(to_string(WaveType::C2Shock)) == "C2-shock");
    CHECK(wave_type_from_string("C1") == WaveType::C1Shock);
    CHECK(wave_type_from_string("C2-shock") == WaveType::C2Shock);
    CHECK(wave_type_from_string("S2") == WaveType::S2);
    CHECK_FALSE(wave_type_from_string("S3"));
    CHECK(family(WaveType::C1Shock) == 1);
    CHECK_FALSE(is_shock(WaveType::R2));
}

TEST_CASE("first example") {
    const RiemannSolution s = solve(testing::kEx1Left, testing::kEx1Right, ModelParams{});
    CHECK(names(s) == std::vector<std::string>{"S1", "C2-shock", "R2"});
    CHECK(s.forward_arc == "H1");
    CHECK(s.backward_arc == "C2");
    check_admissible(s);
    CHECK(s.waves[0].speed_from == doctest::Approx(-4.24799728596).epsilon(1e-9));
    // The characteristic shock travels at the fast eigenvalue of its right state.
    const Wave& c = s.waves[1];
    CHECK(c.speed_from == doctest::Approx(eigen(c.to, ModelParams{}).lambda_f).epsilon(1e-9));
}

TEST_CASE("first example, second right state") {
    const RiemannSolution s = solve(testing::kEx1Left, testing::kEx1RightAlt, ModelParams{});
    CHECK(names(s) == std::vector<std::string>{"S1", "R2"});
    check_admissible(s);
}

TEST_CASE("third example") {
    const RiemannSolution s = solve(testing::kEx3Left, testing::kEx3Right, ModelParams{});
    CHECK(names(s) == std::vector<std::string>{"S1", "R2"});
    check_admissible(s);
}

TEST_CASE("fourth example") {
    const RiemannSolution s = solve(testing::kEx4Left, testing::kEx4Right, ModelParams{});
    CHECK(names(s) == std::vector<std::string>{"R1", "C1-shock", "R2"});
    check_admissible(s);
    // The characteristic shock leaves at the slow eigenvalue of its left state.
    const Wave& c = s.waves[1];
    CHECK(c.speed_from == doctest::Approx(eigen(c.from, ModelParams{}).lambda_s).epsilon(1e-9));
}

TEST_CASE("regression baseline") {
    std::ifstream in(std::string(WAVEM_TEST_DATA_DIR) + "/riemann_baseline.json");
    REQUIRE(in.good());
    const nlohmann::json base = nlohmann::json::parse(in);
    const double tol = base.at("tolerance").get<double>();
    ModelParams P;
    for (const auto& [name, c] : base.at("cases").items()) {
        CAPTURE(name);
        const StatePoint L{c["left"][0].get<double>(), c["left"][1].get<double>()};
        const StatePoint R{c["right"][0].get<double>(), c["right"][1].get<double>()};
        const RiemannSolution s = solve(L, R, P);
        CHECK(names(s) == c["waves"].get<std::vector<std::string>>());
        REQUIRE(s.middle_states.size() == c["middle_states"].size());
        for (std::size_t i = 0; i < s.middle_states.size(); ++i) {
            CHECK(std::abs(s.middle_states[i].u - c["middle_states"][i][0].get<double>()) < tol);
            CHECK(std::abs(s.middle_states[i].v - c["middle_states"][i][1].get<double>()) < tol);
        }
    }
}

TEST_CASE("equal data gives no waves") {
    const RiemannSolution s = solve(testing::kEx3Left, testing::kEx3Left, ModelParams{});
    CHECK(s.waves.empty());
    CHECK(s.middle_states.empty());
    CHECK(s.compatible);
}

TEST_CASE("data inside the ellipse is rejected") {
    try {
        solve({0.0, -0.5}, testing::kEx1Right, ModelParams{});
        FAIL("expected EllipticState");
    } catch (const WaveError& e) {
        CHECK(e.kind() == ErrorKind::EllipticState);
    }
}

TEST_CASE("continuity around the fourth example") {
    const ContinuityReport r = continuity_probe(testing::kEx4Left, testing::kEx4Right, 1e-4, 6, ModelParams{}, 3);
    CHECK(r.trials == 6);
    CHECK_FALSE(r.sequence_changed);
    CHECK(r.solve_failures == 0);
    CHECK(r.ratio < 100.0);
    const ContinuityReport z = continuity_probe(testing::kEx4Left, testing::kEx4Right, 0.0, 2, ModelParams{}, 3);
    CHECK(z.max_displacement == 0.0);
}

}
