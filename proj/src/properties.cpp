#include "wavem/properties.hpp"

#include <algorithm>
#include <cmath>

#include "wavem/errors.hpp"
#include "wavem/hugoniot.hpp"
#include "wavem/integral_curves.hpp"
#include "wavem/manifold.hpp"

namespace wavem {

namespace {

double uniform(PropertyRng& rng, double lo, double hi) {
    // Built by hand so the stream is identical across standard libraries.
    const double x = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * x;
}

PropertyResult start(const char* name, double threshold) {
    PropertyResult r;
    r.name = name;
    r.threshold = threshold;
    return r;
}

void finish(PropertyResult& r) { r.pass = r.worst < r.threshold; }

void record(PropertyResult& r, double residual) {
    ++r.samples;
    if (!std::isfinite(residual)) {
        r.worst = INFINITY;
        return;
    }
    r.worst = std::max(r.worst, residual);
}

StatePoint random_hyperbolic_state(PropertyRng& rng, const ModelParams& P) {
    while (true) {
        const StatePoint W{uniform(rng, -3.0, 3.0), uniform(rng, -6.0, 6.0)};
        if (alpha2_normalized(W, P) > 1e-3) return W;
    }
}

}  // namespace

PropertyResult check_hugoniot_oracle(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("hugoniot_oracle", 1e-10);
    for (int i = 0; i < n; ++i) {
        const StatePoint W = random_hyperbolic_state(rng, P);
        const double z = uniform(rng, -10.0, 10.0);
        const auto [t, Y] = hugoniot_tY(W, z, P);
        const auto [to, Yo] = hugoniot_oracle(W, z, P);
        record(r, std::max(std::abs(t - to), std::abs(Y - Yo)) / (1.0 + std::abs(t) + std::abs(Y)));
    }
    finish(r);
    return r;
}

PropertyResult check_rankine_hugoniot(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("rankine_hugoniot", 1e-9);
    for (int i = 0; i < n; ++i) {
        const ManifoldPoint Q{uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0)};
        const StateTriple st = manifold_to_states(Q, P);
        const auto res = rh_residual(st.W, st.Wp, st.s, P);
        record(r, std::max(std::abs(res[0]), std::abs(res[1])));
    }
    finish(r);
    return r;
}

PropertyResult check_lemma1_sign(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("lemma1_sign", 0.5);
    for (int i = 0; i < n; ++i) {
        const double z0 = uniform(rng, -5.0, 5.0);
        const double t0 = uniform(rng, -5.0, 5.0);
        const ManifoldPoint Q1 = lemma1_partner(z0, t0, P);
        // 1 for a violation, 0 otherwise.
        record(r, t0 * Q1.t < 0.0 ? 0.0 : 1.0);
    }
    finish(r);
    return r;
}

PropertyResult check_lemma1_gap(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("lemma1_gap", 1e-9);
    for (int i = 0; i < n; ++i) {
        const double z0 = uniform(rng, -5.0, 5.0);
        const double t0 = uniform(rng, -5.0, 5.0);
        const ManifoldPoint Q1 = lemma1_partner(z0, t0, P);
        const double gap = std::abs(speed(z0, t0, P) - speed(Q1, P));
        record(r, std::abs(gap - P.c() * (z0 * z0 + 1.0) * std::abs(t0)) / (1.0 + gap));
    }
    finish(r);
    return r;
}

PropertyResult check_sonic_prime_speed(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("sonic_prime_speed", 1e-9);
    for (int i = 0; i < n; ++i) {
        const double z0 = uniform(rng, -3.0, 3.0);
        const double Y0 = uniform(rng, -6.0, 6.0);
        if (std::abs(z0) < 1e-3) {
            ++r.skipped;
            continue;
        }
        const ManifoldPoint Q{z0, son_prime_t(z0, Y0, P), Y0};
        const double s = speed(Q, P);
        record(r, std::abs(s_c2(z0, Y0, P) - s) / (1.0 + std::abs(s)));
    }
    finish(r);
    return r;
}

PropertyResult check_l2_closed_form(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("l2_closed_form_disagreements", 0.5);
    const double zc = 1.0 / std::sqrt(P.b1 + 1.0);
    double bad = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z0 = uniform(rng, -3.0, 3.0);
        const double Y0 = uniform(rng, -6.0, 6.0);
        if (std::abs(z0) < 1e-3 || std::abs(std::abs(z0) - zc) < 1e-6 || std::abs(Y0) < 1e-6) {
            ++r.skipped;
            continue;
        }
        const ManifoldPoint Q{z0, son_prime_t(z0, Y0, P), Y0};
        const StatePoint Wp = state_of(Q.z, Q.t, -Q.Y, P);
        if (alpha2_normalized(Wp, P) <= 1e-9) {
            ++r.skipped;
            continue;
        }
        const EigenData e = eigen(Wp, P);
        const double s = speed(Q, P);
        const bool brute = e.lambda_s < s && s < e.lambda_f;
        ++r.samples;
        if (brute != l2_holds(Q, P)) bad += 1.0;
    }
    r.worst = bad;
    finish(r);
    return r;
}

PropertyResult check_scc_on_c(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("scc_on_c", 1e-10);
    const double c = P.c();
    for (int i = 0; i < n; ++i) {
        const double z = uniform(rng, -5.0, 5.0);
        const double t = uniform(rng, -5.0, 5.0);
        const double want = 4.0 * c * c * t * t * (z * z + 1.0) * (z * z + 1.0);
        const double got = scc_value({z, t, 0.0}, P);
        record(r, std::abs(got - want) / std::max(1.0, std::abs(want)));
    }
    finish(r);
    return r;
}

PropertyResult check_hysteresis(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("hysteresis_tangency", 1e-9);
    for (int i = 0; i < n; ++i) {
        const double z = uniform(rng, -5.0, 5.0);
        const ManifoldPoint H = hysteresis_point(z, P);
        const double scale = surface_scale(z);
        const double a = std::abs(son_prime_value(H, P)) / scale;
        const double b = std::abs(scc_value(H, P)) / (scale * scale);
        record(r, std::max(a, b));
    }
    finish(r);
    return r;
}

namespace {

// Unit tangent of the projected rarefaction through (z, t) and the matching
// eigenvector of DF, by central differences of the state map.
double tangent_angle(double z, double t, const ModelParams& P) {
    const double h = 1e-6 * std::max(1.0, std::abs(z));
    const double f = rarefaction_field(z, t, P);
    const StatePoint a = state_of(z - h, t - h * f, 0.0, P);
    const StatePoint b = state_of(z + h, t + h * f, 0.0, P);
    const double du = b.u - a.u, dv = b.v - a.v;
    const StatePoint W = state_of(z, t, 0.0, P);
    const Mat2 J = jacobian(W, P);
    const double s = speed(z, t, P);
    // (J - sI) r = 0; pick the better conditioned row.
    double ru = J[0][1], rv = s - J[0][0];
    if (std::hypot(ru, rv) < std::hypot(s - J[1][1], J[1][0])) {
        ru = s - J[1][1];
        rv = J[1][0];
    }
    const double cr = du * rv - dv * ru;
    const double dt = du * ru + dv * rv;
    return std::abs(std::atan2(cr, dt) - (dt < 0.0 ? std::copysign(M_PI, cr) : 0.0));
}

}  // namespace

PropertyResult check_rarefaction_tangent(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("rarefaction_tangent_angle", 1e-6);
    for (int i = 0; i < n; ++i) {
        const double z = uniform(rng, -5.0, 5.0);
        const double t = uniform(rng, -5.0, 5.0);
        if (std::abs(t) < 1e-2) {
            ++r.skipped;
            continue;
        }
        record(r, tangent_angle(z, t, P));
    }
    finish(r);
    return r;
}

PropertyResult check_rarefaction_speed(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("characteristic_speed", 1e-8);
    for (int i = 0; i < n; ++i) {
        const double z = uniform(rng, -5.0, 5.0);
        const double t = uniform(rng, -5.0, 5.0);
        if (std::abs(t) < 1e-2) {
            ++r.skipped;
            continue;
        }
        const EigenData e = eigen(state_of(z, t, 0.0, P), P);
        const double lam = t < 0.0 ? e.lambda_s : e.lambda_f;
        const double s = speed(z, t, P);
        record(r, std::abs(lam - s) / (1.0 + std::abs(s)));
    }
    finish(r);
    return r;
}

PropertyResult check_fiber_constant(PropertyRng& rng, int n, const ModelParams& P) {
    PropertyResult r = start("fiber_constant_right_state", 1e-9);
    for (int i = 0; i < n; ++i) {
        const ManifoldPoint U{uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0), uniform(rng, -5.0, 5.0)};
        const StatePoint Wp = state_of(U.z, U.t, -U.Y, P);
        const HugoniotCurve fiber(Wp, true, P);
        const ManifoldPoint X = fiber.at(uniform(rng, -20.0, 20.0));
        const StatePoint Xp = state_of(X.z, X.t, -X.Y, P);
        record(r, std::hypot(Xp.u - Wp.u, Xp.v - Wp.v) / (1.0 + std::hypot(Wp.u, Wp.v)));
    }
    finish(r);
    return r;
}

std::vector<PropertyResult> run_property_suite(std::uint64_t seed, int n, const ModelParams& P) {
    std::vector<PropertyResult> out;
    if (n <= 0) return out;
    PropertyRng rng(seed);
    out.push_back(check_hugoniot_oracle(rng, n, P));
    out.push_back(check_rankine_hugoniot(rng, n, P));
    out.push_back(check_lemma1_sign(rng, n, P));
    out.push_back(check_lemma1_gap(rng, n, P));
    out.push_back(check_sonic_prime_speed(rng, n, P));
    out.push_back(check_l2_closed_form(rng, n, P));
    out.push_back(check_scc_on_c(rng, n, P));
    out.push_back(check_hysteresis(rng, n, P));
    out.push_back(check_rarefaction_tangent(rng, n, P));
    out.push_back(check_rarefaction_speed(rng, n, P));
    out.push_back(check_fiber_constant(rng, n, P));
    return out;
}

}  // namespace wavem
