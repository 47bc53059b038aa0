#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wavem/flux_model.hpp"

namespace wavem {

// Outcome of one randomized invariant check. `worst` is the largest residual
// seen over the samples; the check passes when it stays below `threshold`.
struct PropertyResult {
    std::string name;
    int samples = 0;
    int skipped = 0;
    double worst = 0.0;
    double threshold = 0.0;
    bool pass = true;
};

using PropertyRng = std::mt19937_64;

PropertyResult check_hugoniot_oracle(PropertyRng& rng, int n, const ModelParams& P);
PropertyResult check_rankine_hugoniot(PropertyRng& rng, int n, const ModelParams& P);
// Opposite signs of t at the two characteristic points of one state, and the
// closed-form eigenvalue gap.
PropertyResult check_lemma1_sign(PropertyRng& rng, int n, const ModelParams& P);
PropertyResult check_lemma1_gap(PropertyRng& rng, int n, const ModelParams& P);
PropertyResult check_sonic_prime_speed(PropertyRng& rng, int n, const ModelParams& P);
// Disagreements between the closed-form L2 test and the speed sandwich.
PropertyResult check_l2_closed_form(PropertyRng& rng, int n, const ModelParams& P);
PropertyResult check_scc_on_c(PropertyRng& rng, int n, const ModelParams& P);
PropertyResult check_hysteresis(PropertyRng& rng, int n, const ModelParams& P);
PropertyResult check_rarefaction_tangent(PropertyRng& rng, int n, const ModelParams& P);
PropertyResult check_rarefaction_speed(PropertyRng& rng, int n, const ModelParams& P);
PropertyResult check_fiber_constant(PropertyRng& rng, int n, const ModelParams& P);

// Every check above, in a fixed order, drawing from one generator seeded with `seed`.
std::vector<PropertyResult> run_property_suite(std::uint64_t seed, int n, const ModelParams& P);

}  // namespace wavem
