#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wavem/flux_model.hpp"
#include "wavem/manifold.hpp"

namespace wavem {

enum class ArcType {
    H1,        // local forward shock from the left datum
    H2,        // local backward (2-reverse) shock from the right datum
    R1,        // forward slow rarefaction
    R2,        // backward fast rarefaction
    C1,        // forward composite on the slow sonic' sheet
    C2,        // backward composite on the fast sonic' sheet
    NLH1,      // non-local forward shock continuing a composite
    NLH2,      // non-local backward shock continuing a composite
    HugPrime,  // speed-preserving jump from the double contact back to C
};
const char* to_string(ArcType t);

enum class StopEvent {
    None,
    Son,
    Bound,
    Inflection,
    Coincidence,
    Tangency,
    DoubleContact,
    SpeedMatch,
    Singularity,
};
const char* to_string(StopEvent e);

enum class LaxKind { Forward1, Backward2, Inadmissible };
const char* to_string(LaxKind k);

struct LaxVerdict {
    LaxKind kind = LaxKind::Inadmissible;
    ManifoldPoint checked_at;
    std::map<std::string, bool> conditions;
};

// One sample of a wave arc. For composite arcs `link` is the rarefaction
// point with the same speed; for every other arc it equals `q`.
struct ArcSample {
    ManifoldPoint q;
    double s = 0.0;
    ManifoldPoint link;
};

struct WaveArc {
    ArcType type = ArcType::H1;
    // Fixed left state of shock arcs (the Hugoniot base); unused otherwise.
    StatePoint base;
    std::vector<ArcSample> samples;
    StopEvent stop = StopEvent::None;
    bool complete = true;
    std::optional<LaxVerdict> verdict;

    bool empty() const noexcept { return samples.empty(); }
    double speed_begin() const { return samples.front().s; }
    double speed_end() const { return samples.back().s; }
};

}  // namespace wavem
