#include "wavem/wave_arc.hpp"

namespace wavem {

const char* to_string(ArcType t) {
    switch (t) {
        case ArcType::H1: return "H1";
        case ArcType::H2: return "H2";
        case ArcType::R1: return "R1";
        case ArcType::R2: return "R2";
        case ArcType::C1: return "C1";
        case ArcType::C2: return "C2";
        case ArcType::NLH1: return "NLH1";
        case ArcType::NLH2: return "NLH2";
        case ArcType::HugPrime: return "HugPrime";
    }
    return "Unknown";
}

const char* to_string(StopEvent e) {
    switch (e) {
        case StopEvent::None: return "none";
        case StopEvent::Son: return "son";
        case StopEvent::Bound: return "bound";
        case StopEvent::Inflection: return "inflection";
        case StopEvent::Coincidence: return "coincidence";
        case StopEvent::Tangency: return "tangency";
        case StopEvent::DoubleContact: return "double_contact";
        case StopEvent::SpeedMatch: return "speed_match";
        case StopEvent::Singularity: return "singularity";
    }
    return "unknown";
}

}  // namespace wavem
