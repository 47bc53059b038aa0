#include "wavem/errors.hpp"

namespace wavem {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::EllipticState: return "EllipticState";
        case ErrorKind::TangentState: return "TangentState";
        case ErrorKind::DegenerateDirection: return "DegenerateDirection";
        case ErrorKind::PoleAtZero: return "PoleAtZero";
        case ErrorKind::AmbiguousOnSurface: return "AmbiguousOnSurface";
        case ErrorKind::NotOnSurface: return "NotOnSurface";
        case ErrorKind::NoIntersection: return "NoIntersection";
        case ErrorKind::Tangency: return "Tangency";
        case ErrorKind::Singularity: return "Singularity";
        case ErrorKind::StartOffLocus: return "StartOffLocus";
        case ErrorKind::IncompatibleSequence: return "IncompatibleSequence";
    }
    return "Unknown";
}

}  // namespace wavem
