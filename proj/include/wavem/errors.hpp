#pragma once

#include <stdexcept>
#include <string>

namespace wavem {

enum class ErrorKind {
    InvalidInput,
    EllipticState,
    TangentState,
    DegenerateDirection,
    PoleAtZero,
    AmbiguousOnSurface,
    NotOnSurface,
    NoIntersection,
    Tangency,
    Singularity,
    StartOffLocus,
    IncompatibleSequence,
};

const char* to_string(ErrorKind k);

// Single exception type for the library; callers branch on kind().
class WaveError : public std::runtime_error {
public:
    WaveError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace wavem
