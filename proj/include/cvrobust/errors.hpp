#pragma once

#include <stdexcept>
#include <string>

namespace cvrobust {

struct CutoffTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalHealthViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TargetUnreachable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPhysicalCM : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NeverSeparates : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoSeparationFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnergyMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cvrobust
