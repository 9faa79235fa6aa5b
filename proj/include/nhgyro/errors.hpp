#ifndef NHGYRO_ERRORS_HPP
#define NHGYRO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nhgyro {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The evaluation point is rejected by the chart's domain guard (or the
/// frame matrix is numerically singular there).
struct SingularChart : Error {
    using Error::Error;
};

struct LinearSolveFailure : Error {
    using Error::Error;
};

struct InvalidParams : Error {
    using Error::Error;
};

struct StepTooSmall : Error {
    using Error::Error;
};

struct NonpositiveFactor : Error {
    using Error::Error;
};

struct OffSphere : Error {
    using Error::Error;
};

struct PoleSingular : Error {
    using Error::Error;
};

struct DegenerateDenominator : Error {
    using Error::Error;
};

}  // namespace nhgyro

#endif
