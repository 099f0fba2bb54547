#pragma once

#include <stdexcept>
#include <string>

namespace rhosharp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scalar / expression layer.
struct NotInvertibleError : Error {
    using Error::Error;
};
struct SyntaxError : Error {
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"), pos(position) {}
    std::size_t pos;
};
struct NonRepresentableError : Error {
    using Error::Error;
};

// Sets.
struct DegenerateShapeError : Error {
    using Error::Error;
};
struct ShapePairUnsupportedError : Error {
    using Error::Error;
};

// Functions / series.
struct OutOfDomainError : Error {
    using Error::Error;
};
struct RangeViolationError : Error {
    using Error::Error;
};
struct UnsupportedOperationError : Error {
    using Error::Error;
};
struct ConstantTermNotZeroError : Error {
    using Error::Error;
};
struct RadiusTooSmallError : Error {
    using Error::Error;
};
struct NotConvergedError : Error {
    using Error::Error;
};
struct NotEntireError : Error {
    using Error::Error;
};

// Divergence evidence attached to a rejected summation point: the term
// valuations refuse to climb, so partial sums cannot settle.
struct NotInRadiusError : Error {
    NotInRadiusError(const std::string& what, std::string certificate_)
        : Error(what), certificate(std::move(certificate_)) {}
    std::string certificate;
};

// Contours.
struct DomainViolationError : Error {
    using Error::Error;
};
struct PointNotWellInsideError : Error {
    using Error::Error;
};
struct OutOfParameterError : Error {
    using Error::Error;
};
// Node-doubling disagreement: the fixed node count cannot resolve the
// integrand; carries the error estimate in the message.
struct QuadratureUnstableError : Error {
    using Error::Error;
};
struct HomotopyLeavesDomainError : Error {
    using Error::Error;
};

}  // namespace rhosharp
