// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Division by a Scalar that is identically zero.
struct ZeroDivisor : Error {
    ZeroDivisor() : Error("zero divisor") {}
};

// Exact evaluation hit a zero of a denominator; callers resample.
struct PoleError : Error {
    PoleError() : Error("evaluation pole") {}
};

// Operands built over different charts.
struct ChartMismatch : Error {
    explicit ChartMismatch(const std::string& detail)
        : Error("chart mismatch: " + detail) {}
};

// An operation received an input of the wrong (or indefinite) degree.
struct DegreeError : Error {
    explicit DegreeError(const std::string& detail)
        : Error("degree error: " + detail) {}
};

struct ParseError : Error {
    ParseError(const std::string& detail, std::size_t position)
        : Error("parse error at " + std::to_string(position) + ": " + detail),
          pos(position) {}
    std::size_t pos;
};

}  // namespace koszul
