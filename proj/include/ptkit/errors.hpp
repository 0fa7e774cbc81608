// errors.hpp — exception types shared across the toolkit
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptkit {

// Dimension or precondition violation on a matrix operation.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// |det| fell below the scale-aware singularity threshold.
struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iterative eigensolver exceeded its sweep cap.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// C-operator normalization sqrt(a^2 - b^2) is unusable: a^2 == b^2 within tolerance.
struct ExceptionalPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Expression syntax error; offset is the byte position in the source text.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t offset_)
        : std::runtime_error(msg), offset(offset_) {}
    std::size_t offset;
};

// Template file format or validation error; line is 1-based, 0 = whole file.
struct TemplateFormatError : std::runtime_error {
    explicit TemplateFormatError(const std::string& msg, std::size_t line_ = 0)
        : std::runtime_error(msg), line(line_) {}
    std::size_t line;
};

// Expression evaluation failure (division by zero, missing parameter, non-finite value).
struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Failure while evaluating a sweep grid point; index locates the point.
struct SweepError : std::runtime_error {
    SweepError(const std::string& msg, std::size_t index_)
        : std::runtime_error(msg), index(index_) {}
    std::size_t index;
};

}  // namespace ptkit
