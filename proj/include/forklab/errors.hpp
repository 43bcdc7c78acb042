#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forklab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// 1-based position in a source text.
struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t length = 1;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, SourceSpan span)
        : Error(std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + msg),
          span_(span) {}
    const SourceSpan& span() const noexcept { return span_; }

private:
    SourceSpan span_;
};

/// Raised when an enumeration entry point is handed an alphabet past its size guard.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Precondition violations on arguments (invalid selections, base mismatches, bad configs...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

} // namespace forklab
