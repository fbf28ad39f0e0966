#pragma once

#include <stdexcept>
#include <string>

namespace tensym {

/// Shape or dimension mismatch in an operation's inputs.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Semantic violation: zero factor, singular matrix, non-fixing map, bad file contents.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (rational literals, algorithm files).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Checked integer ring overflow. Never wraps silently.
class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

/// Group closure exceeded its element cap (generators likely wrong).
class ClosureCapError : public std::runtime_error {
public:
    explicit ClosureCapError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tensym
