#ifndef SECRATE_ERRORS_HPP
#define SECRATE_ERRORS_HPP

/*
 * Exception types shared across the library.  Every recoverable input
 * problem maps to one of these so callers (and the CLI) can translate
 * failures into stable exit codes and messages.
 */

#include <stdexcept>
#include <string>

namespace secrate {

// A numeric input is outside its legal range (negative probability,
// bias outside [0,1], and similar).
class ValueError : public std::invalid_argument {
public:
    explicit ValueError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A probability table does not sum to one within tolerance.
class NormalizationError : public std::invalid_argument {
public:
    explicit NormalizationError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A variable name is unknown or duplicated.
class NameError : public std::invalid_argument {
public:
    explicit NameError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Arguments are individually legal but mutually inconsistent
// (overlapping variable sets, mismatched dimensions, bad flag combos).
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A polyhedral computation needs a bounded region but the input is not.
class BoundednessError : public std::runtime_error {
public:
    explicit BoundednessError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation requires a specific number of variables (for example,
// planar vertex enumeration on a system that is not two-dimensional).
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A distribution does not carry the variables or structure an evaluator needs.
class ModelError : public std::invalid_argument {
public:
    explicit ModelError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A simulation configuration is invalid or exceeds enforced limits.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Text input could not be parsed; carries a 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A file could not be opened, read, or written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace secrate

#endif // SECRATE_ERRORS_HPP
