#ifndef SECLAT_ERROR_HPP
#define SECLAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace seclat {

enum class ErrorKind {
    InvalidArgument,
    TruncationInsufficient,
    DimensionMismatch,
    SearchTooLarge,
    NotIntegral,
    GlueNotClosed,
    IndexMismatch,
    IncompatibleScale,
    NoRecipe,
    UnknownName,
    ParseError,
    InvariantViolation,
    TooLarge,
    NonIntegerSolution,
    ZeroDenominator,
    EmptyDimension,
    BadIndex,
    TailTooLarge,
    NotSelfDual,
    NotNested,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (and the CLI exit-status mapping) can dispatch without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace seclat

#endif
