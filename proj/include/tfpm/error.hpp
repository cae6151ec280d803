#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tfpm {

enum class ErrorKind {
    InvalidParameter,
    Domain,
    InvalidTechnology,
    InvalidShift,
    NoConvergence,
    NoInteriorMpss,
    ZeroQuantity,
    LengthMismatch,
    AlreadyEfficient,
    NonDominatedPrices,
    MarkupNotReduced,
    ScenarioMismatch,
    ZeroDeflator,
    NonpositiveLevel,
    MissingBaseYear,
    YearGap,
    Schema,
    Parse,
    Io,
};

std::string_view to_string(ErrorKind kind);

// Input-side errors map to exit status 1, solver failures to 2.
bool is_internal(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace tfpm
