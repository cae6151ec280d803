#include "tfpm/error.hpp"

namespace tfpm {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::InvalidTechnology: return "invalid-technology";
    case ErrorKind::InvalidShift: return "invalid-shift";
    case ErrorKind::NoConvergence: return "no-convergence";
    case ErrorKind::NoInteriorMpss: return "no-interior-mpss";
    case ErrorKind::ZeroQuantity: return "zero-quantity";
    case ErrorKind::LengthMismatch: return "length-mismatch";
    case ErrorKind::AlreadyEfficient: return "already-efficient";
    case ErrorKind::NonDominatedPrices: return "non-dominated-prices";
    case ErrorKind::MarkupNotReduced: return "markup-not-reduced";
    case ErrorKind::ScenarioMismatch: return "scenario-mismatch";
    case ErrorKind::ZeroDeflator: return "zero-deflator";
    case ErrorKind::NonpositiveLevel: return "nonpositive-level";
    case ErrorKind::MissingBaseYear: return "missing-base-year";
    case ErrorKind::YearGap: return "year-gap";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

bool is_internal(ErrorKind kind)
{
    return kind == ErrorKind::NoConvergence;
}

}  // namespace tfpm
