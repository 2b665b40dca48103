#include "ofldg/error.hpp"

namespace ofldg {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidDomain: return "invalid-domain";
    case ErrorCode::TooFewCells: return "too-few-cells";
    case ErrorCode::UnsupportedOrder: return "unsupported-order";
    case ErrorCode::DegreeOutOfRange: return "degree-out-of-range";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::ZeroDenominator: return "zero-denominator";
    case ErrorCode::NonFiniteState: return "non-finite-state";
    case ErrorCode::MissingExactSolution: return "missing-exact-solution";
    case ErrorCode::ConfigParse: return "config-parse";
    }
    return "unknown";
}

} // namespace ofldg
