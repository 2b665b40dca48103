#pragma once

#include <stdexcept>
#include <string>

namespace ofldg {

enum class ErrorCode {
    InvalidDomain,
    TooFewCells,
    UnsupportedOrder,
    DegreeOutOfRange,
    InvalidArgument,
    ZeroDenominator,
    NonFiniteState,
    MissingExactSolution,
    ConfigParse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ofldg
