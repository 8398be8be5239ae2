#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace parampstat
{

enum class ErrorCode
{
    OutOfStabilityRange,
    NonPositiveCoupling,
    NonPositivePower,
    InvalidArgument,
    ToleranceNotMet,
    NonFiniteIntegrand,
    NotEven,
    FilterExceedsBand,
    TailNotConverged,
    ZeroMean,
    CutoffInsufficient,
    OrderUnsupported,
    ConfigParse,
    OutputIO,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for failures of the numerical machinery (as opposed to bad input or I/O).
bool is_numerical_failure(ErrorCode code) noexcept;

class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace parampstat
