#include "parampstat/error.hpp"

namespace parampstat
{

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code)
    {
    case ErrorCode::OutOfStabilityRange: return "OutOfStabilityRange";
    case ErrorCode::NonPositiveCoupling: return "NonPositiveCoupling";
    case ErrorCode::NonPositivePower: return "NonPositivePower";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::NonFiniteIntegrand: return "NonFiniteIntegrand";
    case ErrorCode::NotEven: return "NotEven";
    case ErrorCode::FilterExceedsBand: return "FilterExceedsBand";
    case ErrorCode::TailNotConverged: return "TailNotConverged";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::CutoffInsufficient: return "CutoffInsufficient";
    case ErrorCode::OrderUnsupported: return "OrderUnsupported";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::OutputIO: return "OutputIO";
    }
    return "Unknown";
}

bool is_numerical_failure(ErrorCode code) noexcept
{
    return code == ErrorCode::ToleranceNotMet || code == ErrorCode::TailNotConverged ||
           code == ErrorCode::NonFiniteIntegrand || code == ErrorCode::CutoffInsufficient;
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

} // namespace parampstat
