#pragma once

/**
 * @file errors.hpp
 * @brief Error type shared by every convexity module
 */

#include <stdexcept>
#include <string>
#include <string_view>

namespace convexity {

enum class ErrorCode {
    InvalidArgument,
    NegativeDiscriminant,
    DomainError,
    RegimeError,
    QuadratureFailure,
    CrossCheckFailure,
    SelfTestFailure,
    ZeroDerivative,
};

inline constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::NegativeDiscriminant: return "negative_discriminant";
        case ErrorCode::DomainError: return "domain_error";
        case ErrorCode::RegimeError: return "regime_error";
        case ErrorCode::QuadratureFailure: return "quadrature_failure";
        case ErrorCode::CrossCheckFailure: return "crosscheck_failure";
        case ErrorCode::SelfTestFailure: return "selftest_failure";
        case ErrorCode::ZeroDerivative: return "zero_derivative";
    }
    return "unknown";
}

/// Parameter problems (bad input) as opposed to numerical breakdowns.
inline constexpr bool is_parameter_error(ErrorCode code) {
    return code == ErrorCode::InvalidArgument || code == ErrorCode::NegativeDiscriminant ||
           code == ErrorCode::DomainError || code == ErrorCode::RegimeError;
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace convexity
