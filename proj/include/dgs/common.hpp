#pragma once

#include <stdexcept>
#include <string>

namespace dgs {

enum class ErrorCode {
    parameter,
    format,
    dimension,
    stability,
    convergence,
    spectral,
    plan,
    domain,
    io,
};

/// Base error carrying a coarse category; the CLI maps categories to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& m) : Error(ErrorCode::parameter, m) {}
};
struct FormatError : Error {
    explicit FormatError(const std::string& m) : Error(ErrorCode::format, m) {}
};
struct DimensionError : Error {
    explicit DimensionError(const std::string& m) : Error(ErrorCode::dimension, m) {}
};
struct StabilityError : Error {
    explicit StabilityError(const std::string& m) : Error(ErrorCode::stability, m) {}
};
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& m) : Error(ErrorCode::convergence, m) {}
};
struct SpectralError : Error {
    explicit SpectralError(const std::string& m) : Error(ErrorCode::spectral, m) {}
};
struct PlanError : Error {
    explicit PlanError(const std::string& m) : Error(ErrorCode::plan, m) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(ErrorCode::domain, m) {}
};
struct IoError : Error {
    explicit IoError(const std::string& m) : Error(ErrorCode::io, m) {}
};

/// 17 significant digits; text round-trips to the identical double.
std::string format_double(double v);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace dgs
