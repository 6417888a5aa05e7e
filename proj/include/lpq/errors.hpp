#pragma once

#include <stdexcept>
#include <string>

namespace lpq {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class UnsupportedDomain : public Error { using Error::Error; };
class InvalidResolution : public Error { using Error::Error; };
class DimensionOutOfRange : public Error { using Error::Error; };
class ExponentOutOfRange : public Error { using Error::Error; };
class InvalidRadius : public Error { using Error::Error; };
class ZeroField : public Error { using Error::Error; };
class QuadratureError : public Error { using Error::Error; };
class ArgumentOutOfRange : public Error { using Error::Error; };
class NoBracket : public Error { using Error::Error; };
class VolumeMismatch : public Error { using Error::Error; };
class SubcriticalityViolated : public Error { using Error::Error; };
class SupercriticalPair : public Error { using Error::Error; };
class AlphaBetaProductOne : public Error { using Error::Error; };
class DomainMismatch : public Error { using Error::Error; };
class ParseError : public Error { using Error::Error; };
class ConfigInvalid : public Error { using Error::Error; };

/// Thrown by the iterative Poisson backend when the residual target is not
/// reached within the iteration budget. Carries the last relative residual.
class SolverDiverged : public Error {
public:
    SolverDiverged(const std::string& what, double last_residual)
        : Error(what), last_residual_(last_residual) {}
    double last_residual() const { return last_residual_; }

private:
    double last_residual_;
};

} // namespace lpq
