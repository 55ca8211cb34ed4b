#pragma once

#include <stdexcept>
#include <string>

namespace dfie {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-range argument (e.g. Im z < 0 for Bessel tables).
class DomainError : public Error {
public:
    using Error::Error;
};

/// z = 0 where a Hankel function is requested.
class SingularArgumentError : public Error {
public:
    using Error::Error;
};

/// A medium violating passivity; `parameter()` names the offending field.
class InvalidMaterialError : public Error {
public:
    InvalidMaterialError(std::string parameter, const std::string& what)
        : Error(parameter + ": " + what), parameter_(std::move(parameter)) {}
    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

/// Requested operation is not defined for this formulation/frequency.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// The quadrature oracle failed to settle when extrapolating to the surface.
class OracleDivergenceError : public Error {
public:
    using Error::Error;
};

/// Parse failure in a config or point file; `line()` is 1-based, 0 if unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Per-degree block too close to singular to solve.
class NearSingularError : public Error {
public:
    NearSingularError(std::string formulation, int degree, double omega, double ratio)
        : Error("near-singular block: formulation=" + formulation + " n=" + std::to_string(degree) +
                " omega=" + std::to_string(omega) + " smin/smax=" + std::to_string(ratio)),
          formulation_(std::move(formulation)), degree_(degree), omega_(omega) {}
    const std::string& formulation() const noexcept { return formulation_; }
    int degree() const noexcept { return degree_; }
    double omega() const noexcept { return omega_; }

private:
    std::string formulation_;
    int degree_;
    double omega_;
};

}  // namespace dfie
