#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace tisplit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The computation itself failed or the input is numerically unusable
/// (singular where nonsingular is required, SVD non-convergence, residual blow-up).
class NumericError : public Error {
public:
    using Error::Error;
};

class RankDeficientError : public NumericError {
public:
    RankDeficientError(const std::string& what, double sigma_min)
        : NumericError(what), sigma_min_(sigma_min) {}

    double sigma_min() const noexcept { return sigma_min_; }

private:
    double sigma_min_;
};

class ConvergenceError : public NumericError {
public:
    using NumericError::NumericError;
};

/// The input violates a mathematical precondition of the requested operation.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ShapeError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// A matrix square root was requested for a spectrum touching the closed
/// negative real axis.
class BranchCutError : public PreconditionError {
public:
    BranchCutError(const std::string& what, std::complex<double> eigenvalue)
        : PreconditionError(what), eigenvalue_(eigenvalue) {}

    std::complex<double> eigenvalue() const noexcept { return eigenvalue_; }

private:
    std::complex<double> eigenvalue_;
};

/// No real solution exists (e.g. e + 1/e = d with d < 2).
class InfeasibleError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class IoError : public Error {
public:
    IoError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(locate(what, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string locate(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        std::string out = "line " + std::to_string(line);
        if (column != 0) out += ", column " + std::to_string(column);
        return out + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

}  // namespace tisplit
