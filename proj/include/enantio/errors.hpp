#pragma once

#include <stdexcept>
#include <string>

namespace enantio {

// Base of all library errors. The CLI maps each family to an exit code.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Invalid parameters or inputs (exit code 1).
class ValidationError : public Error
{
  public:
    using Error::Error;
};

// Singular systems, divergence, non-convergence (exit code 2).
class NumericalError : public Error
{
  public:
    using Error::Error;
};

class SingularMatrixError : public NumericalError
{
  public:
    SingularMatrixError(const std::string& what, double condition)
        : NumericalError(what), condition_(condition)
    {
    }

    // 1-norm condition estimate; +inf for an exactly zero pivot.
    double condition() const noexcept { return condition_; }

  private:
    double condition_;
};

class ConvergenceError : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

// Unreadable/unwritable files (exit code 3).
class IoError : public Error
{
  public:
    using Error::Error;
};

}  // namespace enantio
