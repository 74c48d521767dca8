#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace finfree {

// Precondition on an argument violated (bad degree, parameter outside a domain).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Root finder saw a complex pair that does not project onto a real root.
class NotRealRootedError : public std::runtime_error {
public:
    NotRealRootedError(const std::string& what, double re, double im)
        : std::runtime_error(what), re_(re), im_(im) {}
    double real_part() const { return re_; }
    double imag_part() const { return im_; }

private:
    double re_;
    double im_;
};

// A polynomial required to have nonnegative roots has a negative one.
class NegativeRootError : public DomainError {
public:
    using DomainError::DomainError;
};

// Iteration cap reached; carries relative residuals of every approximation.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> residuals)
        : std::runtime_error(what), residuals_(std::move(residuals)) {}
    const std::vector<double>& residuals() const { return residuals_; }

private:
    std::vector<double> residuals_;
};

}  // namespace finfree
