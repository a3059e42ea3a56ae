#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hslpp {

// Invalid model or numerical parameters.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Index or scaling-window violations.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Exhaustive oracles refuse inputs beyond their size guard.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : NumericalError {
    ConvergenceError(const std::string& what, std::complex<double> prev, std::complex<double> last)
        : NumericalError(what), previous(prev), latest(last) {}
    std::complex<double> previous;
    std::complex<double> latest;
};

struct TruncationError : NumericalError {
    TruncationError(const std::string& what, double bound) : NumericalError(what), tail_bound(bound) {}
    double tail_bound;
};

// Evaluation too close to a pole or on a branch cut.
struct SingularEvaluation : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace hslpp
