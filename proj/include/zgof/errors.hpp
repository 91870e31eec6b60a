#pragma once

#include <stdexcept>
#include <string>

namespace zgof {

/// Argument outside the domain of a function or distribution family.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A series, iteration or quadrature did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every observation equals 1: the likelihood increases without bound in s.
class DegenerateSample : public std::runtime_error {
public:
    DegenerateSample() : std::runtime_error("degenerate sample: all observations equal 1, no finite MLE") {}
    using std::runtime_error::runtime_error;
};

/// The MLE root lies beyond the largest admissible shape parameter.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace zgof
