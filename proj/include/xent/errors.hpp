#pragma once

#include <stdexcept>
#include <string>

namespace xent {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Descriptor parameters violate a family's parameter-domain constraints.
class InvalidParameters : public Error {
public:
    using Error::Error;
};

/// Evaluation point lies outside the distribution's support.
class PointOutsideSupport : public Error {
public:
    using Error::Error;
};

/// The two descriptors are not of the same family (or differ in a parameter
/// that must be shared across the pair).
class FamilyMismatch : public Error {
public:
    using Error::Error;
};

/// f1's support is not contained in f2's.
class SupportMismatch : public Error {
public:
    using Error::Error;
};

/// A measure is undefined/infinite for the requested inputs. Base for the
/// closed-form and generic-engine domain errors so callers can catch both.
class MeasureUndefined : public Error {
public:
    using Error::Error;
};

/// A positivity (or positive-definiteness) constraint attached to a closed
/// form failed; carries the constraint name and its offending value.
class ConstraintViolated : public MeasureUndefined {
public:
    ConstraintViolated(std::string name, double value)
        : MeasureUndefined("constraint violated: " + name +
                           " (value = " + std::to_string(value) + ")"),
          name_(std::move(name)),
          value_(value) {}

    const std::string& name() const noexcept { return name_; }
    double value() const noexcept { return value_; }

private:
    std::string name_;
    double value_;
};

/// A mixed natural parameter fell outside the family's natural-parameter
/// domain (the generic-engine equivalent of a table constraint failing).
class NaturalParamOutOfDomain : public MeasureUndefined {
public:
    using MeasureUndefined::MeasureUndefined;
};

/// Adaptive quadrature exhausted its subdivision budget without meeting the
/// requested tolerances.
class NonConvergent : public Error {
public:
    using Error::Error;
};

/// The integral was detected as unbounded.
class DivergentIntegral : public Error {
public:
    using Error::Error;
};

/// Monte Carlo budget or enumeration budget exceeded.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A matrix expected to be symmetric positive definite failed to factor.
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// Markov transition matrix Q must have strictly positive entries.
class QNotPositive : public Error {
public:
    using Error::Error;
};

/// Initial distribution vectors must have strictly positive entries.
class InitialNotPositive : public Error {
public:
    using Error::Error;
};

/// The chain has more than one essential class, so the stationary
/// distribution is not unique.
class NonUniqueStationary : public Error {
public:
    using Error::Error;
};

/// lambda() of the all-zero matrix is not defined.
class ZeroMatrix : public Error {
public:
    using Error::Error;
};

/// Textual spec (distribution, spectral density, matrix file) failed to parse.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace xent
