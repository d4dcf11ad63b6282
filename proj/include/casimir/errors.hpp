#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the quantity being evaluated.
class DomainError : public Error {
public:
  using Error::Error;
};

/// The requested field point sits on (or numerically too close to) an
/// interface where the renormalized expectation values diverge.
class DivergesAtBoundary : public Error {
public:
  using Error::Error;
};

/// Decay scale handed to the quadrature engine was not strictly positive.
class InvalidDecayScale : public Error {
public:
  using Error::Error;
};

/// A bracketing root search was given a bracket without a sign change.
class NoSignChange : public Error {
public:
  using Error::Error;
};

/// The requested check is undefined for the given model (e.g. a ratio with a
/// vanishing denominator).
class NotApplicable : public Error {
public:
  using Error::Error;
};

}  // namespace casimir
