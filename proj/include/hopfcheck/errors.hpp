#pragma once

#include <stdexcept>
#include <string>

namespace hopfcheck {

/// Caller passed arguments that violate an operation's contract
/// (level mismatch, point off the sphere, bad quarter-circle pair, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mathematically undefined request, e.g. inverting a zero-norm element.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was called on a structure that has not been certified
/// for it (e.g. the f/g lemma on a multiplication not known to be associative).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Internal consistency check failed. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace hopfcheck
