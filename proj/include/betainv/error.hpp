#pragma once

#include <stdexcept>
#include <string>

namespace betainv {

/// Failure categories surfaced by the engine. The CLI maps these onto exit
/// codes and report warnings.
enum class ErrorKind {
  input,                  // malformed user input (syntax, unknown identifier, bad spec)
  frame_mismatch,         // operands live in different polynomial rings
  not_divisible,          // exact division by a non-divisor
  division_by_zero,
  singular_matrix,
  budget_exceeded,        // a standard basis computation hit its step budget
  not_one_dimensional,    // dim_0 of the critical locus is not 1
  genericity_failed,      // no admissible linear form z0 within the retry budget
  not_a_surface,          // relative polar surface is not 2-dimensional at 0
  improper_intersection,
  decomposition_incomplete,
  nonlocal_contribution,
  inconsistent_lambda1,
  internal_inconsistency,
  precondition,           // any other violated precondition
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::input: return "input error";
    case ErrorKind::frame_mismatch: return "frame mismatch";
    case ErrorKind::not_divisible: return "not divisible";
    case ErrorKind::division_by_zero: return "division by zero";
    case ErrorKind::singular_matrix: return "singular matrix";
    case ErrorKind::budget_exceeded: return "budget exceeded";
    case ErrorKind::not_one_dimensional: return "not one dimensional";
    case ErrorKind::genericity_failed: return "genericity failed";
    case ErrorKind::not_a_surface: return "not a surface";
    case ErrorKind::improper_intersection: return "improper intersection";
    case ErrorKind::decomposition_incomplete: return "decomposition incomplete";
    case ErrorKind::nonlocal_contribution: return "nonlocal contribution";
    case ErrorKind::inconsistent_lambda1: return "inconsistent lambda1";
    case ErrorKind::internal_inconsistency: return "internal inconsistency";
    case ErrorKind::precondition: return "precondition violated";
  }
  return "unknown error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace betainv
