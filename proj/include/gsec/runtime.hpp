#ifndef GSEC_RUNTIME_HPP
#define GSEC_RUNTIME_HPP

#include <optional>
#include <string>
#include <vector>

#include "gsec/intrinsic.hpp"

namespace gsec {

/// A failed evidence combination: inner evidence could not be threaded
/// through outer evidence.
struct RuntimeError {
  Evidence inner, outer;
  Span span;
};

std::string to_string(const RuntimeError& e);

/// Simple values: literals and lambdas. (Variables are simple values in the
/// grammar but never reached by closed evaluation.)
bool is_simple_value(const ITerm& t);

/// Values: simple values and single ascriptions of simple values.
bool is_value(const ITerm& t);

/// The observable content of a boolean value, stripped of labels, evidence
/// and ascriptions; absent for lambdas and non-values.
std::optional<bool> bare_bool(const ITerm& t);

struct StepResult {
  enum class Kind { Value, Stepped, Error };
  Kind kind;
  ITermPtr term;             // Stepped
  bool combine = false;      // Stepped: true for an evidence-combination step
  std::optional<RuntimeError> error;  // Error
};

/// One reduction of a closed intrinsic term: locates the unique redex through
/// the frame structure, applying evidence combination before notions fire.
/// Errors propagate through all frames. Throws std::logic_error on a stuck
/// term (impossible for well-formed closed input).
StepResult step(const ITermPtr& t);

struct EvalResult {
  enum class Kind { Value, Error, OutOfFuel };
  Kind kind;
  ITermPtr value;                     // Kind::Value
  std::optional<RuntimeError> error;  // Kind::Error
  int steps = 0;
  std::vector<std::string> trace;     // filled when requested
};

std::string outcome_line(const EvalResult& r);

EvalResult evaluate(const ITermPtr& t, int fuel = 10000, bool want_trace = false);

}  // namespace gsec

#endif
