#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qfi {

// All library errors carry a stable machine-readable code beside the human
// message so the CLI and bindings can map them without string matching.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define QFI_ERROR_CLASS(Name, code)                                       \
  class Name : public Error {                                             \
   public:                                                                \
    explicit Name(const std::string& message) : Error(code, message) {}   \
  }

QFI_ERROR_CLASS(NotHermitian, "not_hermitian");
QFI_ERROR_CLASS(TraceNotOne, "trace_not_one");
QFI_ERROR_CLASS(NotPsd, "not_psd");
QFI_ERROR_CLASS(DimMismatch, "dim_mismatch");
QFI_ERROR_CLASS(ConvergenceFailure, "convergence_failure");
QFI_ERROR_CLASS(NegativeInput, "negative_input");
QFI_ERROR_CLASS(ParamOutOfRange, "param_out_of_range");
QFI_ERROR_CLASS(SingularState, "singular_state");
QFI_ERROR_CLASS(UnsupportedTangent, "unsupported_tangent");
QFI_ERROR_CLASS(NotTraceless, "not_traceless");
QFI_ERROR_CLASS(NotCentered, "not_centered");
QFI_ERROR_CLASS(NotLocallyUnbiased, "not_locally_unbiased");
QFI_ERROR_CLASS(PositivityConditionViolated, "positivity_condition_violated");
QFI_ERROR_CLASS(NotProjective, "not_projective");
QFI_ERROR_CLASS(NotTracePreserving, "not_trace_preserving");
QFI_ERROR_CLASS(BadParams, "bad_params");
QFI_ERROR_CLASS(ZeroProbabilityOutcomeWithSignal, "zero_probability_outcome_with_signal");
QFI_ERROR_CLASS(ParseError, "parse_error");
QFI_ERROR_CLASS(IoError, "io_error");

#undef QFI_ERROR_CLASS

}  // namespace qfi
