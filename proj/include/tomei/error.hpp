#ifndef TOMEI_ERROR_HPP
#define TOMEI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tomei {

// Input/validation failures. The CLI maps these to exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

struct NonFiniteType : InputError {
  explicit NonFiniteType(const std::string& what) : InputError("NonFiniteType: " + what) {}
};

struct InvalidMarking : InputError {
  explicit InvalidMarking(const std::string& what) : InputError("InvalidMarking: " + what) {}
};

struct SizeCapExceeded : InputError {
  explicit SizeCapExceeded(const std::string& what) : InputError("SizeCapExceeded: " + what) {}
};

struct DegenerateSpectrum : InputError {
  explicit DegenerateSpectrum(const std::string& what) : InputError("DegenerateSpectrum: " + what) {}
};

struct StepTooLarge : InputError {
  explicit StepTooLarge(const std::string& what) : InputError("StepTooLarge: " + what) {}
};

struct SumMismatch : InputError {
  explicit SumMismatch(const std::string& what) : InputError("SumMismatch: " + what) {}
};

// Internal consistency failures: these indicate a broken build, not bad input.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

struct FaceConventionFailure : InternalError {
  explicit FaceConventionFailure(const std::string& what)
      : InternalError("FaceConventionFailure: " + what) {}
};

struct MismatchWithGenericBoundary : InternalError {
  explicit MismatchWithGenericBoundary(const std::string& what)
      : InternalError("MismatchWithGenericBoundary: " + what) {}
};

}  // namespace tomei

#endif
