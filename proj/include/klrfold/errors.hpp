#pragma once

#include <stdexcept>
#include <string>

namespace klrfold {

// Error hierarchy shared by every layer. Callers that only care about
// "something is wrong with the input" can catch KlrError.
struct KlrError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : KlrError {
  using KlrError::KlrError;
};
struct NotInvertibleError : KlrError {
  using KlrError::KlrError;
};
struct PrecisionError : KlrError {
  using KlrError::KlrError;
};
struct SizeError : KlrError {
  using KlrError::KlrError;
};
struct UnsupportedTypeError : KlrError {
  using KlrError::KlrError;
};
struct ValidationError : KlrError {
  using KlrError::KlrError;
};
// Raised when a Schur-type step finds End(L) bigger than the scalars, i.e.
// the chosen ground field is not large enough for the module at hand.
struct GroundFieldError : KlrError {
  using KlrError::KlrError;
};

}  // namespace klrfold
