// Error taxonomy.  Every failure mode a caller can act on gets its own
// type; plain std::invalid_argument is reserved for dimension mismatches
// and other programming errors.
#pragma once

#include <stdexcept>
#include <string>

namespace cstar {

struct WorkbenchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A rank or eigenvalue-gap decision fell inside the ambiguity band.
// Silent rounding here would turn numerical noise into wrong structure,
// so we refuse instead.
struct RankAmbiguity : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

struct NotAProjection : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

struct InvalidEffect : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

// Effects handed to a nonselective instrument must resolve the identity.
struct IncompleteResolution : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

// State update conditioned on an outcome of probability ~0.
struct NullOutcome : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

struct SelectiveChannel : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

struct NonCommuting : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

struct AbelianAlgebra : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

struct NotAbelian : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

struct ZeroProbabilityEvent : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

struct TensorAlignment : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

struct SearchFailed : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

struct ConfigError : WorkbenchError {
  using WorkbenchError::WorkbenchError;
};

// Default tolerances.  `kTolAlgebra` bounds residuals of algebraic
// identities, `kTolExact` bounds constructions that are exact up to
// floating-point roundoff, `kTolRank` is the relative cutoff for rank and
// eigenvalue-cluster decisions.
inline constexpr double kTolAlgebra = 1e-9;
inline constexpr double kTolExact = 1e-12;
inline constexpr double kTolRank = 1e-8;

}  // namespace cstar
