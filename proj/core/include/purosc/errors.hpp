#pragma once

#include <stdexcept>
#include <string>

namespace purosc {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// sigma_pp*sigma_qq - sigma_pq^2 fell below hbar^2/4 beyond tolerance.
struct UncertaintyViolation : Error { using Error::Error; };

/// A variance (or the covariance determinant) required to be positive is not.
struct DegenerateState : Error { using Error::Error; };

struct InvalidParameter : Error { using Error::Error; };

/// Purity-preserving diffusion coefficients exist only for omega > |mu|.
struct OverdampedRegime : Error { using Error::Error; };

/// Equilibrium variances <q^2>, <p^2> were required but not supplied.
struct MissingBathData : Error { using Error::Error; };

/// gamma_p = 0: no relaxation, hence no asymptotic state.
struct UndampedModel : Error { using Error::Error; };

/// The second-moment drift matrix is not Hurwitz.
struct NoSteadyState : Error { using Error::Error; };

/// A time-dependent coefficient could not be evaluated at the requested time.
struct CoefficientUndefined : Error { using Error::Error; };

/// Operation defined only for constant (time-independent) coefficients.
struct ConstantCoefficientsRequired : Error { using Error::Error; };

/// Adaptive integrator failed to find an acceptable step size.
struct StepRejected : Error { using Error::Error; };

/// An integrated state left the physically admissible region.
struct AdmissibilityLost : Error { using Error::Error; };

/// State is not pure within tolerance.
struct NotPure : Error { using Error::Error; };

struct InsufficientSamples : Error { using Error::Error; };

struct UnknownVariant : Error { using Error::Error; };

/// Malformed configuration document.
struct ParseError : Error { using Error::Error; };

/// Well-formed configuration violating a model or scenario constraint.
struct ValidationError : Error { using Error::Error; };

struct IOFailure : Error { using Error::Error; };

}  // namespace purosc
