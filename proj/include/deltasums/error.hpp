#pragma once

#include <stdexcept>
#include <string>

namespace deltasums {

// Base of every error raised by the library. Callers that only care about
// "something was wrong with the inputs" can catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error { using Error::Error; };
struct NotCoprime : Error { using Error::Error; };
struct NotPrime : Error { using Error::Error; };
struct PrincipalCharacterNotAllowed : Error { using Error::Error; };
struct EllNotCoprime : Error { using Error::Error; };
struct AlphaBetaNotCoprime : Error { using Error::Error; };
struct ParameterConflict : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct UnsupportedCoefficientKind : Error { using Error::Error; };
struct OutOfCacheRange : Error { using Error::Error; };
struct DegenerateAmplifier : Error { using Error::Error; };
struct ExactnessViolated : Error { using Error::Error; };
struct InvalidDivisor : Error { using Error::Error; };

}  // namespace deltasums
