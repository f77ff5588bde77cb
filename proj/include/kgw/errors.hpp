#pragma once

#include <stdexcept>
#include <string>

namespace kgw {

enum class ErrorCode {
    // arithmetic
    ConductorMismatch,
    DivisionByZero,
    IndexOutOfRange,
    // input validation
    InvalidConfig,
    DegenerateInput,
    NotPrime,
    EvenPrime,
    Overflow,
    WeightNotCoprime,
    NonCoprimeModuli,
    PrefactorMismatch,
    MetaMismatch,
    // catalog / oracle coverage
    UnsupportedCase,
    UnsupportedEdgeDegree,
    UncanceledPsiDenominator,
    UnregisteredPrefactor,
    // geometric preconditions
    PrimeDoesNotDivideM,
    BoundViolation,
    WeightCollision,
    NotFermatRealization,
    PreconditionFailure,
    VanishingDenominator,
    PoleAtUnitRoot,
    PoleAtEvaluationPoint,
    // integrality / tolerance
    NonIntegralTrace,
    NonRationalDenominator,
    NonRationalCoefficient,
    ToleranceExceeded,
    ParanoidMismatch,
};

const char* to_string(ErrorCode code) noexcept;

// Process exit status for a failure of the given kind:
//   1 internal arithmetic fault, 2 validation, 3 unsupported case,
//   4 precondition failure, 5 integrality/tolerance failure.
int exit_code(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace kgw
