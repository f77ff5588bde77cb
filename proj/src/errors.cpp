#include "kgw/errors.hpp"

namespace kgw {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ConductorMismatch: return "ConductorMismatch";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::DegenerateInput: return "DegenerateInput";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::EvenPrime: return "EvenPrime";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::WeightNotCoprime: return "WeightNotCoprime";
        case ErrorCode::NonCoprimeModuli: return "NonCoprimeModuli";
        case ErrorCode::PrefactorMismatch: return "PrefactorMismatch";
        case ErrorCode::MetaMismatch: return "MetaMismatch";
        case ErrorCode::UnsupportedCase: return "UnsupportedCase";
        case ErrorCode::UnsupportedEdgeDegree: return "UnsupportedEdgeDegree";
        case ErrorCode::UncanceledPsiDenominator: return "UncanceledPsiDenominator";
        case ErrorCode::UnregisteredPrefactor: return "UnregisteredPrefactor";
        case ErrorCode::PrimeDoesNotDivideM: return "PrimeDoesNotDivideM";
        case ErrorCode::BoundViolation: return "BoundViolation";
        case ErrorCode::WeightCollision: return "WeightCollision";
        case ErrorCode::NotFermatRealization: return "NotFermatRealization";
        case ErrorCode::PreconditionFailure: return "PreconditionFailure";
        case ErrorCode::VanishingDenominator: return "VanishingDenominator";
        case ErrorCode::PoleAtUnitRoot: return "PoleAtUnitRoot";
        case ErrorCode::PoleAtEvaluationPoint: return "PoleAtEvaluationPoint";
        case ErrorCode::NonIntegralTrace: return "NonIntegralTrace";
        case ErrorCode::NonRationalDenominator: return "NonRationalDenominator";
        case ErrorCode::NonRationalCoefficient: return "NonRationalCoefficient";
        case ErrorCode::ToleranceExceeded: return "ToleranceExceeded";
        case ErrorCode::ParanoidMismatch: return "ParanoidMismatch";
    }
    return "Unknown";
}

int exit_code(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ConductorMismatch:
        case ErrorCode::DivisionByZero:
        case ErrorCode::IndexOutOfRange:
            return 1;
        case ErrorCode::InvalidConfig:
        case ErrorCode::DegenerateInput:
        case ErrorCode::NotPrime:
        case ErrorCode::EvenPrime:
        case ErrorCode::Overflow:
        case ErrorCode::WeightNotCoprime:
        case ErrorCode::NonCoprimeModuli:
        case ErrorCode::PrefactorMismatch:
        case ErrorCode::MetaMismatch:
            return 2;
        case ErrorCode::UnsupportedCase:
        case ErrorCode::UnsupportedEdgeDegree:
        case ErrorCode::UncanceledPsiDenominator:
        case ErrorCode::UnregisteredPrefactor:
            return 3;
        case ErrorCode::PrimeDoesNotDivideM:
        case ErrorCode::BoundViolation:
        case ErrorCode::WeightCollision:
        case ErrorCode::NotFermatRealization:
        case ErrorCode::PreconditionFailure:
        case ErrorCode::VanishingDenominator:
        case ErrorCode::PoleAtUnitRoot:
        case ErrorCode::PoleAtEvaluationPoint:
            return 4;
        case ErrorCode::NonIntegralTrace:
        case ErrorCode::NonRationalDenominator:
        case ErrorCode::NonRationalCoefficient:
        case ErrorCode::ToleranceExceeded:
        case ErrorCode::ParanoidMismatch:
            return 5;
    }
    return 1;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace kgw
