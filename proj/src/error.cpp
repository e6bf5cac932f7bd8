#include "affchab/error.hpp"

namespace affchab {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::PrimeMismatch: return "PrimeMismatch";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
        case ErrorKind::NotASquare: return "NotASquare";
        case ErrorKind::EvenPrimeUnsupported: return "EvenPrimeUnsupported";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
        case ErrorKind::BadReduction: return "BadReduction";
        case ErrorKind::HypothesesFail: return "HypothesesFail";
        case ErrorKind::DegreeNonZero: return "DegreeNonZero";
        case ErrorKind::UnknownPoint: return "UnknownPoint";
        case ErrorKind::InvalidType: return "InvalidType";
        case ErrorKind::MissingFibre: return "MissingFibre";
        case ErrorKind::SingleRationalCusp: return "SingleRationalCusp";
        case ErrorKind::UnsupportedCuspField: return "UnsupportedCuspField";
        case ErrorKind::WeierstrassUnsupportedForJ: return "WeierstrassUnsupportedForJ";
        case ErrorKind::DifferentDiscs: return "DifferentDiscs";
        case ErrorKind::ZeroDifferential: return "ZeroDifferential";
        case ErrorKind::RankDeficientInput: return "RankDeficientInput";
        case ErrorKind::ConditionFails: return "ConditionFails";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

}  // namespace affchab
