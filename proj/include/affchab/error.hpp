#pragma once

#include <stdexcept>
#include <string>

namespace affchab {

enum class ErrorKind {
    PrimeMismatch,
    DivisionByZero,
    PrecisionExhausted,
    NotASquare,
    EvenPrimeUnsupported,
    HypothesisViolated,
    ParseError,
    InvariantViolation,
    BadReduction,
    HypothesesFail,
    DegreeNonZero,
    UnknownPoint,
    InvalidType,
    MissingFibre,
    SingleRationalCusp,
    UnsupportedCuspField,
    WeierstrassUnsupportedForJ,
    DifferentDiscs,
    ZeroDifferential,
    RankDeficientInput,
    ConditionFails,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail);

    ErrorKind kind() const { return kind_; }
    const std::string& detail() const { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace affchab
