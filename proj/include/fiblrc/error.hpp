#pragma once

#include <stdexcept>
#include <string>

namespace fiblrc {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an internal consistency check fails. The CLI maps these to
// exit status 2; everything else derived from Error maps to 1.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

#define FIBLRC_ERROR(Name, Base)          \
    class Name : public Base {            \
    public:                               \
        using Base::Base;                 \
    }

FIBLRC_ERROR(NotPrime, Error);
FIBLRC_ERROR(ReducibleModulus, Error);
FIBLRC_ERROR(DivisionByZero, Error);
FIBLRC_ERROR(FieldMismatch, Error);
FIBLRC_ERROR(OrderNotDivisible, Error);
FIBLRC_ERROR(FieldTooLarge, Error);
FIBLRC_ERROR(DivisionByZeroPoly, Error);
FIBLRC_ERROR(EmptySelection, Error);
FIBLRC_ERROR(IndexOutOfRange, Error);
FIBLRC_ERROR(BadLocality, Error);
FIBLRC_ERROR(LengthMismatch, Error);
FIBLRC_ERROR(NotSingleOrbit, Error);
FIBLRC_ERROR(IncompleteRecoverySet, Error);
FIBLRC_ERROR(AllZero, Error);
FIBLRC_ERROR(SingularFiber, Error);
FIBLRC_ERROR(PointNotOnCurve, Error);
FIBLRC_ERROR(NonSquareTwist, Error);
FIBLRC_ERROR(BadScenario, Error);
FIBLRC_ERROR(ParseError, Error);
FIBLRC_ERROR(SchemaMismatch, Error);

FIBLRC_ERROR(InternalNicenessViolation, InvariantViolation);
FIBLRC_ERROR(RankDeficient, InvariantViolation);
FIBLRC_ERROR(SingularSystem, InvariantViolation);
FIBLRC_ERROR(InconsistentSymbols, InvariantViolation);
FIBLRC_ERROR(NotOnSegment, InvariantViolation);

#undef FIBLRC_ERROR

}  // namespace fiblrc
