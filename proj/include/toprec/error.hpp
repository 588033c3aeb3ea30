#pragma once

#include <stdexcept>
#include <string>

namespace toprec {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TOPREC_ERROR(Name)                       \
    class Name : public Error {                  \
    public:                                      \
        explicit Name(const std::string& what)   \
            : Error(#Name ": " + what) {}        \
    };

TOPREC_ERROR(DivisionByZero)
TOPREC_ERROR(NotRational)
TOPREC_ERROR(NotInvertible)
TOPREC_ERROR(InsufficientTruncation)
TOPREC_ERROR(LogarithmicTerm)
TOPREC_ERROR(Unstable)
TOPREC_ERROR(IoError)
TOPREC_ERROR(FormatError)
TOPREC_ERROR(InvalidTarget)
TOPREC_ERROR(ExpansionResidual)
TOPREC_ERROR(NotDivisible)
TOPREC_ERROR(NotSymplectic)
TOPREC_ERROR(NotFactorizable)
TOPREC_ERROR(ZeroScale)
TOPREC_ERROR(SqrtNotInField)
TOPREC_ERROR(ParseError)
TOPREC_ERROR(ValidationError)

#undef TOPREC_ERROR

}  // namespace toprec
