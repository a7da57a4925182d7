#pragma once

#include <stdexcept>
#include <string>

namespace polkit {

enum class ErrorKind {
    NotAlternating,
    OddDimension,
    Degenerate,
    NotIntegral,
    NotPrincipal,
    ImaginaryOrder,
    InvalidOrder,
    NotSymmetricCompatible,
    NotSymplecticOrder,
    NotSiegel,
    InfiniteOrder,
    NonIntegralAction,
    DegenerateLattice,
    PrecisionUnreachable,
    AmbiguousVanishing,
    SingularCurve,
    ZeroI10,
    BadReduction,
    FieldTooLarge,
    NonIntegral,
    Inert,
    NoMatch,
    BothMatch,
    SchemaError,
    InvalidArgument,
};

const char* kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind)
    {
    }
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace polkit
