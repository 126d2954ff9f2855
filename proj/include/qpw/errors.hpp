#pragma once

#include <stdexcept>
#include <string>

namespace qpw {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Laurent inversion of a series that is zero to its tracked precision.
struct ZeroLeadingTerm : Error {
    using Error::Error;
};

/// q -> -q substitution applied to a series with fractional exponents.
struct FractionalSignSubstitution : Error {
    using Error::Error;
};

/// A coefficient beyond the tracked precision was requested.
struct InsufficientPrecision : Error {
    using Error::Error;
};

/// A residue reduction met a coefficient that is not an integer.
struct NonIntegralCoefficient : Error {
    NonIntegralCoefficient(const std::string& what, long scaled_exp, long scale)
        : Error(what), scaled_exp(scaled_exp), scale(scale) {}
    long scaled_exp; ///< offending exponent is scaled_exp / scale
    long scale;
};

/// A reciprocal Pochhammer factor vanishes identically.
struct DivisionByZeroFactor : Error {
    using Error::Error;
};

/// An infinite product whose factors do not stabilize.
struct NonConvergentProduct : Error {
    using Error::Error;
};

/// A series summation whose term exponents fail to grow.
struct NonConvergentSum : Error {
    using Error::Error;
};

/// Identity id not present in the registry.
struct UnknownIdentity : Error {
    using Error::Error;
};

/// A randomized specialization violates an identity's side conditions.
struct SpecializationViolatesSideConditions : Error {
    using Error::Error;
};

} // namespace qpw
