#pragma once

#include <gmpxx.h>

#include <string>

#include "qpw/errors.hpp"

namespace qpw {

using BigInt = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (GMP keeps mpq_class canonical through arithmetic).
using BigRational = mpq_class;

/// Canonicalized rational n/d. The two-argument mpq_class constructor does
/// not reduce, so this is the one safe way to build from a raw pair.
inline BigRational rat(long n, long d = 1) {
    BigRational r(n, d);
    r.canonicalize();
    return r;
}

inline BigRational rat(const BigInt& n, const BigInt& d) {
    BigRational r(n, d);
    r.canonicalize();
    return r;
}

inline bool is_integer(const BigRational& r) {
    return r.get_den() == 1;
}

/// r^k for integer k (negative k inverts; 0^0 = 1).
inline BigRational pow_rat(const BigRational& r, long k) {
    if (k == 0) return BigRational(1);
    BigInt num, den;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    mpz_pow_ui(num.get_mpz_t(), r.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), r.get_den().get_mpz_t(), e);
    if (k < 0) {
        if (num == 0) throw DivisionByZeroFactor("pow_rat: negative power of zero");
        std::swap(num, den);
    }
    return rat(num, den);
}

/// Residue in [0, m) of an integral rational; throws if not an integer.
inline long residue_mod(const BigRational& r, long m) {
    if (!is_integer(r))
        throw NonIntegralCoefficient("residue_mod: coefficient " + r.get_str() + " is not integral", 0, 1);
    BigInt q = r.get_num() % m;
    long v = q.get_si();
    return v < 0 ? v + m : v;
}

/// "num/den", or just "num" for integers.
inline std::string to_string(const BigRational& r) {
    return r.get_str();
}

} // namespace qpw
