#pragma once

// Exact scalar layer: arbitrary-precision integers and rationals (GMP).
// mpq_class canonicalization matches the contract everywhere in this
// library: lowest terms, positive denominator, 0/1 for zero.

#include <gmpxx.h>

#include <string>

#include "ski/error.hpp"

namespace ski {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0)
        throw domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

inline const Int num(const Rational& r) { return r.get_num(); }
inline const Int den(const Rational& r) { return r.get_den(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Floor of a rational as an integer.
inline Int rat_floor(const Rational& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

// Representative of r mod 1 in [0, 1).
inline Rational mod1(const Rational& r) {
    Rational m = r - Rational(rat_floor(r));
    m.canonicalize();
    return m;
}

inline std::string rat_str(const Rational& r) {
    return r.get_str();
}

// The rational with smallest denominator (then smallest |numerator|) strictly
// inside the open interval (lo, hi); classic Stern-Brocot descent.
inline Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
    if (!(lo < hi))
        throw domain_error("simplest_rational_between needs lo < hi");
    const Int fl = rat_floor(lo);
    if (Rational(fl + 1) < hi)
        return Rational(fl + 1); // an integer lies strictly inside
    // Same integer part; recurse on the fractional reciprocals.
    const Rational a = lo - Rational(fl);
    const Rational b = hi - Rational(fl);
    if (a == 0) {
        // (0, b): pick 1/ceil(1/b + eps) -> smallest q with 1/q < b
        Int q = rat_floor(Rational(1) / b) + 1;
        return Rational(fl) + make_rational(Int(1), q);
    }
    const Rational r = simplest_rational_between(Rational(1) / b, Rational(1) / a);
    return Rational(fl) + Rational(1) / r;
}

// Parse "p/q" or "p" exactly; anything else (in particular decimals) is a
// parse error.
inline Rational parse_rational(const std::string& s) {
    if (s.empty())
        throw parse_error("empty rational literal");
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size())
        throw parse_error("malformed rational literal '" + s + "'");
    bool slash_seen = false;
    for (std::size_t j = i; j < s.size(); ++j) {
        if (s[j] == '/') {
            if (slash_seen || j == i || j + 1 == s.size())
                throw parse_error("malformed rational literal '" + s + "'");
            slash_seen = true;
        } else if (s[j] < '0' || s[j] > '9') {
            throw parse_error("malformed rational literal '" + s + "'");
        }
    }
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw parse_error("malformed rational literal '" + s + "'");
    if (r.get_den() == 0)
        throw parse_error("zero denominator in rational literal '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace ski
