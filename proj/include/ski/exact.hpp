#pragma once

// Exact arithmetic at roots of unity.
//
// A point on the unit circle is a "turn" r in [0,1), standing for
// e^{2 pi i r}.  Values generated by such a point live in the cyclotomic
// field Q(zeta_m), m the order of the point, represented as polynomials in
// zeta_m reduced modulo the m-th cyclotomic polynomial.  The complex
// embedding fixed throughout sends zeta_m to e^{2 pi i / m}; all sign
// decisions are certified against that embedding.

#include <string>
#include <vector>

#include "ski/laurent.hpp"
#include "ski/poly.hpp"
#include "ski/rational.hpp"

namespace ski {

// e^{2 pi i turn}, turn normalized to [0, 1).
struct UnitRootPoint {
    Rational turn;

    explicit UnitRootPoint(const Rational& t) : turn(mod1(t)) {}
    // Multiplicative order = denominator of the turn.
    unsigned long order() const { return den(turn).get_ui(); }
    UnitRootPoint conjugate() const { return UnitRootPoint(-turn); }
    bool operator==(const UnitRootPoint& o) const { return turn == o.turn; }
};

// Element of Q(zeta_m); rep has degree < phi(m).
class CyclotomicValue {
public:
    CyclotomicValue() : m_(1) {}
    CyclotomicValue(unsigned long m, QPoly rep);

    static CyclotomicValue zero(unsigned long m) { return {m, QPoly()}; }
    static CyclotomicValue from_rational(unsigned long m, const Rational& c) {
        return {m, QPoly(c)};
    }
    // zeta_m^k
    static CyclotomicValue root_power(unsigned long m, long k);

    unsigned long order() const { return m_; }
    const QPoly& rep() const { return rep_; }
    bool is_zero() const { return rep_.is_zero(); }
    bool is_rational() const { return rep_.degree() <= 0; }
    Rational rational_part() const {
        return rep_.is_zero() ? Rational(0) : rep_[0];
    }

    CyclotomicValue operator+(const CyclotomicValue& o) const;
    CyclotomicValue operator-(const CyclotomicValue& o) const;
    CyclotomicValue operator*(const CyclotomicValue& o) const;
    CyclotomicValue operator*(const Rational& c) const;
    CyclotomicValue inverse() const; // throws domain_error on zero
    CyclotomicValue conjugate() const;
    bool operator==(const CyclotomicValue& o) const;

private:
    unsigned long m_;
    QPoly rep_;
};

// Value of a Laurent polynomial at the point w (exact).
CyclotomicValue eval_laurent_at_root(const Laurent& p, const UnitRootPoint& w);

// Exact sign (-1, 0, +1) of a real cyclotomic value under the principal
// embedding.  Throws domain_error if the value is not real (v != conj v).
int real_cyclotomic_sign(const CyclotomicValue& v);

// ---- holonomy parameters ------------------------------------------------

// Cone/holonomy package for a rational alpha in (0, 1/2):
//   omega   = e^{-4 pi i alpha}   (the Alexander/signature evaluation point)
//   cone_nu = minimal nu >= 1 with 2 alpha nu integral.
struct HolonomyParam {
    Rational alpha;
    UnitRootPoint omega;
    Int cone_nu;
};

// The evaluation point e^{-4 pi i alpha} for any rational alpha.
UnitRootPoint unit_root_of(const Rational& alpha);

// Minimal nu >= 1 with 2 * alpha * nu an integer.
Int cone_parameter(const Rational& alpha);

// Validates 0 < alpha < 1/2 and assembles the package; domain_error otherwise.
HolonomyParam validate_holonomy(const Rational& alpha);

} // namespace ski
