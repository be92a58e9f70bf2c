#pragma once

// The Novikov field with rational exponents: finite formal sums
// sum c_i T^{e_i} plus an optional truncation floor recording that terms at
// exponent <= floor are unknown.  Exponents are energies in units of 64 pi^2,
// so every exponent is an exact rational.

#include <map>
#include <optional>
#include <string>

#include "ski/rational.hpp"

namespace ski {

class NovikovElement {
public:
    NovikovElement() = default;
    explicit NovikovElement(const Rational& c) {
        if (c != 0) terms_[Rational(0)] = c;
    }
    static NovikovElement monomial(const Rational& c, const Rational& e) {
        NovikovElement x;
        if (c != 0) x.terms_[e] = c;
        return x;
    }
    // Unknown below (and at) the given exponent: O(T^f).
    static NovikovElement big_o(const Rational& f) {
        NovikovElement x;
        x.floor_ = f;
        return x;
    }

    // Terms, highest exponent first.
    const std::map<Rational, Rational, std::greater<Rational>>& terms() const {
        return terms_;
    }
    // Truncation floor; disengaged means the element is exact.
    const std::optional<Rational>& floor() const { return floor_; }
    bool is_exact() const { return !floor_.has_value(); }

    // Zero/nonzero certification under truncation:
    //  - nonzero is certified by any stored term (always above the floor);
    //  - zero is certified only for the exact zero element;
    //  - otherwise (no terms, finite floor) the element is ambiguous.
    bool certified_nonzero() const { return !terms_.empty(); }
    bool certified_zero() const { return terms_.empty() && is_exact(); }
    bool ambiguous() const { return terms_.empty() && !is_exact(); }

    // Leading (highest-exponent) term; throws domain_error when no term is
    // stored (zero or floor-dominated input).
    std::pair<Rational, Rational> leading() const;

    NovikovElement operator+(const NovikovElement& o) const;
    NovikovElement operator-(const NovikovElement& o) const;
    NovikovElement operator-() const;
    NovikovElement operator*(const NovikovElement& o) const;
    NovikovElement scaled(const Rational& c) const;

    // Truncate to the given floor (drop terms at exponent <= f).
    NovikovElement truncated(const Rational& f) const;

    // Equality of all terms above max(floor(a), floor(b)); exact elements
    // compare every term.
    static bool equal_above_floors(const NovikovElement& a, const NovikovElement& b);
    // Strict structural equality (terms and floor).
    bool operator==(const NovikovElement& o) const {
        return terms_ == o.terms_ && floor_ == o.floor_;
    }

    // Rendering: "c*T^(e) + ... + O(T^(f))", "0" for exact zero.
    std::string str() const;

private:
    std::map<Rational, Rational, std::greater<Rational>> terms_;
    std::optional<Rational> floor_;

    void set_floor(const std::optional<Rational>& f);
    friend NovikovElement invert(const NovikovElement&, long);
};

// Multiplicative inverse through depth terms of the geometric series.
// Exact when x is a single term; otherwise the result carries a floor at
// leading(x).exponent - (depth+1)*gap, gap the distance from the leading
// exponent to the next one (or to the floor).
// Throws domain_error when no leading term is certified.
NovikovElement invert(const NovikovElement& x, long depth);

// Parse the textual rendering produced by str() (and modest variations:
// optional whitespace, "T^(e)" without coefficient, bare rationals).
NovikovElement parse_novikov(const std::string& text);

// ---- loops and their energy/grading -------------------------------------

// A loop class in the configuration space: instanton number k, monopole
// number l.
struct LoopClass {
    Int k;
    Int l;
};

// Topological energy of the loop in units of 64 pi^2: k + 2*alpha*l.
Rational loop_energy(const LoopClass& z, const Rational& alpha);

// Absolute Z/4-lift of the loop's grading contribution: 8k + 4l.
Int loop_grading(const LoopClass& z);

// Generator (1 - 4*alpha) of the period group I' = {64 pi^2 k (1-4alpha)};
// zero exactly at the monotone point alpha = 1/4.
Rational minimal_period_generator(const Rational& alpha);

// Energy recovered from grading: gr/8 + l*(4*alpha - 1)/2.
Rational energy_of_grading(const Int& grading, const Int& l, const Rational& alpha);

} // namespace ski
