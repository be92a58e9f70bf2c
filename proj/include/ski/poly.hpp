#pragma once

// Dense univariate polynomials over the rationals, plus the real-root
// machinery this library leans on: Sturm chains, root isolation, Yun
// squarefree decomposition, cyclotomic polynomials, and the palindromic
// substitution z = t + 1/t.

#include <optional>
#include <utility>
#include <vector>

#include "ski/rational.hpp"

namespace ski {

// Coefficients low-to-high; invariant: empty for zero, else back() != 0.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(const Rational& c) { if (c != 0) coef_.push_back(c); }
    explicit QPoly(std::vector<Rational> coef) : coef_(std::move(coef)) { trim(); }

    static QPoly monomial(const Rational& c, std::size_t k);

    bool is_zero() const { return coef_.empty(); }
    // degree of the zero polynomial is -1
    long degree() const { return static_cast<long>(coef_.size()) - 1; }
    const Rational& operator[](std::size_t k) const { return coef_[k]; }
    const std::vector<Rational>& coef() const { return coef_; }
    const Rational& leading() const { return coef_.back(); }

    QPoly operator-() const;
    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rational& c) const;
    bool operator==(const QPoly& o) const { return coef_ == o.coef_; }

    Rational eval(const Rational& x) const;
    QPoly derivative() const;

    // Quotient and remainder; divisor must be nonzero.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const;

    // Monic gcd (zero if both zero).
    static QPoly gcd(QPoly a, QPoly b);

    QPoly monic() const;
    // Scale to integer coefficients with positive content 1.
    QPoly primitive_integer() const;

private:
    void trim();
    std::vector<Rational> coef_;
};

// ---- real-root tools --------------------------------------------------

// Sturm chain of p (p need not be squarefree; the chain is for p/gcd(p,p')).
std::vector<QPoly> sturm_chain(const QPoly& p);

// Number of distinct real roots in the half-open interval (a, b], a < b.
long sturm_count(const std::vector<QPoly>& chain, const Rational& a, const Rational& b);

// Yun squarefree decomposition: p = lc * prod factors[i].p ^ factors[i].mult,
// factors squarefree, pairwise coprime, multiplicities strictly increasing.
struct SquarefreeFactor {
    QPoly p;
    long mult;
};
std::vector<SquarefreeFactor> squarefree_decomposition(const QPoly& p);

// Isolating intervals (a, b) with rational endpoints for all real roots of a
// squarefree p inside the open interval (lo, hi); p(lo), p(hi), p(a), p(b)
// all nonzero, each interval contains exactly one root, intervals disjoint.
std::vector<std::pair<Rational, Rational>>
isolate_roots(const QPoly& p, const Rational& lo, const Rational& hi);

// Interval Horner evaluation of p over [a, b] (a <= b): a rational interval
// certain to contain p([a, b]).
std::pair<Rational, Rational>
interval_eval(const QPoly& p, const Rational& a, const Rational& b);

// ---- cyclotomic and palindromic helpers -------------------------------

// m-th cyclotomic polynomial (cached), integer coefficients.
const QPoly& cyclotomic(unsigned long m);
unsigned long euler_phi(unsigned long m);

// C_k with C_k(t + 1/t) = t^k + t^{-k}: C_0 = 2, C_1 = z, C_{k+1} = z C_k - C_{k-1}.
const QPoly& chebyshev_c(std::size_t k);

// Given the symmetric half c[0..h] of a palindromic Laurent polynomial
// sum_{|j|<=h} c[|j|] t^j, return f with f(t + 1/t) equal to it.
QPoly palindromic_to_z(const std::vector<Rational>& half);

// ---- certified trigonometric comparison --------------------------------

// Exact sign of 2*cos(2*pi*x) - q for rational x, q: -1, 0, +1.
// Interval Taylor arithmetic with escalating precision; equality is decided
// exactly through Niven's theorem (2cos(2 pi x) rational only for
// denominators 1,2,3,4,6).
int compare_two_cos(const Rational& x, const Rational& q);

// Rational enclosure of pi, sharper with higher level (level >= 0).
std::pair<Rational, Rational> pi_interval(int level);

} // namespace ski
