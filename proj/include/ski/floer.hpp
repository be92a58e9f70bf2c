#pragma once

// Z/4-graded chain complexes over the Novikov field carrying the singular
// instanton package: boundary map, the functionals/vectors delta1, delta2,
// the degree -2 map u, and everything derived from them — homology, reduced
// homology, the h-invariant, Lefschetz numbers, duality and flip functors,
// the splitting-identity verifier, and the trace-window characteristic
// polynomial lemma.

#include <array>
#include <string>
#include <vector>

#include "ski/novikov.hpp"

namespace ski {

// Dense matrix over the Novikov field, row-major; shape carried by the
// nested vectors (rows x cols, zero-size dimensions allowed).
using NovMatrix = std::vector<std::vector<NovikovElement>>;

NovMatrix nov_zero_matrix(std::size_t rows, std::size_t cols);
NovMatrix nov_identity(std::size_t n);
NovMatrix nov_mul(const NovMatrix& a, const NovMatrix& b);
NovMatrix nov_add(const NovMatrix& a, const NovMatrix& b);
NovMatrix nov_sub(const NovMatrix& a, const NovMatrix& b);
NovMatrix nov_transpose(const NovMatrix& a);

// Rank over the Novikov field by fraction-free elimination with
// leading-exponent pivoting; exact inputs always decide, truncated inputs
// throw floor_exhaustion when an entry needed for the decision is ambiguous.
std::size_t nov_rank(NovMatrix a);

struct GradedComplex {
    // Generators per grading 0..3.
    std::array<std::size_t, 4> ranks{};
    // boundary[g]: C_g -> C_{g-1 mod 4}; shape ranks[(g+3)%4] x ranks[g].
    std::array<NovMatrix, 4> boundary;
    // Functional on grading-1 generators (length ranks[1]).
    std::vector<NovikovElement> delta1;
    // Distinguished element of the grading-2 module (length ranks[2]).
    std::vector<NovikovElement> delta2;
    // umap[g]: C_g -> C_{g-2 mod 4}; shape ranks[(g+2)%4] x ranks[g].
    std::array<NovMatrix, 4> umap;

    bool exact_entries() const;
};

// Degree-preserving endomorphism: maps[g] is ranks[g] x ranks[g].
struct CobordismEndomorphism {
    std::array<NovMatrix, 4> maps;
};

CobordismEndomorphism identity_endomorphism(const GradedComplex& c);

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> failures; // one line per violated identity

    explicit operator bool() const { return pass; }
};

// Checks shapes, boundary^2 = 0, delta1*boundary = 0, boundary*delta2 = 0,
// and the u-map relation boundary*u - u*boundary = (1/2) delta2 (x) delta1
// on grading 1 (zero on the other gradings).
ValidationReport validate(const GradedComplex& c);

struct GradedVectorSpace {
    std::array<long, 4> dims{};
    bool operator==(const GradedVectorSpace&) const = default;
};

long euler_characteristic(const GradedVectorSpace& h);

// dims_i = rank_i - rank(boundary_i) - rank(boundary_{i+1}).
GradedVectorSpace homology(const GradedComplex& c);

// Reduced groups: HI1_red = cap_l ker(delta1 u^{2l}), HI3_red = cap_l
// ker(delta1 u^{2l+1}), HI0_red = HI0 / sum_l im(u^{2l+1} delta2),
// HI2_red = HI2 / sum_l im(u^{2l} delta2).  Requires exact entries.
GradedVectorSpace reduced_homology(const GradedComplex& c);

// h = chi(reduced) - chi(unreduced).
long h_invariant(const GradedComplex& c);

// Lefschetz number sum_i (-1)^i tr(m_* | HI_i) as a Novikov element;
// denominators that are not monomials are expanded to `depth` (the result
// then carries a floor).  Requires exact entries and a chain map.
NovikovElement lefschetz(const GradedComplex& c, const CobordismEndomorphism& m,
                         long depth = 10);

struct SplittingReport {
    bool chain_map_ok = false;
    bool relations_ok = false;
    bool identity_ok = false;
    std::string detail; // first failure, or a summary of the verified identity

    bool pass() const { return chain_map_ok && relations_ok && identity_ok; }
};

// Verifies the algebraic half of the splitting theorem:
//   Lef(m | HI_red) - Lef(m | HI) = h  (times T^0, exactly)
// for endomorphisms m compatible with the delta-filtration, i.e.
//   delta_{1,n} m = delta_{1,n} + sum_{i<n, same parity} a_i delta_{1,i}
//   m delta_{2,n} = delta_{2,n} + sum_{i<n, same parity} b_i delta_{2,i}
// (membership tested over the field on homology).
SplittingReport check_splitting_identity(const GradedComplex& c,
                                         const CobordismEndomorphism& m);

// Grading i -> (-i-1) mod 4, all structure maps transposed, every exponent
// negated; delta1/delta2 swap (with one sign to preserve the u relation).
GradedComplex dual_complex(const GradedComplex& c);

// u -> -u and delta2 -> -delta2; homology, reduced homology and h unchanged.
GradedComplex flip_complex(const GradedComplex& c);

struct TracePowerReport {
    bool hypothesis_holds = false; // tr(A^n) = tr(B^n) for m <= n < 2r + m
    bool charpoly_equal = false;   // compared when the hypothesis holds
    long first_mismatch_n = -1;    // trace window violation witness

    // The lemma's assertion: the hypothesis forces equal char polys.
    bool conclusion() const { return !hypothesis_holds || charpoly_equal; }
};

// Checks tr(A^n) = tr(B^n) over the window m <= n < 2r + m (r the size) and,
// when the window matches, compares characteristic polynomials computed by
// the division-free Faddeev-LeVerrier recursion.
TracePowerReport trace_powers_determine_charpoly(const NovMatrix& a,
                                                 const NovMatrix& b, long m);

} // namespace ski
