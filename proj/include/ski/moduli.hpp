#pragma once

// Top-level invariant formulas: moduli-space dimension/energy bookkeeping,
// zero-dimensional Donaldson series, the product-case invariant, the
// mapping-torus computation with its holonomy lifts, and the flip/grading
// identities.

#include <map>
#include <vector>

#include "ski/knot.hpp"
#include "ski/novikov.hpp"
#include "ski/rational.hpp"

namespace ski {

// Data feeding the dimension/energy formulas for M(X, Sigma, k, l, alpha).
// Defaults describe the homology S^1 x S^3 torus case (b2+ = 0, b1 = 1,
// genus 1, self-intersection 0), where the formulas reduce to 8k + 4l and
// k + 2*alpha*l.
struct ModuliSpec {
    Int k;
    Int l;
    Rational alpha;
    long b2plus = 0;
    long b1 = 1;
    long genus = 1;
    Int self_intersection = 0;
};

// 8k + 4l - 3(b2+ - b1 + 1) - (2g - 2).
Int moduli_dimension(const ModuliSpec& s);

// k + 2*alpha*l - alpha^2 * (Sigma . Sigma), in the closed-manifold
// normalization (energy divided by 64 pi^2 equals this in the torus case).
Rational moduli_energy(const ModuliSpec& s);

// Degree-zero Donaldson invariants D0(k), finitely many, at holonomy alpha.
struct DonaldsonSeries {
    std::map<Int, Int> coefficients; // k -> D0(k)
    Rational alpha;
};

// Enforces the series invariants: alpha in (0,1/2); every entry has
// k(1-4alpha) >= 0 (negative-energy moduli spaces are empty); at alpha = 1/4
// the invariants vanish for k != 0.  Throws domain_error.
void validate_series(const DonaldsonSeries& d);

// Sum_k D0(k) T^{-k(1-4alpha)} as an exact Novikov element.
NovikovElement zero_dim_series(const DonaldsonSeries& d);

// Product case X = S^1 x Y: lambda_FO = 2 lambda_CLH(Y, K, alpha) and the
// degree-zero series is concentrated at k = 0.
struct ProductCaseResult {
    Int lambda_fo;
    DonaldsonSeries series;
};
ProductCaseResult product_case(const AmbientSphere& y, const SeifertKnot& k,
                               const HolonomyParam& h);

// All allowable holonomy lifts alpha' + j/p, j = 0..p-1, each in (0,1).
// Requires p >= 3 odd and 0 < p*alpha' < 1/2 (strict).
std::vector<Rational> mapping_torus_holonomies(const Rational& alpha_prime,
                                               long p);

// Input for the mapping-torus theorem.  The arithmetic hypotheses (p, q, r
// pairwise coprime odd, 0 < r/q < 1/2 for alpha = p*alpha' = r/q) are
// checked; the geometric ones (the branched cover is a homology sphere,
// tau-nondegeneracy) cannot be decided from a Seifert matrix and must be
// asserted by the caller.
struct MappingTorusInput {
    long p = 3;
    Rational alpha_prime;
    Int base_casson;
    SeifertKnot base_knot;
    bool cover_is_homology_sphere = false; // caller-asserted
    bool tau_nondegenerate = false;        // caller-asserted
};

struct HolonomyVerdict {
    Rational alpha_j;
    bool admissible;
    long sigma; // signature contribution (valid when admissible)
};

struct MappingTorusResult {
    Int lambda_fo; // 8 p lambda_C + sum_j sigma_{K'}(e^{-4 pi i alpha'_j})
    std::vector<HolonomyVerdict> provenance;
};

MappingTorusResult mapping_torus_lambda(const MappingTorusInput& in);

// Executable form of the flip identity on zero-dimensional energies:
// E(k, -2k, alpha) = -E(-k, 2k, 1/2 - alpha), i.e. k(1-4a) = -(-k)(1-4(1/2-a)).
bool flip_energy_identity(const Int& k, const Rational& alpha);

// (-3/2 (chi + sigma) - chi_Sigma) mod 4, in 0..3; chi + sigma must be even.
long cobordism_grading_shift(long chi_w, long sigma_w, long chi_sigma);

} // namespace ski
