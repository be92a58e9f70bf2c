#pragma once

// Knot-theoretic core: Seifert pairings, Alexander polynomials, exact
// Levine-Tristram signatures at roots of unity, their jump loci, and the
// resulting counting invariant lambda_CLH = 4 lambda_C + sigma/2.

#include <optional>
#include <string>
#include <vector>

#include "ski/exact.hpp"
#include "ski/laurent.hpp"
#include "ski/rational.hpp"

namespace ski {

// Integer Seifert matrix V with det(V - V^T) = 1 (forces even size).
class SeifertMatrix {
public:
    SeifertMatrix() = default; // 0x0: unknot
    explicit SeifertMatrix(std::vector<std::vector<Int>> entries);

    std::size_t size() const { return v_.size(); }
    const Int& at(std::size_t i, std::size_t j) const { return v_[i][j]; }
    const std::vector<std::vector<Int>>& rows() const { return v_; }

    SeifertMatrix negated_transpose() const;

private:
    std::vector<std::vector<Int>> v_;
};

struct SeifertKnot {
    std::string name;
    SeifertMatrix seifert;
    bool mirrored = false;

    // Pairing actually used by every invariant (mirroring sends V to -V^T).
    SeifertMatrix pairing() const {
        return mirrored ? seifert.negated_transpose() : seifert;
    }
    std::size_t genus() const { return seifert.size() / 2; }
};

SeifertKnot unknot();

// Right-handed (a,b) torus knot, a, b >= 2 coprime; genus (a-1)(b-1)/2.
// Convention pin: torus_knot(2,3) has V = [[-1,1],[0,-1]] and sigma(-1) = -2.
SeifertKnot torus_knot(long a, long b);

// Conway-normalized Alexander polynomial: t^{-g} det(tV - V^T); symmetric,
// value 1 at t = 1.
Laurent alexander_polynomial(const SeifertKnot& k);

// Delta_K(e^{-4 pi i alpha}) != 0, decided exactly.
bool admissible(const SeifertKnot& k, const HolonomyParam& h);

// Signature of (1-w)V + (1-conj w)V^T at an arbitrary evaluation point
// w != 1 on the circle; domain_error if the form is singular there.
long signature_at(const SeifertKnot& k, const UnitRootPoint& w);

// sigma_K(e^{-4 pi i alpha}); requires admissibility (domain_error if not).
long levine_tristram_signature(const SeifertKnot& k, const HolonomyParam& h);

// A maximal open alpha-interval certificate around one jump of sigma:
// exactly one jump of sigma_K lies in (lo, hi) (subset of (0,1/2)), both
// endpoints are certified admissible, and the jump's Alexander root has the
// recorded multiplicity.
struct SignatureJump {
    Rational lo;
    Rational hi;
    long multiplicity;
};

// All jumps of alpha -> sigma_K(e^{-4 pi i alpha}) on (0, 1/2), sorted.
// If max_width is given, intervals are refined until hi - lo <= max_width.
std::vector<SignatureJump>
signature_jumps(const SeifertKnot& k,
                const std::optional<Rational>& max_width = std::nullopt);

// Integer homology sphere carrying the knot; casson is caller-supplied.
struct AmbientSphere {
    std::string name = "S3";
    Int casson = 0;
};

// lambda_CLH(Y, K, alpha) = 4 lambda_C(Y) + sigma_K(e^{-4 pi i alpha}) / 2.
Int clh_invariant(const AmbientSphere& y, const SeifertKnot& k, const HolonomyParam& h);

} // namespace ski
