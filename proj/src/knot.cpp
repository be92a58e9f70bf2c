#include "ski/knot.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ski/error.hpp"
#include "ski/poly.hpp"

namespace ski {

namespace {

// Fraction-free Bareiss determinant of an integer matrix.
Int integer_det(std::vector<std::vector<Int>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = t;
            }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

} // namespace

SeifertMatrix::SeifertMatrix(std::vector<std::vector<Int>> entries)
    : v_(std::move(entries)) {
    const std::size_t n = v_.size();
    for (const auto& row : v_)
        if (row.size() != n)
            throw domain_error("Seifert matrix must be square");
    std::vector<std::vector<Int>> skew(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            skew[i][j] = v_[i][j] - v_[j][i];
    if (integer_det(std::move(skew)) != 1)
        throw domain_error("not a Seifert matrix: det(V - V^T) != 1");
}

SeifertMatrix SeifertMatrix::negated_transpose() const {
    const std::size_t n = v_.size();
    std::vector<std::vector<Int>> w(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            w[i][j] = -v_[j][i];
    return SeifertMatrix(std::move(w));
}

SeifertKnot unknot() { return SeifertKnot{"unknot", SeifertMatrix(), false}; }

SeifertKnot torus_knot(long a, long b) {
    if (a < 2 || b < 2)
        throw domain_error("torus knot parameters must be >= 2");
    if (std::gcd(a, b) != 1)
        throw domain_error("torus knot parameters must be coprime");

    // V_n: (n-1)x(n-1), -1 on the diagonal, +1 on the superdiagonal; the
    // Seifert matrix of T(a,b) from its fibered-surface plumbing is
    // -(V_a (x) V_b).
    auto bidiag = [](long n) {
        std::vector<std::vector<Int>> m(n - 1, std::vector<Int>(n - 1, 0));
        for (long i = 0; i < n - 1; ++i) {
            m[i][i] = -1;
            if (i + 1 < n - 1) m[i][i + 1] = 1;
        }
        return m;
    };
    auto va = bidiag(a);
    auto vb = bidiag(b);
    const std::size_t ra = va.size(), rb = vb.size();
    std::vector<std::vector<Int>> v(ra * rb, std::vector<Int>(ra * rb, 0));
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ra; ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < rb; ++l)
                    v[i * rb + k][j * rb + l] = -(va[i][j] * vb[k][l]);

    std::ostringstream name;
    name << "T(" << std::min(a, b) << "," << std::max(a, b) << ")";
    return SeifertKnot{name.str(), SeifertMatrix(std::move(v)), false};
}

Laurent alexander_polynomial(const SeifertKnot& k) {
    const SeifertMatrix v = k.pairing();
    const long n = static_cast<long>(v.size());
    if (n == 0) return Laurent(Rational(1));
    const long g = n / 2;

    // P(t) = det(tV - V^T) has degree <= n = 2g; interpolate at the 2g+1
    // integer points t = -g..g, then shift by t^{-g}.
    std::vector<Int> xs;
    std::vector<Int> ys;
    for (long t = -g; t <= g; ++t) {
        std::vector<std::vector<Int>> m(n, std::vector<Int>(n));
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                m[i][j] = Int(t) * v.at(i, j) - v.at(j, i);
        xs.push_back(t);
        ys.push_back(integer_det(std::move(m)));
    }

    // Newton divided differences, then expansion to monomial coefficients.
    const std::size_t npts = xs.size();
    std::vector<Rational> dd(npts);
    for (std::size_t i = 0; i < npts; ++i) dd[i] = Rational(ys[i]);
    for (std::size_t level = 1; level < npts; ++level)
        for (std::size_t i = npts - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / Rational(xs[i] - xs[i - level]);
            if (i == level) break;
        }
    std::vector<Rational> coeff(npts, Rational(0));
    std::vector<Rational> basis(npts, Rational(0)); // prod (x - xs[j]), j < level
    basis[0] = 1;
    std::size_t basis_deg = 0;
    for (std::size_t level = 0; level < npts; ++level) {
        for (std::size_t d = 0; d <= basis_deg; ++d)
            coeff[d] += dd[level] * basis[d];
        if (level + 1 < npts) {
            // basis *= (x - xs[level]), highest coefficient first
            for (std::size_t d = basis_deg + 1;; --d) {
                Rational shifted = (d > 0) ? basis[d - 1] : Rational(0);
                basis[d] = shifted - Rational(xs[level]) * basis[d];
                if (d == 0) break;
            }
            ++basis_deg;
        }
    }

    Laurent out;
    for (std::size_t d = 0; d < npts; ++d)
        if (coeff[d] != 0) {
            if (!is_integer(coeff[d]))
                throw domain_error("internal: Alexander interpolation not integral");
            out.add(static_cast<long>(d) - g, coeff[d]);
        }
    return out;
}

bool admissible(const SeifertKnot& k, const HolonomyParam& h) {
    if (!(h.alpha > 0 && h.alpha < Rational(1, 2)))
        throw domain_error("holonomy parameter must satisfy 0 < alpha < 1/2");
    const Laurent delta = alexander_polynomial(k);
    return !eval_laurent_at_root(delta, h.omega).is_zero();
}

namespace {

// Signature of a Hermitian matrix over Q(zeta_m) by congruence
// diagonalization; entries are destroyed. Returns pos - neg and the nullity.
struct SigCounts {
    long pos = 0;
    long neg = 0;
    long null = 0;
};

SigCounts hermitian_signature(std::vector<std::vector<CyclotomicValue>> h) {
    SigCounts out;
    std::size_t n = h.size();
    std::vector<std::size_t> live(n);
    for (std::size_t i = 0; i < n; ++i) live[i] = i;

    while (!live.empty()) {
        // Prefer a nonzero diagonal pivot.
        std::size_t pivot = live.size();
        for (std::size_t a = 0; a < live.size(); ++a)
            if (!h[live[a]][live[a]].is_zero()) { pivot = a; break; }

        if (pivot == live.size()) {
            // Diagonal is identically zero on the live block; make a pivot
            // from an off-diagonal entry via v_i <- v_i + conj(a) v_j, which
            // puts 2|a|^2 > 0 on the diagonal. If the block is zero, it is
            // the kernel.
            std::size_t bi = live.size(), bj = live.size();
            for (std::size_t a = 0; a < live.size() && bi == live.size(); ++a)
                for (std::size_t b = a + 1; b < live.size(); ++b)
                    if (!h[live[a]][live[b]].is_zero()) { bi = a; bj = b; break; }
            if (bi == live.size()) {
                out.null += static_cast<long>(live.size());
                break;
            }
            const std::size_t i = live[bi], j = live[bj];
            const CyclotomicValue lam = h[i][j].conjugate();
            const CyclotomicValue lam_c = lam.conjugate();
            for (std::size_t r : live) h[r][i] = h[r][i] + lam * h[r][j];
            for (std::size_t s : live) h[i][s] = h[i][s] + lam_c * h[j][s];
            pivot = bi;
        }

        const std::size_t p = live[pivot];
        const CyclotomicValue d = h[p][p];
        const int sgn = real_cyclotomic_sign(d);
        if (sgn > 0)
            ++out.pos;
        else
            ++out.neg;

        live.erase(live.begin() + static_cast<long>(pivot));
        if (live.empty()) break;
        const CyclotomicValue dinv = d.inverse();
        for (std::size_t r : live) {
            const CyclotomicValue f = h[r][p] * dinv;
            if (f.is_zero()) continue;
            for (std::size_t s : live)
                h[r][s] = h[r][s] - f * h[p][s];
        }
    }
    return out;
}

std::vector<std::vector<CyclotomicValue>>
hermitian_form_at(const SeifertMatrix& v, const UnitRootPoint& w) {
    const long m = w.order();
    const std::size_t n = v.size();
    const long c = static_cast<long>(num(w.turn).get_si());
    const CyclotomicValue omega = CyclotomicValue::root_power(m, c);
    const CyclotomicValue omega_bar = omega.conjugate();
    const CyclotomicValue one = CyclotomicValue::from_rational(m, 1);
    const CyclotomicValue a = one - omega;     // multiplies V
    const CyclotomicValue b = one - omega_bar; // multiplies V^T
    std::vector<std::vector<CyclotomicValue>> h(
        n, std::vector<CyclotomicValue>(n, CyclotomicValue::zero(m)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational vij(v.at(i, j));
            const Rational vji(v.at(j, i));
            h[i][j] = a * vij + b * vji;
        }
    return h;
}

} // namespace

long signature_at(const SeifertKnot& k, const UnitRootPoint& w) {
    if (w.turn == 0)
        throw domain_error("signature undefined at omega = 1");
    const SeifertMatrix v = k.pairing();
    if (v.size() == 0) return 0;
    SigCounts c = hermitian_signature(hermitian_form_at(v, w));
    if (c.null != 0)
        throw domain_error("signature form is singular at this root of unity");
    return c.pos - c.neg;
}

long levine_tristram_signature(const SeifertKnot& k, const HolonomyParam& h) {
    if (!admissible(k, h))
        throw domain_error("holonomy parameter is not admissible for this knot");
    return signature_at(k, h.omega);
}

namespace {

// z(alpha) = 2 cos(4 pi alpha) is a strictly decreasing bijection
// (0,1/4) -> (-2,2). compare_two_cos(2 alpha, q) gives sign(z(alpha) - q).
int compare_z(const Rational& alpha, const Rational& q) {
    return compare_two_cos(Rational(2) * alpha, q);
}

// Find rational alpha in (lo_a, hi_a) with z(alpha) strictly inside (zl, zh),
// where z(lo_a) > zh and z(hi_a) < zl. Probes are Stern-Brocot simplest
// rationals, so the result has the smallest denominator the window admits
// (keeping later cyclotomic evaluations at this alpha cheap).
Rational alpha_with_z_between(Rational lo_a, Rational hi_a,
                              const Rational& zl, const Rational& zh) {
    for (int iter = 0; iter < 20000; ++iter) {
        const Rational mid = simplest_rational_between(lo_a, hi_a);
        if (compare_z(mid, zh) >= 0) {
            lo_a = mid;
        } else if (compare_z(mid, zl) <= 0) {
            hi_a = mid;
        } else {
            return mid;
        }
    }
    throw domain_error("internal: alpha bisection failed to converge");
}

struct ZRoot {
    Rational lo;
    Rational hi;
    long multiplicity;
};

} // namespace

std::vector<SignatureJump>
signature_jumps(const SeifertKnot& k, const std::optional<Rational>& max_width) {
    const Laurent delta = alexander_polynomial(k);

    // Delta is symmetric; write Delta(t) = f(z) with z = t + t^{-1}.
    if (!delta.symmetric())
        throw domain_error("internal: Alexander polynomial is not symmetric");
    const long g = std::max<long>(delta.max_exp(), 0);
    std::vector<Rational> half(static_cast<std::size_t>(g) + 1, Rational(0));
    for (long j = 0; j <= g; ++j) half[static_cast<std::size_t>(j)] = delta.coeff(j);
    const QPoly f = palindromic_to_z(half);

    std::vector<SignatureJump> jumps;
    if (f.degree() <= 0) return jumps;

    // Roots of Delta on the unit circle away from +-1 <-> roots of f in
    // (-2,2). f(2) = Delta(1) = 1 and f(-2) = Delta(-1) is odd, so the
    // endpoints are never roots.
    QPoly squarefree(Rational(1));
    std::vector<SquarefreeFactor> factors = squarefree_decomposition(f);
    for (const auto& fac : factors)
        if (fac.p.degree() > 0) squarefree = squarefree * fac.p;

    std::vector<std::pair<Rational, Rational>> boxes =
        isolate_roots(squarefree, Rational(-2), Rational(2));
    std::vector<QPoly> chain = sturm_chain(squarefree);

    std::vector<ZRoot> zroots;
    for (auto [lo, hi] : boxes) {
        // Multiplicity: the unique squarefree factor with a root in the box.
        long mult = 0;
        for (const auto& fac : factors) {
            if (fac.p.degree() <= 0) continue;
            std::vector<QPoly> fchain = sturm_chain(fac.p);
            if (sturm_count(fchain, lo, hi) == 1) { mult = fac.mult; break; }
        }
        if (mult == 0)
            throw domain_error("internal: lost multiplicity of an Alexander root");

        // Widen-with-margin: shrink the box until a buffer of its own width
        // on both sides stays inside (-2,2) and contains no other root.
        for (int guard = 0; guard < 4096; ++guard) {
            const Rational w = hi - lo;
            const Rational outer_lo = lo - w, outer_hi = hi + w;
            const bool inside = outer_lo > Rational(-2) && outer_hi < Rational(2);
            if (inside && sturm_count(chain, outer_lo, outer_hi) == 1) break;
            const Rational mid = (lo + hi) / 2;
            if (squarefree.eval(mid) == 0) {
                // Nudge: thirds keep the root interior.
                const Rational third = lo + w / 3;
                if (sturm_count(chain, lo, third) == 1)
                    hi = third;
                else
                    lo = third;
            } else if (sturm_count(chain, lo, mid) == 1) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        zroots.push_back(ZRoot{lo, hi, mult});
    }

    // Sort by decreasing z so the alpha branch (0,1/4) comes out increasing.
    std::sort(zroots.begin(), zroots.end(),
              [](const ZRoot& a, const ZRoot& b) { return a.lo > b.lo; });

    for (const auto& zr : zroots) {
        Rational zl = zr.lo, zh = zr.hi;
        const Rational w = zh - zl;
        Rational a, b;
        for (int attempt = 0;; ++attempt) {
            // alpha endpoints on both sides of the root's z-box.
            Rational left = Rational(1, 4096);
            while (compare_z(left, zh + w) <= 0) left /= 2;
            Rational right = Rational(1, 4) - Rational(1, 4096);
            while (compare_z(right, zl - w) >= 0)
                right = (right + Rational(1, 4)) / 2;
            a = alpha_with_z_between(left, right, zh, zh + w);
            b = alpha_with_z_between(a, right, zl - w, zl);
            if (!max_width || b - a <= *max_width) break;
            if (attempt > 200)
                throw domain_error("signature jump interval refinement stalled");
            // Narrow the z-box around the root and retry.
            Rational mid = (zl + zh) / 2;
            if (squarefree.eval(mid) == 0) mid = zl + (zh - zl) / 3;
            if (sturm_count(chain, zl, mid) == 1)
                zh = mid;
            else
                zl = mid;
        }

        // Both endpoints are certified admissible without any cyclotomic
        // evaluation: z(a) and z(b) lie strictly outside [zl, zh], the only
        // root of f in (zl - w, zh + w) by the Sturm count above, and
        // Delta(e^{-4 pi i alpha}) = f(z(alpha)) since Delta is symmetric.
        jumps.push_back(SignatureJump{a, b, zr.multiplicity});
        // Mirror branch: alpha and 1/2 - alpha give conjugate evaluation
        // points, so each z-root also jumps at (1/2 - b, 1/2 - a).
        jumps.push_back(SignatureJump{Rational(1, 2) - b, Rational(1, 2) - a,
                                      zr.multiplicity});
    }

    std::sort(jumps.begin(), jumps.end(),
              [](const SignatureJump& x, const SignatureJump& y) {
                  return x.lo < y.lo;
              });
    return jumps;
}

Int clh_invariant(const AmbientSphere& y, const SeifertKnot& k,
                  const HolonomyParam& h) {
    const long sigma = levine_tristram_signature(k, h);
    if (sigma % 2 != 0)
        throw domain_error("internal: odd Levine-Tristram signature");
    return 4 * y.casson + Int(sigma / 2);
}

} // namespace ski
