#include "ski/moduli.hpp"

#include <sstream>

#include "ski/error.hpp"

namespace ski {

Int moduli_dimension(const ModuliSpec& s) {
    return 8 * s.k + 4 * s.l - 3 * (s.b2plus - s.b1 + 1) -
           (2 * static_cast<long>(s.genus) - 2);
}

Rational moduli_energy(const ModuliSpec& s) {
    return Rational(s.k) + 2 * s.alpha * Rational(s.l) -
           s.alpha * s.alpha * Rational(s.self_intersection);
}

void validate_series(const DonaldsonSeries& d) {
    if (!(d.alpha > 0 && d.alpha < Rational(1, 2)))
        throw domain_error("Donaldson series: alpha must lie in (0, 1/2)");
    const Rational period = Rational(1) - 4 * d.alpha; // 1 - 4 alpha
    for (const auto& [k, v] : d.coefficients) {
        if (Rational(k) * period < 0) {
            std::ostringstream os;
            os << "Donaldson series: entry k = " << k
               << " has negative energy k(1-4alpha) = "
               << rat_str(Rational(k) * period);
            throw domain_error(os.str());
        }
        if (period == 0 && k != 0 && v != 0) {
            std::ostringstream os;
            os << "Donaldson series: at alpha = 1/4 the degree-zero "
                  "invariants vanish for k != 0, but D0("
               << k << ") = " << v;
            throw domain_error(os.str());
        }
    }
}

NovikovElement zero_dim_series(const DonaldsonSeries& d) {
    validate_series(d);
    const Rational period = Rational(1) - 4 * d.alpha;
    NovikovElement s;
    for (const auto& [k, v] : d.coefficients)
        s = s + NovikovElement::monomial(Rational(v), -Rational(k) * period);
    return s;
}

ProductCaseResult product_case(const AmbientSphere& y, const SeifertKnot& k,
                               const HolonomyParam& h) {
    // clh_invariant enforces admissibility of (K, alpha).
    const Int lambda = 2 * clh_invariant(y, k, h);
    ProductCaseResult out;
    out.lambda_fo = lambda;
    out.series.alpha = h.alpha;
    out.series.coefficients[Int(0)] = lambda;
    return out;
}

std::vector<Rational> mapping_torus_holonomies(const Rational& alpha_prime,
                                               long p) {
    if (p < 3 || p % 2 == 0)
        throw domain_error("mapping torus: p must be an odd integer >= 3");
    const Rational total = Rational(p) * alpha_prime;
    if (!(total > 0 && total < Rational(1, 2)))
        throw domain_error(
            "mapping torus: p * alpha' must lie strictly in (0, 1/2)");
    std::vector<Rational> lifts;
    lifts.reserve(static_cast<std::size_t>(p));
    for (long j = 0; j < p; ++j)
        lifts.push_back(alpha_prime + Rational(j, p));
    return lifts;
}

MappingTorusResult mapping_torus_lambda(const MappingTorusInput& in) {
    // Arithmetic hypotheses: alpha = p * alpha' = r/q in lowest terms with
    // p, q, r pairwise coprime and all odd, 0 < r/q < 1/2.
    const std::vector<Rational> lifts =
        mapping_torus_holonomies(in.alpha_prime, in.p); // checks p and range
    const Rational alpha = Rational(in.p) * in.alpha_prime;
    const Int r = num(alpha), q = den(alpha);
    if (r % 2 == 0 || q % 2 == 0)
        throw domain_error(
            "mapping torus: alpha = p*alpha' = " + rat_str(alpha) +
            " needs odd numerator and denominator (lifting issue for even "
            "parameters)");
    if (gcd(r, Int(in.p)) != 1 || gcd(q, Int(in.p)) != 1)
        throw domain_error("mapping torus: p, q, r must be pairwise coprime "
                           "(alpha = " +
                           rat_str(alpha) + ", p = " + std::to_string(in.p) +
                           ")");
    if (!(in.cover_is_homology_sphere && in.tau_nondegenerate))
        throw domain_error(
            "mapping torus: geometric hypotheses (homology-sphere branched "
            "cover, tau-nondegeneracy) must be asserted by the caller");

    // Admissibility of every lift, decided exactly on the Alexander
    // polynomial; offenders are all reported at once.
    const Laurent delta = alexander_polynomial(in.base_knot);
    std::vector<std::size_t> offenders;
    MappingTorusResult out;
    for (std::size_t j = 0; j < lifts.size(); ++j) {
        const UnitRootPoint w = unit_root_of(lifts[j]);
        const bool ok = !eval_laurent_at_root(delta, w).is_zero();
        HolonomyVerdict v;
        v.alpha_j = lifts[j];
        v.admissible = ok;
        v.sigma = 0;
        if (!ok) offenders.push_back(j);
        out.provenance.push_back(v);
    }
    if (!offenders.empty()) {
        std::ostringstream os;
        os << "mapping torus: inadmissible holonomy lift(s):";
        for (std::size_t j : offenders)
            os << " j=" << j << " (alpha'_" << j << " = "
               << rat_str(lifts[j]) << ")";
        throw domain_error(os.str());
    }

    Int lambda = 8 * Int(in.p) * in.base_casson;
    for (std::size_t j = 0; j < lifts.size(); ++j) {
        const long s =
            signature_at(in.base_knot, unit_root_of(lifts[j]));
        out.provenance[j].sigma = s;
        lambda += s;
    }
    out.lambda_fo = lambda;
    return out;
}

bool flip_energy_identity(const Int& k, const Rational& alpha) {
    if (!(alpha > 0 && alpha < Rational(1, 2)))
        throw domain_error("flip identity: alpha must lie in (0, 1/2)");
    const Rational lhs = Rational(k) * (Rational(1) - 4 * alpha);
    const Rational rhs =
        Rational(-k) * (Rational(1) - 4 * (Rational(1, 2) - alpha));
    return lhs == rhs;
}

long cobordism_grading_shift(long chi_w, long sigma_w, long chi_sigma) {
    const long s = chi_w + sigma_w;
    if (s % 2 != 0)
        throw domain_error(
            "grading shift: chi(W) + sigma(W) must be even, got " +
            std::to_string(s));
    const long raw = -3 * (s / 2) - chi_sigma;
    return ((raw % 4) + 4) % 4;
}

} // namespace ski
