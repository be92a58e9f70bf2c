#include "ski/exact.hpp"

#include <map>
#include <mutex>

namespace ski {

// ---- cyclotomic field ----------------------------------------------------

CyclotomicValue::CyclotomicValue(unsigned long m, QPoly rep) : m_(m) {
    if (m == 0)
        throw domain_error("cyclotomic order must be positive");
    const QPoly& phi = cyclotomic(m);
    rep_ = rep.degree() >= phi.degree() ? rep.divmod(phi).second : std::move(rep);
}

CyclotomicValue CyclotomicValue::root_power(unsigned long m, long k) {
    long r = k % static_cast<long>(m);
    if (r < 0)
        r += static_cast<long>(m);
    return CyclotomicValue(m, QPoly::monomial(Rational(1), static_cast<std::size_t>(r)));
}

static void check_same_field(unsigned long a, unsigned long b) {
    if (a != b)
        throw domain_error("cyclotomic values from different fields");
}

CyclotomicValue CyclotomicValue::operator+(const CyclotomicValue& o) const {
    check_same_field(m_, o.m_);
    return {m_, rep_ + o.rep_};
}

CyclotomicValue CyclotomicValue::operator-(const CyclotomicValue& o) const {
    check_same_field(m_, o.m_);
    return {m_, rep_ - o.rep_};
}

CyclotomicValue CyclotomicValue::operator*(const CyclotomicValue& o) const {
    check_same_field(m_, o.m_);
    return {m_, rep_ * o.rep_};
}

CyclotomicValue CyclotomicValue::operator*(const Rational& c) const {
    return {m_, rep_ * c};
}

bool CyclotomicValue::operator==(const CyclotomicValue& o) const {
    return m_ == o.m_ && rep_ == o.rep_;
}

// Extended Euclid in Q[x]: s*rep + t*phi = gcd = 1 (phi irreducible).
CyclotomicValue CyclotomicValue::inverse() const {
    if (is_zero())
        throw domain_error("inverse of zero cyclotomic value");
    QPoly r0 = cyclotomic(m_), r1 = rep_;
    QPoly s0, s1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        QPoly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd (a nonzero constant since phi is irreducible and rep != 0)
    if (r0.degree() != 0)
        throw domain_error("cyclotomic inverse: gcd not constant");
    return {m_, s0 * (Rational(1) / r0[0])};
}

CyclotomicValue CyclotomicValue::conjugate() const {
    // zeta^k -> zeta^{m-k}
    QPoly acc;
    for (long k = 0; k <= rep_.degree(); ++k) {
        if (rep_[static_cast<std::size_t>(k)] == 0)
            continue;
        const long e = (static_cast<long>(m_) - k) % static_cast<long>(m_);
        acc = acc + QPoly::monomial(rep_[static_cast<std::size_t>(k)],
                                    static_cast<std::size_t>(e));
    }
    return {m_, acc};
}

CyclotomicValue eval_laurent_at_root(const Laurent& p, const UnitRootPoint& w) {
    const unsigned long m = w.order();
    const long c = static_cast<long>(num(w.turn).get_si());
    CyclotomicValue acc = CyclotomicValue::zero(m);
    for (const auto& [e, coeff] : p.terms())
        acc = acc + CyclotomicValue::root_power(m, c * e) * coeff;
    return acc;
}

// ---- sign certification ---------------------------------------------------

namespace {

// Per-order context for deciding signs of real elements of Q(zeta_m):
// the basis of the real subfield Q(z), z = zeta + 1/zeta, the minimal
// polynomial psi of z0 = 2cos(2 pi / m), and a shrinkable isolating
// interval for z0 (the largest real root of psi).
struct RealContext {
    unsigned long m = 0;
    unsigned long phi = 0;
    unsigned long h = 0;                  // degree of the real subfield
    std::vector<QPoly> zpower_reps;       // rep of z^j mod Phi_m, j < h
    QPoly psi;                            // minimal polynomial of z0
    Rational lo, hi;                      // isolating interval for z0

    explicit RealContext(unsigned long order) : m(order) {
        phi = euler_phi(m);
        h = phi / 2;
        const CyclotomicValue z = CyclotomicValue::root_power(m, 1) +
                                  CyclotomicValue::root_power(m, -1);
        CyclotomicValue p = CyclotomicValue::from_rational(m, Rational(1));
        for (unsigned long j = 0; j < h; ++j) {
            zpower_reps.push_back(p.rep());
            p = p * z;
        }
        // psi from the palindromic coefficients of Phi_m.
        const QPoly& phi_poly = cyclotomic(m);
        std::vector<Rational> half(h + 1);
        for (unsigned long k = 0; k <= h; ++k)
            half[k] = phi_poly[h + k];
        psi = palindromic_to_z(half);
        // Isolate the largest root: find lo with exactly one root in (lo, 3].
        const std::vector<QPoly> chain = sturm_chain(psi);
        Rational a(-3), b(3);
        while (sturm_count(chain, a, Rational(3)) > 1) {
            const Rational mid = (a + b) / 2;
            if (sturm_count(chain, mid, Rational(3)) >= 1)
                a = mid;
            else
                b = mid;
        }
        lo = a;
        hi = 3;
        // psi(lo) < 0 < psi(hi) from here on; keep that invariant while
        // refining (psi is monic with exactly one root above lo).
    }

    void refine() {
        const Rational mid = (lo + hi) / 2;
        const Rational v = psi.eval(mid);
        if (v == 0)
            throw domain_error("rational root in irreducible real subfield");
        (v < 0 ? lo : hi) = mid;
    }
};

RealContext& real_context(unsigned long m) {
    static std::map<unsigned long, RealContext> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end())
        it = cache.emplace(m, RealContext(m)).first;
    return it->second;
}

// Solve sum_j x_j * zpower_reps[j] = target over Q (throws if inconsistent).
std::vector<Rational> solve_real_coordinates(const RealContext& ctx, const QPoly& target) {
    const std::size_t rows = ctx.phi, cols = ctx.h;
    std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(cols + 1, Rational(0)));
    for (std::size_t j = 0; j < cols; ++j)
        for (long k = 0; k <= ctx.zpower_reps[j].degree(); ++k)
            A[static_cast<std::size_t>(k)][j] = ctx.zpower_reps[j][static_cast<std::size_t>(k)];
    for (long k = 0; k <= target.degree(); ++k)
        A[static_cast<std::size_t>(k)][cols] = target[static_cast<std::size_t>(k)];

    std::vector<long> pivot_col_of_row(rows, -1);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && A[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(A[rank], A[p]);
        const Rational inv = Rational(1) / A[rank][c];
        for (std::size_t j = c; j <= cols; ++j)
            A[rank][j] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || A[r][c] == 0)
                continue;
            const Rational f = A[r][c];
            for (std::size_t j = c; j <= cols; ++j)
                A[r][j] -= f * A[rank][j];
        }
        pivot_col_of_row[rank] = static_cast<long>(c);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (A[r][cols] != 0)
            throw domain_error("value is not in the real subfield");
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t r = 0; r < rank; ++r)
        x[static_cast<std::size_t>(pivot_col_of_row[r])] = A[r][cols];
    return x;
}

} // namespace

int real_cyclotomic_sign(const CyclotomicValue& v) {
    if (v.is_zero())
        return 0;
    if (!(v == v.conjugate()))
        throw domain_error("sign of a non-real cyclotomic value");
    if (v.is_rational()) {
        const Rational c = v.rational_part();
        return (c > 0) - (c < 0);
    }
    RealContext& ctx = real_context(v.order());
    const std::vector<Rational> coords = solve_real_coordinates(ctx, v.rep());
    QPoly f{std::vector<Rational>(coords.begin(), coords.end())};
    if (f.degree() <= 0) {
        const Rational c = f.is_zero() ? Rational(0) : f[0];
        return (c > 0) - (c < 0);
    }
    for (int it = 0; it < 100000; ++it) {
        auto [flo, fhi] = interval_eval(f, ctx.lo, ctx.hi);
        if (flo > 0)
            return 1;
        if (fhi < 0)
            return -1;
        ctx.refine();
    }
    throw domain_error("sign certification did not converge");
}

// ---- holonomy --------------------------------------------------------------

UnitRootPoint unit_root_of(const Rational& alpha) {
    return UnitRootPoint(Rational(-2) * alpha);
}

Int cone_parameter(const Rational& alpha) {
    // minimal nu with q | 2 nu p, gcd(p, q) = 1: q odd -> q, q even -> q/2.
    const Int q = den(alpha);
    return (q % 2 == 0) ? Int(q / 2) : q;
}

HolonomyParam validate_holonomy(const Rational& alpha) {
    if (!(alpha > 0 && alpha < Rational(1, 2)))
        throw domain_error("holonomy parameter alpha must satisfy 0 < alpha < 1/2 (got " +
                           rat_str(alpha) + ")");
    return HolonomyParam{alpha, unit_root_of(alpha), cone_parameter(alpha)};
}

} // namespace ski
