#include "ski/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ski {

void QPoly::trim() {
    while (!coef_.empty() && coef_.back() == 0)
        coef_.pop_back();
}

QPoly QPoly::monomial(const Rational& c, std::size_t k) {
    if (c == 0)
        return QPoly();
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = c;
    return QPoly(std::move(v));
}

QPoly QPoly::operator-() const {
    QPoly r(*this);
    for (auto& c : r.coef_)
        c = -c;
    return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rational> v(std::max(coef_.size(), o.coef_.size()), Rational(0));
    for (std::size_t i = 0; i < coef_.size(); ++i)
        v[i] = coef_[i];
    for (std::size_t i = 0; i < o.coef_.size(); ++i)
        v[i] += o.coef_[i];
    return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero())
        return QPoly();
    std::vector<Rational> v(coef_.size() + o.coef_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        if (coef_[i] == 0)
            continue;
        for (std::size_t j = 0; j < o.coef_.size(); ++j)
            v[i + j] += coef_[i] * o.coef_[j];
    }
    return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rational& c) const {
    if (c == 0)
        return QPoly();
    QPoly r(*this);
    for (auto& x : r.coef_)
        x *= c;
    return r;
}

Rational QPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (std::size_t i = coef_.size(); i-- > 0;)
        acc = acc * x + coef_[i];
    return acc;
}

QPoly QPoly::derivative() const {
    if (coef_.size() <= 1)
        return QPoly();
    std::vector<Rational> v(coef_.size() - 1);
    for (std::size_t i = 1; i < coef_.size(); ++i)
        v[i - 1] = coef_[i] * Rational(static_cast<long>(i));
    return QPoly(std::move(v));
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
    if (d.is_zero())
        throw domain_error("polynomial division by zero");
    QPoly r(*this);
    if (r.degree() < d.degree())
        return {QPoly(), r};
    std::vector<Rational> q(static_cast<std::size_t>(r.degree() - d.degree()) + 1,
                            Rational(0));
    const Rational lead_inv = Rational(1) / d.leading();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        const std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
        const Rational c = r.leading() * lead_inv;
        q[shift] = c;
        r = r - QPoly::monomial(c, shift) * d;
    }
    return {QPoly(std::move(q)), r};
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

QPoly QPoly::monic() const {
    if (is_zero())
        return QPoly();
    return *this * (Rational(1) / leading());
}

QPoly QPoly::primitive_integer() const {
    if (is_zero())
        return QPoly();
    Int l(1);
    for (const auto& c : coef_)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    Int g(0);
    for (const auto& c : coef_) {
        Int n = c.get_num() * l / c.get_den();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    return *this * Rational(l, g);
}

// ---- Sturm -------------------------------------------------------------

std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> chain;
    QPoly g = QPoly::gcd(p, p.derivative());
    QPoly sf = g.degree() > 0 ? p.divmod(g).first : p;
    if (sf.is_zero())
        return chain;
    chain.push_back(sf);
    chain.push_back(sf.derivative());
    while (!chain.back().is_zero()) {
        QPoly r = chain[chain.size() - 2].divmod(chain.back()).second;
        chain.push_back(-r);
    }
    chain.pop_back();
    return chain;
}

static long sign_variations(const std::vector<QPoly>& chain, const Rational& x) {
    long v = 0;
    int prev = 0;
    for (const auto& p : chain) {
        const Rational y = p.eval(x);
        const int s = (y > 0) - (y < 0);
        if (s != 0) {
            if (prev != 0 && s != prev)
                ++v;
            prev = s;
        }
    }
    return v;
}

long sturm_count(const std::vector<QPoly>& chain, const Rational& a, const Rational& b) {
    if (chain.empty())
        return 0;
    return sign_variations(chain, a) - sign_variations(chain, b);
}

std::vector<SquarefreeFactor> squarefree_decomposition(const QPoly& p) {
    std::vector<SquarefreeFactor> out;
    if (p.degree() < 1)
        return out;
    // Yun's algorithm.
    QPoly a = p.monic();
    QPoly da = a.derivative();
    QPoly g = QPoly::gcd(a, da);
    QPoly w = a.divmod(g).first;
    QPoly y = da.divmod(g).first;
    long mult = 1;
    while (w.degree() > 0) {
        QPoly z = y - w.derivative();
        QPoly f = QPoly::gcd(w, z);
        if (f.degree() > 0)
            out.push_back({f, mult});
        w = w.divmod(f).first;
        y = z.divmod(f).first;
        ++mult;
    }
    return out;
}

std::vector<std::pair<Rational, Rational>>
isolate_roots(const QPoly& p, const Rational& lo, const Rational& hi) {
    std::vector<std::pair<Rational, Rational>> out;
    if (p.degree() < 1)
        return out;
    if (p.eval(lo) == 0 || p.eval(hi) == 0)
        throw domain_error("root isolation endpoints must not be roots");
    const std::vector<QPoly> chain = sturm_chain(p);
    // Work queue of (a, b] intervals with a known root count.
    std::vector<std::pair<Rational, Rational>> work{{lo, hi}};
    while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        const long n = sturm_count(chain, a, b);
        if (n == 0)
            continue;
        if (n == 1 && p.eval(b) != 0) {
            out.emplace_back(a, b);
            continue;
        }
        Rational mid = (a + b) / 2;
        // Keep endpoints off the roots so intervals stay open.
        int guard = 0;
        while (p.eval(mid) == 0) {
            mid = (a + mid) / 2;
            if (++guard > 128)
                throw domain_error("root isolation failed to find a splitting point");
        }
        work.emplace_back(a, mid);
        work.emplace_back(mid, b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<Rational, Rational>
interval_eval(const QPoly& p, const Rational& a, const Rational& b) {
    Rational lo(0), hi(0);
    for (std::size_t i = p.coef().size(); i-- > 0;) {
        // [lo, hi] * [a, b] + c
        const Rational p1 = lo * a, p2 = lo * b, p3 = hi * a, p4 = hi * b;
        lo = std::min(std::min(p1, p2), std::min(p3, p4)) + p[i];
        hi = std::max(std::max(p1, p2), std::max(p3, p4)) + p[i];
    }
    return {lo, hi};
}

// ---- cyclotomic --------------------------------------------------------

unsigned long euler_phi(unsigned long m) {
    unsigned long phi = m;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            phi -= phi / p;
            while (m % p == 0)
                m /= p;
        }
    }
    if (m > 1)
        phi -= phi / m;
    return phi;
}

const QPoly& cyclotomic(unsigned long m) {
    static std::map<unsigned long, QPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end())
        return it->second;
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    std::vector<Rational> xm(m + 1, Rational(0));
    xm[0] = -1;
    xm[m] = 1;
    QPoly num{std::move(xm)};
    for (unsigned long d = 1; d < m; ++d) {
        if (m % d != 0)
            continue;
        // Recursive dependency is on strictly smaller d; compute inline to
        // avoid re-entering the lock.
        auto dit = cache.find(d);
        if (dit == cache.end()) {
            // Fill ancestors bottom-up.
            for (unsigned long e = 1; e <= d; ++e) {
                if (d % e == 0 && cache.find(e) == cache.end()) {
                    std::vector<Rational> xe(e + 1, Rational(0));
                    xe[0] = -1;
                    xe[e] = 1;
                    QPoly n2{std::move(xe)};
                    for (unsigned long f = 1; f < e; ++f)
                        if (e % f == 0)
                            n2 = n2.divmod(cache.at(f)).first;
                    cache.emplace(e, std::move(n2));
                }
            }
            dit = cache.find(d);
        }
        num = num.divmod(dit->second).first;
    }
    return cache.emplace(m, std::move(num)).first->second;
}

const QPoly& chebyshev_c(std::size_t k) {
    static std::vector<QPoly> cs;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    if (cs.empty()) {
        cs.push_back(QPoly(Rational(2)));
        cs.push_back(QPoly::monomial(Rational(1), 1));
    }
    const QPoly z = QPoly::monomial(Rational(1), 1);
    while (cs.size() <= k)
        cs.push_back(z * cs[cs.size() - 1] - cs[cs.size() - 2]);
    return cs[k];
}

QPoly palindromic_to_z(const std::vector<Rational>& half) {
    QPoly f;
    if (half.empty())
        return f;
    f = QPoly(half[0]);
    for (std::size_t k = 1; k < half.size(); ++k)
        if (half[k] != 0)
            f = f + chebyshev_c(k) * half[k];
    return f;
}

// ---- certified cosine comparison ----------------------------------------

// arctan(1/n) partial sums bracket the true value (alternating series).
static std::pair<Rational, Rational> arctan_inv(long n, int terms) {
    Rational lo(0), hi(0), acc(0);
    Rational pw(1, n);
    const Rational n2inv = Rational(1) / Rational(Int(n) * Int(n));
    for (int k = 0; k < terms; ++k) {
        const Rational term = pw / Rational(2 * k + 1);
        if (k % 2 == 0) {
            lo = acc;          // next term increases the sum
            acc += term;
            hi = acc;
        } else {
            hi = acc;
            acc -= term;
            lo = acc;
        }
        pw *= n2inv;
    }
    if (lo > hi)
        std::swap(lo, hi);
    return {lo, hi};
}

std::pair<Rational, Rational> pi_interval(int level) {
    const int terms = 10 + 6 * level;
    // Machin: pi = 16 arctan(1/5) - 4 arctan(1/239)
    auto [a_lo, a_hi] = arctan_inv(5, terms);
    auto [b_lo, b_hi] = arctan_inv(239, terms);
    return {Rational(16) * a_lo - Rational(4) * b_hi,
            Rational(16) * a_hi - Rational(4) * b_lo};
}

// cos over a positive-width rational interval [ylo, yhi], 0 <= ylo, via
// Taylor with an alternating-tail style bound.
static std::pair<Rational, Rational>
cos_interval_of_angle(const Rational& ylo, const Rational& yhi, int terms) {
    // Evaluate sum_{k<=N} (-1)^k y^{2k} / (2k)! at both endpoints; cos is not
    // monotone, so widen by the tail bound plus the spread across [ylo,yhi]
    // of the polynomial itself evaluated by interval Horner in u = y^2.
    std::vector<Rational> c(static_cast<std::size_t>(terms) + 1);
    Rational fact(1);
    for (int k = 0; k <= terms; ++k) {
        if (k > 0)
            fact *= Rational((2 * k - 1) * 2 * k);
        c[static_cast<std::size_t>(k)] = Rational((k % 2) ? -1 : 1) / fact;
    }
    const QPoly taylor{std::vector<Rational>(c.begin(), c.end())};
    const Rational u_lo = ylo * ylo, u_hi = yhi * yhi;
    auto [lo, hi] = interval_eval(taylor, u_lo, u_hi);
    // Tail bound: |R| <= u_hi^{terms+1} / (2(terms+1))!  (terms chosen so the
    // series terms are decreasing for |y| <= 8).
    Rational tail = Rational(1);
    Rational f2(1);
    for (int k = 1; k <= terms + 1; ++k) {
        tail *= u_hi;
        f2 *= Rational((2 * k - 1) * 2 * k);
    }
    tail = tail / f2;
    if (tail < 0)
        tail = -tail;
    return {lo - tail, hi + tail};
}

int compare_two_cos(const Rational& x, const Rational& q) {
    // Exact rational cases (Niven): 2cos(2 pi x) rational iff den(2x mod 1)
    // divides nicely; handle den in {1,2,3,4,6} of x mod 1 exactly.
    const Rational xm = mod1(x);
    const Int d = den(xm);
    if (d == 1 || d == 2 || d == 3 || d == 4 || d == 6) {
        // 2cos(2 pi k/d) for the small d values
        long dd = static_cast<long>(d.get_si());
        long k = static_cast<long>(num(xm).get_si());
        Rational val;
        if (dd == 1) val = 2;
        else if (dd == 2) val = -2;
        else if (dd == 3) val = -1;
        else if (dd == 4) val = 0;
        else val = (k % 6 == 1 || k % 6 == 5) ? 1 : -1; // d == 6, k in {1,5}
        return (val > q) - (val < q);
    }
    for (int level = 0;; ++level) {
        auto [pi_lo, pi_hi] = pi_interval(level);
        // y = 2 pi xm, xm in (0,1): range-reduce by symmetry to keep |y| small:
        // cos(2 pi xm) = cos(2 pi (1 - xm)); use the representative <= 1/2.
        Rational rep = xm <= Rational(1, 2) ? xm : Rational(1) - xm;
        Rational ylo = Rational(2) * pi_lo * rep;
        Rational yhi = Rational(2) * pi_hi * rep;
        auto [clo, chi] = cos_interval_of_angle(ylo, yhi, 8 + 4 * level);
        const Rational vlo = Rational(2) * clo, vhi = Rational(2) * chi;
        if (vlo > q)
            return 1;
        if (vhi < q)
            return -1;
        if (level > 64)
            throw domain_error("certified cosine comparison failed to converge");
    }
}

} // namespace ski
