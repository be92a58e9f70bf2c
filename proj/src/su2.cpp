#include "ski/su2.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "ski/error.hpp"
#include "ski/knot.hpp"

namespace ski {

std::pair<long, long> meridian_word(long a, long b) {
    if (a < 2 || b < 2 || std::gcd(a, b) != 1)
        throw domain_error("meridian word needs coprime parameters >= 2");
    // Extended Euclid on (b, a): find x with x*b = 1 mod a.
    long r0 = b, r1 = a, x0 = 1, x1 = 0;
    while (r1 != 0) {
        const long q = r0 / r1;
        const long r2 = r0 - q * r1;
        const long x2 = x0 - q * x1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
    }
    // r0 == 1; x0*b ≡ 1 (mod a). All solutions s = x0 + k*a; minimize |s|,
    // ties broken toward s > 0 (validated by the abelianization image).
    long s0 = x0 % a;
    long best_s = s0;
    for (long k = -2; k <= 2; ++k) {
        const long s = s0 + k * a;
        if (std::labs(s) < std::labs(best_s) ||
            (std::labs(s) == std::labs(best_s) && s > best_s))
            best_s = s;
    }
    const long best_t = (1 - best_s * b) / a;
    return {best_s, best_t};
}

TorusKnotGroup torus_knot_group(long a, long b) {
    auto [s, t] = meridian_word(a, b);
    return TorusKnotGroup{a, b, s, t};
}

namespace {

// Unit quaternions as SU(2); trace of the 2x2 matrix is 2w.
struct Quat {
    double w, x, y, z;
};

Quat qmul(const Quat& p, const Quat& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

Quat qpow(Quat q, long n) {
    if (n < 0) {
        q = {q.w, -q.x, -q.y, -q.z};
        n = -n;
    }
    Quat r{1, 0, 0, 0};
    while (n > 0) {
        if (n & 1) r = qmul(r, q);
        q = qmul(q, q);
        n >>= 1;
    }
    return r;
}

// Rotation by angle 2*half about the unit axis v: cos(half) + sin(half)*v.
Quat rotor(double half, const double v[3]) {
    const double s = std::sin(half);
    return {std::cos(half), s * v[0], s * v[1], s * v[2]};
}

constexpr double kBisectTol = 1e-10;
constexpr double kTangencyTol = 1e-10;
constexpr double kCentralTol = 1e-12;

struct ArcGeometry {
    TorusKnotGroup g;
    Frame frame;
    double phi; // pi*k1/a, half-angle of rho(x)
    double psi; // pi*k2/b, half-angle of rho(y)

    double meridian_trace(double gamma) const {
        const Quat qx = rotor(phi, frame.axis);
        double vy[3];
        for (int i = 0; i < 3; ++i)
            vy[i] = std::cos(gamma) * frame.axis[i] +
                    std::sin(gamma) * frame.ortho[i];
        const Quat qy = rotor(psi, vy);
        const Quat m = qmul(qpow(qx, g.s), qpow(qy, g.t));
        return 2.0 * m.w;
    }

    // Deviation of rho(x)^a, rho(y)^b from +-identity (gamma-independent).
    double central_defect() const {
        const Quat qx = rotor(phi, frame.axis);
        const Quat qy = rotor(psi, frame.ortho);
        auto defect = [](const Quat& q) {
            return std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z) +
                   std::fabs(std::fabs(q.w) - 1.0);
        };
        return std::max(defect(qpow(qx, g.a)), defect(qpow(qy, g.b)));
    }
};

long count_arc_crossings(const ArcGeometry& arc, double target, long grid) {
    const double pi = std::acos(-1.0);
    std::vector<double> val(static_cast<std::size_t>(grid) + 1);
    for (long i = 1; i <= grid; ++i)
        val[static_cast<std::size_t>(i)] =
            arc.meridian_trace(pi * (double)i / (double)(grid + 1)) - target;

    long count = 0;
    long prev = 0; // last index with |val| >= tol (0: none yet)
    long i = 1;
    while (i <= grid) {
        if (std::fabs(val[(std::size_t)i]) < kTangencyTol) {
            // A block of samples indistinguishable from zero: classify by the
            // flanking signs; anything ambiguous is reported, not guessed.
            long j = i;
            while (j <= grid && std::fabs(val[(std::size_t)j]) < kTangencyTol)
                ++j;
            if (prev == 0 || j > grid)
                throw domain_error(
                    "grid samples within tolerance of zero at the arc boundary; "
                    "raise the grid resolution");
            if (val[(std::size_t)prev] * val[(std::size_t)j] > 0)
                throw domain_error(
                    "grid sample within tolerance of a non-crossing tangency; "
                    "raise the grid resolution");
            ++count; // one transversal crossing inside the block
            prev = j;
            i = j + 1;
            continue;
        }
        if (prev != 0 && val[(std::size_t)prev] * val[(std::size_t)i] < 0) {
            // Refine the crossing by bisection to the contract tolerance.
            double lo = pi * (double)prev / (double)(grid + 1);
            double hi = pi * (double)i / (double)(grid + 1);
            double flo = val[(std::size_t)prev];
            while (hi - lo > kBisectTol) {
                const double mid = 0.5 * (lo + hi);
                const double fm = arc.meridian_trace(mid) - target;
                if (fm == 0.0) break;
                if (flo * fm < 0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            ++count;
        }
        prev = i;
        ++i;
    }
    return count;
}

} // namespace

EnumerationReport
enumerate_meridian_trace_solutions(const TorusKnotGroup& g, const HolonomyParam& h,
                                   long grid, std::size_t jobs, const Frame& frame) {
    if (grid < 2)
        throw domain_error("grid must be at least 2");
    if (!admissible(torus_knot(g.a, g.b), h))
        throw domain_error("holonomy parameter is not admissible for this knot");

    const double pi = std::acos(-1.0);
    const double alpha = h.alpha.get_d();
    const double target = 2.0 * std::cos(2.0 * pi * alpha);

    std::vector<RepArc> arcs;
    for (long k1 = 1; k1 < g.a; ++k1)
        for (long k2 = 1; k2 < g.b; ++k2) {
            if ((k1 + k2) % 2 != 0) continue; // central signs must agree
            arcs.push_back(RepArc{k1, k2, (k1 % 2) ? -1 : 1, 0});
        }

    auto run_arc = [&](RepArc& arc) {
        ArcGeometry geo{g, frame, pi * (double)arc.k1 / (double)g.a,
                        pi * (double)arc.k2 / (double)g.b};
        if (geo.central_defect() > kCentralTol)
            throw domain_error("central sign identity violated beyond tolerance");
        arc.solutions = count_arc_crossings(geo, target, grid);
    };

    if (jobs <= 1 || arcs.size() <= 1) {
        for (auto& arc : arcs) run_arc(arc);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(jobs);
        for (std::size_t w = 0; w < jobs; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t k = next++; k < arcs.size(); k = next++)
                        run_arc(arcs[k]);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    EnumerationReport rep;
    rep.arcs = std::move(arcs);
    for (const auto& a : rep.arcs) rep.total += a.solutions;
    return rep;
}

HeraldReport herald_consistency(long a, long b, const HolonomyParam& h,
                                long grid, std::size_t jobs) {
    HeraldReport rep;
    rep.oracle_count =
        enumerate_meridian_trace_solutions(torus_knot_group(a, b), h, grid, jobs).total;
    rep.clh = clh_invariant(AmbientSphere{}, torus_knot(a, b), h);
    rep.pass = (Int(rep.oracle_count) == abs(rep.clh));
    return rep;
}

} // namespace ski
