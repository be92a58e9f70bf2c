#pragma once

// Brute-force enumeration of irreducible SU(2) representations of torus-knot
// groups with prescribed meridional holonomy.  This is deliberately an
// independent numerical oracle (doubles, grids, bisection) against which the
// exact signature pipeline is checked; it shares no code with knotcore.

#include <cstddef>
#include <string>
#include <vector>

#include "ski/exact.hpp"
#include "ski/rational.hpp"

namespace ski {

// pi_1 of the torus-knot complement: <x, y | x^a = y^b>, meridian x^s y^t.
struct TorusKnotGroup {
    long a;
    long b;
    long s;
    long t;
};

// The unique Bezout pair with s*b + t*a = 1, |s| minimal (ties: s > 0).
std::pair<long, long> meridian_word(long a, long b);

TorusKnotGroup torus_knot_group(long a, long b);

// One conjugacy component of potential irreducible representations:
// rho(x) = rotation by 2*pi*k1/a, rho(y) = rotation by 2*pi*k2/b about an
// axis at angle gamma in (0, pi); k1 = k2 mod 2 so x^a = y^b = +-1 holds.
struct RepArc {
    long k1;
    long k2;
    int central_sign;
    long solutions; // meridian-trace crossings found on this arc
};

struct EnumerationReport {
    long total = 0;
    std::vector<RepArc> arcs;
};

// Count solutions of trace(rho(meridian)) = 2cos(2 pi alpha) across all
// arcs; `grid` samples per arc, each sign change refined by bisection to
// 1e-10.  `jobs` > 1 distributes arcs over threads (order-independent sum).
// `frame` optionally rotates the reference axes (the count must not change).
struct Frame {
    // Unit axis for rho(x) and a unit vector orthogonal to it spanning the
    // gamma-plane; defaults to e_z and e_x.
    double axis[3] = {0.0, 0.0, 1.0};
    double ortho[3] = {1.0, 0.0, 0.0};
};

EnumerationReport
enumerate_meridian_trace_solutions(const TorusKnotGroup& g, const HolonomyParam& h,
                                   long grid, std::size_t jobs = 1,
                                   const Frame& frame = Frame{});

// Compares the oracle count with |clh_invariant(S3, T(a,b), h)|.
struct HeraldReport {
    long oracle_count = 0;
    Int clh = 0;
    bool pass = false;
};

HeraldReport herald_consistency(long a, long b, const HolonomyParam& h,
                                long grid = 1000, std::size_t jobs = 1);

} // namespace ski
