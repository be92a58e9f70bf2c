#!/usr/bin/env python3
"""Independent oracle for the values frozen into the C++ test suite.

Everything here is computed by routes deliberately different from the library
implementation:

  * Seifert matrices for torus knots are validated against the exact integer
    identity  det(tV - V^T) * (t^a-1)(t^b-1) == (t^{ab}-1)(t-1)  evaluated with
    arbitrary-precision integers (Bareiss), not trusted blindly.
  * Signatures are counted from numpy Hermitian eigenvalues, not by congruence
    pivoting.
  * Signature jump locations come from the known unit-circle root set of the
    torus-knot Alexander polynomial, k/(ab) with a∤k, b∤k.
  * SU(2) meridian-trace solution counts use the closed form of the trace of
    x^s y^t (linear in cos of the axis angle), not grid sampling.

Run:  python3 tools/oracles/invariant_oracle.py
"""

from fractions import Fraction
from math import cos, sin, pi, gcd
import numpy as np


# ---------------------------------------------------------------- seifert

def bidiag(n):
    """(n-1)x(n-1) matrix with -1 on the diagonal, +1 on the superdiagonal."""
    m = [[0] * (n - 1) for _ in range(n - 1)]
    for i in range(n - 1):
        m[i][i] = -1
        if i + 1 < n - 1:
            m[i][i + 1] = 1
    return m


def kron(A, B):
    ra, ca, rb, cb = len(A), len(A[0]), len(B), len(B[0])
    return [[A[i // rb][j // cb] * B[i % rb][j % cb]
             for j in range(ca * cb)] for i in range(ra * rb)]


def torus_seifert(a, b):
    """Right-handed T(a,b) Seifert matrix: -(V_a ⊗ V_b)."""
    return [[-x for x in row] for row in kron(bidiag(a), bidiag(b))]


def det_fraction(M):
    """Exact determinant by fraction-free-ish elimination over Fraction."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def check_alexander_identity(a, b):
    """det(tV - V^T)(t^a-1)(t^b-1) == ±(t^{ab}-1)(t-1), exactly, at integer t."""
    V = torus_seifert(a, b)
    n = len(V)
    sign = None
    for t in (2, 3, 5):
        D = det_fraction([[t * V[i][j] - V[j][i] for j in range(n)]
                          for i in range(n)])
        lhs = D * (t**a - 1) * (t**b - 1)
        rhs = (t**(a * b) - 1) * (t - 1)
        assert lhs == rhs or lhs == -rhs, (a, b, t, lhs, rhs)
        s = 1 if lhs == rhs else -1
        assert sign in (None, s)
        sign = s
    # determinant of V - V^T must be exactly 1 (valid Seifert pairing)
    assert det_fraction([[V[i][j] - V[j][i] for j in range(n)]
                         for i in range(n)]) == 1, (a, b)
    return sign


def sigma(V, alpha):
    """Signature of (1-w)V + (1-conj w)V^T at w = e^{-4 pi i alpha} (numpy eig)."""
    w = np.exp(-4j * pi * float(alpha))
    Vn = np.array(V, dtype=complex)
    H = (1 - w) * Vn + (1 - np.conj(w)) * Vn.T
    ev = np.linalg.eigvalsh(H)
    assert min(abs(ev)) > 1e-9, (alpha, min(abs(ev)))  # admissibility guard
    return int(np.sum(ev > 0) - np.sum(ev < 0))


def torus_jumps(a, b):
    """Jump locations of sigma_{T(a,b)} in (0,1/2): alpha=(ab-k)/(2ab), a∤k, b∤k."""
    ab = a * b
    out = sorted(Fraction(ab - k, 2 * ab) for k in range(1, ab)
                 if k % a and k % b)
    return out


# ---------------------------------------------------------------- su2 count

def meridian_st(a, b):
    """(s,t) with s*b + t*a = 1, |s| minimal, ties -> s > 0."""
    best = None
    for s in range(-a, a + 1):
        if (1 - s * b) % a == 0:
            t = (1 - s * b) // a
            key = (abs(s), -s)
            if best is None or key < (abs(best[0]), -best[0]):
                best = (s, t)
    return best


def su2_count(a, b, alpha):
    """#{irreducible SU(2) reps of <x,y|x^a=y^b> with tr rho(m)=2cos(2 pi alpha)}.

    Arc (k1,k2), k1+k2 even: rho(x),rho(y) have rotation half-angles
    phi=pi k1/a, psi=pi k2/b; tr(rho(x)^s rho(y)^t)/2 =
    cos(s phi)cos(t psi) - sin(s phi)sin(t psi) cos(gamma),  gamma in (0,pi).
    Linear in cos(gamma): one solution iff target strictly inside the range.
    """
    s, t = meridian_st(a, b)
    target = cos(2 * pi * float(alpha))
    total = 0
    for k1 in range(1, a):
        for k2 in range(1, b):
            if (k1 + k2) % 2:
                continue
            phi, psi = pi * k1 / a, pi * k2 / b
            c0 = cos(s * phi) * cos(t * psi)
            amp = sin(s * phi) * sin(t * psi)
            lo, hi = c0 - abs(amp), c0 + abs(amp)
            assert abs(abs(target - c0) - abs(amp)) > 1e-9, "tangency"
            if lo < target < hi:
                total += 1
    return total


# ---------------------------------------------------------------- report

def main():
    knots = [(a, b) for a in range(2, 7) for b in range(a + 1, 36)
             if gcd(a, b) == 1 and a * b <= 35]
    for (a, b) in knots:
        assert check_alexander_identity(a, b) == 1
    print("alexander identity: OK (sign +1) for", len(knots), "torus knots")

    tref = torus_seifert(2, 3)
    print("trefoil jumps:", torus_jumps(2, 3))
    print("T(2,5) jumps:", torus_jumps(2, 5))
    rows = [
        ("sigma T(2,3) a=1/4", sigma(tref, Fraction(1, 4))),
        ("sigma T(2,3) a=1/24", sigma(tref, Fraction(1, 24))),
        ("sigma T(2,3) a=1/15", sigma(tref, Fraction(1, 15))),
        ("sigma T(2,3) a=6/15", sigma(tref, Fraction(6, 15))),
        ("sigma T(2,3) a=7/30", sigma(tref, Fraction(7, 30))),
        ("sigma T(2,3) a=11/15-1/2", sigma(tref, Fraction(11, 15) - Fraction(1, 2))),
        ("sigma T(2,5) a=1/4", sigma(torus_seifert(2, 5), Fraction(1, 4))),
        ("sigma T(2,7) a=1/4", sigma(torus_seifert(2, 7), Fraction(1, 4))),
        ("sigma T(3,4) a=1/4", sigma(torus_seifert(3, 4), Fraction(1, 4))),
        ("sigma T(3,5) a=1/4", sigma(torus_seifert(3, 5), Fraction(1, 4))),
        ("sigma T(3,5) a=1/10", sigma(torus_seifert(3, 5), Fraction(1, 10))),
        ("sigma T(4,5) a=1/4", sigma(torus_seifert(4, 5), Fraction(1, 4))),
    ]
    for name, v in rows:
        print(f"{name}: {v}")
    mirror = [[-tref[j][i] for j in range(2)] for i in range(2)]
    print("sigma mirror-T(2,3) a=1/4:", sigma(mirror, Fraction(1, 4)))

    print("su2 count T(2,3) a=1/4:", su2_count(2, 3, Fraction(1, 4)))
    print("su2 count T(2,5) a=1/4:", su2_count(2, 5, Fraction(1, 4)))
    print("su2 count T(2,3) a=1/100:", su2_count(2, 3, Fraction(1, 100)))
    print("su2 count T(3,5) a=1/4:", su2_count(3, 5, Fraction(1, 4)))
    print("su2 count T(3,4) a=1/4:", su2_count(3, 4, Fraction(1, 4)))
    print("su2 count T(2,3) a=1/12+1/100:",
          su2_count(2, 3, Fraction(1, 12) + Fraction(1, 100)))

    # herald cross-check: count == |4*0 + sigma/2| for S^3 torus knots
    for (a, b) in knots:
        V = torus_seifert(a, b)
        for alpha in (Fraction(1, 4), Fraction(1, 5), Fraction(3, 10),
                      Fraction(1, 7), Fraction(5, 11)):
            s = sigma(V, alpha)
            c = su2_count(a, b, alpha)
            assert c == abs(s) // 2, (a, b, alpha, s, c)
    print("herald consistency: OK on", len(knots), "knots x 5 alphas")

    # mapping-torus toy model: trefoil, p=3, alpha'=1/15
    lifts = [Fraction(1, 15) + Fraction(j, 3) for j in range(3)]
    sigs = [sigma(tref, a if a < Fraction(1, 2) else a - Fraction(1, 2))
            for a in lifts]
    print("toy model lifts:", lifts, "sigmas:", sigs,
          "lambda_FO:", 8 * 3 * 0 + sum(sigs))


if __name__ == "__main__":
    main()
