"""Independent brute-force oracles.  Nothing here imports the package's
decision procedures; only plain integers, itertools and numpy."""

from itertools import product
from math import isqrt

import numpy as np
from sympy import factorint


def gfp_index(p, coeffs):
    """Witt index of sum a_i x_i^2 over GF(p) by brute force (dim <= 4)."""
    n = len(coeffs)
    q = lambda v: sum(a * x * x for a, x in zip(coeffs, v)) % p
    b = lambda v, w: sum(a * x * y for a, x, y in zip(coeffs, v, w)) % p
    iso = [v for v in product(range(p), repeat=n) if any(v) and q(v) == 0]
    if not iso:
        return 0
    if n < 4:
        return 1
    # a totally isotropic plane: two independent isotropic vectors orthogonal to each other
    for i, v in enumerate(iso):
        for w in iso[i + 1:]:
            if b(v, w) == 0 and _independent(p, v, w):
                return 2
    return 1


def _independent(p, v, w):
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if (v[i] * w[j] - v[j] * w[i]) % p:
                return True
    return False


def _all_count(coeffs, m):
    """Solutions of sum a_i x_i^2 = 0 mod m (cyclic convolution of value histograms)."""
    if m == 1:
        return 1
    xs = np.arange(m, dtype=np.int64)
    sq = (xs * xs) % m
    total = np.zeros(m, dtype=np.int64)
    total[0] = 1
    for a in coeffs:
        hist = np.bincount((a * sq) % m, minlength=m).astype(np.int64)
        new = np.zeros(m, dtype=np.int64)
        for r in np.nonzero(total)[0]:
            new += np.roll(hist, r) * total[r]
        total = new
    return int(total[0])


def _primitive_count(coeffs, p, k):
    """Solutions mod p^k with some x_i a unit.

    Non-primitive ones are x = p y with sum a y^2 = 0 mod p^(k-2); each class
    of y mod p^(k-2) has p^n lifts mod p^(k-1).
    """
    n = len(coeffs)
    return _all_count(coeffs, p ** k) - p ** n * _all_count(coeffs, p ** (k - 2))


def locally_anisotropic(coeffs):
    """True if some place obstructs a nonzero zero; None if none found."""
    if all(a > 0 for a in coeffs) or all(a < 0 for a in coeffs):
        return True
    primes = {2}
    for a in coeffs:
        primes.update(factorint(abs(a)))
    for p in sorted(primes):
        k = 6 if p == 2 else 3
        if _primitive_count(coeffs, p, k) == 0:
            return True
    return None


def box_zero(coeffs, box):
    """A primitive nonzero integer zero with coordinates in [-box, box], or None.

    The last coordinate is solved for instead of enumerated.
    """
    n = len(coeffs)
    a_last = coeffs[-1]
    for head in product(range(-box, box + 1), repeat=n - 1):
        s = sum(a * x * x for a, x in zip(coeffs, head))
        if s == 0:
            if any(head):
                return head + (0,)
            continue
        if s % a_last:
            continue
        t = -s // a_last
        if t < 0:
            continue
        r = isqrt(t)
        if r * r == t:
            return head + (r,)
    return None


def rational_index(coeffs, box=12):
    """Witt index over Q of a diagonal form of dim <= 4, or None if undecided.

    Isotropy: a bounded integer zero proves it; a real or p-adic obstruction
    disproves it.  dim 2: index 1 iff -ab is a square.  dim 4 and isotropic:
    index 2 iff the determinant is a square (the complementary binary form
    then has determinant -1 and is hyperbolic).
    """
    n = len(coeffs)
    if n <= 1:
        return 0
    zero = box_zero(coeffs, box)
    if zero is None:
        if locally_anisotropic(coeffs) is True:
            return 0
        return None
    if n < 4:
        return 1
    det = 1
    for a in coeffs:
        det *= a
    r = isqrt(abs(det))
    return 2 if det > 0 and r * r == det else 1


def hyperbolic_quadric_points(q, n):
    """Nonzero zeros of a hyperbolic form of dimension 2n over GF(q)."""
    return (q ** n - 1) * (q ** (n - 1) + 1)
