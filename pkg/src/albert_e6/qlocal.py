"""Local-global Witt indices of diagonal forms over Q.

Forms are lists of nonzero squarefree integers.  The Witt index over Q is the
minimum of the local indices over all places: the real place, the primes
dividing ``2 * prod(entries)``, and the remaining primes (where the form is
unimodular and only the discriminant matters).
"""

from __future__ import annotations

from functools import lru_cache

from sympy import factorint, legendre_symbol

from .fieldcore import squarefree_part


@lru_cache(maxsize=None)
def _factor(n):
    return tuple(sorted(factorint(abs(n))))


def bad_primes(entries):
    ps = {2}
    for a in entries:
        ps.update(_factor(a))
    return sorted(ps)


def _split_val(a, p):
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


@lru_cache(maxsize=None)
def hilbert(a, b, p):
    """Hilbert symbol (a, b)_p for nonzero integers; p a prime or 'inf'."""
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1
    va, u = _split_val(a, p)
    vb, w = _split_val(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(w) + va * omega(w) + vb * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (va * vb * ((p - 1) // 2)) % 2 else 1
    if vb % 2:
        sign *= legendre_symbol(u % p, p)
    if va % 2:
        sign *= legendre_symbol(w % p, p)
    return sign


def is_local_square(a, p):
    """Whether the squarefree integer ``a`` is a square in Q_p."""
    if p == "inf":
        return a > 0
    if a % p == 0:
        return False
    if p == 2:
        return a % 8 == 1
    return legendre_symbol(a % p, p) == 1


def hasse(entries, p):
    eps = 1
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            eps *= hilbert(entries[i], entries[j], p)
    return eps


def _isotropic(n, d, eps, p):
    if n <= 1:
        return False
    if n == 2:
        return is_local_square(squarefree_part(-d), p)
    if n == 3:
        return hilbert(-1, -d, p) == eps
    if n == 4:
        return (not is_local_square(d, p)) or eps == hilbert(-1, -1, p)
    return True


def local_index(entries, p):
    """Witt index of the diagonal form over Q_p (p prime) or R (p='inf')."""
    n = len(entries)
    if p == "inf":
        pos = sum(1 for a in entries if a > 0)
        return (n - abs(2 * pos - n)) // 2
    d = 1
    for a in entries:
        d = squarefree_part(d * a)
    eps = hasse(entries, p)
    idx = 0
    while _isotropic(n, d, eps, p):
        idx += 1
        n -= 2
        d = squarefree_part(-d)
        eps *= hilbert(-1, d, p)
    return idx


def generic_index(entries):
    """Index at the primes not dividing 2 * prod(entries) (minimum over them)."""
    n = len(entries)
    if n % 2:
        return n // 2
    d = (-1) ** (n // 2)
    for a in entries:
        d = squarefree_part(d * a)
    return n // 2 if d == 1 else n // 2 - 1


def rational_index(entries):
    entries = [squarefree_part(a) for a in entries]
    if not entries:
        return 0
    best = min(local_index(entries, "inf"), generic_index(entries))
    for p in bad_primes(entries):
        if best == 0:
            break
        best = min(best, local_index(entries, p))
    return best


def signature(entries):
    return sum(1 if a > 0 else -1 for a in entries)


def _squarefree_candidates(limit):
    for m in range(1, limit + 1):
        if squarefree_part(m) == m:
            yield m
            yield -m


def rational_kernel(entries, limit=20000):
    """A diagonal anisotropic form Witt-equivalent to ``entries``.

    Greedy: a value ``a`` is represented by the kernel iff adjoining ``<-a>``
    raises the Witt index; then kernel = <a> + kernel(f + <-a>).
    """
    f = [squarefree_part(a) for a in entries]
    idx = rational_index(f)
    kernel = []
    while len(f) - 2 * idx > 0:
        m = len(f) - 2 * idx
        if m == 1:
            d = (-1) ** idx
            for a in f:
                d = squarefree_part(d * a)
            kernel.append(d)
            break
        for a in _squarefree_candidates(limit):
            if rational_index(f + [-a]) == idx + 1:
                kernel.append(a)
                f = f + [-a]
                idx += 1
                break
        else:
            raise RuntimeError("kernel search exhausted its candidate range")
    return kernel
