"""Octonion (composition) algebras.

Two models share one interface.  Elements are 8-tuples of raw field values.

* Zorn vector matrices, any characteristic.  Coordinates
  ``(alpha, beta, u1, u2, u3, v1, v2, v3)`` stand for the matrix
  ``[[alpha, u], [v, beta]]`` with product
  ``[alpha alpha' + u.v', alpha u' + beta' u - v x v'; alpha' v + beta v' + u x u', beta beta' + v.u']``
  and norm ``alpha beta - u.v``.
* Cayley-Dickson ``(a, b, c)`` doubling of the quaternion algebra ``(a, b)``,
  characteristic not 2.  Basis ``1, i, j, k=ij, l, il, jl, kl`` with
  ``i^2 = a``, ``j^2 = b``, ``l^2 = c``; the norm is the Pfister form
  ``<<a, b, c>>`` with weights ``(1, -a, -b, ab, -c, ac, bc, -abc)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import AlgebraMismatch, NoneExist, NotFound


class OctonionAlgebra:
    kind: str

    def __init__(self, field):
        self.F = field
        F = field
        self.zero = (F.zero,) * 8
        self.dim = 8

    # generic vector-space structure
    def add(self, x, y):
        a = self.F.add
        return tuple(a(p, q) for p, q in zip(x, y))

    def sub(self, x, y):
        s = self.F.sub
        return tuple(s(p, q) for p, q in zip(x, y))

    def neg(self, x):
        n = self.F.neg
        return tuple(n(p) for p in x)

    def scale(self, c, x):
        m = self.F.mul
        return tuple(m(c, p) for p in x)

    def is_zero(self, x):
        z = self.F.zero
        return all(p == z for p in x)

    def norm_bil(self, x, y):
        """N_C(x, y) = N_C(x + y) - N_C(x) - N_C(y)."""
        return self.trace(self.mul(x, self.conj(y)))

    def norm_trace_conj(self, x):
        return self.norm(x), self.trace(x), self.conj(x)

    def basis(self):
        F = self.F
        return [tuple(F.one if i == j else F.zero for j in range(8)) for i in range(8)]

    def random(self, rng, box=9):
        F = self.F
        return tuple(F.random(rng, box) for _ in range(8))

    def elements(self):
        return itertools.product(list(self.F.elements()), repeat=8)

    def check(self, other):
        if other is not self and other != self:
            raise AlgebraMismatch(f"{self!r} vs {other!r}")

    def norm_gram(self):
        """Gram matrix of the polar form N_C(x, y) in the coordinate basis."""
        b = self.basis()
        return [[self.norm_bil(p, q) for q in b] for p in b]


class ZornAlgebra(OctonionAlgebra):
    """Split octonions as Zorn vector matrices."""

    kind = "zorn_split"

    def __init__(self, field):
        super().__init__(field)
        F = field
        self.one = (F.one, F.one) + (F.zero,) * 6
        add, sub, mul = F.add, F.sub, F.mul

        def zmul(x, y):
            a, b, u1, u2, u3, v1, v2, v3 = x
            a_, b_, U1, U2, U3, V1, V2, V3 = y
            # u x u' and v x v'
            cu1 = sub(mul(u2, U3), mul(u3, U2))
            cu2 = sub(mul(u3, U1), mul(u1, U3))
            cu3 = sub(mul(u1, U2), mul(u2, U1))
            cv1 = sub(mul(v2, V3), mul(v3, V2))
            cv2 = sub(mul(v3, V1), mul(v1, V3))
            cv3 = sub(mul(v1, V2), mul(v2, V1))
            return (
                add(mul(a, a_), add(add(mul(u1, V1), mul(u2, V2)), mul(u3, V3))),
                add(mul(b, b_), add(add(mul(v1, U1), mul(v2, U2)), mul(v3, U3))),
                sub(add(mul(a, U1), mul(b_, u1)), cv1),
                sub(add(mul(a, U2), mul(b_, u2)), cv2),
                sub(add(mul(a, U3), mul(b_, u3)), cv3),
                add(add(mul(a_, v1), mul(b, V1)), cu1),
                add(add(mul(a_, v2), mul(b, V2)), cu2),
                add(add(mul(a_, v3), mul(b, V3)), cu3),
            )

        def znorm(x):
            a, b, u1, u2, u3, v1, v2, v3 = x
            return sub(mul(a, b), add(add(mul(u1, v1), mul(u2, v2)), mul(u3, v3)))

        def zbil(x, y):
            a, b, u1, u2, u3, v1, v2, v3 = x
            a_, b_, U1, U2, U3, V1, V2, V3 = y
            s = add(mul(a, b_), mul(a_, b))
            t = add(add(mul(u1, V1), mul(u2, V2)), mul(u3, V3))
            t = add(t, add(add(mul(U1, v1), mul(U2, v2)), mul(U3, v3)))
            return sub(s, t)

        self.mul, self.norm, self.norm_bil = zmul, znorm, zbil

    def conj(self, x):
        n = self.F.neg
        a, b, u1, u2, u3, v1, v2, v3 = x
        return (b, a, n(u1), n(u2), n(u3), n(v1), n(v2), n(v3))

    def trace(self, x):
        return self.F.add(x[0], x[1])

    def __eq__(self, other):
        return isinstance(other, ZornAlgebra) and self.F == other.F

    def __hash__(self):
        return hash(("zorn", self.F))

    def __repr__(self):
        return f"Zorn({self.F!r})"

    def describe(self):
        return "split"


class CayleyDicksonAlgebra(OctonionAlgebra):
    """Octonions ``(a, b, c)`` via quaternion doubling (char != 2)."""

    kind = "cayley_dickson"

    def __init__(self, field, a, b, c):
        super().__init__(field)
        F = field
        if F.char == 2:
            from .errors import UnsupportedBase

            raise UnsupportedBase("Cayley-Dickson parameters are not supported in characteristic 2")
        if any(F.is_zero(g) for g in (a, b, c)):
            raise ValueError("Cayley-Dickson parameters must be nonzero")
        self.params = (a, b, c)
        self.one = (F.one,) + (F.zero,) * 7
        add, sub, mul, neg = F.add, F.sub, F.mul, F.neg
        ab = mul(a, b)

        def qmul(x, y):
            x0, x1, x2, x3 = x
            y0, y1, y2, y3 = y
            return (
                sub(add(add(mul(x0, y0), mul(a, mul(x1, y1))), mul(b, mul(x2, y2))), mul(ab, mul(x3, y3))),
                add(add(mul(x0, y1), mul(x1, y0)), mul(b, sub(mul(x3, y2), mul(x2, y3)))),
                add(add(mul(x0, y2), mul(x2, y0)), mul(a, sub(mul(x1, y3), mul(x3, y1)))),
                add(add(mul(x0, y3), mul(x3, y0)), sub(mul(x1, y2), mul(x2, y1))),
            )

        def qconj(x):
            return (x[0], neg(x[1]), neg(x[2]), neg(x[3]))

        def omul(x, y):
            p, q = x[:4], x[4:]
            r, s = y[:4], y[4:]
            # (p, q)(r, s) = (pr + c conj(s) q, s p + q conj(r))
            first = tuple(add(u, mul(c, w)) for u, w in zip(qmul(p, r), qmul(qconj(s), q)))
            second = tuple(add(u, w) for u, w in zip(qmul(s, p), qmul(q, qconj(r))))
            return first + second

        w = (F.one, neg(a), neg(b), ab, neg(c), mul(a, c), mul(b, c), neg(mul(ab, c)))
        self.weights = w

        def onorm(x):
            acc = F.zero
            for wi, xi in zip(w, x):
                if xi != F.zero:
                    acc = add(acc, mul(wi, mul(xi, xi)))
            return acc

        def obil(x, y):
            acc = F.zero
            for wi, xi, yi in zip(w, x, y):
                acc = add(acc, mul(wi, mul(xi, yi)))
            return add(acc, acc)

        self.mul, self.norm, self.norm_bil = omul, onorm, obil

    def conj(self, x):
        n = self.F.neg
        return (x[0],) + tuple(n(p) for p in x[1:])

    def trace(self, x):
        return self.F.add(x[0], x[0])

    def __eq__(self, other):
        return isinstance(other, CayleyDicksonAlgebra) and self.F == other.F and self.params == other.params

    def __hash__(self):
        return hash(("cd", self.F, self.params))

    def __repr__(self):
        F = self.F
        return f"CD({', '.join(F.fmt(p) for p in self.params)})/{F!r}"

    def describe(self):
        return [self.F.fmt(p) for p in self.params]


def make_octonion(field, spec):
    """``"split"`` or a triple ``(a, b, c)`` of field values or literals."""
    if isinstance(spec, str):
        if spec.strip().lower() in {"split", "zorn"}:
            return ZornAlgebra(field)
        raise ValueError(f"unknown octonion spec {spec!r}")
    a, b, c = (field.parse(p) if isinstance(p, str) else p for p in spec)
    return CayleyDicksonAlgebra(field, a, b, c)


@dataclass(frozen=True)
class OctonionElement:
    """Operator sugar around a raw coordinate tuple."""

    algebra: OctonionAlgebra
    coords: tuple

    def _other(self, other):
        if not isinstance(other, OctonionElement):
            return NotImplemented
        self.algebra.check(other.algebra)
        return other.coords

    def __add__(self, other):
        return OctonionElement(self.algebra, self.algebra.add(self.coords, self._other(other)))

    def __sub__(self, other):
        return OctonionElement(self.algebra, self.algebra.sub(self.coords, self._other(other)))

    def __mul__(self, other):
        return OctonionElement(self.algebra, self.algebra.mul(self.coords, self._other(other)))

    def __neg__(self):
        return OctonionElement(self.algebra, self.algebra.neg(self.coords))

    def conj(self):
        return OctonionElement(self.algebra, self.algebra.conj(self.coords))

    def norm(self):
        return self.algebra.norm(self.coords)

    def trace(self):
        return self.algebra.trace(self.coords)


def oct_mul(C, x, y):
    return C.mul(x, y)


def oct_norm_trace_conj(C, x):
    return C.norm_trace_conj(x)


def oct_norm_zero_sampler(C, count, rng, budget=20000):
    """Return ``count`` nonzero elements of norm zero.

    Split algebras use an explicit parametrization; over finite bases a
    random search is used; over Q an anisotropic norm raises NoneExist.
    """
    F = C.F
    out = []
    if isinstance(C, ZornAlgebra):
        while len(out) < count:
            x = list(C.random(rng))
            # choose beta so that alpha beta = u.v, else zero alpha and force u.v = 0
            a = x[0]
            uv = F.add(F.add(F.mul(x[2], x[5]), F.mul(x[3], x[6])), F.mul(x[4], x[7]))
            if not F.is_zero(a):
                x[1] = F.div(uv, a)
            else:
                x[7] = F.zero
                x[4] = F.zero
                x[5] = F.zero if not F.is_zero(x[2]) else x[5]
                x[6] = F.zero if not F.is_zero(x[3]) else x[6]
            x = tuple(x)
            if not C.is_zero(x) and F.is_zero(C.norm(x)):
                out.append(x)
        return out
    if not F.is_finite:
        from .wittforms import QQ_TOWER, pfister, is_hyperbolic

        form = pfister([F.canonical(p) for p in C.params])
        if not is_hyperbolic(form, QQ_TOWER):
            raise NoneExist(f"the norm of {C!r} is anisotropic")
        return _rational_zero_search(C, count, rng, budget)
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > budget:
            if not out:
                raise NotFound("no norm-zero element found within budget")
            break
        x = C.random(rng)
        if not C.is_zero(x) and F.is_zero(C.norm(x)):
            out.append(x)
    return out


def _rational_zero_search(C, count, rng, budget):
    """Search small integer vectors for norm zeros of an isotropic Pfister norm."""
    F = C.F
    out = []
    w = C.weights
    # isotropic binary pieces first: pairs (i, j) with -w_i w_j a square
    for i, j in itertools.combinations(range(8), 2):
        r = F.sqrt(F.neg(F.div(w[i], w[j])))
        if r is not None:
            x = [F.zero] * 8
            x[i], x[j] = F.one, r
            out.append(tuple(x))
            if len(out) >= count:
                return out
    box = 2
    for _ in range(budget):
        x = tuple(rng.randint(-box, box) for _ in range(8))
        if any(x) and C.norm(x) == 0 and x not in out:
            out.append(x)
            if len(out) >= count:
                return out
        if _ % 500 == 499:
            box += 1
    if not out:
        raise NotFound("no rational norm-zero element found within budget")
    return out


def composition_law_check(C, samples=1000, rng=None, exhaustive=False):
    """Check multiplicativity, conjugation anti-automorphism and alternativity.

    Returns a dict with the number of tested pairs and per-law failures.
    """
    import random

    rng = rng or random.Random(0)
    laws = ("norm_mult", "conj_anti", "left_alt", "right_alt")
    failures = {k: 0 for k in laws}
    mul, norm, conj, F = C.mul, C.norm, C.conj, C.F

    if exhaustive:
        elems = list(C.elements())
        pairs = itertools.product(elems, elems)
    else:
        pairs = ((C.random(rng), C.random(rng)) for _ in range(samples))
    tested = 0
    for x, y in pairs:
        tested += 1
        xy = mul(x, y)
        if norm(xy) != F.mul(norm(x), norm(y)):
            failures["norm_mult"] += 1
        if mul(conj(x), conj(y)) != conj(mul(y, x)):
            failures["conj_anti"] += 1
        if not exhaustive or tested % 16 == 0:
            xx = mul(x, x)
            if mul(x, xy) != mul(xx, y):
                failures["left_alt"] += 1
            if mul(mul(y, x), x) != mul(y, xx):
                failures["right_alt"] += 1
    return {"pairs": tested, "failures": failures, "ok": not any(failures.values())}
