"""Reduced Albert algebras H_3(C, Gamma) as cubic norm structures.

An element ``sum alpha_i e_ii + sum x_i[jl]`` ((i, j, l) cyclic) is stored as
the 6-tuple ``(alpha_1, alpha_2, alpha_3, x_1, x_2, x_3)`` of raw values, the
``x_i`` being octonion coordinate tuples.  Everything (products, powers,
idempotents) is derived from the norm N, the adjoint and its polarization
``x cross y``, and the bilinear trace, so characteristic 2 needs no special
handling.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field as dc_field

from .errors import (
    AlgebraMismatch,
    GammaNotUnit,
    NegativePower,
    NotFound,
    NotPrimitiveIdempotent,
    SingularMatrix,
    NoneExist,
)
from .linalg import Subspace, mat_det, nullspace

CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


class AlbertAlgebra:
    """``H_3(C, Gamma)`` over the base field of ``C``."""

    dim = 27

    def __init__(self, C, gamma):
        F = C.F
        gamma = tuple(F.parse(g) if isinstance(g, str) else g for g in gamma)
        if len(gamma) != 3 or any(F.is_zero(g) for g in gamma):
            raise ValueError("Gamma needs three nonzero entries")
        self.C, self.F, self.gamma = C, F, gamma
        g1, g2, g3 = gamma
        mul = F.mul
        # gjl[i] = gamma_j gamma_l for (i, j, l) cyclic
        self.gjl = (mul(g2, g3), mul(g3, g1), mul(g1, g2))
        self.g123 = mul(mul(g1, g2), g3)
        self._build()
        self.zero = AlbertElement(self, (F.zero,) * 3 + (C.zero,) * 3)
        self.one = AlbertElement(self, (F.one,) * 3 + (C.zero,) * 3)

    def __eq__(self, other):
        return isinstance(other, AlbertAlgebra) and self.C == other.C and self.gamma == other.gamma

    def __hash__(self):
        return hash((self.C, self.gamma))

    def __repr__(self):
        F = self.F
        return f"H3({self.C!r}, <{', '.join(F.fmt(g) for g in self.gamma)}>)"

    def check(self, *elems):
        for e in elems:
            if e.A is not self and e.A != self:
                raise AlgebraMismatch(f"{e.A!r} vs {self!r}")

    # raw operations on 6-tuples; bound once as closures
    def _build(self):
        F, C = self.F, self.C
        add, sub, mul, neg = F.add, F.sub, F.mul, F.neg
        cmul, cnorm, cbil, cconj, ctrace = C.mul, C.norm, C.norm_bil, C.conj, C.trace
        cadd, csub, cscale = C.add, C.sub, C.scale
        gam, gjl, g123 = self.gamma, self.gjl, self.g123
        zero, czero = F.zero, C.zero

        def r_add(x, y):
            return (add(x[0], y[0]), add(x[1], y[1]), add(x[2], y[2]),
                    cadd(x[3], y[3]), cadd(x[4], y[4]), cadd(x[5], y[5]))

        def r_sub(x, y):
            return (sub(x[0], y[0]), sub(x[1], y[1]), sub(x[2], y[2]),
                    csub(x[3], y[3]), csub(x[4], y[4]), csub(x[5], y[5]))

        def r_scale(c, x):
            return (mul(c, x[0]), mul(c, x[1]), mul(c, x[2]),
                    cscale(c, x[3]), cscale(c, x[4]), cscale(c, x[5]))

        def r_norm(x):
            a1, a2, a3, x1, x2, x3 = x
            val = mul(mul(a1, a2), a3)
            val = sub(val, mul(gjl[0], mul(a1, cnorm(x1))))
            val = sub(val, mul(gjl[1], mul(a2, cnorm(x2))))
            val = sub(val, mul(gjl[2], mul(a3, cnorm(x3))))
            return add(val, mul(g123, ctrace(cmul(cmul(x1, x2), x3))))

        def r_sharp(x):
            a = x[:3]
            xs = x[3:]
            diag = []
            off = []
            for i, j, l in CYCLIC:
                diag.append(sub(mul(a[j], a[l]), mul(gjl[i], cnorm(xs[i]))))
                off.append(csub(cscale(gam[i], cconj(cmul(xs[j], xs[l]))), cscale(a[i], xs[i])))
            return (diag[0], diag[1], diag[2], off[0], off[1], off[2])

        def r_cross(x, y):
            a, xs = x[:3], x[3:]
            b, ys = y[:3], y[3:]
            diag = []
            off = []
            for i, j, l in CYCLIC:
                diag.append(sub(add(mul(a[j], b[l]), mul(b[j], a[l])), mul(gjl[i], cbil(xs[i], ys[i]))))
                t = cadd(cmul(xs[j], ys[l]), cmul(ys[j], xs[l]))
                off.append(csub(cscale(gam[i], cconj(t)), cadd(cscale(a[i], ys[i]), cscale(b[i], xs[i]))))
            return (diag[0], diag[1], diag[2], off[0], off[1], off[2])

        def r_tbil(x, y):
            val = add(add(mul(x[0], y[0]), mul(x[1], y[1])), mul(x[2], y[2]))
            for i in range(3):
                val = add(val, mul(gjl[i], cbil(x[3 + i], y[3 + i])))
            return val

        def r_trace(x):
            return add(add(x[0], x[1]), x[2])

        def r_strace(x):
            val = zero
            for i, j, l in CYCLIC:
                val = add(val, sub(mul(x[j], x[l]), mul(gjl[i], cnorm(x[3 + i]))))
            return val

        def r_uop(x, y):
            return r_sub(r_scale(r_tbil(x, y), x), r_cross(r_sharp(x), y))

        def r_triple(x, y, z):
            # {x, y, z} = T(x,y) z + T(y,z) x - (z cross x) cross y
            return r_sub(r_add(r_scale(r_tbil(x, y), z), r_scale(r_tbil(y, z), x)), r_cross(r_cross(z, x), y))

        self.r_add, self.r_sub, self.r_scale = r_add, r_sub, r_scale
        self.r_norm, self.r_sharp, self.r_cross = r_norm, r_sharp, r_cross
        self.r_tbil, self.r_trace, self.r_strace = r_tbil, r_trace, r_strace
        self.r_uop, self.r_triple = r_uop, r_triple
        self.r_zero = (zero,) * 3 + (czero,) * 3
        self.r_one = (F.one,) * 3 + (czero,) * 3

    def r_neg(self, x):
        return self.r_scale(self.F.neg(self.F.one), x)

    def r_square(self, x):
        """x^2 = x# + T(x) x - S(x) 1."""
        return self.r_sub(self.r_add(self.r_sharp(x), self.r_scale(self.r_trace(x), x)),
                          self.r_scale(self.r_strace(x), self.r_one))

    def r_is_zero(self, x):
        z, C = self.F.zero, self.C
        return x[0] == z and x[1] == z and x[2] == z and all(C.is_zero(p) for p in x[3:])

    # coordinates
    def to_vec(self, x):
        raw = x.c if isinstance(x, AlbertElement) else x
        return tuple(raw[:3]) + tuple(raw[3]) + tuple(raw[4]) + tuple(raw[5])

    def from_vec(self, v):
        v = tuple(v)
        return AlbertElement(self, v[:3] + (v[3:11], v[11:19], v[19:27]))

    def basis(self):
        F = self.F
        out = []
        for i in range(27):
            out.append(self.from_vec(tuple(F.one if i == j else F.zero for j in range(27))))
        return out

    def element(self, alpha, xs=None):
        """Build from diagonal scalars and (optional) three octonion tuples."""
        F, C = self.F, self.C
        alpha = tuple(F.parse(a) if isinstance(a, str) else a for a in alpha)
        xs = tuple(xs) if xs is not None else (C.zero,) * 3
        return AlbertElement(self, alpha + tuple(tuple(x) for x in xs))

    def e(self, i):
        """Diagonal idempotent e_ii (0-based index)."""
        F = self.F
        alpha = [F.zero] * 3
        alpha[i] = F.one
        return self.element(alpha)

    def offdiag(self, i, c):
        """The element c[jl] with (i, j, l) cyclic (0-based i)."""
        C = self.C
        xs = [C.zero] * 3
        xs[i] = tuple(c)
        return self.element((self.F.zero,) * 3, xs)

    def random(self, rng, box=9):
        F, C = self.F, self.C
        return AlbertElement(self, tuple(F.random(rng, box) for _ in range(3)) + tuple(C.random(rng, box) for _ in range(3)))

    def scalar(self, c):
        return AlbertElement(self, self.r_scale(c, self.r_one))

    def linear_map_rows(self, fn, out_dim=27):
        """Matrix rows (output coordinates) of a linear map given on elements."""
        images = [self.to_vec(fn(b)) if isinstance(fn(b), AlbertElement) else fn(b) for b in self.basis()]
        return [[images[k][r] for k in range(27)] for r in range(len(images[0]))]

    def kernel(self, fn):
        """Subspace of A killed by the linear map ``fn`` (elements to tuples)."""
        basis = self.basis()
        images = [fn(b) for b in basis]
        m = len(images[0])
        rows = [[images[k][r] for k in range(27)] for r in range(m)]
        return Subspace.span(self.F, nullspace(self.F, rows, 27), 27)

    def image(self, fn):
        return Subspace.span(self.F, [tuple(fn(b)) for b in self.basis()], 27)


@dataclass(frozen=True, eq=False)
class AlbertElement:
    """An element of ``H_3(C, Gamma)``; raw data in ``c``."""

    A: AlbertAlgebra
    c: tuple

    @property
    def alpha(self):
        return self.c[:3]

    @property
    def xs(self):
        return self.c[3:]

    def __add__(self, other):
        self.A.check(other)
        return AlbertElement(self.A, self.A.r_add(self.c, other.c))

    def __sub__(self, other):
        self.A.check(other)
        return AlbertElement(self.A, self.A.r_sub(self.c, other.c))

    def __neg__(self):
        return AlbertElement(self.A, self.A.r_neg(self.c))

    def __rmul__(self, scalar):
        F = self.A.F
        if isinstance(scalar, int):
            scalar = F.from_int(scalar)
        return AlbertElement(self.A, self.A.r_scale(scalar, self.c))

    def scale(self, scalar):
        return AlbertElement(self.A, self.A.r_scale(scalar, self.c))

    def __eq__(self, other):
        return isinstance(other, AlbertElement) and self.A == other.A and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def is_zero(self):
        return self.A.r_is_zero(self.c)

    def vec(self):
        return self.A.to_vec(self)

    def to_json(self):
        F = self.A.F
        return {
            "alpha": [F.fmt(a) for a in self.c[:3]],
            "x1": [F.fmt(a) for a in self.c[3]],
            "x2": [F.fmt(a) for a in self.c[4]],
            "x3": [F.fmt(a) for a in self.c[5]],
        }

    def __repr__(self):
        return f"AlbertElement({self.to_json()})"


def norm(x):
    return x.A.r_norm(x.c)


def adjoint(x):
    return AlbertElement(x.A, x.A.r_sharp(x.c))


def cross(x, y):
    x.A.check(y)
    return AlbertElement(x.A, x.A.r_cross(x.c, y.c))


def traces(x, y=None):
    """``(T(x,y), T(x), S(x), S(x,y))``; y defaults to x."""
    A = x.A
    if y is None:
        y = x
    A.check(y)
    F = A.F
    txy = A.r_tbil(x.c, y.c)
    tx = A.r_trace(x.c)
    sxy = F.sub(F.mul(tx, A.r_trace(y.c)), txy)
    return txy, tx, A.r_strace(x.c), sxy


def t_bil(x, y):
    x.A.check(y)
    return x.A.r_tbil(x.c, y.c)


def trace(x):
    return x.A.r_trace(x.c)


def s_quad(x):
    return x.A.r_strace(x.c)


def u_op(x, y):
    x.A.check(y)
    return AlbertElement(x.A, x.A.r_uop(x.c, y.c))


def u_bil(x, z, y):
    """U_{x,z} y = {x, y, z}."""
    return triple(x, y, z)


def triple(x, y, z):
    x.A.check(y, z)
    return AlbertElement(x.A, x.A.r_triple(x.c, y.c, z.c))


def circle(a, b):
    """a o b := U_{a,b} 1."""
    return triple(a, a.A.one, b)


def square(x):
    return AlbertElement(x.A, x.A.r_square(x.c))


def power(x, n):
    """x^0 = 1, x^1 = x, x^{n+2} = U_x x^n."""
    if n < 0:
        raise NegativePower("negative powers are not defined")
    A = x.A
    if n == 0:
        return A.one
    if n == 1:
        return x
    return AlbertElement(A, A.r_uop(x.c, power(x, n - 2).c))


@dataclass(frozen=True)
class ElementClass:
    tag: str
    N: object
    S: object
    T: object
    minpoly: tuple  # coefficients of t^3 - T t^2 + S t - N, low degree first
    is_zero: bool = False

    @property
    def nilpotent(self):
        return self.tag in ("nilpotent_sqzero", "nilpotent_cube")


def classify(x):
    A = x.A
    F = A.F
    N, S, T = A.r_norm(x.c), A.r_strace(x.c), A.r_trace(x.c)
    minpoly = (F.neg(N), S, F.neg(T), F.one)
    zero_el = x.is_zero()
    sharp_zero = A.r_is_zero(A.r_sharp(x.c))
    if not F.is_zero(N):
        tag = "invertible"
    elif zero_el:
        tag = "other_rank2"
    elif sharp_zero:
        tag = "singular" if not F.is_zero(T) else "nilpotent_sqzero"
    elif F.is_zero(T) and F.is_zero(S):
        tag = "nilpotent_cube"
    else:
        tag = "other_rank2"
    return ElementClass(tag, N, S, T, minpoly, zero_el)


def is_primitive_idempotent(e):
    A = e.A
    return (A.r_is_zero(A.r_sharp(e.c)) and A.r_uop(e.c, e.c) == e.c
            and A.r_trace(e.c) == A.F.one)


@dataclass
class PeirceData:
    A2: Subspace
    A1: Subspace
    A0: Subspace
    S_gram: list  # Gram matrix of S(x, y) on the A0 basis
    sharp_check: bool


def peirce(e):
    """Peirce spaces of a primitive idempotent and the form S on A_0(e)."""
    A = e.A
    F = A.F
    if not is_primitive_idempotent(e):
        raise NotPrimitiveIdempotent("e must satisfy e# = 0, U_e e = e, T(e) = 1")
    f = A.one - e
    A2 = Subspace.span(F, [e.vec()], 27)

    def a1_map(x):
        return (A.r_trace(x.c),) + A.to_vec(A.r_cross(e.c, x.c))

    def a0_map(x):
        ex = A.r_cross(e.c, x.c)
        rhs = A.r_sub(A.r_scale(A.r_trace(x.c), f.c), x.c)
        return A.to_vec(A.r_sub(ex, rhs))

    A1 = A.kernel(a1_map)
    A0 = A.kernel(a0_map)
    basis0 = [A.from_vec(v) for v in A0.basis]
    gram = [[traces(p, q)[3] for q in basis0] for p in basis0]
    ok = True
    for p in basis0 + [p + q for p, q in zip(basis0, basis0[1:])]:
        if adjoint(p) != e.scale(s_quad(p)):
            ok = False
    return PeirceData(A2, A1, A0, gram, ok)


def identity_suite(A, samples=1000, seed=0, box=9, subspace_dim=None):
    """Evaluate the cubic-norm identity list on random triples.

    With ``subspace_dim`` set (finite fields) every triple of elements from a
    random subspace of that dimension is tested instead.
    Returns ``{name: {"tested": n, "failures": m}}`` plus an ``ok`` flag.
    """
    rng = _random.Random(seed)
    F = A.F
    names = ("adj", "unt", "ads", "pad", "eul", "pau", "ppad", "mineq", "mineq4", "jtp", "norm_add", "s_trace")
    report = {n: {"tested": 0, "failures": 0} for n in names}
    add, sub, mul = A.r_add, A.r_sub, A.r_scale
    sharp, cross_, tb, tr, st, nm, uop = A.r_sharp, A.r_cross, A.r_tbil, A.r_trace, A.r_strace, A.r_norm, A.r_uop
    one = A.r_one
    three = F.from_int(3)

    def record(name, ok):
        report[name]["tested"] += 1
        if not ok:
            report[name]["failures"] += 1

    if subspace_dim is not None:
        import itertools

        gens = [A.random(rng, box).c for _ in range(subspace_dim)]
        elems = []
        for coeffs in itertools.product(list(F.elements()), repeat=subspace_dim):
            v = A.r_zero
            for c, g in zip(coeffs, gens):
                v = add(v, mul(c, g))
            elems.append(v)
        triples = itertools.product(elems, elems, elems)
        limit = None
    else:
        triples = None
        limit = samples

    def gen():
        if triples is not None:
            yield from triples
        else:
            for _ in range(limit):
                yield A.random(rng, box).c, A.random(rng, box).c, A.random(rng, box).c

    cache = {}
    for x, y, z in gen():
        key = x
        if key in cache:
            xs, N, T, S, x2, x3 = cache[key]
        else:
            xs = sharp(x)
            N, T, S = nm(x), tr(x), st(x)
            x2 = uop(x, one)
            x3 = uop(x, x)
            cache = {key: (xs, N, T, S, x2, x3)}
        record("adj", sharp(xs) == mul(N, x))
        record("unt", cross_(one, x) == sub(mul(T, one), x))
        record("ads", xs == add(sub(x2, mul(T, x)), mul(S, one)))
        xy = cross_(x, y)
        txsy = tb(xs, y)
        record("pad", cross_(xs, xy) == add(mul(N, y), mul(txsy, x)))
        record("eul", tb(xs, x) == F.mul(three, N))
        lhs = cross_(xs, x)
        rhs = sub(sub(mul(F.sub(F.mul(S, T), N), one), mul(S, x)), mul(T, xs))
        record("pau", lhs == rhs)
        xz = cross_(x, z)
        lhs = add(cross_(xs, cross_(y, z)), cross_(xy, xz))
        rhs = add(add(mul(txsy, z), mul(tb(xs, z), y)), mul(tb(cross_(y, z), x), x))
        record("ppad", lhs == rhs)
        mp = sub(add(sub(x3, mul(T, x2)), mul(S, x)), mul(N, one))
        record("mineq", A.r_is_zero(mp))
        x4 = uop(x, x2)
        mp4 = sub(add(sub(x4, mul(T, x3)), mul(S, x2)), mul(N, x))
        record("mineq4", A.r_is_zero(mp4))
        polar = sub(sub(uop(add(x, z), y), uop(x, y)), uop(z, y))
        expansion = sub(add(mul(tb(x, y), z), mul(tb(y, z), x)), cross_(cross_(z, x), y))
        record("jtp", polar == expansion)
        ys = sharp(y)
        record("norm_add", nm(add(x, y)) == F.add(F.add(N, tb(xs, y)), F.add(tb(x, ys), nm(y))))
        record("s_trace", S == tr(xs))
    report_ok = all(v["failures"] == 0 for v in report.values())
    return {"identities": report, "ok": report_ok}


def gl3_act(g, j):
    """phi_g(j) = g j g^t on H_3(C, 1)."""
    A = j.A
    F, C = A.F, A.C
    if any(gm != F.one for gm in A.gamma):
        raise GammaNotUnit("the GL_3 action needs Gamma = <1, 1, 1>")
    if F.is_zero(mat_det(F, g)):
        raise SingularMatrix("g must be invertible")
    alpha = j.c[:3]
    xs = j.c[3:]
    one = C.one

    def entry(p, q):
        """Matrix entry M[p][q] as an octonion."""
        if p == q:
            return C.scale(alpha[p], one)
        for i, jj, l in CYCLIC:
            if (p, q) == (jj, l):
                return xs[i]
            if (p, q) == (l, jj):
                return C.conj(xs[i])
        raise AssertionError

    new_alpha = []
    for r in range(3):
        val = F.zero
        for p in range(3):
            val = F.add(val, F.mul(F.mul(g[r][p], g[r][p]), alpha[p]))
        for p in range(3):
            for q in range(p + 1, 3):
                val = F.add(val, F.mul(F.mul(g[r][p], g[r][q]), C.trace(entry(p, q))))
        new_alpha.append(val)
    new_x = []
    for i, jj, l in CYCLIC:
        acc = C.zero
        for p in range(3):
            for q in range(3):
                coef = F.mul(g[jj][p], g[l][q])
                if not F.is_zero(coef):
                    acc = C.add(acc, C.scale(coef, entry(p, q)))
        new_x.append(acc)
    return AlbertElement(A, tuple(new_alpha) + tuple(new_x))


def find_nilpotent(A, budget=2000, rng=None, box=3):
    """Search for a nonzero nilpotent; raise NotFound when the budget runs out.

    Candidates: c[jl] with N_C(c) = 0, then a e_jj - a e_ll + c[jl] with
    a^2 = -gamma_j gamma_l N_C(c), then random elements of small height.
    """
    from .octonion import oct_norm_zero_sampler

    rng = rng or _random.Random(0)
    F, C = A.F, A.C
    try:
        zeros = oct_norm_zero_sampler(C, 1, rng)
    except (NoneExist, NotFound):
        zeros = []
    for c in zeros:
        x = A.offdiag(0, c)
        if classify(x).nilpotent:
            return x
    tries = 0
    basis = C.basis()
    while tries < budget:
        tries += 1
        if tries <= 8 * 3:
            i = (tries - 1) // 8
            c = basis[(tries - 1) % 8]
        else:
            i = rng.randrange(3)
            c = C.random(rng, box)
        _, j, l = CYCLIC[i]
        n = C.norm(c)
        if C.is_zero(c):
            continue
        target = F.neg(F.mul(A.gjl[i], n))
        if F.is_zero(target):
            x = A.offdiag(i, c)
        else:
            a = F.sqrt(target)
            if a is None:
                continue
            x = A.e(j).scale(a) - A.e(l).scale(a) + A.offdiag(i, c)
        if classify(x).nilpotent:
            return x
    raise NotFound(f"no nilpotent element found within budget {budget}")


class GammaIso:
    """Explicit isomorphism H_3(C, Gamma) -> H_3(C, Gamma') built from elementary moves.

    Moves: ``("scale", lam)`` multiplies Gamma by lam and divides all x_i by lam;
    ``("square", i, mu)`` multiplies gamma_i by mu^2 and divides x_j, x_l by mu;
    ``("cycle",)`` sends (gamma_1, gamma_2, gamma_3) to (gamma_2, gamma_3, gamma_1)
    together with the coordinates.  All moves preserve N and 1.
    """

    def __init__(self, A):
        self.source = A
        self.target = A
        self.moves = []

    def _apply_move(self, move, x, F, C, inverse=False):
        kind = move[0]
        if kind == "scale":
            lam = move[1] if inverse else F.inv(move[1])
            return x[:3] + tuple(C.scale(lam, p) for p in x[3:])
        if kind == "square":
            i, mu = move[1], move[2]
            c = mu if inverse else F.inv(mu)
            xs = list(x[3:])
            for j in range(3):
                if j != i:
                    xs[j] = C.scale(c, xs[j])
            return x[:3] + tuple(xs)
        if kind == "cycle":
            if inverse:
                return (x[2], x[0], x[1], x[5], x[3], x[4])
            return (x[1], x[2], x[0], x[4], x[5], x[3])
        raise ValueError(kind)

    def then(self, *move):
        A = self.target
        F = A.F
        g = list(A.gamma)
        if move[0] == "scale":
            g = [F.mul(move[1], x) for x in g]
        elif move[0] == "square":
            g[move[1]] = F.mul(g[move[1]], F.mul(move[2], move[2]))
        elif move[0] == "cycle":
            g = [g[1], g[2], g[0]]
        self.moves.append(move)
        self.target = AlbertAlgebra(A.C, tuple(g))
        return self

    def __call__(self, x):
        raw = x.c
        for mv in self.moves:
            raw = self._apply_move(mv, raw, self.source.F, self.source.C)
        return AlbertElement(self.target, raw)

    def inverse(self, y):
        raw = y.c
        for mv in reversed(self.moves):
            raw = self._apply_move(mv, raw, self.source.F, self.source.C, inverse=True)
        return AlbertElement(self.source, raw)

    def verify(self, samples=50, rng=None, box=5):
        rng = rng or _random.Random(0)
        A, B = self.source, self.target
        if self(A.one) != B.one:
            return False
        for _ in range(samples):
            x, y = A.random(rng, box), A.random(rng, box)
            if norm(self(x)) != norm(x):
                return False
            if self(u_op(x, y)) != u_op(self(x), self(y)):
                return False
            if self.inverse(self(x)) != x:
                return False
        return True
