"""Inner ideals of an Albert algebra, hyperlines and the psi operator.

Subspaces live in the 27-dimensional coordinate space of :class:`AlbertAlgebra`.
Inner-ideal tests use the basis plus polarization criterion: ``U_x y`` is
quadratic in x, so ``U_X A`` lies in X as soon as ``U_{b_i} A`` and
``U_{b_i, b_j} A`` do for a basis ``(b_i)``.  Over GF(2) the test also
enumerates X.
"""

from __future__ import annotations

import itertools
import random as _random
from dataclasses import dataclass

from .albert import AlbertElement, adjoint, cross
from .errors import (
    ConstructionFailed,
    DimensionMismatch,
    NotInnerIdeal,
    NotSingular,
    RankMismatch,
)
from .linalg import Echelon, Subspace, nullspace


@dataclass(frozen=True)
class IdealKind:
    tag: str  # "singular", "hyperline", "not_inner", "improper", "inner_other"
    dim: int
    maximal_5prime: object = None  # True/False when certified, None otherwise

    def __str__(self):
        if self.tag == "singular":
            return f"singular({self.dim}{chr(8242) if self.maximal_5prime else ''})"
        return self.tag


def _elements(A, X):
    return [A.from_vec(v) for v in X.basis]


def _check(A, X):
    if X.n != 27:
        raise DimensionMismatch(f"expected a subspace of the 27-dimensional algebra, got ambient {X.n}")


def span(A, elems):
    return Subspace.span(A.F, [A.to_vec(e) for e in elems], 27)


def is_singular_space(A, X):
    """x# = 0 on X, via b_i# = 0 and b_i x b_j = 0."""
    bs = [A.from_vec(v).c for v in X.basis]
    for i, b in enumerate(bs):
        if not A.r_is_zero(A.r_sharp(b)):
            return False
        for c in bs[i + 1:]:
            if not A.r_is_zero(A.r_cross(b, c)):
                return False
    return True


def u_image_inside(A, X, elems=None, ech=None):
    """Whether U_b A and U_{b,c} A lie in X for the given spanning elements."""
    ech = ech or X.echelon()
    bs = elems if elems is not None else [A.from_vec(v).c for v in X.basis]
    basis = [b.c for b in A.basis()]
    to_vec = A.to_vec
    for i, b in enumerate(bs):
        for y in basis:
            if not ech.contains(to_vec(A.r_uop(b, y))):
                return False
        for c in bs[i + 1:]:
            for y in basis:
                if not ech.contains(to_vec(A.r_triple(b, y, c))):
                    return False
    return True


def _inner_by_enumeration(A, X):
    ech = X.echelon()
    basis = [b.c for b in A.basis()]
    for v in X.elements():
        x = A.from_vec(v).c
        for y in basis:
            if not ech.contains(A.to_vec(A.r_uop(x, y))):
                return False
    return True


def is_inner(A, X):
    _check(A, X)
    ok = u_image_inside(A, X)
    if ok and A.F.is_finite and getattr(A.F, "q", 0) < 3 and X.dim <= 12:
        ok = _inner_by_enumeration(A, X)
    return ok


def is_inner_ideal(X, A, certify_max=True):
    """Classify X as singular(d), hyperline, improper or not inner."""
    _check(A, X)
    if X.dim in (0, 27):
        return IdealKind("improper", X.dim)
    if not is_inner(A, X):
        return IdealKind("not_inner", X.dim)
    if is_singular_space(A, X):
        flag = None
        if X.dim == 5 and certify_max and A.F.is_finite:
            flag = singular_extensions(A, X, limit=1) == []
        return IdealKind("singular", X.dim, flag)
    if X.dim == 10:
        P = psi(X, A)
        if P.dim == 1:
            x = A.from_vec(P.basis[0])
            if adjoint(x).is_zero() and hyperline(x) == X:
                return IdealKind("hyperline", 10)
    return IdealKind("inner_other", X.dim)


def hyperline(x):
    """x cross A for singular x."""
    A = x.A
    if x.is_zero() or not adjoint(x).is_zero():
        raise NotSingular("hyperlines need a nonzero x with x# = 0")
    return A.image(lambda y: A.to_vec(A.r_cross(x.c, y.c)))


def _linear_rows(A, fn, n_out):
    """Rows of the matrix of a linear map A -> k^n_out given on raw elements."""
    images = [fn(b.c) for b in A.basis()]
    return [[images[k][r] for k in range(27)] for r in range(n_out)]


def _mod_rows(A, X):
    """Linear functionals whose common kernel is X."""
    return [list(r) for r in nullspace(A.F, list(X.basis), 27)] if X.dim else [
        [A.F.one if i == j else A.F.zero for j in range(27)] for i in range(27)]


def _kernel_of_conditions(A, X, maps):
    """{y : m(y) in X for every linear map m} for maps given on raw elements."""
    F = A.F
    funcs = _mod_rows(A, X)
    ech = Echelon(F, 27)
    basis = [b.c for b in A.basis()]
    for m in maps:
        images = [A.to_vec(m(y)) for y in basis]
        for f in funcs:
            row = []
            for im in images:
                acc = F.zero
                for fc, ic in zip(f, im):
                    if fc != F.zero and ic != F.zero:
                        acc = F.add(acc, F.mul(fc, ic))
                row.append(acc)
            ech.insert(row)
        if ech.full():
            break
    return Subspace.span(F, nullspace(F, ech.basis(), 27), 27)


def psi(X, A, check_inner=True):
    """{y : {X, y, A} in X and U_A U_y X in X}."""
    _check(A, X)
    if X.dim in (0, 27) or (check_inner and not is_inner(A, X)):
        raise NotInnerIdeal("psi needs a nonzero proper inner ideal")
    xs = [A.from_vec(v).c for v in X.basis]
    basis = [b.c for b in A.basis()]
    maps = [(lambda y, x=x, a=a: A.r_triple(x, y, a)) for x in xs for a in basis]
    Y1 = _kernel_of_conditions(A, X, maps)
    if Y1.dim == 0:
        return Y1
    Z = u_preimage(A, X)
    ys = [A.from_vec(v).c for v in Y1.basis]
    zech = Z.echelon()
    ok = True
    for i, y in enumerate(ys):
        for x in xs:
            if not zech.contains(A.to_vec(A.r_uop(y, x))):
                ok = False
                break
            for w in ys[i + 1:]:
                if not zech.contains(A.to_vec(A.r_triple(y, x, w))):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    if ok:
        return Y1
    if not A.F.is_finite:
        raise NotImplementedError("psi2 cuts out a non-linear subset over an infinite field")
    # the (psi2)-solutions need not form a subspace in general: collect them
    good = [v for v in Y1.elements() if all(zech.contains(A.to_vec(A.r_uop(A.from_vec(v).c, x))) for x in xs)]
    return Subspace.span(A.F, good, 27)


def u_preimage(A, X):
    """Z = {z : U_a z in X for all a}, by polarization over a basis of A."""
    basis = [b.c for b in A.basis()]
    maps = [(lambda z, a=a: A.r_uop(a, z)) for a in basis]
    maps += [(lambda z, a=a, b=b: A.r_triple(a, z, b)) for a, b in itertools.combinations(basis, 2)]
    return _kernel_of_conditions(A, X, maps)


def triple_space(A, X, Y, Z):
    """Span of {x, y, z} for x, y, z in given subspaces (bases suffice)."""
    out = Echelon(A.F, 27)
    for x in X.basis:
        for y in Y.basis:
            for z in Z.basis:
                out.insert(A.to_vec(A.r_triple(A.from_vec(x).c, A.from_vec(y).c, A.from_vec(z).c)))
    return Subspace(A.F, 27, tuple(out.basis()))


def singular_extensions(A, X, limit=None):
    """Elements y outside X with X + ky singular (finite fields; exhaustive).

    Extensions live in W = {y : y x X = 0}, and for w in W, x in X,
    (w + x)# = w#, so it is enough to scan a complement of X in W up to scalars.
    """
    F = A.F
    xs = [A.from_vec(v).c for v in X.basis]
    W = A.kernel(lambda y: tuple(c for x in xs for c in A.to_vec(A.r_cross(x, y.c))))
    ech = X.echelon()
    comp = []
    for v in W.basis:
        if ech.insert(v):
            comp.append(v)
    found = []
    elems = list(F.elements())
    for coeffs in itertools.product(elems, repeat=len(comp)):
        lead = next((c for c in coeffs if c != F.zero), None)
        if lead != F.one:
            continue  # projective representatives only
        v = [F.zero] * 27
        for c, w in zip(coeffs, comp):
            if c != F.zero:
                v = [F.add(a, F.mul(c, b)) for a, b in zip(v, w)]
        if A.r_is_zero(A.r_sharp(A.from_vec(v).c)):
            found.append(tuple(v))
            if limit is not None and len(found) >= limit:
                break
    return found


def random_singular_in_hyperline(A, rng, e=None, budget=2000):
    """Random nonzero singular element of the hyperline of e (default e11)."""
    e = e or A.e(0)
    H = hyperline(e)
    for _ in range(budget):
        v = H.random_vector(rng)
        x = A.from_vec(v)
        if not x.is_zero() and adjoint(x).is_zero():
            return x
    raise ConstructionFailed(1, "no singular element sampled in the hyperline")


def greedy_singular(A, dim, rng, e=None, budget=4000):
    """Random singular subspace of the given dimension inside a hyperline."""
    e = e or A.e(0)
    H = hyperline(e)
    hech = H.echelon()
    for _ in range(50):
        X = span(A, [random_singular_in_hyperline(A, rng, e)])
        tries = 0
        while X.dim < dim and tries < budget:
            tries += 1
            xs = [A.from_vec(v).c for v in X.basis]
            W = A.kernel(lambda y: tuple(c for x in xs for c in A.to_vec(A.r_cross(x, y.c))))
            WH = W.intersect(H)
            cand = WH.random_vector(rng)
            y = A.from_vec(cand)
            if y.is_zero() or X.contains(cand) or not adjoint(y).is_zero():
                continue
            X = X + span(A, [y])
        if X.dim == dim and is_singular_space(A, X):
            return X
    raise ConstructionFailed(dim, "greedy extension inside the hyperline stalled")


def construct_inner_ideals(A, rng=None, budget=4000):
    """Inner ideals of dimensions 1, 2, 3, 5', 6, 10 over a finite field."""
    rng = rng or _random.Random(0)
    if not A.F.is_finite:
        raise ConstructionFailed(0, "constructions need a finite base field")
    out = {}
    e = A.e(0)
    out["1"] = span(A, [e])
    out["10"] = hyperline(e)
    out["2"] = greedy_singular(A, 2, rng, budget=budget)
    out["3"] = greedy_singular(A, 3, rng, budget=budget)
    five_prime = six = None
    for _ in range(40):
        X5 = greedy_singular(A, 5, rng, budget=budget)
        ext = singular_extensions(A, X5, limit=1)
        if not ext and five_prime is None:
            five_prime = X5
        elif ext and six is None:
            six = X5 + Subspace.span(A.F, ext, 27)
        if five_prime is not None and six is not None:
            break
    if five_prime is None:
        raise ConstructionFailed(5, "no maximal 5-dimensional singular subspace found")
    if six is None:
        raise ConstructionFailed(6, "no 6-dimensional singular subspace found")
    out["5'"] = five_prime
    out["6"] = six
    return out


PSI_TABLE = {"1": 10, "2": 5, "3": 3, "5'": 2, "6": 6, "10": 1}


def psi_table_check(A, rng=None, budget=4000):
    """Build inner ideals of each listed kind and compare dim psi(X)."""
    ideals = construct_inner_ideals(A, rng, budget)
    rows = []
    for key, X in ideals.items():
        kind = is_inner_ideal(X, A)
        P = psi(X, A)
        row = {"kind": key, "dim": X.dim, "tag": str(kind), "psi_dim": P.dim,
               "expected": PSI_TABLE[key], "ok": P.dim == PSI_TABLE[key] and kind.tag != "not_inner"}
        if key == "6":
            T = triple_space(A, X, P, Subspace.whole(A.F, 27))
            row["triple_equals_X"] = T == X
            row["ok"] = row["ok"] and T == X
        if key == "5'":
            row["ok"] = row["ok"] and kind.maximal_5prime is True
            psi_of = P
            row["psi_is_singular"] = is_singular_space(A, psi_of)
        rows.append(row)
    return {"rows": rows, "ok": all(r["ok"] for r in rows)}


def flag_check(kind, X, Y, T):
    """Rank and bracket conditions of the flag table for a hermitian triple T.

    X, Y are K-submodules of the 54-dimensional carrier; ranks are K-ranks.
    """
    rank = lambda S: S.dim // 2
    V = Subspace.whole(T.F, 54)
    if kind == "a1a6":
        if (rank(X), rank(Y)) != (1, 10):
            raise RankMismatch(f"a1a6 needs ranks (1, 10), got ({rank(X)}, {rank(Y)})")
        return T.bracket_space(X, Y, V).dim == 0
    if kind == "a3a5":
        if (rank(X), rank(Y)) != (2, 5):
            raise RankMismatch(f"a3a5 needs ranks (2, 5), got ({rank(X)}, {rank(Y)})")
        return True
    if kind == "a4":
        if rank(X) != 3:
            raise RankMismatch(f"a4 needs rank 3, got {rank(X)}")
        return T.bracket_space(X, X, V).dim == 0
    if kind == "a2":
        if rank(X) != 6:
            raise RankMismatch(f"a2 needs rank 6, got {rank(X)}")
        return T.bracket_space(X, X, V) == X
    raise ValueError(f"unknown flag kind {kind!r}")
