"""Hermitian Jordan triples T(A, K) = (K, A (x) K, P) with P_x y = U_x iota(y).

A carrier element is a pair ``(y, z)`` of elements of A meaning ``y + d z``,
with d the trace-one generator of K.  Internally we compute in the base
changed algebra ``A_K = H_3(C (x) K, Gamma)``, whose scalars are elements of
K, and iota acts on those scalars.  As a k-space the carrier is k^54:
y-coordinates first, then z-coordinates.
"""

from __future__ import annotations

import hashlib
import json
import random as _random
from dataclasses import dataclass, field

from .albert import (
    AlbertAlgebra,
    AlbertElement,
    GammaIso,
    adjoint,
    classify,
    find_nilpotent,
    gl3_act,
    norm,
    trace,
)
from .errors import (
    CharTwoUnsupportedShape,
    NoneExist,
    NotACongruence,
    NotAWitness,
    NotFound,
    NotKSubmodule,
    TraceZeroS,
    TripleMismatch,
)
from .fieldcore import EtaleAlgebra
from .linalg import Echelon, Subspace, mat_mul, solve, transpose
from .octonion import CayleyDicksonAlgebra, ZornAlgebra


def base_change(C, K):
    """The octonion algebra C (x) K over the scalars of K."""
    if isinstance(C, ZornAlgebra):
        return ZornAlgebra(K)
    a, b, c = C.params
    return CayleyDicksonAlgebra(K, K.embed(a), K.embed(b), K.embed(c))


class HermTriple:
    def __init__(self, A: AlbertAlgebra, K: EtaleAlgebra):
        if K.base != A.F:
            raise TripleMismatch("K must be an extension of the base field of A")
        self.A, self.K, self.F = A, K, A.F
        self.CK = base_change(A.C, K)
        self.AK = AlbertAlgebra(self.CK, tuple(K.embed(g) for g in A.gamma))
        self.dim = 54

    def __eq__(self, other):
        return isinstance(other, HermTriple) and self.A == other.A and self.K == other.K

    def __hash__(self):
        return hash((self.A, self.K))

    def __repr__(self):
        return f"T({self.A!r}, {self.K!r})"

    # conversions
    def lift(self, y, z=None):
        """y + d z as an element of A_K."""
        A = self.A
        yv = A.to_vec(y)
        zv = A.to_vec(z) if z is not None else (A.F.zero,) * 27
        return self.AK.from_vec(tuple(zip(yv, zv)))

    def from_vec(self, v):
        v = tuple(v)
        return self.AK.from_vec(tuple(zip(v[:27], v[27:])))

    def to_vec(self, x):
        v = self.AK.to_vec(x)
        return tuple(c[0] for c in v) + tuple(c[1] for c in v)

    def parts(self, x):
        """(y, z) with x = y + d z."""
        v = self.to_vec(x)
        return self.A.from_vec(v[:27]), self.A.from_vec(v[27:])

    def embed_A(self, a):
        return self.lift(a)

    def iota(self, x):
        K = self.K
        v = self.AK.to_vec(x)
        return self.AK.from_vec(tuple(K.conj(c) for c in v))

    def mul_scalar(self, lam, x):
        return x.scale(lam)

    def mul_d_vec(self, v):
        """Coordinates of d * (y + d z) = -nu z + d (y + z)."""
        F, nu = self.F, self.K.nu
        y, z = v[:27], v[27:]
        return tuple(F.neg(F.mul(nu, c)) for c in z) + tuple(F.add(a, b) for a, b in zip(y, z))

    def check(self, *elems):
        for e in elems:
            if e.A != self.AK:
                raise TripleMismatch("element does not belong to this triple")

    def random(self, rng, box=5):
        return self.AK.random(rng, box)

    # triple structure
    def p_op(self, v, w):
        self.check(v, w)
        AK = self.AK
        return AlbertElement(AK, AK.r_uop(v.c, self.iota(w).c))

    def bracket(self, x, y, z):
        """[x, y, z] = P_{x+z} y - P_x y - P_z y."""
        return self.p_op(x + z, y) - self.p_op(x, y) - self.p_op(z, y)

    def _bracket_raw(self, x, y, z):
        AK = self.AK
        return AK.r_triple(x, self.iota(AlbertElement(AK, y)).c, z)

    # subspaces of the carrier
    def is_K_submodule(self, X):
        return all(X.contains(self.mul_d_vec(v)) for v in X.basis)

    def K_basis(self, X):
        """Elements b_i of X with X = sum K b_i."""
        ech = Echelon(self.F, 54)
        out = []
        for v in X.basis:
            if ech.insert(v):
                ech.insert(self.mul_d_vec(v))
                out.append(v)
        return out

    def K_span(self, vecs):
        vecs = [tuple(v) for v in vecs]
        return Subspace.span(self.F, vecs + [self.mul_d_vec(v) for v in vecs], 54)

    def bracket_space(self, X, Y, Z):
        """K-span of [x, y, z] over K-bases (outer slots K-linear, middle iota-semilinear)."""
        xs = [self.from_vec(v).c for v in self.K_basis(X)]
        ys = [self.from_vec(v).c for v in self.K_basis(Y)]
        zs = [self.from_vec(v).c for v in self.K_basis(Z)]
        ech = Echelon(self.F, 54)
        for x in xs:
            for y in ys:
                for z in zs:
                    v = self.to_vec(AlbertElement(self.AK, self._bracket_raw(x, y, z)))
                    if ech.insert(v):
                        ech.insert(self.mul_d_vec(v))
        return Subspace(self.F, 54, tuple(ech.basis()))

    def split_components(self, X):
        """Split K: the pair (X1, X2) of subspaces of A with X = X1 x X2."""
        K = self.K
        if K.is_field:
            raise ValueError("K is a field")
        c1, c2 = [], []
        for v in X.basis:
            comps = [K.components((a, b)) for a, b in zip(v[:27], v[27:])]
            c1.append(tuple(c[0] for c in comps))
            c2.append(tuple(c[1] for c in comps))
        return Subspace.span(self.F, c1, 27), Subspace.span(self.F, c2, 27)

    def from_components(self, a1, a2):
        """Split K: the carrier element with components (a1, a2) in A x A."""
        K = self.K
        coords = [K.from_components(p, q) for p, q in zip(self.A.to_vec(a1), self.A.to_vec(a2))]
        return self.AK.from_vec(tuple(coords))


def p_op(T, v, w):
    return T.p_op(v, w)


def bracket(T, x, y, z):
    return T.bracket(x, y, z)


@dataclass
class InnerIdealResult:
    inner: bool
    proper: bool
    rank: int


def triple_inner_ideal(T, X):
    """P_X V in X, checked on a K-basis with polarization (X must be a K-module)."""
    if X.n != 54:
        raise TripleMismatch("carrier subspaces live in k^54")
    if not T.is_K_submodule(X):
        raise NotKSubmodule("X is not closed under multiplication by d")
    AK = T.AK
    ech = X.echelon()
    bs = [T.from_vec(v).c for v in T.K_basis(X)]
    ws = [T.iota(b).c for b in AK.basis()]  # iota(w) over a K-basis of V
    ok = True
    for i, b in enumerate(bs):
        for w in ws:
            if not ech.contains(T.to_vec(AlbertElement(AK, AK.r_uop(b, w)))):
                ok = False
                break
        for c in bs[i + 1:] if ok else []:
            for w in ws:
                if not ech.contains(T.to_vec(AlbertElement(AK, AK.r_triple(b, w, c)))):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    if ok and T.F.is_finite and T.F.q == 2 and X.dim <= 12:
        for v in X.elements():
            x = T.from_vec(v).c
            for w in ws:
                if not ech.contains(T.to_vec(AlbertElement(AK, AK.r_uop(x, w)))):
                    ok = False
                    break
            if not ok:
                break
    return InnerIdealResult(ok, 0 < X.dim < 54, X.dim // 2)


# witnesses of isotropy: x# = 0 and x = iota(x) cross v


def solve_onestar(T, x):
    """Some v in A_K with iota(x) cross v = x, or None."""
    AK = T.AK
    ix = T.iota(x).c
    cols = []
    for k in range(54):
        e = [T.F.zero] * 54
        e[k] = T.F.one
        cols.append(T.to_vec(AlbertElement(AK, AK.r_cross(ix, T.from_vec(e).c))))
    sol = solve(T.F, cols, T.to_vec(x))
    if sol is None:
        return None
    return T.from_vec(sol)


def is_witness(T, x):
    if x.is_zero() or not adjoint(x).is_zero():
        return None
    return solve_onestar(T, x)


@dataclass
class Witness:
    x: AlbertElement
    v: AlbertElement
    strategy: str
    seed: object = None
    notes: dict = field(default_factory=dict)

    def verification(self, T):
        AK = T.AK
        sharp_zero = adjoint(self.x).is_zero()
        eq = AlbertElement(AK, AK.r_cross(T.iota(self.x).c, self.v.c)) == self.x
        return {"x_nonzero": not self.x.is_zero(), "x_sharp_zero": sharp_zero, "onestar": eq}

    def to_json(self, T):
        F = T.F
        y, z = T.parts(self.x)
        vy, vz = T.parts(self.v)
        data = {
            "strategy": self.strategy,
            "seed": self.seed,
            "x": {"y": y.to_json(), "z": z.to_json()},
            "v": {"y": vy.to_json(), "z": vz.to_json()},
            "verification": self.verification(T),
        }
        blob = json.dumps({"x": data["x"], "v": data["v"]}, sort_keys=True).encode()
        data["sha256"] = hashlib.sha256(blob).hexdigest()
        data.update(self.notes)
        return data


def witness_from_nilpotent(T, n):
    """x = n (x) 1 satisfies iota(x) cross (-1) = x when n# = 0, T(n) = 0."""
    x = T.lift(n)
    v = T.lift(-n.A.one)
    return Witness(x, v, "a")


def _search_s(K, target, rng, budget=4000, box=6):
    """s in K with T_K(s) != 0 and disc * N_K(s) in target * squares."""
    F = K.base
    cands = []
    if F.is_finite:
        cands = K.elements()
    else:
        cands = ((F.from_int(u), F.from_int(v)) for u in range(-box, box + 1) for v in range(-box, box + 1))
    for s in cands:
        if F.is_zero(K.trace(s)) or F.is_zero(K.norm(s)):
            continue
        ratio = F.div(F.mul(K.disc, K.norm(s)), target)
        mu = F.sqrt(ratio)
        if mu is not None:
            return s, mu
    return None


def embedding_in(A, K, rng=None):
    """Search an embedding k x K -> A through the shape <r, 1, delta N_K(s)>.

    Returns (phi, iso, s) where phi maps (alpha, a) into A, or None.
    """
    F = A.F
    rng = rng or _random.Random(0)
    for shift in range(3):
        iso = GammaIso(A)
        for _ in range(shift):
            iso.then("cycle")
        g2 = iso.target.gamma[1]
        iso.then("scale", F.inv(g2))
        g3 = iso.target.gamma[2]
        found = _search_s(K, g3, rng)
        if found is None:
            continue
        s, mu = found
        iso.then("square", 2, mu)
        B = iso.target
        try:
            emb = embed_kxK(B.C, B.gamma[0], s, K, verify=False)
        except (TraceZeroS, CharTwoUnsupportedShape):
            continue
        if emb.A != B:
            continue

        def phi(alpha, a, emb=emb, iso=iso):
            return iso.inverse(emb.phi(alpha, a))

        return phi, iso, s
    return None


def witness_from_embedding(T, phi):
    """u2 = (phi(0,d) - iota(d) phi(0,1)) / (2d - 1) with v = phi(1,0)."""
    K, F = T.K, T.F
    u1 = T.lift(phi(F.one, K.zero))
    p1 = T.lift(phi(F.zero, K.one))
    pd = T.lift(phi(F.zero, K.d))
    two_d_minus_1 = (F.neg(F.one), F.from_int(2))
    u2 = (pd - p1.scale(K.conj(K.d))).scale(K.inv(two_d_minus_1))
    return Witness(u2, u1, "b")


def witness_split_diagonal(T):
    """Split K: x = (e1, e2) componentwise and v = e3."""
    A = T.A
    x = T.from_components(A.e(0), A.e(1))
    v = T.lift(A.e(2))
    return Witness(x, v, "b")


def _random_singular_AK(T, rng, support=3):
    """U_a(e_i) for a sparse random a in A_K; sparse a hits witnesses far more often."""
    AK, K = T.AK, T.K
    v = [K.zero] * 27
    for _ in range(rng.randint(1, support)):
        v[rng.randrange(27)] = K.random(rng)
    a = AK.from_vec(v)
    e = AK.e(rng.randrange(3))
    return AlbertElement(AK, AK.r_uop(a.c, e.c))


def isotropy_witness_search(T, strategies=("a", "b", "c"), budget=2000, seed=0):
    """Try the strategies in order; return a verified Witness or None."""
    rng = _random.Random(seed)
    for strat in strategies:
        w = None
        if strat == "a":
            try:
                n = find_nilpotent(T.A, budget=budget, rng=_random.Random(seed))
                w = witness_from_nilpotent(T, n)
            except (NotFound, NoneExist):
                w = None
        elif strat == "b":
            if not T.K.is_field:
                w = witness_split_diagonal(T)
            else:
                found = embedding_in(T.A, T.K, rng)
                if found is not None:
                    w = witness_from_embedding(T, found[0])
        elif strat == "c":
            if T.F.is_finite:
                for _ in range(min(budget, 400)):
                    x = _random_singular_AK(T, rng)
                    if x.is_zero():
                        continue
                    v = is_witness(T, x)
                    if v is not None:
                        w = Witness(x, v, "c")
                        break
        if w is not None:
            ver = w.verification(T)
            if all(ver.values()):
                w.seed = seed
                return w
    return None


def witness_classify(T, x):
    """Trace zero: a nonzero nilpotent of A.  Trace nonzero: an embedding k x K -> A."""
    v = is_witness(T, x)
    if v is None:
        raise NotAWitness("x must be nonzero with x# = 0 and x in iota(x) cross A_K")
    AK, K, F, A = T.AK, T.K, T.F, T.A
    t = trace(x)
    if K.is_zero(t):
        y, z = T.parts(x)
        cands = [y, z]
        for lam in list(F.elements())[:6] if F.is_finite else range(-3, 4):
            lam = F.from_int(lam) if isinstance(lam, int) and not F.is_finite else lam
            cands.append(y + z.scale(lam))
        for c in cands:
            if not c.is_zero() and classify(c).nilpotent:
                return {"branch": "trace_zero", "nilpotent": c, "source": "components"}
        n = find_nilpotent(A)
        return {"branch": "trace_zero", "nilpotent": n, "source": "search"}
    if not K.is_field:
        # components x = (x1, x2); a singular component shows A is reduced,
        # and the diagonal frame then carries k x k x k
        comps = T.split_components(Subspace.span(F, [T.to_vec(x)], 54))
        evidence = [A.from_vec(S.basis[0]) for S in comps if S.dim]
        singular = [c for c in evidence if adjoint(c).is_zero()]
        if not singular:
            raise NotAWitness("no singular component")

        def phi(alpha, a):
            c1, c2 = K.components(a)
            return A.e(2).scale(alpha) + A.e(0).scale(c1) + A.e(1).scale(c2)

        check = verify_kxK_embedding(A, K, phi)
        return {"branch": "trace_nonzero", "embedding": phi, "singular_component": singular[0], "check": check}
    e = x.scale(K.inv(t))
    c = AK.one - e - T.iota(e)
    if T.iota(c) != c:
        raise NotAWitness("c = 1 - e - iota(e) is not defined over k")
    c_A, c_z = T.parts(c)
    assert c_z.is_zero()

    def phi(alpha, a):
        img = c.scale(K.embed(alpha)) + e.scale(a) + T.iota(e).scale(K.conj(a))
        y, z = T.parts(img)
        if not z.is_zero():
            raise NotAWitness("image not defined over k")
        return y

    check = verify_kxK_embedding(A, K, phi)
    if not check["ok"]:
        raise NotAWitness(f"extracted map is not an embedding: {check}")
    return {"branch": "trace_nonzero", "embedding": phi, "c": c_A, "e": e, "check": check}


def verify_kxK_embedding(A, K, phi, samples=30, rng=None, box=5):
    """phi(1,1) = 1, N(phi(alpha, a)) = alpha N_K(a), phi(z)# = phi(z#), rank 3."""
    F = A.F
    rng = rng or _random.Random(0)
    unital = phi(F.one, K.one) == A.one
    norm_ok = sharp_ok = True
    for _ in range(samples):
        alpha, a = F.random(rng, box), K.random(rng, box)
        img = phi(alpha, a)
        if norm(img) != F.mul(alpha, K.norm(a)):
            norm_ok = False
        # (alpha, a)# = (N_K(a), alpha iota(a)) in k x K
        if adjoint(img) != phi(K.norm(a), K.scale(alpha, K.conj(a))):
            sharp_ok = False
    rank = Subspace.span(F, [A.to_vec(phi(F.one, K.zero)), A.to_vec(phi(F.zero, K.one)),
                             A.to_vec(phi(F.zero, K.d))], 27).dim
    return {"unital": unital, "norm": norm_ok, "sharp": sharp_ok, "rank": rank,
            "ok": unital and norm_ok and sharp_ok and rank == 3}


@dataclass
class EmbeddingWitness:
    A: AlbertAlgebra
    K: EtaleAlgebra
    s: tuple
    r: object
    phi: object
    images: dict
    check: dict
    x: object = None
    frame: tuple = None


def embed_kxK(C, r, s, K, verify=True, samples=200, rng=None):
    """phi(alpha, a) = alpha e11 + T(s)^-1 (N(s,a) e22 + N(s, iota a) e33 + t^-1 (iota a - a) 1[23])
    into H_3(C, <r, 1, delta N_K(s)>)."""
    F = C.F
    if F.is_zero(K.trace(s)):
        raise TraceZeroS("T_K(s) must be nonzero")
    A = AlbertAlgebra(C, (r, F.one, F.mul(K.disc, K.norm(s))))
    tinv = K.inv(K.t_gen)
    ts_inv = F.inv(K.trace(s))

    def phi(alpha, a):
        off = K.mul(tinv, K.sub(K.conj(a), a))
        if not K.is_in_base(off):
            raise CharTwoUnsupportedShape("t^-1 (iota a - a) is not in k")
        x1 = C.scale(F.mul(ts_inv, off[0]), C.one)
        a2 = F.mul(ts_inv, K.norm_bil(s, a))
        a3 = F.mul(ts_inv, K.norm_bil(s, K.conj(a)))
        return A.element((alpha, a2, a3), (x1, C.zero, C.zero))

    images = {"(1,0)": phi(F.one, K.zero), "(0,1)": phi(F.zero, K.one), "(0,d)": phi(F.zero, K.d)}
    check = verify_kxK_embedding(A, K, phi, samples=samples if verify else 5, rng=rng)
    return EmbeddingWitness(A, K, s, r, phi, images, check)


def frame_from_embedding(K, s, C=None):
    """(d1, d2, d3) in H_3(C_K, <1, s, iota s>) and a verification record.

    A = {x : tau(x) = x} for the iota-semilinear involution
    tau(alpha, x) = (iota alpha_1, iota alpha_3, iota alpha_2, iota conj x_1, iota conj x_3, iota conj x_2).
    """
    F = K.base
    C = C or ZornAlgebra(F)
    if F.is_zero(K.trace(s)):
        raise TraceZeroS("T_K(s) must be nonzero")
    CK = base_change(C, K)
    AK = AlbertAlgebra(CK, (K.one, s, K.conj(s)))
    inv = K.inv(K.embed(K.trace(s)))
    one = CK.one
    neg_one = CK.neg(one)
    d1 = AK.e(0)
    d2 = AK.element((K.zero, s, K.conj(s)), (one, CK.zero, CK.zero)).scale(inv)
    d3 = AK.element((K.zero, K.conj(s), s), (neg_one, CK.zero, CK.zero)).scale(inv)

    def tau(x):
        a = x.c[:3]
        xs = x.c[3:]
        cj = lambda p: tuple(K.conj(c) for c in CK.conj(p))
        return AlbertElement(AK, (K.conj(a[0]), K.conj(a[2]), K.conj(a[1]), cj(xs[0]), cj(xs[2]), cj(xs[1])))

    frame = (d1, d2, d3)
    from .albert import cross, is_primitive_idempotent

    rec = {
        "primitive": all(is_primitive_idempotent(d) for d in frame),
        "sum_is_one": d1 + d2 + d3 == AK.one,
        "orthogonal": cross(d1, d2) == d3 and cross(d2, d3) == d1 and cross(d3, d1) == d2,
        "tau_fixed": all(tau(d) == d for d in frame),
    }
    rec["ok"] = all(rec.values())
    return frame, rec, AK, tau


# isomorphisms between triples from congruences


def l_gamma(A, x):
    """(alpha, x) -> (gamma_i alpha_i, gamma_j gamma_l x_i): H_3(C, Gamma) -> H_3(C, 1) as spaces."""
    F, C = A.F, A.C
    g = A.gamma
    return x.c[:0] + tuple(F.mul(g[i], x.c[i]) for i in range(3)) + tuple(C.scale(A.gjl[i], x.c[3 + i]) for i in range(3))


def triple_iso_from_congruence(C, gamma, gamma2, K, g, samples=200, seed=0):
    """h = L_{Gamma'}^{-1} o phi_{iota(g)} o L_Gamma, checked to satisfy h(P_x y) = P_{hx} h(y).

    The congruence condition is g Gamma iota(g)^t = Gamma' for the diagonal
    hermitian matrices Gamma, Gamma' over K.
    """
    gmat = [list(row) for row in g]
    Gam = [[K.embed(gamma[i]) if i == j else K.zero for j in range(3)] for i in range(3)]
    Gam2 = [[K.embed(gamma2[i]) if i == j else K.zero for j in range(3)] for i in range(3)]
    ig_t = transpose([[K.conj(c) for c in row] for row in gmat])
    lhs = mat_mul(K, mat_mul(K, gmat, Gam), ig_t)
    if lhs != Gam2:
        raise NotACongruence("g Gamma iota(g)^t differs from Gamma'")
    A1 = AlbertAlgebra(C, gamma)
    A2 = AlbertAlgebra(C, gamma2)
    T1, T2 = HermTriple(A1, K), HermTriple(A2, K)
    CK = T1.CK
    U = AlbertAlgebra(CK, (K.one, K.one, K.one))
    ig = [[K.conj(c) for c in row] for row in gmat]

    def h(x):
        AK1, AK2 = T1.AK, T2.AK
        y = AlbertElement(U, l_gamma(AK1, x))
        y = gl3_act(ig, y)
        # inverse of L_{Gamma'}
        g2 = AK2.gamma
        alpha = tuple(K.div(y.c[i], g2[i]) for i in range(3))
        xs = tuple(CK.scale(K.inv(AK2.gjl[i]), y.c[3 + i]) for i in range(3))
        return AlbertElement(AK2, alpha + xs)

    rng = _random.Random(seed)
    for _ in range(samples):
        x, y = T1.random(rng, 3), T1.random(rng, 3)
        if h(T1.p_op(x, y)) != T2.p_op(h(x), h(y)):
            raise NotACongruence("the induced map does not preserve P")
    return h, T1, T2
