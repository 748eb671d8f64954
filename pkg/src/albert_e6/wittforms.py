"""Diagonal forms over iterated Laurent towers k0((t_1))...((t_n)).

k0 is Q or GF(p) with p odd.  A form entry is ``(unit, exps)``: a square-class
representative of k0 times the monomial ``prod t_i^{exps[i]}`` with exponents
reduced mod 2.  Witt decomposition peels off the top indeterminate: writing
``f = f1 + t_n f2`` with f1, f2 defined over the smaller tower, the Witt index
of f is the sum of those of f1 and f2, and ``ker f = ker f1 + t_n ker f2``.
At the base, GF(p) forms are classified by dimension and discriminant, and Q
forms by the local indices in :mod:`qlocal`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import BadGamma, UndecidedRegime, UnsupportedBase, ZeroGamma, ZeroGenerator
from .fieldcore import FiniteField, QQ, RationalField, square_class, squarefree_part
from . import qlocal


@dataclass(frozen=True)
class TowerField:
    """k0((t_1))...((t_n)); ``base`` is ``"Q"`` or an odd prime p."""

    base: object = "Q"
    names: tuple = ()

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("indeterminate names must be distinct")
        if self.base != "Q":
            p = int(self.base)
            if p == 2:
                raise UnsupportedBase("forms over characteristic 2 bases are not supported")
            object.__setattr__(self, "base", p)

    @property
    def n(self):
        return len(self.names)

    @property
    def is_rational(self):
        return self.base == "Q"

    @property
    def k0(self):
        return QQ if self.is_rational else FiniteField(self.base)

    def unit(self, value):
        """Square-class representative of a nonzero base scalar."""
        if self.is_rational:
            f = Fraction(value)
            if f == 0:
                raise ZeroGenerator("zero entry")
            return squarefree_part(f.numerator * f.denominator)
        F = self.k0
        v = F.parse(str(value)) if not isinstance(value, int) else value % self.base
        if v == 0:
            raise ZeroGenerator("zero entry")
        return square_class(F, v)

    def mul_units(self, a, b):
        if self.is_rational:
            return squarefree_part(a * b)
        F = self.k0
        return square_class(F, F.mul(a, b))

    def neg_unit(self, a):
        return self.mul_units(a, self.unit(-1))

    def entry(self, value, exps=None):
        exps = tuple(e % 2 for e in (exps or (0,) * self.n))
        if len(exps) != self.n:
            raise ValueError("exponent vector length mismatch")
        return (self.unit(value), exps)

    def mul_entries(self, x, y):
        return (self.mul_units(x[0], y[0]), tuple((a + b) % 2 for a, b in zip(x[1], y[1])))

    def parse_entry(self, text):
        """Parse ``"-3*x*z"``, ``"u^3*v"``, ``"2/5"`` into an entry."""
        s = str(text).replace(" ", "")
        if not s:
            raise ValueError("empty entry")
        sign = 1
        while s and s[0] in "+-":
            if s[0] == "-":
                sign = -sign
            s = s[1:]
        coeff = Fraction(1)
        exps = [0] * self.n
        for factor in s.split("*"):
            if not factor:
                raise ValueError(f"bad entry {text!r}")
            m = re.fullmatch(r"([A-Za-z_]\w*)(?:\^(\d+))?", factor)
            if m and m.group(1) in self.names:
                exps[self.names.index(m.group(1))] += int(m.group(2) or 1)
            elif m:
                raise ValueError(f"unknown indeterminate {m.group(1)!r}")
            else:
                coeff *= Fraction(factor)
        coeff *= sign
        if coeff == 0:
            raise ZeroGenerator("zero entry")
        if self.is_rational:
            return self.entry(coeff, exps)
        p = self.base
        val = coeff.numerator * pow(coeff.denominator, -1, p) % p
        return self.entry(val, exps)

    def fmt_entry(self, e):
        unit, exps = e
        parts = [str(unit)]
        parts += [nm for nm, x in zip(self.names, exps) if x]
        if parts[0] == "1" and len(parts) > 1:
            parts = parts[1:]
        elif self.is_rational and parts[0] == "-1" and len(parts) > 1:
            parts = ["-" + parts[1]] + parts[2:]
        return "*".join(parts)

    def describe(self):
        base = "Q" if self.is_rational else f"GF({self.base})"
        return base + "".join(f"(({nm}))" for nm in self.names)


QQ_TOWER = TowerField("Q", ())


@dataclass(frozen=True)
class DiagForm:
    field: TowerField
    entries: tuple

    @classmethod
    def of(cls, field, values):
        """Build from entries, strings, or base scalars."""
        out = []
        for v in values:
            if isinstance(v, tuple):
                out.append((v[0], tuple(x % 2 for x in v[1])))
            elif isinstance(v, str):
                out.append(field.parse_entry(v))
            else:
                out.append(field.entry(v))
        return cls(field, tuple(out))

    @property
    def dim(self):
        return len(self.entries)

    def scale(self, entry):
        return DiagForm(self.field, tuple(self.field.mul_entries(entry, e) for e in self.entries))

    def neg(self):
        return self.scale(self.field.entry(-1))

    def __str__(self):
        return "<" + ", ".join(self.field.fmt_entry(e) for e in self.entries) + ">"

    def to_json(self):
        return [self.field.fmt_entry(e) for e in self.entries]


@dataclass(frozen=True)
class WittClass:
    witt_index: int
    kernel: DiagForm
    signature: object = None  # real signature, base Q with no indeterminates
    dim: int = 0

    @property
    def is_zero(self):
        return self.kernel.dim == 0

    def to_json(self):
        out = {"dim": self.dim, "witt_index": self.witt_index, "kernel": self.kernel.to_json()}
        if self.signature is not None:
            out["signature"] = self.signature
        return out


def _as_entry(field, g):
    if isinstance(g, tuple):
        return (g[0], tuple(x % 2 for x in g[1]))
    if isinstance(g, str):
        return field.parse_entry(g)
    return field.entry(g)


def pfister(gens, field=QQ_TOWER):
    """<<a_1, ..., a_n>> = <1, -a_1> (x) ... (x) <1, -a_n>."""
    form = DiagForm(field, (field.entry(1),))
    for g in gens:
        try:
            e = _as_entry(field, g)
        except ZeroGenerator:
            raise
        except ZeroDivisionError as exc:
            raise ZeroGenerator("zero generator") from exc
        form = tensor(form, DiagForm(field, (field.entry(1), field.mul_entries(field.entry(-1), e))))
    return form


def tensor(f, g):
    if f.field != g.field:
        raise ValueError("forms over different fields")
    F = f.field
    return DiagForm(F, tuple(F.mul_entries(a, b) for a in f.entries for b in g.entries))


def orth_sum(f, g):
    if f.field != g.field:
        raise ValueError("forms over different fields")
    return DiagForm(f.field, f.entries + g.entries)


def _base_index(field, units):
    if field.is_rational:
        return qlocal.rational_index(list(units))
    n = len(units)
    F = field.k0
    if n % 2:
        return n // 2
    d = F.from_int((-1) ** (n // 2))
    for u in units:
        d = F.mul(d, u)
    return n // 2 if F.is_square(d) else n // 2 - 1


def _base_kernel(field, units):
    if field.is_rational:
        return qlocal.rational_kernel(list(units))
    F = field.k0
    n = len(units)
    idx = _base_index(field, units)
    m = n - 2 * idx
    if m == 0:
        return []
    det = F.from_int((-1) ** idx)
    for u in units:
        det = F.mul(det, u)
    if m == 1:
        return [square_class(F, det)]
    return [1, square_class(F, det)]


@lru_cache(maxsize=4096)
def _decompose(field, entries):
    """(index, kernel entries) for a sorted tuple of entries."""
    n = field.n
    if n == 0:
        units = [e[0] for e in entries]
        idx = _base_index(field, units)
        ker = tuple((u, ()) for u in _base_kernel(field, units))
        return idx, ker
    lower = TowerField(field.base, field.names[:-1])
    parts = ([], [])
    for unit, exps in entries:
        parts[exps[-1]].append((unit, exps[:-1]))
    idx = 0
    kernel = []
    for parity, part in enumerate(parts):
        if not part:
            continue
        i, ker = _decompose(lower, tuple(sorted(part)))
        idx += i
        kernel.extend((u, ex + (parity,)) for u, ex in ker)
    return idx, tuple(kernel)


def witt_decompose(f, field=None):
    field = field or f.field
    if field.n != f.field.n:
        raise ValueError("form and field disagree")
    idx, ker = _decompose(field, tuple(sorted(f.entries)))
    sig = None
    if field.is_rational and field.n == 0:
        sig = qlocal.signature([e[0] for e in f.entries])
    return WittClass(idx, DiagForm(field, ker), sig, f.dim)


def witt_index(f):
    return _decompose(f.field, tuple(sorted(f.entries)))[0]


def is_hyperbolic(f, field=None):
    return 2 * witt_index(f) == f.dim


def is_isotropic(f):
    return witt_index(f) > 0


def is_isometric(f, g, field=None):
    if f.dim != g.dim:
        return False
    return is_hyperbolic(orth_sum(f, g.neg()))


def is_witt_equivalent(f, g):
    return is_hyperbolic(orth_sum(f, g.neg())) if (f.dim + g.dim) % 2 == 0 else False


# Albert-algebra invariants


@dataclass(frozen=True)
class AlbertData:
    """Reduced Albert algebra H_3(C, Gamma) described by invariants.

    ``c_gens`` are the generators of the norm form <<a, b, c>> (None: split C).
    """

    field: TowerField
    c_gens: tuple
    gamma: tuple

    @classmethod
    def make(cls, field, c_gens, gamma):
        if any(_is_zero_literal(g) for g in gamma):
            raise ZeroGamma("Gamma entries must be nonzero")
        gamma = tuple(_as_entry(field, g) for g in gamma)
        if c_gens is not None and not (isinstance(c_gens, str) and c_gens == "split"):
            c_gens = tuple(_as_entry(field, g) for g in c_gens)
        else:
            c_gens = None
        return cls(field, c_gens, gamma)

    def f3_form(self):
        F = self.field
        if self.c_gens is None:
            return pfister([F.entry(1)] * 3, F)
        return pfister(self.c_gens, F)

    def normalized_gamma(self):
        """Gamma divided by gamma_2 (square classes)."""
        F = self.field
        g2 = self.gamma[1]
        return tuple(F.mul_entries(g, g2) for g in self.gamma)

    def f5_form(self):
        F = self.field
        g1, _, g3 = self.normalized_gamma()
        minus = F.entry(-1)
        return tensor(pfister([F.mul_entries(minus, g1), F.mul_entries(minus, g3)], F), self.f3_form())


def _is_zero_literal(g):
    if isinstance(g, tuple):
        return False
    try:
        return Fraction(str(g).replace(" ", "")) == 0
    except ValueError:
        return False


@dataclass(frozen=True)
class EtaleData:
    """[K] = <1, -delta>; delta = 1 for split K."""

    field: TowerField
    delta: tuple

    @classmethod
    def make(cls, field, delta):
        if delta is None or (isinstance(delta, str) and delta.strip().lower() == "split"):
            return cls(field, field.entry(1))
        return cls(field, _as_entry(field, delta))

    def form(self):
        F = self.field
        return DiagForm(F, (F.entry(1), F.mul_entries(F.entry(-1), self.delta)))

    @property
    def is_split(self):
        return self.field.n == 0 and self.delta == self.field.entry(1) or (
            self.delta[0] == self.field.entry(1)[0] and not any(self.delta[1]))


def f3_f5(A):
    return witt_decompose(A.f3_form()), witt_decompose(A.f5_form())


def mt3_check(A, K, gamma_gens):
    F = A.field
    if len(gamma_gens) != 2:
        raise BadGamma("gamma must be a 2-fold Pfister form given by two generators")
    try:
        g = pfister(gamma_gens, F)
    except ZeroGenerator as exc:
        raise BadGamma(str(exc)) from exc
    return is_isometric(tensor(g, A.f3_form()), A.f5_form()) and is_hyperbolic(tensor(g, K.form()))


def mt3prime_check(A, K):
    return is_hyperbolic(tensor(A.f5_form(), K.form()))


def default_pool(A, K):
    F = A.field
    minus = F.entry(-1)
    base = [F.entry(1)]
    base += list(A.gamma) + list(A.normalized_gamma()) + [K.delta]
    signed = []
    for e in base:
        for s in (F.entry(1), minus):
            x = F.mul_entries(s, e)
            if x not in signed:
                signed.append(x)
    pool = list(signed)
    for a, b in combinations(signed, 2):
        x = F.mul_entries(a, b)
        if x not in pool:
            pool.append(x)
    return pool


def search_is_complete(A):
    """Over Q itself Pfister classes of fold >= 3 are decided by the real
    signature, and the pool contains <<1, 1>> and <<-1, -1>>, which cover
    every possibility; so a failed search proves absence."""
    return A.field.is_rational and A.field.n == 0


def mt3_search(A, K, pool=None, bound=None):
    """First gamma = <<a, b>> from the pool satisfying condition (3), or None."""
    pool = pool if pool is not None else default_pool(A, K)
    pairs = [(a, b) for i, a in enumerate(pool) for b in pool[i:]]
    # the pair read off from Gamma first: <<-gamma_1/gamma_2, -gamma_3/gamma_2>>
    F = A.field
    g1, _, g3 = A.normalized_gamma()
    minus = F.entry(-1)
    pairs.insert(0, (F.mul_entries(minus, g1), F.mul_entries(minus, g3)))
    if bound is not None:
        pairs = pairs[:bound]
    for a, b in pairs:
        if mt3_check(A, K, (a, b)):
            return (a, b)
    return None


def killed_by(A, K):
    """Whether f3(A) becomes hyperbolic over K.

    Decided when f3 is hyperbolic, when K is split, or over Q itself via the
    real place (an anisotropic 3-Pfister class over Q is the definite one).
    """
    if is_hyperbolic(A.f3_form()):
        return True
    if K.is_split:
        return False
    if A.field.is_rational and A.field.n == 0:
        return K.delta[0] < 0
    raise UndecidedRegime("killed-by-K is only decided over Q without indeterminates")


TITS_LABELS = ("quasi_split", "row2_two_circles", "row3_one_circle", "anisotropic", "undecided")


@dataclass
class IndexReport:
    label: str
    gamma: object
    f3: WittClass
    f5: WittClass
    mt3prime: bool
    complete: bool
    notes: list = field(default_factory=list)


def tits_index(A, K):
    """Tits index of G(A, K) from the isotropy criterion and the symbol f3."""
    f3, f5 = f3_f5(A)
    gamma = mt3_search(A, K)
    complete = search_is_complete(A)
    prime = mt3prime_check(A, K)
    notes = []
    if gamma is None:
        if not complete:
            raise UndecidedRegime("no gamma in the pool; the search is not complete over this base")
        notes.append("absence proof: f5 nonzero forces gamma definite, and then gamma*[K] is definite for delta < 0")
        return IndexReport("anisotropic", None, f3, f5, prime, complete, notes)
    if f3.is_zero:
        label = "quasi_split"
    elif killed_by(A, K):
        label = "row2_two_circles"
    else:
        label = "row3_one_circle"
    return IndexReport(label, gamma, f3, f5, prime, complete, notes)
