"""Exact base fields and quadratic étale algebras.

Field elements are plain Python values so that the algebra code stays fast:
``int``/``Fraction`` over Q, ``int`` codes over GF(p^m) (base-p digits are the
polynomial coefficients), and ``(u, v)`` pairs over an étale algebra K.
Arithmetic always goes through the owning field object.  :class:`FieldScalar`
wraps a value together with its field for the user-facing API.
"""

from __future__ import annotations

import itertools
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime

from .errors import (
    DescriptorMismatch,
    InseparablePolynomial,
    NotDegreeTwo,
    ZeroInput,
)


class Field:
    """Interface shared by all coefficient domains.

    Subclasses provide ``zero``, ``one``, ``char`` and the arithmetic methods.
    ``is_field`` is False only for split étale algebras.
    """

    char: int
    zero: object
    one: object
    is_field = True
    is_finite = False

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def power(self, a, n):
        if n < 0:
            return self.power(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def scalar(self, value):
        return FieldScalar(self, value)


class RationalField(Field):
    """The rationals; values are ``int`` or ``Fraction`` in lowest terms."""

    char = 0
    zero = 0
    one = 1
    name = "Q"

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return _normalize(Fraction(1) / a)

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return _normalize(Fraction(a) / b)

    def from_int(self, n):
        return n

    def canonical(self, a):
        return _normalize(Fraction(a))

    def parse(self, text):
        try:
            return _normalize(Fraction(str(text).strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {text!r}") from exc

    def fmt(self, a):
        return str(_normalize(Fraction(a)))

    def random(self, rng, box=9):
        return rng.randint(-box, box)

    def is_square(self, a):
        return self.sqrt(a) is not None

    def sqrt(self, a):
        a = Fraction(a)
        if a < 0:
            return None
        n, d = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
        if n is None or d is None:
            return None
        return _normalize(Fraction(n, d))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


def _normalize(f):
    f = Fraction(f)
    return f.numerator if f.denominator == 1 else f


def _isqrt_exact(n):
    if n < 0:
        return None
    r = _isqrt(n)
    return r if r * r == n else None


def _isqrt(n):
    import math

    return math.isqrt(n)


QQ = RationalField()


class FiniteField(Field):
    """GF(p^m).  Elements are integers ``sum c_i p^i`` encoding ``sum c_i t^i``.

    ``modulus`` lists the coefficients ``c_0..c_{m-1}`` of the monic modulus
    ``t^m + c_{m-1} t^{m-1} + ... + c_0``.
    """

    is_finite = True

    def __init__(self, p, m=1, modulus=None):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("degree must be >= 1")
        self.p, self.m, self.q = p, m, p**m
        self.char = p
        if m == 1:
            modulus = (0,)
        elif modulus is None:
            modulus = least_irreducible(p, m)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m or not _is_irreducible(p, modulus):
                raise ValueError(f"modulus {modulus} is not irreducible of degree {m} over GF({p})")
        self.modulus = tuple(modulus)
        self.zero, self.one = 0, 1
        if m == 1:
            self._setup_prime()
        else:
            self._setup_tables()
        self._nonsquare = None if p == 2 else next(a for a in range(1, self.q) if not self.is_square(a))

    @property
    def name(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.q})"

    def _setup_prime(self):
        p = self.p

        def add(a, b, p=p):
            return (a + b) % p

        def sub(a, b, p=p):
            return (a - b) % p

        def mul(a, b, p=p):
            return (a * b) % p

        def neg(a, p=p):
            return (-a) % p

        self.add, self.sub, self.mul, self.neg = add, sub, mul, neg

    def _setup_tables(self):
        q = self.q
        digits = [self._digits(a) for a in range(q)]
        enc = self._encode
        p = self.p
        addt = [[enc([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)] for a in range(q)]
        negt = [enc([(-x) % p for x in digits[a]]) for a in range(q)]
        mult = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(a, q):
                c = self._polymulmod(digits[a], digits[b])
                mult[a][b] = mult[b][a] = enc(c)
        self._addt, self._negt, self._mult = addt, negt, mult
        self._invt = [0] * q
        for a in range(1, q):
            row = mult[a]
            self._invt[a] = row.index(1)

        def add(a, b, t=addt):
            return t[a][b]

        def mul(a, b, t=mult):
            return t[a][b]

        def neg(a, t=negt):
            return t[a]

        def sub(a, b, t=addt, n=negt):
            return t[a][n[b]]

        self.add, self.mul, self.neg, self.sub = add, mul, neg, sub

    def _digits(self, a):
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _encode(self, coeffs):
        val = 0
        for c in reversed(coeffs):
            val = val * self.p + c
        return val

    def _polymulmod(self, a, b):
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, mc in enumerate(self.modulus):
                    prod[k - m + i] = (prod[k - m + i] - c * mc) % p
        return prod[:m]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return self._invt[a]

    def from_int(self, n):
        n %= self.p
        return n

    def canonical(self, a):
        return a

    def elements(self):
        return range(self.q)

    def random(self, rng, box=None):
        return rng.randrange(self.q)

    def is_square(self, a):
        if a == 0 or self.p == 2:
            return True
        return self.power(a, (self.q - 1) // 2) == 1

    def sqrt(self, a):
        if a == 0:
            return 0
        if self.m == 1 and self.p > 2:
            return _tonelli(a, self.p)
        for x in range(self.q):
            if self.mul(x, x) == a:
                return x
        return None

    def nonsquare(self):
        return self._nonsquare

    def parse(self, text):
        text = str(text).strip().replace(" ", "")
        if self.m == 1:
            try:
                return int(Fraction(text).numerator * pow(Fraction(text).denominator, -1, self.p)) % self.p
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"not a GF({self.p}) literal: {text!r}") from exc
        coeffs = parse_poly(text, var="t")
        if max(coeffs, default=0) >= self.m:
            raise ValueError(f"degree too large for {self.name}: {text!r}")
        digits = [0] * self.m
        for deg, c in coeffs.items():
            digits[deg] = int(Fraction(c).numerator * pow(Fraction(c).denominator, -1, self.p)) % self.p
        return self._encode(digits)

    def fmt(self, a):
        if self.m == 1:
            return str(a)
        terms = []
        for deg, c in reversed(list(enumerate(self._digits(a)))):
            if not c:
                continue
            mono = "" if deg == 0 else ("t" if deg == 1 else f"t^{deg}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) or "0"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return self.name


def _tonelli(n, p):
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = next(z for z in range(2, p) if pow(z, (p - 1) // 2, p) == p - 1)
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def _poly_rem(a, b, p):
    """Remainder of a by monic-or-not b over GF(p); coefficient lists low-first."""
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        a.pop()
    return a


def _is_irreducible(p, modulus):
    m = len(modulus)
    full = list(modulus) + [1]
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            div = list(low) + [1]
            if not any(_poly_rem(full, div, p)):
                return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p, m):
    """Lexicographically least monic irreducible of degree m over GF(p).

    Coefficient vectors are compared from the t^{m-1} coefficient down.
    """
    for high_first in itertools.product(range(p), repeat=m):
        modulus = tuple(reversed(high_first))
        if modulus[0] == 0:
            continue
        if _is_irreducible(p, modulus):
            return modulus
    raise AssertionError("unreachable: irreducibles exist in every degree")


_FIELD_RE = re.compile(r"^\s*(?:GF|F)\s*\(\s*(\d+)\s*\)\s*$", re.I)


def parse_field(text, modulus=None):
    """``"Q"`` or ``"GF(q)"`` (q a prime power) to a field object."""
    text = str(text).strip()
    if text.upper() in {"Q", "QQ", "RATIONALS"}:
        return QQ
    match = _FIELD_RE.match(text)
    if not match:
        raise ValueError(f"unknown field {text!r}")
    q = int(match.group(1))
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, m), = fac.items()
    mod = None
    if modulus is not None:
        coeffs = parse_poly(modulus, var="t") if isinstance(modulus, str) else dict(enumerate(modulus))
        if coeffs.get(m) not in (None, 1, "1", Fraction(1)):
            raise ValueError("modulus must be monic")
        mod = tuple(int(Fraction(coeffs.get(i, 0))) % p for i in range(m))
    return FiniteField(p, m, mod)


_TERM_RE = re.compile(r"([+-]?)([^+-]*)")


def parse_poly(text, var="t"):
    """Parse a univariate polynomial like ``"t^2 - 3/2*t + 5"``.

    Returns ``{degree: Fraction}``.
    """
    s = str(text).replace(" ", "").replace("**", "^")
    if not s:
        raise ValueError("empty polynomial")
    out = {}
    pos = 0
    pieces = re.findall(r"[+-]?[^+-]+", s)
    if "".join(pieces) != s:
        raise ValueError(f"cannot parse polynomial {text!r}")
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        body = piece.lstrip("+-")
        if var in body:
            coef_part, _, mono = body.partition(var)
            coef_part = coef_part.rstrip("*")
            if mono.startswith("^"):
                deg = int(mono[1:])
            elif mono == "":
                deg = 1
            else:
                raise ValueError(f"cannot parse term {piece!r}")
            coef = Fraction(coef_part) if coef_part else Fraction(1)
        else:
            deg, coef = 0, Fraction(body)
        out[deg] = out.get(deg, Fraction(0)) + sign * coef
        pos += 1
    return {d: c for d, c in out.items() if c != 0}


@dataclass(frozen=True)
class FieldScalar:
    """A field value tagged with its field; supports the usual operators."""

    field: Field
    value: object

    def _check(self, other):
        if not isinstance(other, FieldScalar):
            return FieldScalar(self.field, self.field.from_int(other)) if isinstance(other, int) else NotImplemented
        if other.field != self.field:
            raise DescriptorMismatch(f"{self.field!r} vs {other.field!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldScalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        other = self._check(other)
        return FieldScalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        return FieldScalar(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other):
        other = self._check(other)
        if self.field.is_zero(other.value):
            raise ZeroDivisionError("division by zero")
        return FieldScalar(self.field, self.field.div(self.value, other.value))

    def __neg__(self):
        return FieldScalar(self.field, self.field.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.field.fmt(self.value)} in {self.field!r}"


def field_arith(a: FieldScalar, b: FieldScalar, op: str) -> FieldScalar:
    """Apply one of ``+ - * /`` (``÷``, ``×``, ``−`` accepted too)."""
    ops = {"+": operator.add, "-": operator.sub, "−": operator.sub, "*": operator.mul,
           "×": operator.mul, "/": operator.truediv, "÷": operator.truediv}
    if a.field != b.field:
        raise DescriptorMismatch(f"{a.field!r} vs {b.field!r}")
    return ops[op](a, b)


def squarefree_part(n: int) -> int:
    """Signed squarefree part of a nonzero integer."""
    if n == 0:
        raise ZeroInput("zero has no square class")
    sign = -1 if n < 0 else 1
    out = 1
    for prime, e in factorint(abs(n)).items():
        if e % 2:
            out *= prime
    return sign * out


def square_class(field: Field, a):
    """Canonical representative of ``a (k^x)^2``.

    Over Q this is a squarefree integer; over GF(q), q odd, it is 1 or the
    least non-square; over GF(2^m) it is always 1.
    """
    if isinstance(a, FieldScalar):
        field, a = a.field, a.value
    if field.is_zero(a):
        raise ZeroInput("zero has no square class")
    if isinstance(field, RationalField):
        f = Fraction(a)
        return squarefree_part(f.numerator * f.denominator)
    if isinstance(field, FiniteField):
        if field.p == 2 or field.is_square(a):
            return 1
        return field.nonsquare()
    raise TypeError(f"square classes not supported over {field!r}")


class EtaleAlgebra(Field):
    """Quadratic étale algebra ``K = k[d]/(d^2 - d + nu)`` with trace-one generator d.

    Every quadratic étale algebra has this shape (d := a trace-one element),
    so field and split cases share one representation: an element is a pair
    ``(u, v)`` meaning ``u + v*d``.  ``nu = N_K(d)``; conjugation sends d to
    ``1 - d``.  ``disc`` is the discriminant representative (square-class
    reduced ``1 - 4 nu``, and 1 in characteristic 2) and ``t_gen`` satisfies
    ``T_K(t) = 0``, ``N_K(t) = -disc`` and ``t^2 = disc``.
    """

    def __init__(self, base: Field, nu, label=None):
        self.base = base
        self.nu = nu
        F = base
        self.char = F.char
        self.zero = (F.zero, F.zero)
        self.one = (F.one, F.zero)
        self.d = (F.zero, F.one)
        self.is_finite = F.is_finite
        self.label = label
        disc_raw = F.sub(F.one, F.mul(F.from_int(4), nu))
        if F.char != 2 and F.is_zero(disc_raw):
            raise InseparablePolynomial("1 - 4*nu = 0")
        self.roots = self._find_roots()
        self.is_field = self.roots is None
        if F.char == 2:
            self.disc = F.one
            self.t_gen = self.one
        else:
            self.disc = square_class(F, disc_raw) if not isinstance(F, EtaleAlgebra) else disc_raw
            if isinstance(F, (RationalField, FiniteField)):
                self.disc = F.canonical(self.disc)
            ratio = F.div(disc_raw, self.disc)
            m = F.sqrt(ratio)
            assert m is not None, "square class reduction left a non-square ratio"
            two_d_minus_1 = (F.neg(F.one), F.from_int(2))
            self.t_gen = self.scale(F.inv(m), two_d_minus_1)
        self._build_ops()

    def _find_roots(self):
        F = self.base
        if F.char != 2:
            disc_raw = F.sub(F.one, F.mul(F.from_int(4), self.nu))
            s = F.sqrt(disc_raw)
            if s is None:
                return None
            half = F.inv(F.from_int(2))
            r1 = F.mul(half, F.add(F.one, s))
            return r1, F.sub(F.one, r1)
        if F.is_finite:
            for r in F.elements():
                if F.is_zero(F.add(F.sub(F.mul(r, r), r), self.nu)):
                    return r, F.sub(F.one, r)
            return None
        raise NotImplementedError("characteristic 2 only over finite fields")

    def _build_ops(self):
        F = self.base
        fadd, fsub, fmul, fneg = F.add, F.sub, F.mul, F.neg
        nu = self.nu

        def add(a, b):
            return (fadd(a[0], b[0]), fadd(a[1], b[1]))

        def sub(a, b):
            return (fsub(a[0], b[0]), fsub(a[1], b[1]))

        def neg(a):
            return (fneg(a[0]), fneg(a[1]))

        def mul(a, b):
            u1, v1 = a
            u2, v2 = b
            vv = fmul(v1, v2)
            return (fsub(fmul(u1, u2), fmul(nu, vv)), fadd(fadd(fmul(u1, v2), fmul(v1, u2)), vv))

        self.add, self.sub, self.neg, self.mul = add, sub, neg, mul

    @property
    def name(self):
        return self.label or f"K(nu={self.base.fmt(self.nu)})/{self.base!r}"

    def embed(self, a):
        return (a, self.base.zero)

    def scale(self, c, a):
        return (self.base.mul(c, a[0]), self.base.mul(c, a[1]))

    def conj(self, a):
        F = self.base
        return (F.add(a[0], a[1]), F.neg(a[1]))

    def trace(self, a):
        F = self.base
        return F.add(F.add(a[0], a[0]), a[1])

    def norm(self, a):
        F = self.base
        u, v = a
        return F.add(F.add(F.mul(u, u), F.mul(u, v)), F.mul(self.nu, F.mul(v, v)))

    def norm_bil(self, a, b):
        """N_K(a, b) = a*conj(b) + conj(a)*b."""
        return self.trace(self.mul(a, self.conj(b)))

    def norm_trace(self, a):
        return self.norm(a), self.trace(a)

    def is_in_base(self, a):
        return self.base.is_zero(a[1])

    def inv(self, a):
        n = self.norm(a)
        if self.base.is_zero(n):
            raise ZeroDivisionError("not invertible in K")
        return self.scale(self.base.inv(n), self.conj(a))

    def is_zero(self, a):
        return self.base.is_zero(a[0]) and self.base.is_zero(a[1])

    def from_int(self, n):
        return (self.base.from_int(n), self.base.zero)

    def canonical(self, a):
        return a

    def components(self, a):
        """Split case: the two coordinates of ``a`` in ``k x k``."""
        if self.roots is None:
            raise ValueError("K is a field; no component decomposition")
        F = self.base
        r1, r2 = self.roots
        return F.add(a[0], F.mul(a[1], r1)), F.add(a[0], F.mul(a[1], r2))

    def from_components(self, c1, c2):
        F = self.base
        r1, r2 = self.roots
        v = F.div(F.sub(c1, c2), F.sub(r1, r2))
        return (F.sub(c1, F.mul(v, r1)), v)

    def elements(self):
        return [(u, v) for u in self.base.elements() for v in self.base.elements()]

    def random(self, rng, box=9):
        return (self.base.random(rng, box), self.base.random(rng, box))

    def parse(self, text):
        raise NotImplementedError

    def fmt(self, a):
        F = self.base
        return f"({F.fmt(a[0])})+({F.fmt(a[1])})*d"

    def sqrt(self, a):
        if self.is_finite:
            for x in self.elements():
                if self.mul(x, x) == a:
                    return x
            return None
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, EtaleAlgebra) and self.base == other.base and self.nu == other.nu

    def __hash__(self):
        return hash(("K", self.base, self.nu))

    def __repr__(self):
        return self.name


def etale_make(k: Field, spec) -> EtaleAlgebra:
    """Build K from ``"split"`` or a monic quadratic ``t^2 - beta t + gamma0``.

    ``spec`` may be a string or a ``(beta, gamma0)`` pair of field values.
    The returned algebra also remembers the root ``theta`` of the given
    polynomial as ``K.theta``.
    """
    F = k
    if isinstance(spec, str) and spec.strip().lower() == "split":
        K = EtaleAlgebra(F, F.zero, label=f"{F!r} x {F!r}")
        K.theta = K.d
        return K
    if isinstance(spec, str):
        coeffs = parse_poly(spec, var="t")
        if max(coeffs, default=0) != 2 or any(d < 0 or d > 2 for d in coeffs):
            raise NotDegreeTwo(f"{spec!r} is not of degree 2")
        lead = F.parse(str(coeffs[2]))
        if F.is_zero(lead):
            raise NotDegreeTwo(f"{spec!r} has vanishing leading coefficient in {F!r}")
        beta = F.neg(F.div(F.parse(str(coeffs.get(1, 0))), lead))
        gamma0 = F.div(F.parse(str(coeffs.get(0, 0))), lead)
        label = f"{F!r}[t]/({spec.strip()})"
    else:
        beta, gamma0 = spec
        label = None
    if F.char == 2:
        if F.is_zero(beta):
            raise InseparablePolynomial("t^2 + c is inseparable in characteristic 2")
        # d = theta/beta has trace 1
        nu = F.div(gamma0, F.mul(beta, beta))
        K = EtaleAlgebra(F, nu, label)
        K.theta = (F.zero, beta)
        return K
    disc = F.sub(F.mul(beta, beta), F.mul(F.from_int(4), gamma0))
    if F.is_zero(disc):
        raise InseparablePolynomial("repeated root")
    c = F.div(F.sub(F.one, beta), F.from_int(2))
    # d = theta + c
    nu = F.add(F.add(gamma0, F.mul(c, beta)), F.mul(c, c))
    K = EtaleAlgebra(F, nu, label)
    K.theta = (F.neg(c), F.one)
    return K


def etale_norm_trace(K: EtaleAlgebra, a):
    """``(N_K(a), T_K(a))``."""
    return K.norm(a), K.trace(a)
