"""Exact linear algebra over any field object from :mod:`fieldcore`.

Vectors are tuples of raw field values.  :class:`Subspace` stores the reduced
row-echelon basis, so equal subspaces compare equal as plain data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DimensionMismatch, SingularMatrix


class Echelon:
    """Incrementally maintained reduced row-echelon basis.

    ``insert`` returns True when the vector enlarged the span.  Rows are kept
    fully reduced so ``reduce`` gives a canonical representative modulo the span.
    """

    def __init__(self, field, n):
        self.F = field
        self.n = n
        self.rows = {}  # pivot column -> row (pivot entry 1)

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        F = self.F
        v = list(vec)
        zero = F.zero
        for col, row in self.rows.items():
            c = v[col]
            if c != zero:
                mul, sub = F.mul, F.sub
                for j in range(self.n):
                    r = row[j]
                    if r != zero:
                        v[j] = sub(v[j], mul(c, r))
        return v

    def insert(self, vec):
        F = self.F
        if len(vec) != self.n:
            raise DimensionMismatch(f"vector of length {len(vec)} in ambient dimension {self.n}")
        v = self.reduce(vec)
        zero = F.zero
        piv = next((j for j, c in enumerate(v) if c != zero), None)
        if piv is None:
            return False
        inv = F.inv(v[piv])
        v = [F.mul(inv, c) for c in v]
        mul, sub = F.mul, F.sub
        for col, row in self.rows.items():
            c = row[piv]
            if c != zero:
                self.rows[col] = [sub(row[j], mul(c, v[j])) if v[j] != zero else row[j] for j in range(self.n)]
        self.rows[piv] = v
        return True

    def contains(self, vec):
        return all(c == self.F.zero for c in self.reduce(vec))

    def full(self):
        return len(self.rows) == self.n

    def basis(self):
        return [tuple(self.rows[c]) for c in sorted(self.rows)]

    def pivots(self):
        return sorted(self.rows)


def rref(field, rows, n=None):
    """Reduced row-echelon basis (list of tuples) of the span of ``rows``."""
    rows = list(rows)
    if n is None:
        if not rows:
            raise ValueError("ambient dimension needed for an empty list")
        n = len(rows[0])
    ech = Echelon(field, n)
    for r in rows:
        ech.insert(r)
        if ech.full():
            break
    return ech.basis()


def rank(field, rows, n=None):
    return len(rref(field, rows, n))


def nullspace(field, rows, n):
    """Basis of ``{v : r.v = 0 for all r in rows}``."""
    basis = rref(field, rows, n) if rows else []
    F = field
    pivots = []
    for r in basis:
        pivots.append(next(j for j, c in enumerate(r) if c != F.zero))
    free = [j for j in range(n) if j not in set(pivots)]
    out = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for r, p in zip(basis, pivots):
            v[p] = F.neg(r[f])
        out.append(tuple(v))
    return out


def solve(field, columns, target):
    """Solve ``sum c_i columns[i] = target``; return coefficients or None."""
    F = field
    m = len(columns)
    n = len(target)
    # augmented system: unknowns c_1..c_m, rows indexed by coordinates
    aug = [[columns[i][r] for i in range(m)] + [target[r]] for r in range(n)]
    ech = Echelon(F, m + 1)
    for row in aug:
        ech.insert(row)
    if m in ech.rows:
        return None
    sol = [F.zero] * m
    for col, row in ech.rows.items():
        sol[col] = row[m]
    return sol


def mat_mul(field, a, b):
    F = field
    return [[F.sum(F.mul(a[i][k], b[k][j]) for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def mat_det(field, m):
    F = field
    n = len(m)
    a = [list(r) for r in m]
    det = F.one
    for c in range(n):
        piv = next((r for r in range(c, n) if not F.is_zero(a[r][c])), None)
        if piv is None:
            return F.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = F.neg(det)
        det = F.mul(det, a[c][c])
        inv = F.inv(a[c][c])
        for r in range(c + 1, n):
            f = F.mul(a[r][c], inv)
            if not F.is_zero(f):
                a[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[r], a[c])]
    return det


def mat_inv(field, m):
    F = field
    n = len(m)
    a = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not F.is_zero(a[r][c])), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        a[c], a[piv] = a[piv], a[c]
        inv = F.inv(a[c][c])
        a[c] = [F.mul(inv, x) for x in a[c]]
        for r in range(n):
            if r != c and not F.is_zero(a[r][c]):
                f = a[r][c]
                a[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def transpose(m):
    return [list(r) for r in zip(*m)]


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of ``field^n`` in canonical reduced echelon form."""

    field: object
    n: int
    basis: tuple

    @classmethod
    def span(cls, field, vectors, n):
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != n:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {n}")
        return cls(field, n, tuple(tuple(r) for r in rref(field, vecs, n)))

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, ())

    @classmethod
    def whole(cls, field, n):
        F = field
        return cls(field, n, tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n)))

    @property
    def dim(self):
        return len(self.basis)

    def echelon(self):
        ech = Echelon(self.field, self.n)
        for r in self.basis:
            ech.rows[next(j for j, c in enumerate(r) if c != self.field.zero)] = list(r)
        return ech

    def contains(self, vec):
        if len(vec) != self.n:
            raise DimensionMismatch("ambient dimension mismatch")
        return self.echelon().contains(vec)

    def contains_space(self, other):
        ech = self.echelon()
        return all(ech.contains(v) for v in other.basis)

    def __add__(self, other):
        return Subspace.span(self.field, list(self.basis) + list(other.basis), self.n)

    def intersect(self, other):
        """Intersection via the kernel of ``(a, b) -> a - b`` on coefficient space."""
        F = self.field
        if not self.basis or not other.basis:
            return Subspace.zero(F, self.n)
        cols = [list(v) for v in self.basis] + [[F.neg(c) for c in v] for v in other.basis]
        rows = [[cols[i][r] for i in range(len(cols))] for r in range(self.n)]
        ker = nullspace(F, rows, len(cols))
        k = len(self.basis)
        vecs = []
        for coeffs in ker:
            vecs.append(combine(F, coeffs[:k], self.basis, self.n))
        return Subspace.span(F, vecs, self.n)

    def elements(self):
        """All vectors of the subspace (finite fields only)."""
        F = self.field
        for coeffs in itertools.product(list(F.elements()), repeat=self.dim):
            yield tuple(combine(F, coeffs, self.basis, self.n))

    def random_vector(self, rng):
        F = self.field
        coeffs = [F.random(rng) for _ in self.basis]
        return tuple(combine(F, coeffs, self.basis, self.n))

    def annihilator(self):
        """Basis of ``{w : w.v = 0 for v in self}`` as a Subspace."""
        return Subspace.span(self.field, nullspace(self.field, list(self.basis), self.n), self.n)


def combine(field, coeffs, vectors, n):
    F = field
    out = [F.zero] * n
    for c, v in zip(coeffs, vectors):
        if c == F.zero:
            continue
        for j in range(n):
            if v[j] != F.zero:
                out[j] = F.add(out[j], F.mul(c, v[j]))
    return out
