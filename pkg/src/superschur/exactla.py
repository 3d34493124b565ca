"""Exact linear algebra over the rationals.

The substrate for every dimension computation in this package: reduced
row-echelon forms, nullspaces and subspace arithmetic with Fraction
entries.  No floating point anywhere.  Subspaces are canonicalized to
reduced row-echelon bases, so two objects describe the same subspace
exactly when their stored data compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class SubspaceError(ValueError):
    """Ambient-dimension mismatch or failed containment."""


def vector(entries: Iterable) -> Vector:
    """Coerce an iterable of rational-like entries into a Vector."""
    return tuple(Fraction(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    if not 0 <= i < n:
        raise IndexError(f"unit vector index {i} out of range for dimension {n}")
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c, v: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class Matrix:
    """Immutable rational matrix, stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"matrix with {self.rows}x{self.cols} shape needs "
                f"{self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        vecs = [vector(r) for r in rows]
        if vecs:
            width = len(vecs[0])
            if any(len(r) != width for r in vecs):
                raise ValueError("ragged rows")
            if cols is not None and width != cols:
                raise ValueError(f"rows of width {width} but cols={cols} requested")
        else:
            width = 0 if cols is None else cols
        return Matrix(len(vecs), width, tuple(x for r in vecs for x in r))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix.from_rows([unit_vector(n, i) for i in range(n)], cols=n)

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, (_ZERO,) * (rows * cols))

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix.from_rows([self.col(j) for j in range(self.cols)], cols=self.rows)

    def mul_vec(self, v: Sequence) -> Vector:
        v = vector(v)
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} against {self.cols} columns")
        return tuple(
            sum((self.entries[i * self.cols + j] * v[j] for j in range(self.cols)), _ZERO)
            for i in range(self.rows)
        )


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form of m and its rank (exact Gauss-Jordan)."""
    a = m.to_rows()
    nr, nc = m.rows, m.cols
    piv_r = 0
    for col in range(nc):
        pr = next((r for r in range(piv_r, nr) if a[r][col] != 0), None)
        if pr is None:
            continue
        a[piv_r], a[pr] = a[pr], a[piv_r]
        inv = 1 / a[piv_r][col]
        a[piv_r] = [x * inv for x in a[piv_r]]
        for r in range(nr):
            if r != piv_r and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[piv_r])]
        piv_r += 1
        if piv_r == nr:
            break
    return Matrix.from_rows(a, cols=nc), piv_r


def nullspace(m: Matrix) -> "Subspace":
    """The solution space {v : m v = 0}, canonicalized."""
    red, rank = rref(m)
    rows = red.to_rows()[:rank]
    pivots = [next(j for j, x in enumerate(row) if x != 0) for row in rows]
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [_ZERO] * m.cols
        v[free] = _ONE
        for prow, pcol in zip(rows, pivots):
            v[pcol] = -prow[free]
        basis.append(v)
    return Subspace.span(basis, m.cols)


def solve(m: Matrix, b: Sequence) -> Vector | None:
    """One solution x of m x = b, or None when the system is inconsistent."""
    b = vector(b)
    if len(b) != m.rows:
        raise ValueError(f"rhs of length {len(b)} against {m.rows} rows")
    aug = Matrix.from_rows(
        [list(m.row(i)) + [b[i]] for i in range(m.rows)], cols=m.cols + 1
    )
    red, rank = rref(aug)
    x = [_ZERO] * m.cols
    for i in range(rank):
        row = red.row(i)
        pivot = next(j for j, val in enumerate(row) if val != 0)
        if pivot == m.cols:
            return None
        x[pivot] = row[m.cols]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """Subspace of Q^n stored as a reduced row-echelon basis.

    The canonical form makes structural equality coincide with equality
    of subspaces; pivot columns strictly increase along the basis.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    @staticmethod
    def span(vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vecs = []
        for v in vectors:
            v = vector(v)
            if len(v) != ambient_dim:
                raise SubspaceError(
                    f"spanning vector of length {len(v)} in ambient dimension {ambient_dim}"
                )
            vecs.append(v)
        if not vecs:
            return Subspace(ambient_dim, ())
        red, rank = rref(Matrix.from_rows(vecs, cols=ambient_dim))
        return Subspace(ambient_dim, tuple(red.row(i) for i in range(rank)))

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, ())

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace(n, tuple(unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x != 0) for row in self.basis)

    def reduce(self, v: Sequence) -> Vector:
        """Eliminate this subspace's pivot coordinates from v."""
        v = list(vector(v))
        if len(v) != self.ambient_dim:
            raise SubspaceError(
                f"vector of length {len(v)} in ambient dimension {self.ambient_dim}"
            )
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if f != 0:
                v = [x - f * y for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v: Sequence) -> bool:
        return is_zero_vector(self.reduce(v))

    def coords(self, v: Sequence) -> Vector | None:
        """Coefficients of v over the stored basis rows, or None if outside."""
        v = vector(v)
        if not self.contains(v):
            return None
        return tuple(v[p] for p in self.pivots)


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    if u.ambient_dim != w.ambient_dim:
        raise SubspaceError(
            f"ambient dimensions differ: {u.ambient_dim} vs {w.ambient_dim}"
        )
    return Subspace.span(list(u.basis) + list(w.basis), u.ambient_dim)


def subspace_intersect(u: Subspace, w: Subspace) -> Subspace:
    """Intersection via coefficient vectors of a common element.

    Solves sum_i a_i u_i = sum_j b_j w_j by taking the nullspace of the
    ambient x (dim u + dim w) matrix whose columns are the u basis and
    the negated w basis; reuses rref, no separate kernel code.
    """
    if u.ambient_dim != w.ambient_dim:
        raise SubspaceError(
            f"ambient dimensions differ: {u.ambient_dim} vs {w.ambient_dim}"
        )
    n = u.ambient_dim
    if u.dim == 0 or w.dim == 0:
        return Subspace.zero(n)
    rows = [
        [row[r] for row in u.basis] + [-row[r] for row in w.basis]
        for r in range(n)
    ]
    coeffs = nullspace(Matrix.from_rows(rows, cols=u.dim + w.dim))
    members = []
    for cv in coeffs.basis:
        v = zero_vector(n)
        for i in range(u.dim):
            if cv[i] != 0:
                v = vadd(v, vscale(cv[i], u.basis[i]))
        members.append(v)
    return Subspace.span(members, n)


def quotient_dim(u: Subspace, w: Subspace) -> int:
    """dim(u/w); raises with a witness vector when w is not inside u."""
    if u.ambient_dim != w.ambient_dim:
        raise SubspaceError(
            f"ambient dimensions differ: {u.ambient_dim} vs {w.ambient_dim}"
        )
    for row in w.basis:
        if not u.contains(row):
            raise SubspaceError(
                f"quotient undefined: witness {tuple(map(str, row))} lies outside the numerator"
            )
    return u.dim - w.dim


def complement_rows(u: Subspace, w: Subspace) -> tuple[Vector, ...]:
    """Rows of u's basis spanning a complement of w inside u (w ⊆ u checked)."""
    quotient_dim(u, w)
    wp = set(w.pivots)
    return tuple(row for row, p in zip(u.basis, u.pivots) if p not in wp)


class SparseEchelon:
    """Incrementally reduced echelon rows over sparse keyed vectors.

    Keys must be mutually comparable; the pivot of a row is its smallest
    key.  Rows are kept fully reduced against one another.  Every
    accepted row carries the combination of inserted originals that
    produced it, so `express` can rewrite any member of the row space in
    terms of the accepted insertions.
    """

    def __init__(self) -> None:
        self._pivots: dict[Hashable, int] = {}
        self._rows: list[tuple[Hashable, dict, dict]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    @staticmethod
    def _axpy(target: dict, f: Fraction, source: dict) -> None:
        for k, c in source.items():
            nv = target.get(k, _ZERO) - f * c
            if nv:
                target[k] = nv
            else:
                target.pop(k, None)

    def _reduce(self, v: dict, ledger: dict) -> tuple[dict, dict]:
        v = {k: Fraction(c) for k, c in v.items() if c != 0}
        ledger = {k: Fraction(c) for k, c in ledger.items() if c != 0}
        while True:
            hits = [k for k in v if k in self._pivots]
            if not hits:
                return v, ledger
            for k in hits:
                f = v.get(k, _ZERO)
                if f == 0:
                    continue
                _, row, led = self._rows[self._pivots[k]]
                self._axpy(v, f, row)
                self._axpy(ledger, f, led)

    def insert(self, v: dict, tag: Hashable) -> bool:
        """Add v (tagged) if it enlarges the row space; returns acceptance."""
        rv, rl = self._reduce(v, {tag: _ONE})
        if not rv:
            return False
        pivot = min(rv)
        inv = 1 / rv[pivot]
        rv = {k: c * inv for k, c in rv.items()}
        rl = {k: c * inv for k, c in rl.items()}
        for idx, (p, row, led) in enumerate(self._rows):
            f = row.get(pivot, _ZERO)
            if f != 0:
                row = dict(row)
                led = dict(led)
                self._axpy(row, f, rv)
                self._axpy(led, f, rl)
                self._rows[idx] = (p, row, led)
        self._pivots[pivot] = len(self._rows)
        self._rows.append((pivot, rv, rl))
        return True

    def express(self, v: dict) -> dict | None:
        """Coefficients c with v = sum c[tag] * inserted[tag], or None."""
        rv, rl = self._reduce(v, {})
        if rv:
            return None
        return {k: -c for k, c in rl.items() if c != 0}
