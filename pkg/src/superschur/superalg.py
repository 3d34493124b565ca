"""Finite-dimensional Lie superalgebras given by structure-constant tables.

An algebra is a Z2-graded basis (even vectors first) plus a table of
brackets [b_i, b_j] for i <= j; the other half of the table follows from
graded skew-symmetry.  Validation checks the grading of every table
entry, consistency of redundantly supplied entries, and the graded
Jacobi identity on all basis triples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactla import (
    Matrix,
    Subspace,
    Vector,
    is_zero_vector,
    nullspace,
    subspace_intersect,
    subspace_sum,
    unit_vector,
    vector,
    zero_vector,
)

EVEN = 0
ODD = 1
Parity = int


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class SuperDim:
    """A pair (even count | odd count) of natural numbers."""

    even: int
    odd: int

    @property
    def total(self) -> int:
        return self.even + self.odd

    def __str__(self) -> str:
        return f"({self.even}|{self.odd})"


@dataclass(frozen=True)
class GradedSubspace:
    """A graded subspace, stored as one canonical Subspace per parity block."""

    even: Subspace
    odd: Subspace

    @property
    def sdim(self) -> SuperDim:
        return SuperDim(self.even.dim, self.odd.dim)

    @property
    def total_dim(self) -> int:
        return self.even.dim + self.odd.dim

    def is_zero(self) -> bool:
        return self.total_dim == 0


def gs_sum(u: GradedSubspace, w: GradedSubspace) -> GradedSubspace:
    return GradedSubspace(subspace_sum(u.even, w.even), subspace_sum(u.odd, w.odd))


def gs_intersect(u: GradedSubspace, w: GradedSubspace) -> GradedSubspace:
    return GradedSubspace(
        subspace_intersect(u.even, w.even), subspace_intersect(u.odd, w.odd)
    )


@dataclass
class ValidationReport:
    """Outcome of table validation.

    `malformed` collects entry-level defects (indices out of range,
    targets of the wrong parity); `violations` collects failures of
    graded skew-symmetry and of the graded Jacobi identity.
    """

    malformed: list[str]
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.malformed and not self.violations

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(self.malformed + self.violations)


class LieSuperalgebra:
    """A Lie superalgebra presented by basis labels, parities and a bracket table.

    The table maps index pairs (i, j) to sequences of (target, coefficient)
    terms.  Entries with i <= j are the canonical data; entries with i > j
    are accepted and checked against their mirrors.  Instances are treated
    as immutable; derived data (series, center, validation) is cached.
    """

    def __init__(self, name, basis_labels, parities, table):
        basis_labels = tuple(str(s) for s in basis_labels)
        parities = tuple(int(p) for p in parities)
        if len(basis_labels) != len(parities):
            raise AlgebraError("basis labels and parities differ in length")
        if any(p not in (EVEN, ODD) for p in parities):
            raise AlgebraError("parities must be 0 (even) or 1 (odd)")
        if any(
            parities[i] == ODD and parities[j] == EVEN
            for i in range(len(parities))
            for j in range(i + 1, len(parities))
        ):
            raise AlgebraError("even basis vectors must be listed before odd ones")
        if len(set(basis_labels)) != len(basis_labels):
            raise AlgebraError("duplicate basis labels")
        self.name = str(name)
        self.basis_labels = basis_labels
        self.parities = parities
        self.dim = len(basis_labels)
        self.n_even = parities.count(EVEN)
        self.n_odd = parities.count(ODD)
        raw = {}
        for key, terms in table.items():
            i, j = int(key[0]), int(key[1])
            raw[(i, j)] = tuple((int(k), Fraction(c)) for k, c in terms)
        self._raw = raw
        self._canonical: dict[tuple[int, int], dict[int, Fraction]] | None = None
        self._cache: dict = {}

    # -- basic structure ---------------------------------------------------

    @property
    def sdim(self) -> SuperDim:
        return SuperDim(self.n_even, self.n_odd)

    def parity(self, i: int) -> Parity:
        return self.parities[i]

    def label_of(self, i: int) -> str:
        return self.basis_labels[i]

    def index_of(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise AlgebraError(f"unknown basis label {label!r} in {self.name}") from None

    def _canon(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        if self._canonical is None:
            canon: dict[tuple[int, int], dict[int, Fraction]] = {}
            deferred = []
            for (i, j), terms in self._raw.items():
                if not (0 <= i < self.dim and 0 <= j < self.dim):
                    continue
                clean = {k: c for k, c in terms if 0 <= k < self.dim and c != 0}
                if i <= j:
                    canon[(i, j)] = clean
                else:
                    deferred.append((i, j, clean))
            for i, j, clean in deferred:
                if (j, i) in canon:
                    continue  # mirror supplied directly; validate checks consistency
                sign = -Fraction((-1) ** (self.parities[i] * self.parities[j]))
                canon[(j, i)] = {k: sign * c for k, c in clean.items()}
            self._canonical = canon
        return self._canonical

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        """[b_i, b_j] as a sparse coordinate dict, completed by skew-symmetry."""
        if i <= j:
            return self._canon().get((i, j), {})
        base = self._canon().get((j, i), {})
        if not base:
            return {}
        sign = -Fraction((-1) ** (self.parities[i] * self.parities[j]))
        return {k: sign * c for k, c in base.items()}

    def bracket(self, x, y) -> Vector:
        """Bilinear extension of the table to arbitrary coordinate vectors."""
        x = vector(x)
        y = vector(y)
        if len(x) != self.dim or len(y) != self.dim:
            raise AlgebraError(f"coordinate vectors must have length {self.dim}")
        acc = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                f = xi * yj
                for k, c in self.bracket_basis(i, j).items():
                    acc[k] += f * c
        return tuple(acc)

    # -- homogeneity helpers ----------------------------------------------

    def split(self, v) -> tuple[Vector, Vector]:
        v = vector(v)
        return v[: self.n_even], v[self.n_even:]

    def join(self, ve, vo) -> Vector:
        return tuple(ve) + tuple(vo)

    def embed_even(self, row) -> Vector:
        return tuple(row) + zero_vector(self.n_odd)

    def embed_odd(self, row) -> Vector:
        return zero_vector(self.n_even) + tuple(row)

    def is_homogeneous(self, v) -> bool:
        ve, vo = self.split(v)
        return is_zero_vector(ve) or is_zero_vector(vo)

    def parity_of(self, v) -> Parity:
        """Parity of a homogeneous vector; zero counts as even."""
        ve, vo = self.split(v)
        if is_zero_vector(vo):
            return EVEN
        if is_zero_vector(ve):
            return ODD
        raise AlgebraError("vector is not homogeneous")

    # -- validation ---------------------------------------------------------

    def validate(self) -> ValidationReport:
        if "validate" in self._cache:
            return self._cache["validate"]
        malformed: list[str] = []
        violations: list[str] = []
        for (i, j), terms in sorted(self._raw.items()):
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                malformed.append(f"bracket entry ({i},{j}) has an index out of range")
                continue
            want = (self.parities[i] + self.parities[j]) % 2
            for k, c in terms:
                if not 0 <= k < self.dim:
                    malformed.append(
                        f"bracket [{self.label_of(i)},{self.label_of(j)}] targets "
                        f"index {k} out of range"
                    )
                elif c != 0 and self.parities[k] != want:
                    malformed.append(
                        f"bracket [{self.label_of(i)},{self.label_of(j)}] targets "
                        f"{self.label_of(k)} of the wrong parity"
                    )
        if not malformed:
            # skew-symmetry of redundantly supplied pairs and even diagonals
            for (i, j), terms in sorted(self._raw.items()):
                if i > j:
                    mirror = self._raw.get((j, i))
                    if mirror is None:
                        continue
                    sign = -Fraction((-1) ** (self.parities[i] * self.parities[j]))
                    want = {}
                    for k, c in mirror:
                        if c != 0:
                            want[k] = want.get(k, Fraction(0)) + sign * c
                    got = {}
                    for k, c in terms:
                        if c != 0:
                            got[k] = got.get(k, Fraction(0)) + c
                    if {k: c for k, c in want.items() if c} != {
                        k: c for k, c in got.items() if c
                    }:
                        violations.append(
                            f"graded skew-symmetry violated at "
                            f"({self.label_of(j)},{self.label_of(i)})"
                        )
                elif i == j and self.parities[i] == EVEN:
                    if any(c != 0 for _, c in terms):
                        violations.append(
                            f"graded skew-symmetry forces [{self.label_of(i)},"
                            f"{self.label_of(i)}] = 0 for even {self.label_of(i)}"
                        )
        if not malformed:
            for i, j, k in itertools.combinations_with_replacement(range(self.dim), 3):
                if not is_zero_vector(self._jacobi_residual(i, j, k)):
                    violations.append(
                        f"graded Jacobi identity fails on "
                        f"({self.label_of(i)},{self.label_of(j)},{self.label_of(k)})"
                    )
        report = ValidationReport(malformed, violations)
        self._cache["validate"] = report
        return report

    def _jacobi_residual(self, i: int, j: int, k: int) -> Vector:
        # (-1)^{|i||k|}[b_i,[b_j,b_k]] + cyclic; vanishing on i<=j<=k triples
        # suffices because the expression is graded-symmetric under the
        # bracket's skew-symmetry alone.
        p = self.parities
        acc = [Fraction(0)] * self.dim
        for (a, b, c_) in ((i, j, k), (j, k, i), (k, i, j)):
            sign = Fraction((-1) ** (p[a] * p[c_]))
            for t, ct in self.bracket_basis(b, c_).items():
                if ct == 0:
                    continue
                for u, cu in self.bracket_basis(a, t).items():
                    acc[u] += sign * ct * cu
        return tuple(acc)

    def require_valid(self) -> None:
        report = self.validate()
        if not report.ok:
            raise AlgebraError(f"{self.name} is not a Lie superalgebra: {report.summary()}")

    # -- graded subspaces ----------------------------------------------------

    def graded_zero(self) -> GradedSubspace:
        return GradedSubspace(Subspace.zero(self.n_even), Subspace.zero(self.n_odd))

    def graded_full(self) -> GradedSubspace:
        return GradedSubspace(Subspace.full(self.n_even), Subspace.full(self.n_odd))

    def graded_span(self, vectors) -> GradedSubspace:
        """Span of the parity projections of the given full-coordinate vectors."""
        evens, odds = [], []
        for v in vectors:
            ve, vo = self.split(v)
            if not is_zero_vector(ve):
                evens.append(ve)
            if not is_zero_vector(vo):
                odds.append(vo)
        return GradedSubspace(
            Subspace.span(evens, self.n_even), Subspace.span(odds, self.n_odd)
        )

    def gs_members(self, gs: GradedSubspace) -> list[Vector]:
        """Homogeneous basis of gs as full-coordinate vectors, even rows first."""
        out = [self.embed_even(row) for row in gs.even.basis]
        out += [self.embed_odd(row) for row in gs.odd.basis]
        return out

    def gs_contains(self, gs: GradedSubspace, v) -> bool:
        ve, vo = self.split(v)
        return gs.even.contains(ve) and gs.odd.contains(vo)

    def gs_reduce(self, gs: GradedSubspace, v) -> Vector:
        ve, vo = self.split(v)
        return self.join(gs.even.reduce(ve), gs.odd.reduce(vo))

    # -- structural invariants ----------------------------------------------

    def product_space(self, u: GradedSubspace, w: GradedSubspace) -> GradedSubspace:
        """Span of all brackets of homogeneous basis members of u and w."""
        out = []
        for x in self.gs_members(u):
            for y in self.gs_members(w):
                z = self.bracket(x, y)
                if not is_zero_vector(z):
                    out.append(z)
        return self.graded_span(out)

    def lower_central_series(self) -> list[GradedSubspace]:
        """Chain gamma_1 = L, gamma_{k+1} = [gamma_k, L] until it stabilizes.

        For nilpotent algebras the returned chain ends with the zero
        subspace; otherwise it ends at the first repeated term.
        """
        if "series" in self._cache:
            return self._cache["series"]
        full = self.graded_full()
        chain = [full]
        while True:
            nxt = self.product_space(chain[-1], full)
            if nxt == chain[-1]:
                break
            chain.append(nxt)
            if nxt.is_zero():
                break
        self._cache["series"] = chain
        return chain

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1].is_zero()

    def nilpotency_class(self) -> int:
        chain = self.lower_central_series()
        if not chain[-1].is_zero():
            raise AlgebraError(
                f"{self.name} is not nilpotent: series stabilizes at "
                f"dimension {chain[-1].sdim}"
            )
        return len(chain) - 1

    def gamma(self, i: int) -> GradedSubspace:
        """i-th term of the descending central sequence (1-based)."""
        if i < 1:
            raise AlgebraError("series index starts at 1")
        chain = self.lower_central_series()
        return chain[min(i, len(chain)) - 1]

    def center(self) -> GradedSubspace:
        """{z : [z, x] = 0 for all x}, computed blockwise from adjoint maps."""
        if "center" in self._cache:
            return self._cache["center"]

        def block_kernel(indices):
            rows = []
            for j in range(self.dim):
                for t in range(self.dim):
                    rows.append(
                        [self.bracket_basis(i, j).get(t, Fraction(0)) for i in indices]
                    )
            if not indices:
                return Subspace.zero(0)
            return nullspace(Matrix.from_rows(rows, cols=len(indices)))

        result = GradedSubspace(
            block_kernel(range(self.n_even)),
            block_kernel(range(self.n_even, self.dim)),
        )
        self._cache["center"] = result
        return result

    # -- quotients and generators --------------------------------------------

    def is_graded_ideal(self, gs: GradedSubspace) -> tuple[bool, str | None]:
        for x in self.gs_members(gs):
            for j in range(self.dim):
                z = self.bracket(x, unit_vector(self.dim, j))
                if not self.gs_contains(gs, z):
                    witness = (
                        f"[{self._describe(x)}, {self.label_of(j)}] escapes the subspace"
                    )
                    return False, witness
        return True, None

    def _describe(self, v) -> str:
        terms = [
            (f"{c}*" if c != 1 else "") + self.label_of(i)
            for i, c in enumerate(v)
            if c != 0
        ]
        return " + ".join(terms) if terms else "0"

    def complement_indices(self, gs: GradedSubspace) -> list[int]:
        """Full-coordinate indices (evens first) complementary to gs."""
        ev = [i for i in range(self.n_even) if i not in set(gs.even.pivots)]
        od = [
            self.n_even + i
            for i in range(self.n_odd)
            if i not in set(gs.odd.pivots)
        ]
        return ev + od

    def quotient(self, ideal: GradedSubspace, name: str | None = None):
        """Quotient algebra by a graded ideal, plus the projection matrix.

        The complement basis is the set of non-pivot coordinates of the
        ideal per parity block, so the induced table is deterministic.
        """
        ok, witness = self.is_graded_ideal(ideal)
        if not ok:
            raise AlgebraError(f"not an ideal of {self.name}: {witness}")
        comp = self.complement_indices(ideal)
        labels = [self.basis_labels[i] for i in comp]
        pars = [self.parities[i] for i in comp]

        def project(v) -> Vector:
            red = self.gs_reduce(ideal, v)
            return tuple(red[i] for i in comp)

        table = {}
        for a in range(len(comp)):
            for b in range(a, len(comp)):
                z = self.bracket(
                    unit_vector(self.dim, comp[a]), unit_vector(self.dim, comp[b])
                )
                terms = tuple(
                    (t, c) for t, c in enumerate(project(z)) if c != 0
                )
                if terms:
                    table[(a, b)] = terms
        q = LieSuperalgebra(
            name if name is not None else f"{self.name}/I", labels, pars, table
        )
        proj = Matrix.from_rows(
            [
                [project(unit_vector(self.dim, s))[t] for s in range(self.dim)]
                for t in range(len(comp))
            ],
            cols=self.dim,
        )
        # projection must be a homomorphism of even degree
        for i in range(self.dim):
            for j in range(i, self.dim):
                lhs = proj.mul_vec(self.bracket(unit_vector(self.dim, i), unit_vector(self.dim, j)))
                rhs = q.bracket(proj.mul_vec(unit_vector(self.dim, i)), proj.mul_vec(unit_vector(self.dim, j)))
                if lhs != rhs:
                    raise AlgebraError(
                        f"projection from {self.name} is not a homomorphism at "
                        f"({self.label_of(i)},{self.label_of(j)})"
                    )
        return q, proj

    def minimal_generator_dims(self) -> SuperDim:
        """Superdimension of L / [L, L] for nilpotent L."""
        self.nilpotency_class()  # raises on non-nilpotent input
        g2 = self.gamma(2)
        return SuperDim(self.n_even - g2.even.dim, self.n_odd - g2.odd.dim)

    def generator_lift_indices(self) -> list[int]:
        """Coordinates of homogeneous lifts of a basis of L / [L, L]."""
        self.nilpotency_class()
        return self.complement_indices(self.gamma(2))


def direct_sum(a: LieSuperalgebra, b: LieSuperalgebra, name: str | None = None) -> LieSuperalgebra:
    """Block-diagonal sum with even-first reordering of the joint basis."""
    b_labels = list(b.basis_labels)
    if set(a.basis_labels) & set(b.basis_labels):
        b_labels = [f"{lbl}_2" for lbl in b_labels]
    labels = (
        list(a.basis_labels[: a.n_even])
        + b_labels[: b.n_even]
        + list(a.basis_labels[a.n_even:])
        + b_labels[b.n_even:]
    )
    pars = [EVEN] * (a.n_even + b.n_even) + [ODD] * (a.n_odd + b.n_odd)

    def map_a(i: int) -> int:
        return i if i < a.n_even else i + b.n_even

    def map_b(i: int) -> int:
        return a.n_even + i if i < b.n_even else a.n_even + a.n_odd + i

    table = {}
    for alg, mapper in ((a, map_a), (b, map_b)):
        for i in range(alg.dim):
            for j in range(i, alg.dim):
                terms = alg.bracket_basis(i, j)
                if terms:
                    table[(mapper(i), mapper(j))] = tuple(
                        (mapper(k), c) for k, c in sorted(terms.items())
                    )
    return LieSuperalgebra(
        name if name is not None else f"{a.name}+{b.name}", labels, pars, table
    )


def change_basis(L: LieSuperalgebra, perm, scales, name: str | None = None) -> LieSuperalgebra:
    """Algebra on the rescaled, permuted basis b'_i = scales[i] * b_{perm[i]}.

    The permutation must preserve parity so the even-first convention
    survives.  Used to check that reported invariants are basis-free.
    """
    perm = tuple(perm)
    scales = tuple(Fraction(s) for s in scales)
    if sorted(perm) != list(range(L.dim)):
        raise AlgebraError("not a permutation")
    if any(s == 0 for s in scales):
        raise AlgebraError("zero scale")
    if any(L.parities[perm[i]] != L.parities[i] for i in range(L.dim)):
        raise AlgebraError("permutation must preserve parity")
    inv = {perm[i]: i for i in range(L.dim)}
    table = {}
    for i in range(L.dim):
        for j in range(i, L.dim):
            raw = L.bracket_basis(perm[i], perm[j])
            terms = tuple(
                (inv[k], scales[i] * scales[j] * c / scales[inv[k]])
                for k, c in sorted(raw.items())
            )
            if terms:
                table[(i, j)] = terms
    labels = [f"c{i+1}" for i in range(L.dim)]
    return LieSuperalgebra(name if name is not None else f"{L.name}~", labels, L.parities, table)


def left_normed(L: LieSuperalgebra, xs) -> Vector:
    """[[...[x1, x2], x3], ..., xn] evaluated in L."""
    xs = [vector(x) for x in xs]
    if not xs:
        raise AlgebraError("left_normed needs at least one element")
    acc = xs[0]
    for x in xs[1:]:
        acc = L.bracket(acc, x)
    return acc


def right_normed(L: LieSuperalgebra, xs) -> Vector:
    """[x1, [x2, [..., [x_{n-1}, xn]...]]] evaluated in L."""
    xs = [vector(x) for x in xs]
    if not xs:
        raise AlgebraError("right_normed needs at least one element")
    acc = xs[-1]
    for x in reversed(xs[:-1]):
        acc = L.bracket(x, acc)
    return acc
