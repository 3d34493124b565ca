"""Schur multipliers of nilpotent Lie superalgebras, two independent ways.

The primary route realizes the multiplier as (R ∩ F²)/[R, F] over a free
presentation truncated one class above the target: writing c for the
target's class, the free algebra is cut at class c+1.  This loses
nothing, because γ_{c+1}(F) ⊆ R forces γ_{c+2}(F) ⊆ [R, F], so every
quotient appearing here - the multiplier itself, the bracket quotients
[γ_i(F)+R, F]/[γ_{i+1}(F)+R, F] and their class-c variant - is untouched
by dividing out γ_{c+2}(F).

The cross-check route counts graded-skew 2-cochains that extend the
algebra by a one-dimensional center (even or odd), modulo the cochains
induced by linear functionals.  Any disagreement between the two routes
is surfaced as a hard error, never resolved silently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactla import (
    Matrix,
    SparseEchelon,
    Subspace,
    Vector,
    complement_rows,
    is_zero_vector,
    nullspace,
    quotient_dim,
    rref,
    solve,
    unit_vector,
    vadd,
    vector,
    vscale,
    zero_vector,
)
from .freenilp import (
    FreeNilpotentSuperalgebra,
    GeneratorSpec,
    HomMap,
    build_free_nilpotent,
    eval_hom,
    rewrite_head_sign,
    rewrite_term_sign,
)
from .superalg import (
    EVEN,
    ODD,
    AlgebraError,
    GradedSubspace,
    LieSuperalgebra,
    SuperDim,
    gs_intersect,
    gs_sum,
    left_normed,
    right_normed,
)


class OracleDisagreement(RuntimeError):
    """The Hopf-style and cohomological multiplier computations differ."""


@dataclass
class MultiplierResult:
    dims: SuperDim
    method: str
    witnesses: tuple[Vector, ...] | None = None


@dataclass
class FreePresentation:
    """A surjection from a truncated free superalgebra onto the target.

    `fbar` is free nilpotent of class c+1 on the target's minimal
    generator counts, `pi` evaluates generators on the chosen
    homogeneous lifts, and `relations` is the graded kernel of `pi`.
    """

    target: LieSuperalgebra
    fbar: FreeNilpotentSuperalgebra
    pi: HomMap
    relations: GradedSubspace
    lift_indices: tuple[int, ...]

    def __post_init__(self) -> None:
        self._cache: dict = {}

    @property
    def algebra(self) -> LieSuperalgebra:
        return self.fbar.algebra

    def lift_into_gamma(self, v, i: int) -> Vector:
        """Some w in gamma_i(fbar) with pi(w) = v; v must lie in gamma_i(target)."""
        f = self.fbar
        cols = [idx for idx in range(f.dim) if f.basis_degree(idx) >= i]
        mat = Matrix.from_rows(
            [[self.pi.matrix.entries[r * f.dim + c] for c in cols]
             for r in range(self.target.dim)],
            cols=len(cols),
        )
        x = solve(mat, vector(v))
        if x is None:
            raise AlgebraError("element does not lift into the requested filtration step")
        w = [Fraction(0)] * f.dim
        for pos, c in zip(cols, x):
            w[pos] = c
        return tuple(w)

    def numerator_space(self, i: int) -> GradedSubspace:
        """[gamma_i(F) + R, F] inside fbar."""
        key = ("num", i)
        if key not in self._cache:
            A = self.algebra
            self._cache[key] = A.product_space(
                gs_sum(self.fbar.gamma(i), self.relations), A.graded_full()
            )
        return self._cache[key]

    def denominator_space(self, i: int) -> GradedSubspace:
        """[R, F] at the top step i = c, else [gamma_{i+1}(F) + R, F]."""
        c = self.target.nilpotency_class()
        key = ("den", i)
        if key not in self._cache:
            A = self.algebra
            if i == c:
                base = self.relations
            else:
                base = gs_sum(self.fbar.gamma(i + 1), self.relations)
            self._cache[key] = A.product_space(base, A.graded_full())
        return self._cache[key]


def present(L: LieSuperalgebra, lift_order=None) -> FreePresentation:
    """Truncated free presentation of a nonzero nilpotent superalgebra.

    Lifts are the coordinate vectors complementary to [L, L], taken per
    parity block; `lift_order` optionally permutes them (the reported
    dimensions must not depend on it).
    """
    L.require_valid()
    c = L.nilpotency_class()
    if L.dim == 0:
        raise AlgebraError("the zero algebra has no generators to present")
    cache_key = ("presentation", tuple(lift_order) if lift_order is not None else None)
    if cache_key in L._cache:
        return L._cache[cache_key]
    gens = L.minimal_generator_dims()
    spec = GeneratorSpec(gens.even, gens.odd, c + 1)
    f = build_free_nilpotent(spec)
    lifts = list(L.generator_lift_indices())
    if lift_order is not None:
        order = list(lift_order)
        ev = [lifts[t] for t in order if t < gens.even]
        od = [lifts[t] for t in order if t >= gens.even]
        if sorted(order) != list(range(len(lifts))) or len(ev) != gens.even:
            raise AlgebraError("lift_order must permute lifts within parity blocks")
        lifts = ev + od
    images = [unit_vector(L.dim, t) for t in lifts]
    pi = eval_hom(f, images, L)
    _, rank = rref(pi.matrix)
    if rank != L.dim:
        raise AlgebraError(
            f"chosen lifts fail to generate {L.name} (closure has rank {rank})"
        )
    even_cols = list(range(f.n_even))
    odd_cols = list(range(f.n_even, f.dim))

    def block_kernel(cols):
        mat = Matrix.from_rows(
            [[pi.matrix.entries[r * f.dim + ccol] for ccol in cols]
             for r in range(L.dim)],
            cols=len(cols),
        )
        return nullspace(mat)

    relations = GradedSubspace(block_kernel(even_cols), block_kernel(odd_cols))
    pres = FreePresentation(L, f, pi, relations, tuple(lifts))
    for v in f.algebra.gs_members(f.gamma(c + 1)):
        if not is_zero_vector(pi.apply(v)):
            raise AlgebraError("truncation step is not contained in the relations")
    L._cache[cache_key] = pres
    return pres


def schur_multiplier_hopf(L: LieSuperalgebra) -> MultiplierResult:
    """(R ∩ F²)/[R, F] over the truncated free presentation, graded."""
    if "hopf" in L._cache:
        return L._cache["hopf"]
    L.require_valid()
    L.nilpotency_class()
    if L.dim == 0:
        result = MultiplierResult(SuperDim(0, 0), "hopf", ())
        L._cache["hopf"] = result
        return result
    pres = present(L)
    A = pres.algebra
    f2 = pres.fbar.gamma(2)
    num = gs_intersect(pres.relations, f2)
    den = A.product_space(pres.relations, A.graded_full())
    dims = SuperDim(
        quotient_dim(num.even, den.even), quotient_dim(num.odd, den.odd)
    )
    witnesses = tuple(
        [A.embed_even(row) for row in complement_rows(num.even, den.even)]
        + [A.embed_odd(row) for row in complement_rows(num.odd, den.odd)]
    )
    result = MultiplierResult(dims, "hopf", witnesses)
    L._cache["hopf"] = result
    return result


def schur_multiplier_cohomology(L: LieSuperalgebra) -> MultiplierResult:
    """Multiplier dimensions via one-dimensional central extensions.

    A graded-skew 2-cochain c of parity sigma (nonzero only on pairs
    with |x| + |y| = sigma) extends L by a central line of parity sigma
    exactly when the graded Jacobi identity of the extension holds,
    i.e. the cyclic sum (-1)^{|x||z|} c(x, [y, z]) vanishes on all basis
    triples.  Cochains of the form f([x, y]) for a linear functional f
    are split extensions; the quotient count per parity is reported.
    """
    if "cohomology" in L._cache:
        return L._cache["cohomology"]
    L.require_valid()
    L.nilpotency_class()
    p = L.parities
    n = L.dim
    coords: dict[int, list[tuple[int, int]]] = {EVEN: [], ODD: []}
    for a in range(n):
        for b in range(a, n):
            if a == b and p[a] == EVEN:
                continue  # forced zero by graded skew-symmetry
            coords[(p[a] + p[b]) % 2].append((a, b))
    positions = {key: i for sigma in (EVEN, ODD) for i, key in enumerate(coords[sigma])}

    def coord_of(a: int, b: int):
        if a == b:
            if p[a] == EVEN:
                return None
            return (a, a), Fraction(1)
        if a < b:
            return (a, b), Fraction(1)
        return (b, a), -Fraction((-1) ** (p[a] * p[b]))

    cocycle_rank = {EVEN: SparseEchelon(), ODD: SparseEchelon()}
    for i, j, k in itertools.combinations_with_replacement(range(n), 3):
        sigma = (p[i] + p[j] + p[k]) % 2
        row: dict = {}
        for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
            sign = Fraction((-1) ** (p[x] * p[z]))
            for t, c in L.bracket_basis(y, z).items():
                co = coord_of(x, t)
                if co is None or c == 0:
                    continue
                key, cosign = co
                val = row.get(key, Fraction(0)) + sign * cosign * c
                if val:
                    row[key] = val
                else:
                    row.pop(key, None)
        if row:
            cocycle_rank[sigma].insert(row, tag=(i, j, k))
    cob_rank = {EVEN: SparseEchelon(), ODD: SparseEchelon()}
    for t in range(n):
        sigma = p[t]
        row = {}
        for key in coords[sigma]:
            a, b = key
            c = L.bracket_basis(a, b).get(t, Fraction(0))
            if c:
                row[key] = c
        if row:
            cob_rank[sigma].insert(row, tag=t)
    dims = SuperDim(
        len(coords[EVEN]) - cocycle_rank[EVEN].rank - cob_rank[EVEN].rank,
        len(coords[ODD]) - cocycle_rank[ODD].rank - cob_rank[ODD].rank,
    )
    result = MultiplierResult(dims, "cohomology")
    L._cache["cohomology"] = result
    return result


def schur_multiplier(L: LieSuperalgebra, method: str = "hopf") -> MultiplierResult:
    if method == "hopf":
        return schur_multiplier_hopf(L)
    if method == "cohomology":
        return schur_multiplier_cohomology(L)
    raise ValueError(f"unknown method {method!r}")


def compare_methods(L: LieSuperalgebra) -> tuple[MultiplierResult, MultiplierResult]:
    """Run both routes; raise OracleDisagreement if their dimensions differ."""
    h = schur_multiplier_hopf(L)
    c = schur_multiplier_cohomology(L)
    if h.dims != c.dims:
        raise OracleDisagreement(
            f"{L.name}: hopf gives {h.dims}, cohomology gives {c.dims}"
        )
    return h, c


# -- bracket quotients and the lambda maps -------------------------------------


def bracket_quotient_dim(pres: FreePresentation, i: int) -> int:
    """dim [γ_i(F)+R, F] / [R, F] at i = c, else over [γ_{i+1}(F)+R, F]."""
    c = pres.target.nilpotency_class()
    if not 2 <= i <= c:
        raise AlgebraError(f"index {i} outside [2, {c}]")
    num = pres.numerator_space(i)
    den = pres.denominator_space(i)
    return quotient_dim(num.even, den.even) + quotient_dim(num.odd, den.odd)


def bracket_map_kernel_dim(L: LieSuperalgebra, i: int) -> int:
    """dim ker of the epimorphism from the tensor domain onto the bracket quotient.

    The domain is γ_c(L) ⊗ L/γ₂(L) at the top step and
    (γ_i(L)/γ_{i+1}(L)) ⊗ L/γ₂(L) below it; its dimension is the product
    of total dimensions.
    """
    pres = present(L)
    c = L.nilpotency_class()
    if not 2 <= i <= c:
        raise AlgebraError(f"index {i} outside [2, {c}]")
    cogen = L.dim - L.gamma(2).total_dim
    if i == c:
        first = L.gamma(c).total_dim
    else:
        first = L.gamma(i).total_dim - L.gamma(i + 1).total_dim
    kernel = first * cogen - bracket_quotient_dim(pres, i)
    if kernel < 0:
        raise AlgebraError("bracket quotient exceeds its tensor domain")
    return kernel


# -- witness tensors ------------------------------------------------------------


@dataclass
class WitnessTensor:
    """A signed tensor built from generators, plus its kernel verdict."""

    i: int
    tensor: dict[tuple[int, int], Fraction]
    nonzero: bool
    in_kernel: bool
    leg1_rows: tuple[Vector, ...]


def _leg1_rows(L: LieSuperalgebra, i: int) -> tuple[Vector, ...]:
    """Representatives spanning γ_i(L) (top step) or γ_i/γ_{i+1} (below)."""
    c = L.nilpotency_class()
    gi = L.gamma(i)
    if i == c:
        return tuple(L.gs_members(gi))
    gnext = L.gamma(i + 1)
    rows = [L.embed_even(r) for r in complement_rows(gi.even, gnext.even)]
    rows += [L.embed_odd(r) for r in complement_rows(gi.odd, gnext.odd)]
    return tuple(rows)


def _leg1_coords(L: LieSuperalgebra, i: int, v) -> list[Fraction]:
    """Coordinates of v's class over the _leg1_rows representatives."""
    c = L.nilpotency_class()
    gi = L.gamma(i)
    ve, vo = L.split(v)
    if i == c:
        ce = gi.even.coords(ve)
        co = gi.odd.coords(vo)
        if ce is None or co is None:
            raise AlgebraError("element lies outside the filtration step")
        return list(ce) + list(co)
    gnext = L.gamma(i + 1)
    out: list[Fraction] = []
    for block, vb in ((EVEN, ve), (ODD, vo)):
        amb = gi.even if block == EVEN else gi.odd
        den = gnext.even if block == EVEN else gnext.odd
        comp = complement_rows(amb, den)
        cols = list(comp) + list(den.basis)
        if not cols:
            if not is_zero_vector(vb):
                raise AlgebraError("element lies outside the filtration step")
            continue
        mat = Matrix.from_rows(
            [[col[r] for col in cols] for r in range(amb.ambient_dim)],
            cols=len(cols),
        )
        x = solve(mat, vb)
        if x is None:
            raise AlgebraError("element lies outside the filtration step")
        out.extend(x[: len(comp)])
    return out


def witness_terms(L: LieSuperalgebra, xs, i: int) -> list[tuple[Fraction, Vector, int]]:
    """Signed (coefficient, bracket value, tuple position) triples of the
    witness tensor: the rewriting identity's terms with the outermost
    bracket replaced by ⊗, brace term dropped."""
    parities = tuple(L.parity_of(x) for x in xs)
    terms = [(rewrite_head_sign(i, parities), left_normed(L, xs[:i]), i)]
    for a in range(i + 1, 1, -1):
        right = right_normed(L, xs[a - 1: i + 1])
        if a == 2:
            inner = right
        else:
            inner = L.bracket(right, left_normed(L, xs[: a - 2]))
        terms.append((rewrite_term_sign(i, a, parities), inner, a - 2))
    return terms


def witness_tensor(L: LieSuperalgebra, i: int, tuple_elems) -> WitnessTensor:
    """Build the signed witness tensor for i+1 generator lifts and check that
    its image under the concrete lambda map vanishes.

    First legs live in γ_i(L) coordinates at the top step and in
    γ_i/γ_{i+1} coordinates below it; second legs live in L/γ₂(L)
    coordinates.  Tuple entries must be homogeneous and drawn from the
    chosen minimal generating lifts.
    """
    pres = present(L)
    c = L.nilpotency_class()
    if not 2 <= i <= c:
        raise AlgebraError(f"index {i} outside [2, {c}]")
    xs = [vector(x) for x in tuple_elems]
    if len(xs) != i + 1:
        raise AlgebraError(f"need {i + 1} tuple entries, got {len(xs)}")
    lifts = [unit_vector(L.dim, t) for t in pres.lift_indices]
    gen_pos = []
    for x in xs:
        if not L.is_homogeneous(x):
            raise AlgebraError("tuple entries must be homogeneous")
        try:
            gen_pos.append(lifts.index(x))
        except ValueError:
            raise AlgebraError(
                "tuple entries must be among the chosen generating lifts"
            ) from None
    rows = _leg1_rows(L, i)
    tensor: dict[tuple[int, int], Fraction] = {}
    for coeff, val, pos in witness_terms(L, xs, i):
        if is_zero_vector(val):
            continue
        for a, ca in enumerate(_leg1_coords(L, i, val)):
            if ca == 0:
                continue
            key = (a, gen_pos[pos])
            acc = tensor.get(key, Fraction(0)) + coeff * ca
            if acc:
                tensor[key] = acc
            else:
                tensor.pop(key, None)
    residual = bracket_map_residual(pres, i, tensor, rows)
    return WitnessTensor(
        i=i,
        tensor=tensor,
        nonzero=bool(tensor),
        in_kernel=is_zero_vector(residual),
        leg1_rows=rows,
    )


def bracket_map_residual(
    pres: FreePresentation, i: int, tensor, leg1_rows
) -> Vector:
    """Image of a tensor under the concrete lambda map, reduced modulo the
    denominator subspace; a zero residual certifies kernel membership."""
    A = pres.algebra
    f = pres.fbar
    den = pres.denominator_space(i)
    total = zero_vector(f.dim)
    for (a, b), coeff in tensor.items():
        if coeff == 0:
            continue
        w_u = pres.lift_into_gamma(leg1_rows[a], i)
        w_y = unit_vector(f.dim, f.generator_basis_index(b))
        total = vadd(total, vscale(coeff, A.bracket(w_u, w_y)))
    return A.gs_reduce(den, total)


def witness_tuple_positions(L: LieSuperalgebra, i: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Generator positions (z_1..z_i) with [z_1..z_i] nonzero modulo
    γ_{i+1}(L), plus the positions of all remaining generators."""
    pres = present(L)
    c = L.nilpotency_class()
    if not 2 <= i <= c:
        raise AlgebraError(f"index {i} outside [2, {c}]")
    lifts = [unit_vector(L.dim, t) for t in pres.lift_indices]
    gnext = L.gamma(i + 1) if i < c else L.graded_zero()
    for tup in itertools.product(range(len(lifts)), repeat=i):
        z = left_normed(L, [lifts[t] for t in tup])
        if not L.gs_contains(gnext, z):
            used = set(tup)
            rest = tuple(t for t in range(len(lifts)) if t not in used)
            return tup, rest
    raise AlgebraError(
        f"no left-normed generator word of length {i} survives modulo the next step"
    )


# -- the dimension identities ---------------------------------------------------


@dataclass
class IdentityReport:
    algebra: str
    identity: str
    lhs: int
    rhs: int
    parts: dict[str, int]

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def verify_top_step_identity(L: LieSuperalgebra) -> IdentityReport:
    """dim γ_c(L) + dim M(L) = dim M(L/γ_c(L)) + dim [γ_c(F)+R, F]/[R, F]."""
    c = L.nilpotency_class()
    if c < 2:
        raise AlgebraError("identity needs nilpotency class at least 2")
    pres = present(L)
    gc = L.gamma(c).total_dim
    m_l = schur_multiplier_hopf(L).dims.total
    q, _ = L.quotient(L.gamma(c), name=f"{L.name}/g{c}")
    m_q = schur_multiplier_hopf(q).dims.total
    bq = bracket_quotient_dim(pres, c)
    return IdentityReport(
        algebra=L.name,
        identity="top-step dimension identity",
        lhs=gc + m_l,
        rhs=m_q + bq,
        parts={
            "dim_gamma_c": gc,
            "dim_multiplier": m_l,
            "dim_multiplier_of_quotient": m_q,
            "bracket_quotient": bq,
        },
    )


def verify_telescoped_identity(L: LieSuperalgebra) -> IdentityReport:
    """dim M(L) = dim M(L/γ₂) + dim γ₂ (dim L/γ₂ - 1) - Σ_{i=2}^{c} dim ker λ_i."""
    c = L.nilpotency_class()
    if c < 2:
        raise AlgebraError("identity needs nilpotency class at least 2")
    m_l = schur_multiplier_hopf(L).dims.total
    g2 = L.gamma(2).total_dim
    cogen = L.dim - g2
    q, _ = L.quotient(L.gamma(2), name=f"{L.name}/g2")
    m_ab = schur_multiplier_hopf(q).dims.total
    kernels = {i: bracket_map_kernel_dim(L, i) for i in range(2, c + 1)}
    return IdentityReport(
        algebra=L.name,
        identity="telescoped dimension identity",
        lhs=m_l,
        rhs=m_ab + g2 * (cogen - 1) - sum(kernels.values()),
        parts={
            "dim_multiplier": m_l,
            "dim_multiplier_abelianization": m_ab,
            "dim_gamma_2": g2,
            "dim_cogenerators": cogen,
            **{f"bracket_kernel_{i}": v for i, v in kernels.items()},
        },
    )
