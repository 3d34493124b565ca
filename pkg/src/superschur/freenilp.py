"""Truncated free Lie superalgebras on graded generators.

Bracket words embed into the free associative superalgebra through
[a, b] = ab - (-1)^{|a||b|} ba.  Per-degree bases are picked by exact
rank computation on those expansions (left-normed words span every
graded component), structure constants are solved from the same
expansions, and an independent word-counting oracle cross-checks the
resulting dimensions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exactla import Matrix, SparseEchelon, Subspace, Vector, unit_vector, vector
from .superalg import (
    EVEN,
    ODD,
    AlgebraError,
    GradedSubspace,
    LieSuperalgebra,
    SuperDim,
)

# A bracket word is a full binary tree: a leaf is a generator index,
# an inner node is a pair (left subtree, right subtree).
BracketWord = "int | tuple"


def leaf(i: int) -> int:
    return i


def node(u, v) -> tuple:
    return (u, v)


def word_degree(w) -> int:
    if isinstance(w, int):
        return 1
    return word_degree(w[0]) + word_degree(w[1])


def word_leaves(w) -> list[int]:
    if isinstance(w, int):
        return [w]
    return word_leaves(w[0]) + word_leaves(w[1])


def word_parity(w, parities) -> int:
    return sum(parities[i] for i in word_leaves(w)) % 2


def left_normed_word(indices) -> "BracketWord":
    indices = list(indices)
    if not indices:
        raise AlgebraError("a bracket word needs at least one leaf")
    w = indices[0]
    for i in indices[1:]:
        w = (w, i)
    return w


def right_normed_word(indices) -> "BracketWord":
    indices = list(indices)
    if not indices:
        raise AlgebraError("a bracket word needs at least one leaf")
    w = indices[-1]
    for i in reversed(indices[:-1]):
        w = (i, w)
    return w


def word_label(w, labels) -> str:
    if isinstance(w, int):
        return labels[w]
    return f"[{word_label(w[0], labels)},{word_label(w[1], labels)}]"


def _concat(a: dict, b: dict) -> dict:
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            key = wa + wb
            val = out.get(key, Fraction(0)) + ca * cb
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def _combine(a: dict, sign: Fraction, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        val = out.get(k, Fraction(0)) + sign * c
        if val:
            out[k] = val
        else:
            out.pop(k, None)
    return out


def expand(w, parities) -> dict[tuple[int, ...], Fraction]:
    """Expansion of a bracket word in the free associative superalgebra.

    Returns a sparse map from associative words (tuples of generator
    indices) to coefficients; [a, b] contributes ab - (-1)^{|a||b|} ba.
    """
    if isinstance(w, int):
        return {(w,): Fraction(1)}
    ea = expand(w[0], parities)
    eb = expand(w[1], parities)
    sign = Fraction((-1) ** (word_parity(w[0], parities) * word_parity(w[1], parities)))
    return _combine(_concat(ea, eb), -sign, _concat(eb, ea))


@dataclass(frozen=True)
class GeneratorSpec:
    """p even and q odd generators, truncated at nilpotency class `class_bound`."""

    even: int
    odd: int
    class_bound: int

    def __post_init__(self) -> None:
        if self.even < 0 or self.odd < 0 or self.even + self.odd < 1:
            raise AlgebraError("need at least one generator")
        if self.class_bound < 1:
            raise AlgebraError("class bound must be at least 1")

    @property
    def num(self) -> int:
        return self.even + self.odd

    @property
    def parities(self) -> tuple[int, ...]:
        return (EVEN,) * self.even + (ODD,) * self.odd

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f"x{i+1}" for i in range(self.even)) + tuple(
            f"f{i+1}" for i in range(self.odd)
        )


class FreeNilpotentSuperalgebra:
    """Free Lie superalgebra on graded generators modulo brackets of length > k.

    Built degree by degree: candidates are the left-normed bracket words
    over all index tuples in lexicographic order, and a candidate joins
    the basis exactly when its associative expansion is independent of
    the expansions already kept.  The assembled structure-constant table
    is computed lazily on first use.
    """

    def __init__(self, spec: GeneratorSpec):
        self.spec = spec
        pars = spec.parities
        self.degree_words: list[list] = []
        self.degree_parities: list[list[int]] = []
        self._echelons: list[SparseEchelon] = []
        self._expansions: dict = {}
        for d in range(1, spec.class_bound + 1):
            ech = SparseEchelon()
            words: list = []
            wpars: list[int] = []
            for tup in itertools.product(range(spec.num), repeat=d):
                w = left_normed_word(tup)
                e = expand(w, pars)
                if e and ech.insert(e, tag=len(words)):
                    words.append(w)
                    wpars.append(word_parity(w, pars))
                    self._expansions[w] = e
            self.degree_words.append(words)
            self.degree_parities.append(wpars)
            self._echelons.append(ech)
        # global basis ordering: all even words (by degree, then selection
        # order), then all odd words, matching the even-first convention.
        evens, odds = [], []
        for d0, (words, wpars) in enumerate(zip(self.degree_words, self.degree_parities)):
            for slot, (w, p) in enumerate(zip(words, wpars)):
                (evens if p == EVEN else odds).append((d0 + 1, slot, w))
        self._basis = evens + odds
        self.n_even = len(evens)
        self.n_odd = len(odds)
        self.dim = len(self._basis)
        self._index = {(d, slot): idx for idx, (d, slot, _) in enumerate(self._basis)}
        self._algebra: LieSuperalgebra | None = None

    # -- counting ------------------------------------------------------------

    def degree_dims(self) -> list[SuperDim]:
        out = []
        for wpars in self.degree_parities:
            out.append(SuperDim(wpars.count(EVEN), wpars.count(ODD)))
        return out

    @property
    def total_dims(self) -> SuperDim:
        return SuperDim(self.n_even, self.n_odd)

    # -- basis access ----------------------------------------------------------

    def basis_word(self, idx: int):
        return self._basis[idx][2]

    def basis_degree(self, idx: int) -> int:
        return self._basis[idx][0]

    def basis_labels(self) -> tuple[str, ...]:
        labels = self.spec.labels
        return tuple(word_label(w, labels) for _, _, w in self._basis)

    def generator_basis_index(self, t: int) -> int:
        """Global basis index of generator t (degree-1 words are the generators)."""
        return self._index[(1, t)]

    def gamma(self, d: int) -> GradedSubspace:
        """Degree filtration: span of basis elements of degree >= d."""
        ev = [
            unit_vector(self.n_even, i)
            for i, (deg, _, _) in enumerate(self._basis[: self.n_even])
            if deg >= d
        ]
        od = [
            unit_vector(self.n_odd, i)
            for i, (deg, _, _) in enumerate(self._basis[self.n_even:])
            if deg >= d
        ]
        return GradedSubspace(
            Subspace.span(ev, self.n_even), Subspace.span(od, self.n_odd)
        )

    # -- assembled algebra -------------------------------------------------------

    @property
    def algebra(self) -> LieSuperalgebra:
        if self._algebra is None:
            self._algebra = self._assemble()
        return self._algebra

    def _assemble(self) -> LieSuperalgebra:
        pars = self.spec.parities
        k = self.spec.class_bound
        table = {}
        for i in range(self.dim):
            di, si, wi = self._basis[i]
            pi = word_parity(wi, pars)
            ei = self._expansions[wi]
            for j in range(i, self.dim):
                dj, sj, wj = self._basis[j]
                dd = di + dj
                if dd > k:
                    continue
                pj = word_parity(wj, pars)
                sign = Fraction((-1) ** (pi * pj))
                z = _combine(_concat(ei, self._expansions[wj]), -sign,
                             _concat(self._expansions[wj], ei))
                if not z:
                    continue
                coeffs = self._echelons[dd - 1].express(z)
                if coeffs is None:
                    raise AlgebraError(
                        "internal error: bracket expansion escapes the selected basis"
                    )
                terms = tuple(
                    (self._index[(dd, slot)], c)
                    for slot, c in sorted(coeffs.items())
                    if c != 0
                )
                if terms:
                    table[(i, j)] = terms
        name = f"free({self.spec.even}|{self.spec.odd},c{k})"
        parities = [EVEN] * self.n_even + [ODD] * self.n_odd
        return LieSuperalgebra(name, self.basis_labels(), parities, table)

    def express_in_degree(self, d: int, assoc: dict) -> dict | None:
        """Coefficients over the degree-d basis words, or None if outside."""
        return self._echelons[d - 1].express(assoc)


def build_free_nilpotent(spec: GeneratorSpec) -> FreeNilpotentSuperalgebra:
    return FreeNilpotentSuperalgebra(spec)


# -- independent dimension oracle ---------------------------------------------


def _series_mul(a: dict, b: dict, k: int) -> dict:
    out: dict = {}
    for (d1, j1), c1 in a.items():
        for (d2, j2), c2 in b.items():
            if d1 + d2 > k:
                continue
            key = (d1 + d2, j1 + j2)
            out[key] = out.get(key, 0) + c1 * c2
    return {key: c for key, c in out.items() if c}


def free_superalgebra_degree_dims(p: int, q: int, k: int) -> list[SuperDim]:
    """Per-degree dimensions of the free Lie superalgebra on (p|q) generators.

    Ordered monomials in a homogeneous basis (odd factors with exponent
    at most one) biject with associative words, so in Z[[t, u]] with u
    marking odd letters:

        prod_{d,j} (1 + t^d u^j)^{O(d,j)} / (1 - t^d u^j)^{E(d,j)}
            = 1 / (1 - (p + q u) t)

    where E / O count basis elements of degree d with j odd letters and
    j even / odd.  Solving degree by degree determines every E and O; the
    per-degree pair (sum_j E, sum_j O) is returned.  This recursion is
    independent of the expansion-based basis selection.
    """
    prod = {(0, 0): 1}
    dims = []
    for d in range(1, k + 1):
        counts = {}
        for j in range(d + 1):
            have = prod.get((d, j), 0)
            want = comb(d, j) * p ** (d - j) * q ** j
            l_dj = want - have
            if l_dj < 0:
                raise AlgebraError("counting recursion produced a negative dimension")
            if l_dj:
                counts[j] = l_dj
        dims.append(
            SuperDim(
                sum(c for j, c in counts.items() if j % 2 == 0),
                sum(c for j, c in counts.items() if j % 2 == 1),
            )
        )
        for j, cnt in counts.items():
            factor = {(0, 0): 1}
            for i in range(1, k // d + 1):
                coef = comb(cnt, i) if j % 2 == 1 else comb(cnt + i - 1, i)
                if coef:
                    factor[(d * i, j * i)] = coef
            prod = _series_mul(prod, factor, k)
    return dims


def hilbert_check(f: FreeNilpotentSuperalgebra) -> list[str]:
    """Compare selected per-degree dimensions against the counting oracle."""
    expected = free_superalgebra_degree_dims(f.spec.even, f.spec.odd, f.spec.class_bound)
    mismatches = []
    for d, (got, want) in enumerate(zip(f.degree_dims(), expected), start=1):
        if got != want:
            mismatches.append(f"degree {d}: built {got}, counting oracle {want}")
    return mismatches


# -- the bracket rewriting identity ------------------------------------------


def _psum(parities, a: int, b: int) -> int:
    """Sum of |x_a| .. |x_b| (1-based, inclusive, empty when a > b)."""
    return sum(parities[t - 1] for t in range(a, b + 1))


def _sgn(exponent: int) -> Fraction:
    return Fraction((-1) ** (exponent % 2))


def rewrite_head_sign(i: int, parities) -> Fraction:
    """Sign of the head term [[x_1..x_i]_l, x_{i+1}] of the rewriting identity."""
    return _sgn(_psum(parities, 1, i - 1) * parities[i])


def rewrite_term_sign(i: int, a: int, parities) -> Fraction:
    """Sign of the term [[[x_a..x_{i+1}]_r, [x_1..x_{a-2}]_l], x_{a-1}].

    Valid for 2 <= a <= i+1; the two terms nearest the head carry their
    own signs, the rest follow the general pattern.
    """
    p = lambda t: parities[t - 1]  # noqa: E731 - local shorthand
    if not 2 <= a <= i + 1:
        raise AlgebraError(f"term index {a} outside [2, {i + 1}]")
    if a == i + 1:
        expo = p(i + 1) * p(i)
    elif a == i:
        expo = (p(i) + p(i + 1)) * p(i - 1)
    else:
        expo = _psum(parities, 1, a - 1) * _psum(parities, a, i - 1) + _psum(
            parities, i, i + 1
        ) * _psum(parities, a, i - 2)
    return _sgn(expo)


def rewrite_brace_coeff(i: int, parities) -> Fraction:
    """Coefficient of the closing term [[x_1..x_{i-1}]_l, [x_i, x_{i+1}]]."""
    p = lambda t: parities[t - 1]  # noqa: E731 - local shorthand
    return (
        _sgn(_psum(parities, 1, i - 2) * p(i)) - _sgn(p(i - 1) * p(i + 1))
    ) * _sgn(_psum(parities, 1, i - 2) * p(i + 1))


def rewrite_identity_terms(i: int, parities) -> list[tuple[Fraction, object]]:
    """Signed bracket words of the degree-(i+1) rewriting identity.

    The identity re-expresses nested brackets of i+1 homogeneous
    elements as a signed combination of terms [[right-normed tail,
    left-normed head], single factor], closing with a brace term on
    [x_i, x_{i+1}]; the full signed sum vanishes in any Lie superalgebra.
    Indices are 1-based.
    """
    if i < 3:
        raise AlgebraError("the identity needs i >= 3")
    parities = tuple(int(p) % 2 for p in parities)
    if len(parities) != i + 1:
        raise AlgebraError(f"need {i + 1} parities, got {len(parities)}")

    terms: list[tuple[Fraction, object]] = []
    terms.append(
        (rewrite_head_sign(i, parities), node(left_normed_word(range(0, i)), leaf(i)))
    )
    for a in range(i + 1, 1, -1):
        right = right_normed_word(range(a - 1, i + 1))
        if a == 2:
            inner = right
        else:
            inner = node(right, left_normed_word(range(0, a - 2)))
        terms.append((rewrite_term_sign(i, a, parities), node(inner, leaf(a - 2))))
    brace = rewrite_brace_coeff(i, parities)
    if brace:
        terms.append(
            (brace, node(left_normed_word(range(0, i - 1)), node(leaf(i - 1), leaf(i))))
        )
    return terms


def rewrite_identity_residual(i: int, parities) -> dict:
    """Residual of the rewriting identity, expanded in the free associative
    superalgebra on i+1 generators with the given parities.  Empty dict
    means the identity holds exactly."""
    parities = tuple(int(p) % 2 for p in parities)
    residual: dict = {}
    for coeff, word in rewrite_identity_terms(i, parities):
        residual = _combine(residual, coeff, expand(word, parities))
    return residual


# -- evaluation homomorphisms ---------------------------------------------------


@dataclass
class HomMap:
    """Linear map from a free nilpotent superalgebra into a target algebra."""

    source: FreeNilpotentSuperalgebra
    target: LieSuperalgebra
    matrix: Matrix  # target.dim x source.dim, columns are basis images

    def apply(self, v) -> Vector:
        return self.matrix.mul_vec(v)


def eval_hom(
    f: FreeNilpotentSuperalgebra, images, target: LieSuperalgebra
) -> HomMap:
    """The homomorphism extending generator -> image, checked on basis pairs.

    Images must be homogeneous with the generators' parities, and the
    target's class may not exceed the truncation class (a violation
    surfaces as a failed homomorphism check on some basis pair).
    """
    images = [vector(x) for x in images]
    if len(images) != f.spec.num:
        raise AlgebraError(f"need {f.spec.num} images, got {len(images)}")
    for t, img in enumerate(images):
        if len(img) != target.dim:
            raise AlgebraError("image has wrong coordinate length")
        if target.parity_of(img) != f.spec.parities[t] and not all(
            c == 0 for c in img
        ):
            raise AlgebraError(
                f"generator {f.spec.labels[t]} is mapped to an element of the wrong parity"
            )
    memo: dict = {}

    def ev(w) -> Vector:
        if isinstance(w, int):
            return images[w]
        key = w
        if key not in memo:
            memo[key] = target.bracket(ev(w[0]), ev(w[1]))
        return memo[key]

    cols = [ev(f.basis_word(idx)) for idx in range(f.dim)]
    matrix = Matrix.from_rows(
        [[cols[j][i] for j in range(f.dim)] for i in range(target.dim)], cols=f.dim
    )
    hom = HomMap(f, target, matrix)
    A = f.algebra
    for i in range(f.dim):
        for j in range(i, f.dim):
            lhs = hom.apply(A.bracket(unit_vector(f.dim, i), unit_vector(f.dim, j)))
            rhs = target.bracket(cols[i], cols[j])
            if lhs != rhs:
                raise AlgebraError(
                    "generator images do not extend to a homomorphism "
                    f"(fails at basis pair {i},{j}; is the target's class within "
                    f"the truncation class {f.spec.class_bound}?)"
                )
    return hom
