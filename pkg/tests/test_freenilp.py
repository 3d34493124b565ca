import itertools
import random
from fractions import Fraction

import pytest

from superschur.catalog import heisenberg3, special_heisenberg_odd
from superschur.exactla import rref, unit_vector
from superschur.freenilp import (
    GeneratorSpec,
    build_free_nilpotent,
    eval_hom,
    expand,
    free_superalgebra_degree_dims,
    hilbert_check,
    left_normed_word,
    rewrite_identity_terms,
    right_normed_word,
    rewrite_identity_residual,
    word_degree,
    word_parity,
)
from superschur.superalg import AlgebraError, SuperDim

F = Fraction


class TestExpand:
    def test_even_commutator(self):
        # [g1, g2] with both even
        assert expand((0, 1), (0, 0)) == {(0, 1): F(1), (1, 0): F(-1)}

    def test_odd_square_doubles(self):
        # [f, f] with f odd: ff - (-1)^{1*1} ff = 2 ff
        assert expand((0, 0), (1,)) == {(0, 0): F(2)}

    def test_iterated_commutator(self):
        got = expand(((0, 1), 2), (0, 0, 0))
        assert got == {
            (0, 1, 2): F(1),
            (1, 0, 2): F(-1),
            (2, 0, 1): F(-1),
            (2, 1, 0): F(1),
        }

    def test_graded_skew_of_expansions(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(1, 3)
            parities = tuple(rng.randint(0, 1) for _ in range(n))

            def random_word(depth):
                if depth == 0 or rng.random() < 0.4:
                    return rng.randrange(n)
                return (random_word(depth - 1), random_word(depth - 1))

            x = random_word(2)
            y = random_word(2)
            sign = F((-1) ** (word_parity(x, parities) * word_parity(y, parities)))
            lhs = expand((x, y), parities)
            rhs = expand((y, x), parities)
            total = dict(lhs)
            for k, c in rhs.items():
                total[k] = total.get(k, F(0)) + sign * c
            assert not {k: c for k, c in total.items() if c}


class TestWordConstructors:
    def test_left_normed_shape(self):
        assert left_normed_word([0, 1, 2]) == ((0, 1), 2)

    def test_right_normed_shape(self):
        assert right_normed_word([0, 1, 2]) == (0, (1, 2))

    def test_degree_counts_leaves(self):
        assert word_degree(((0, 1), (2, 3))) == 4


class TestBuild:
    def test_single_even_generator(self):
        f = build_free_nilpotent(GeneratorSpec(1, 0, 3))
        assert f.total_dims == SuperDim(1, 0)
        assert f.algebra.nilpotency_class() == 1

    def test_single_odd_generator(self):
        # one odd generator: [f,f] survives in degree 2, degree 3 dies
        # (the expansion of [[f,f],f] cancels identically)
        f = build_free_nilpotent(GeneratorSpec(0, 1, 3))
        assert [str(d) for d in f.degree_dims()] == ["(0|1)", "(1|0)", "(0|0)"]
        assert f.total_dims == SuperDim(1, 1)

    def test_two_even_generators_class_two(self):
        f = build_free_nilpotent(GeneratorSpec(2, 0, 2))
        assert f.total_dims == SuperDim(3, 0)
        assert f.degree_dims()[1] == SuperDim(1, 0)

    def test_expansion_rank_equals_basis_size(self):
        spec = GeneratorSpec(2, 1, 3)
        f = build_free_nilpotent(spec)
        for d, words in enumerate(f.degree_words, start=1):
            assert f._echelons[d - 1].rank == len(words)

    def test_gamma_filtration_matches_degrees(self):
        f = build_free_nilpotent(GeneratorSpec(2, 0, 3))
        A = f.algebra
        for d in range(1, 4):
            built = f.gamma(d)
            computed = A.gamma(d)
            assert built == computed

    def test_degree_additivity_of_brackets(self):
        f = build_free_nilpotent(GeneratorSpec(1, 1, 4))
        A = f.algebra
        for i in range(f.dim):
            for j in range(f.dim):
                z = A.bracket(unit_vector(f.dim, i), unit_vector(f.dim, j))
                dd = f.basis_degree(i) + f.basis_degree(j)
                if dd > 4:
                    assert all(c == 0 for c in z)
                else:
                    for t, c in enumerate(z):
                        if c != 0:
                            assert f.basis_degree(t) == dd


class TestValidateSweep:
    @pytest.mark.parametrize(
        "p,q",
        [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)],
    )
    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_assembled_algebra_is_valid(self, p, q, k):
        f = build_free_nilpotent(GeneratorSpec(p, q, k))
        assert f.algebra.validate().ok
        assert f.algebra.nilpotency_class() <= k


class TestHilbert:
    def test_two_even_class_five(self):
        # classical word-counting values for two letters: 2, 1, 2, 3, 6
        dims = free_superalgebra_degree_dims(2, 0, 5)
        assert [d.even for d in dims] == [2, 1, 2, 3, 6]
        assert all(d.odd == 0 for d in dims)

    def test_single_even(self):
        assert free_superalgebra_degree_dims(1, 0, 4) == [
            SuperDim(1, 0),
            SuperDim(0, 0),
            SuperDim(0, 0),
            SuperDim(0, 0),
        ]

    def test_single_odd_class_four(self):
        assert free_superalgebra_degree_dims(0, 1, 4) == [
            SuperDim(0, 1),
            SuperDim(1, 0),
            SuperDim(0, 0),
            SuperDim(0, 0),
        ]

    @pytest.mark.parametrize(
        "p,q",
        [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (2, 1), (1, 2), (0, 3)],
    )
    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_counting_oracle_agrees_with_construction(self, p, q, k):
        f = build_free_nilpotent(GeneratorSpec(p, q, k))
        assert hilbert_check(f) == []


class TestLemma31:
    def test_all_even_arity_three(self):
        assert rewrite_identity_residual(3, (0, 0, 0, 0)) == {}

    def test_all_odd_arity_three(self):
        assert rewrite_identity_residual(3, (1, 1, 1, 1)) == {}

    def test_mixed_arity_four(self):
        assert rewrite_identity_residual(4, (0, 1, 0, 1, 0)) == {}

    @pytest.mark.parametrize("i", [3, 4, 5])
    def test_full_parity_sweep(self, i):
        for parities in itertools.product((0, 1), repeat=i + 1):
            assert rewrite_identity_residual(i, parities) == {}, (i, parities)

    def test_arity_three_matches_five_term_proof_form(self):
        # independent transcription of the identity actually derived for
        # i = 3, written directly from two graded Jacobi instances
        for par in itertools.product((0, 1), repeat=4):
            p1, p2, p3, p4 = par

            def s(e):
                return F((-1) ** (e % 2))

            terms = [
                (s((p1 + p2) * p4), (((0, 1), 2), 3)),
                (s(p3 * p4), ((3, (0, 1)), 2)),
                (s((p3 + p4) * p2), (((2, 3), 0), 1)),
                (s(p2 * p1), ((1, (2, 3)), 0)),
                (
                    (s(p1 * p3) - s(p2 * p4)) * s(p1 * p4),
                    ((0, 1), (2, 3)),
                ),
            ]
            total: dict = {}
            for coeff, word in terms:
                for k, c in expand(word, par).items():
                    total[k] = total.get(k, F(0)) + coeff * c
            assert not {k: c for k, c in total.items() if c}
            # and it coincides term-by-term with the general construction
            general = rewrite_identity_terms(3, par)
            got = {w: c for c, w in general}
            want = {w: c for c, w in terms if c}
            assert got == want

    def test_low_arity_rejected(self):
        with pytest.raises(AlgebraError):
            rewrite_identity_residual(2, (0, 0, 0))


class TestEvalHom:
    def test_identity_map(self):
        f = build_free_nilpotent(GeneratorSpec(2, 0, 2))
        A = f.algebra
        images = [unit_vector(f.dim, f.generator_basis_index(t)) for t in range(2)]
        hom = eval_hom(f, images, A)
        for i in range(f.dim):
            assert hom.apply(unit_vector(f.dim, i)) == unit_vector(f.dim, i)

    def test_free_class_two_onto_heis3_is_iso(self):
        f = build_free_nilpotent(GeneratorSpec(2, 0, 2))
        h = heisenberg3()
        hom = eval_hom(f, [unit_vector(3, 0), unit_vector(3, 1)], h)
        _, rank = rref(hom.matrix)
        assert rank == 3 == f.dim

    def test_free_odd_class_two_onto_sh01_is_iso(self):
        f = build_free_nilpotent(GeneratorSpec(0, 1, 2))
        sh = special_heisenberg_odd(1)
        hom = eval_hom(f, [unit_vector(2, 1)], sh)
        _, rank = rref(hom.matrix)
        assert rank == 2 == f.dim

    def test_parity_mismatch_rejected(self):
        f = build_free_nilpotent(GeneratorSpec(0, 1, 2))
        h = heisenberg3()
        with pytest.raises(AlgebraError, match="parity"):
            eval_hom(f, [unit_vector(3, 0)], h)

    def test_class_violation_rejected(self):
        # a class-3 target cannot factor through a class-2 truncation
        from superschur.catalog import filiform4

        f = build_free_nilpotent(GeneratorSpec(2, 0, 2))
        with pytest.raises(AlgebraError, match="homomorphism"):
            eval_hom(f, [unit_vector(4, 0), unit_vector(4, 1)], filiform4())

    def test_surjection_image_of_filtration_is_filtration(self):
        f = build_free_nilpotent(GeneratorSpec(2, 0, 3))
        h = heisenberg3()
        hom = eval_hom(f, [unit_vector(3, 0), unit_vector(3, 1)], h)
        for d in (1, 2, 3):
            image = h.graded_span(
                [hom.apply(v) for v in f.algebra.gs_members(f.gamma(d))]
            )
            assert image == h.gamma(d)
