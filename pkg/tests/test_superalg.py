import random
from fractions import Fraction

import pytest

from superschur.catalog import abelian, filiform4, heisenberg3, special_heisenberg_odd
from superschur.exactla import unit_vector, vector
from superschur.superalg import (
    EVEN,
    ODD,
    AlgebraError,
    LieSuperalgebra,
    SuperDim,
    change_basis,
    direct_sum,
    left_normed,
    right_normed,
)

F = Fraction


def sh01():
    return special_heisenberg_odd(1)


class TestValidate:
    def test_heis3_is_valid(self):
        assert heisenberg3().validate().ok

    def test_redundant_inconsistent_entries_flag_skew(self):
        bad = LieSuperalgebra(
            "bad",
            ["e1", "e2", "e3"],
            [EVEN] * 3,
            {(0, 1): [(2, 1)], (1, 0): [(2, 1)]},
        )
        report = bad.validate()
        assert not report.ok
        assert any("skew" in v for v in report.violations)

    def test_sh01_valid(self):
        # hand-check: only nontrivial triple is (f,f,f); its residual is a
        # multiple of [z,f] = 0, and the even-even and mixed triples are
        # trivially zero.
        assert sh01().validate().ok

    def test_wrong_parity_target_is_malformed(self):
        bad = LieSuperalgebra(
            "bad", ["e1", "f1"], [EVEN, ODD], {(0, 0): [(1, 1)]}
        )
        report = bad.validate()
        assert report.malformed and not report.ok

    def test_index_out_of_range_is_malformed(self):
        bad = LieSuperalgebra("bad", ["e1"], [EVEN], {(0, 5): [(0, 1)]})
        report = bad.validate()
        assert any("out of range" in m for m in report.malformed)

    def test_jacobi_violation_reported_with_triple(self):
        bad = LieSuperalgebra(
            "bad",
            ["e1", "e2", "e3", "e4"],
            [EVEN] * 4,
            {(0, 1): [(2, 1)], (0, 2): [(0, 1)]},
        )
        report = bad.validate()
        assert any("Jacobi" in v for v in report.violations)

    def test_even_diagonal_must_vanish(self):
        bad = LieSuperalgebra("bad", ["e1", "e2"], [EVEN] * 2, {(0, 0): [(1, 1)]})
        assert not bad.validate().ok

    def test_odd_before_even_rejected(self):
        with pytest.raises(AlgebraError):
            LieSuperalgebra("bad", ["f1", "e1"], [ODD, EVEN], {})


class TestBracket:
    def test_table_entry(self):
        h = heisenberg3()
        assert h.bracket(unit_vector(3, 0), unit_vector(3, 1)) == unit_vector(3, 2)

    def test_skew_completion_even(self):
        h = heisenberg3()
        assert h.bracket(unit_vector(3, 1), unit_vector(3, 0)) == vector([0, 0, -1])

    def test_odd_odd_symmetric(self):
        a = sh01()
        f = unit_vector(2, 1)
        assert a.bracket(f, f) == unit_vector(2, 0)
        # [f, f] = +[f, f] is consistent precisely because of the odd-odd sign
        assert a.bracket(f, f) == a.bracket(f, f)

    def test_bilinearity(self):
        h = heisenberg3()
        x = vector([2, 3, 0])
        y = vector([F(1, 2), 1, 5])
        lhs = h.bracket(x, y)
        expect = [F(0)] * 3
        expect[2] = 2 * F(1) - 3 * F(1, 2)
        assert lhs == tuple(expect)


class TestSeries:
    def test_heis3(self):
        h = heisenberg3()
        chain = h.lower_central_series()
        assert [gs.sdim for gs in chain] == [SuperDim(3, 0), SuperDim(1, 0), SuperDim(0, 0)]
        assert chain[1].even.basis == (unit_vector(3, 2),)
        assert h.nilpotency_class() == 2

    def test_abelian(self):
        a = abelian(2, 1)
        chain = a.lower_central_series()
        assert [gs.sdim for gs in chain] == [SuperDim(2, 1), SuperDim(0, 0)]
        assert a.nilpotency_class() == 1

    def test_filiform4_closure(self):
        f = filiform4()
        chain = f.lower_central_series()
        assert [gs.sdim for gs in chain] == [
            SuperDim(4, 0),
            SuperDim(2, 0),
            SuperDim(1, 0),
            SuperDim(0, 0),
        ]
        assert chain[1].even == type(chain[1].even).span(
            [unit_vector(4, 2), unit_vector(4, 3)], 4
        )
        assert chain[2].even.basis == (unit_vector(4, 3),)
        assert f.nilpotency_class() == 3

    def test_non_nilpotent_flagged(self):
        # [e1, e2] = e2 keeps reproducing e2: the chain stabilizes nonzero
        solvable = LieSuperalgebra(
            "aff", ["e1", "e2"], [EVEN] * 2, {(0, 1): [(1, 1)]}
        )
        assert solvable.validate().ok
        assert not solvable.is_nilpotent()
        with pytest.raises(AlgebraError, match="not nilpotent"):
            solvable.nilpotency_class()

    def test_graded_quotient_dims_sum_to_total(self):
        for L in (heisenberg3(), filiform4(), sh01(), special_heisenberg_odd(2)):
            chain = L.lower_central_series()
            steps = [
                chain[i].total_dim - chain[i + 1].total_dim
                for i in range(len(chain) - 1)
            ]
            assert sum(steps) == L.dim


class TestCenter:
    def test_heis3(self):
        z = heisenberg3().center()
        assert z.even.basis == (unit_vector(3, 2),)
        assert z.odd.dim == 0

    def test_abelian(self):
        a = abelian(2, 2)
        assert a.center() == a.graded_full()

    def test_sh01(self):
        # solve [v, f] = 0 and [v, z] = 0 by hand: v = z
        z = sh01().center()
        assert z.sdim == SuperDim(1, 0)
        assert z.even.basis == (unit_vector(1, 0),)


class TestQuotient:
    def test_heis3_mod_center(self):
        h = heisenberg3()
        q, proj = h.quotient(h.gamma(2))
        assert q.sdim == SuperDim(2, 0)
        assert q._canon() == {}
        assert proj.mul_vec(unit_vector(3, 2)) == vector([0, 0])

    def test_mod_self_is_zero(self):
        h = heisenberg3()
        q, _ = h.quotient(h.graded_full())
        assert q.dim == 0

    def test_filiform4_mod_gamma3_is_heis3(self):
        f = filiform4()
        q, _ = f.quotient(f.gamma(3))
        assert q.sdim == SuperDim(3, 0)
        assert q._canon() == {(0, 1): {2: F(1)}}

    def test_non_ideal_rejected_with_witness(self):
        h = heisenberg3()
        line = h.graded_span([unit_vector(3, 0)])  # [e1, e2] = e3 escapes
        with pytest.raises(AlgebraError, match="escapes"):
            h.quotient(line)


class TestGenerators:
    def test_heis3(self):
        assert heisenberg3().minimal_generator_dims() == SuperDim(2, 0)

    def test_sh01(self):
        assert sh01().minimal_generator_dims() == SuperDim(0, 1)

    def test_abelian(self):
        assert abelian(3, 2).minimal_generator_dims() == SuperDim(3, 2)

    def test_lifts_generate_by_closure(self):
        for L in (heisenberg3(), filiform4(), sh01(), special_heisenberg_odd(2)):
            lifts = [unit_vector(L.dim, t) for t in L.generator_lift_indices()]
            assert len(lifts) == L.minimal_generator_dims().total >= 1
            span = L.graded_span(lifts)
            while True:
                grown = L.graded_span(
                    L.gs_members(span)
                    + [
                        L.bracket(x, y)
                        for x in L.gs_members(span)
                        for y in L.gs_members(span)
                    ]
                )
                if grown == span:
                    break
                span = grown
            assert span == L.graded_full()


class TestDirectSum:
    def test_block_table(self):
        s = direct_sum(heisenberg3(), abelian(1, 0, labels=["e4"]))
        assert s.sdim == SuperDim(4, 0)
        assert s.bracket(unit_vector(4, 0), unit_vector(4, 1)) == unit_vector(4, 2)
        assert s.bracket(unit_vector(4, 3), unit_vector(4, 0)) == (F(0),) * 4

    def test_series_is_blockwise(self):
        a, b = heisenberg3(), special_heisenberg_odd(1)
        s = direct_sum(a, b)
        ca, cb, cs = (
            a.lower_central_series(),
            b.lower_central_series(),
            s.lower_central_series(),
        )
        depth = max(len(ca), len(cb))
        for i in range(depth):
            ga = ca[min(i, len(ca) - 1)].sdim
            gb = cb[min(i, len(cb) - 1)].sdim
            gs = cs[min(i, len(cs) - 1)].sdim
            assert gs == SuperDim(ga.even + gb.even, ga.odd + gb.odd)

    def test_mixed_parities_reordered(self):
        s = direct_sum(special_heisenberg_odd(1), heisenberg3())
        assert s.parities == (EVEN, EVEN, EVEN, EVEN, ODD)
        assert s.validate().ok


class TestBasisInvariance:
    def test_permute_and_rescale_preserve_invariants(self):
        rng = random.Random(7)
        for L in (heisenberg3(), filiform4(), special_heisenberg_odd(2)):
            base = (
                [gs.sdim for gs in L.lower_central_series()],
                L.center().sdim,
                L.minimal_generator_dims(),
            )
            for _ in range(5):
                ev = list(range(L.n_even))
                od = list(range(L.n_even, L.dim))
                rng.shuffle(ev)
                rng.shuffle(od)
                perm = ev + od
                scales = [F(rng.choice([1, 2, 3, -1, -2])) for _ in range(L.dim)]
                moved = change_basis(L, perm, scales)
                assert moved.validate().ok
                assert [gs.sdim for gs in moved.lower_central_series()] == base[0]
                assert moved.center().sdim == base[1]
                assert moved.minimal_generator_dims() == base[2]


class TestNormedBrackets:
    def test_left_normed_base_case(self):
        h = heisenberg3()
        e1, e2 = unit_vector(3, 0), unit_vector(3, 1)
        assert left_normed(h, [e1, e2]) == h.bracket(e1, e2)

    def test_left_normed_three(self):
        f = filiform4()
        e1, e2, e3 = (unit_vector(4, i) for i in range(3))
        assert left_normed(f, [e1, e2, e3]) == f.bracket(f.bracket(e1, e2), e3)

    def test_right_normed_three(self):
        f = filiform4()
        e1, e2, e3 = (unit_vector(4, i) for i in range(3))
        assert right_normed(f, [e1, e2, e3]) == f.bracket(e1, f.bracket(e2, e3))
