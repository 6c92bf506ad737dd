import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from woundcert.errors import LengthMismatch, TrivialGroup
from woundcert.valgroup import (
    EQ,
    GT,
    INFINITY,
    LT,
    ResidueClass,
    ValGroupElement,
    ValueGroup,
    all_residues,
    compare,
    missing_residues,
)

V = ValGroupElement


class TestCompare:
    def test_rightmost_decides(self):
        assert compare(V((5, 0)), V((-3, 1))) == LT

    def test_tie_falls_left(self):
        assert compare(V((2, 1)), V((7, 1))) == LT

    def test_equal(self):
        assert compare(V((0, 0)), V((0, 0))) == EQ

    def test_gt(self):
        assert compare(V((0, 1)), V((9, 0))) == GT

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            compare(V((1,)), V((1, 2)))

    def test_infinity_dominates(self):
        assert V((10**9,)) < INFINITY
        assert INFINITY > V((10**9,))
        assert INFINITY + V((1,)) is INFINITY

    @given(st.lists(st.integers(-9, 9), min_size=2, max_size=2),
           st.lists(st.integers(-9, 9), min_size=2, max_size=2),
           st.lists(st.integers(-9, 9), min_size=2, max_size=2))
    def test_translation_invariance(self, a, b, c):
        a, b, c = V(tuple(a)), V(tuple(b)), V(tuple(c))
        if a < b:
            assert a + c < b + c


class TestFindBelow:
    def test_at_zero(self):
        assert ValueGroup(1).find_below(V((0,))) == V((-1,))

    def test_rank_two(self):
        assert ValueGroup(2).find_below(V((3, 2))) == V((2, 2))

    def test_negative(self):
        assert ValueGroup(1).find_below(V((-4,))) == V((-5,))

    def test_trivial_group(self):
        with pytest.raises(TrivialGroup):
            ValueGroup(1, trivial=True).find_below(V((0,)))

    def test_result_below(self):
        g = ValueGroup(2)
        for coords in [(0, 0), (5, -3), (-2, 7)]:
            assert g.find_below(V(coords)) < V(coords)


class TestUniformBelow:
    def test_includes_zero(self):
        got = ValueGroup(1).uniform_below([V((3,)), V((-2,))], [2, 5])
        assert got == V((-2,))

    def test_single_positive(self):
        assert ValueGroup(1).uniform_below([V((1,))], [1]) == V((0,))

    def test_rank_two(self):
        got = ValueGroup(2).uniform_below([V((0, 1)), V((2, -1))], [3, 3])
        assert got == V((2, -1))

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            ValueGroup(1).uniform_below([V((1,))], [1, 2])

    def test_contract_by_sampling(self):
        rng = random.Random(7)
        g = ValueGroup(2)
        gammas = [V((rng.randint(-5, 5), rng.randint(-5, 5))) for _ in range(4)]
        ns = [rng.randint(1, 6) for _ in range(4)]
        gamma0 = g.uniform_below(gammas, ns)
        for _ in range(100):
            delta = V((rng.randint(-40, 0), rng.randint(-40, 0)))
            gamma = gamma0 + delta - V((1, 1))
            assert gamma < gamma0
            for gi, ni in zip(gammas, ns):
                assert ni * gamma < gi


class TestDescendingCongruent:
    def test_example_mod3(self):
        got = ValueGroup(1).descending_congruent(V((2,)), V((0,)), 3, 2)
        assert got == [V((-1,)), V((-4,))]

    def test_example_mod2(self):
        got = ValueGroup(1).descending_congruent(V((0,)), V((0,)), 2, 1)
        assert got == [V((-2,))]

    def test_example_rank2(self):
        got = ValueGroup(2).descending_congruent(V((1, 0)), V((0, 0)), 2, 2)
        assert got == [V((-1, 0)), V((-3, 0))]

    def test_trivial_group(self):
        with pytest.raises(TrivialGroup):
            ValueGroup(1, trivial=True).descending_congruent(V((0,)), V((0,)), 2, 1)

    @given(
        st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
        st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
        st.sampled_from([2, 3, 4, 9]),
        st.integers(1, 6),
    )
    def test_output_contract(self, a0, g0, pd, count):
        group = ValueGroup(2)
        alpha0, gamma0 = V(a0), V(g0)
        out = group.descending_congruent(alpha0, gamma0, pd, count)
        assert len(out) == count
        for i, gamma in enumerate(out):
            assert gamma < gamma0
            assert all((c - a) % pd == 0 for c, a in zip(gamma.coords, alpha0.coords))
            if i:
                assert gamma < out[i - 1]


class TestResidues:
    def test_missing_example(self):
        used = {V((0,)).residue(3), V((1,)).residue(3)}
        assert missing_residues(used, 3, 1) == [ResidueClass(3, (2,))]

    def test_all_used(self):
        used = set(all_residues(2, 1))
        assert missing_residues(used, 2, 1) == []

    def test_none_used(self):
        got = missing_residues(set(), 2, 1)
        assert got == [ResidueClass(2, (0,)), ResidueClass(2, (1,))]

    @pytest.mark.parametrize("pd,m", [(2, 1), (3, 1), (2, 2), (3, 2), (4, 2)])
    def test_capacity(self, pd, m):
        classes = all_residues(pd, m)
        assert len(classes) == pd**m
        assert len(set(classes)) == pd**m

    def test_trivial_rank(self):
        assert all_residues(3, 0) == [ResidueClass(3, (0,))]

    def test_reduction_invariant(self):
        with pytest.raises(ValueError):
            ResidueClass(3, (3,))

    def test_congruence_classes_partition(self):
        # two elements share a class iff their difference is divisible
        a, b = V((5, -1)), V((-1, 3))
        assert (a.residue(2) == b.residue(2)) == all(
            (x - y) % 2 == 0 for x, y in zip(a.coords, b.coords)
        )
