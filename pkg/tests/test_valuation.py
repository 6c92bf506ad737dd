import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from woundcert import linalg
from woundcert.errors import NotIndependent, ZeroElement
from woundcert.sampling import random_element, random_nonzero
from woundcert.valgroup import INFINITY, ValGroupElement
from woundcert.valuation import (
    eliminate_to_valuation_basis,
    index_equality,
    is_valuation_independent,
    product_construction_basis,
    standard_basis,
    val,
    valuation_axioms_check,
    value_group,
)

from conftest import F2, F2T, F3T, F2TU, nonzero_elements

V = ValGroupElement


class TestVal:
    def test_generator(self):
        assert val(F3T.gen(0)) == V((1,))

    def test_quotient(self):
        t = F2T.gen(0)
        assert val((t**2 + t**3) / (1 + t)) == V((2,))

    def test_depth_two(self):
        t, u = F2TU.gens
        assert val(t * u**2 + t**3 * u**2) == V((1, 2))

    def test_zero_is_infinity(self):
        assert val(F2T.zero) is INFINITY

    def test_depth_zero(self):
        assert val(F2.one) == V((0,))
        assert val(F2.zero) is INFINITY

    def test_units_have_value_zero(self):
        assert val(F3T.const(2)) == value_group(F3T).zero

    def test_monomials(self):
        assert val(F2TU.monomial((-3, 5))) == V((-3, 5))


class TestAxioms:
    def test_report_passes(self, tower):
        report = valuation_axioms_check(tower, samples=300, seed=5)
        assert report.passed

    def test_cancellation_case(self):
        t = F3T.gen(0)
        assert val(t + (-t)) is INFINITY
        assert not val(t + (-t)) < min(val(t), val(-t))

    def test_unit_product(self):
        a = F2T.one + F2T.gen(0)
        assert val(a * a) == val(a) + val(a) == value_group(F2T).zero

    @pytest.mark.parametrize("tower_name", ["F2T", "F3T", "F2TU"])
    def test_bulk_random_pairs(self, tower_name, rng):
        tower = {"F2T": F2T, "F3T": F3T, "F2TU": F2TU}[tower_name]
        n = 10_000 if tower.depth == 1 else 2_000
        for _ in range(n):
            a = random_element(tower, rng, 1)
            b = random_element(tower, rng, 1)
            assert val(a * b) == val(a) + val(b)
            assert val(a + b) >= min(val(a), val(b))


class TestStandardBasis:
    def test_f2t_d2(self):
        basis = standard_basis(F2T, 2)
        t = F2T.gen(0)
        assert basis.elements == (F2T.one, t, t**2, t**3)
        assert [v.coords for v in basis.valuations] == [(0,), (1,), (2,), (3,)]

    def test_f3t_d1(self):
        t = F3T.gen(0)
        assert standard_basis(F3T, 1).elements == (F3T.one, t, t**2)

    def test_depth2_d1(self):
        t, u = F2TU.gens
        basis = standard_basis(F2TU, 1)
        assert set(basis.elements) == {F2TU.one, t, u, t * u}
        assert {v.coords for v in basis.valuations} == {(0, 0), (1, 0), (0, 1), (1, 1)}

    @pytest.mark.parametrize("d", [1, 2])
    def test_product_construction_agrees(self, tower, d):
        direct = set(standard_basis(tower, d).elements)
        constructed = set(product_construction_basis(tower, d))
        assert direct == constructed

    @pytest.mark.parametrize("d", [1, 2])
    def test_cardinality_and_independence(self, tower, d):
        basis = standard_basis(tower, d)
        assert len(basis.elements) == tower.p ** (tower.depth * d)
        assert is_valuation_independent(list(basis.elements), d)


class TestValuationIndependence:
    def test_one_and_t(self):
        assert is_valuation_independent([F2T.one, F2T.gen(0)], 1)

    def test_same_value(self):
        assert not is_valuation_independent([F2T.one, F2T.one + F2T.gen(0)], 1)

    def test_congruent_values(self):
        t = F2T.gen(0)
        assert not is_valuation_independent([t, t**3], 1)

    def test_zero_rejected(self):
        with pytest.raises(ZeroElement):
            is_valuation_independent([F2T.zero], 1)


class TestEliminate:
    def test_example_units(self):
        t = F2T.gen(0)
        basis, T = eliminate_to_valuation_basis([F2T.one, F2T.one + t], 1)
        assert basis.elements == (F2T.one, t)
        assert T == ((F2T.one, F2T.zero), (F2T.one, F2T.one))

    def test_single(self):
        t = F2T.gen(0)
        basis, T = eliminate_to_valuation_basis([t], 1)
        assert basis.elements == (t,)
        assert T == ((F2T.one,),)

    def test_example_shifted(self):
        t = F2T.gen(0)
        basis, T = eliminate_to_valuation_basis([t, t + t**2], 1)
        assert basis.elements == (t, t**2)
        assert T == ((F2T.one, F2T.zero), (F2T.one, F2T.one))

    def test_dependent_rejected(self):
        t = F3T.gen(0)
        # 1 + t^3 = (1 + t)^3 * 1 lies in k^3 * 1
        with pytest.raises(NotIndependent):
            eliminate_to_valuation_basis([F3T.one, 1 + t**3], 1)

    def test_dependent_pair_rejected(self):
        t = F3T.gen(0)
        with pytest.raises(NotIndependent):
            eliminate_to_valuation_basis([t, 2 * t], 1)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_invariants(self, seed):
        rng = random.Random(seed)
        tower = F2T
        d = rng.choice([1, 2])
        s = rng.randint(2, min(3, tower.p**d))  # need s <= [k : k^{p^d}]
        elems = _independent_family(tower, rng, s, d)
        basis, T = eliminate_to_valuation_basis(elems, d)
        assert is_valuation_independent(list(basis.elements), d)
        # T invertible and the inverse reconstructs the inputs exactly
        S = linalg.inverse(tower, T)
        assert S is not None
        for i in range(s):
            acc = tower.zero
            for j in range(s):
                acc = acc + S[i][j].pth_power(d) * basis.elements[j]
            assert acc == elems[i]
        # forward identity c = T^[p^d] b
        for i in range(s):
            acc = tower.zero
            for j in range(s):
                acc = acc + T[i][j].pth_power(d) * elems[j]
            assert acc == basis.elements[i]


def _independent_family(tower, rng, s, d):
    """Random k^{p^d}-independent family, by rejection."""
    while True:
        elems = [random_nonzero(tower, rng, 2) for _ in range(s)]
        coords = [e.decompose(d) for e in elems]
        keys = sorted({k for row in coords for k in row})
        dense = [[row.get(k, tower.zero) for k in keys] for row in coords]
        if linalg.rank(dense) == s:
            return elems


class TestIndexEquality:
    @pytest.mark.parametrize(
        "tower,d,expect",
        [
            (F3T, 1, 3),
            (F2TU, 1, 4),
            (F2, 1, 1),
            (F2T, 2, 4),
            (F2TU, 2, 16),
            (F3T, 3, 27),
        ],
    )
    def test_values(self, tower, d, expect):
        got = index_equality(tower, d)
        assert got.field_index == got.group_index == expect

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_agreement_depth_le_2(self, d):
        for tower in (F2T, F3T, F2TU):
            got = index_equality(tower, d)
            assert got.field_index == got.group_index
