import random

import pytest

from woundcert.addpoly import AdditivePoly, Term, one_variable
from woundcert.cokernel import (
    CokernelCertificate,
    ImageTable,
    c0_constant,
    certify_infinite_cokernel,
    dk_decompose,
    oracle_image_contains,
    tt_valuation_identity_check,
)
from woundcert.errors import (
    DegreeZero,
    HypothesisUnverified,
    LeadingCoefficientsDependent,
    SearchTooLarge,
    ToolkitError,
)
from woundcert.sampling import random_element, random_nonzero
from woundcert.valgroup import ValGroupElement
from woundcert.valuation import is_valuation_independent, val

from conftest import F2T, F3T

V = ValGroupElement
T3 = F3T.gen(0)
T2 = F2T.gen(0)

RUSSELL = AdditivePoly(
    F3T, ("x", "y"), (Term(0, 0, F3T.one), Term(0, 1, T3), Term(1, 1, F3T.const(-1)))
)
BOUNDARY = AdditivePoly(
    F2T, ("x", "y"), (Term(0, 0, F2T.one), Term(0, 1, T2), Term(1, 1, F2T.one))
)
CUBING = AdditivePoly(F3T, ("x",), (Term(0, 1, F3T.one),))


class TestDKDecompose:
    def test_russell(self):
        dk = dk_decompose(RUSSELL)
        assert dk.s == 2 and dk.d == 1
        assert [_terms(g) for g in dk.g] == [
            {0: F3T.one, 1: T3},
            {1: F3T.const(-1)},
        ]
        assert [v.coords for _, v in dk.leading] == [(1,), (0,)]
        dk.check_identities()

    def test_linear_rejected(self):
        P = AdditivePoly(F2T, ("x",), (Term(0, 0, F2T.one),))
        with pytest.raises(DegreeZero):
            dk_decompose(P)

    def test_squares(self):
        P = AdditivePoly(F2T, ("x", "y"), (Term(0, 1, F2T.one), Term(1, 1, T2)))
        dk = dk_decompose(P)
        assert [_terms(g) for g in dk.g] == [{1: F2T.one}, {1: T2}]
        assert {v.coords for _, v in dk.leading} == {(0,), (1,)}
        dk.check_identities()

    def test_hypothesis_gate(self):
        P = AdditivePoly(
            F3T, ("x", "y"), (Term(0, 1, F3T.one), Term(1, 1, F3T.const(-1)))
        )
        with pytest.raises(HypothesisUnverified):
            dk_decompose(P)

    def test_asserted_but_dependent(self):
        P = AdditivePoly(
            F3T, ("x", "y"), (Term(0, 1, F3T.one), Term(1, 1, F3T.const(-1)))
        )
        with pytest.raises(LeadingCoefficientsDependent):
            dk_decompose(P, assert_nowhere_vanishing=True)

    def test_mixed_degrees_expand_basis(self):
        # x^2 (pexp 1) next to y^4 (pexp 2) over F_2(t): the pexp-1 part
        # expands over the basis {1, t} of k over k^2, giving s = 3
        P = AdditivePoly(F2T, ("x", "y"), (Term(0, 1, T2), Term(1, 2, F2T.one)))
        dk = dk_decompose(P)
        assert dk.d == 2 and dk.s == 2 * 1 + 1
        assert len({v.residue(4) for _, v in dk.leading}) == 3
        dk.check_identities()

    @pytest.mark.parametrize("seed", range(20))
    def test_random_identities(self, seed):
        P = _random_disjoint_poly(random.Random(seed))
        dk = dk_decompose(P)
        dk.check_identities()
        assert is_valuation_independent([b for b, _ in dk.leading], dk.d)
        assert dk.s <= P.tower.p ** (P.tower.depth * dk.d)


def _terms(poly):
    return {t.pexp: t.coeff for t in poly.terms}


def _random_disjoint_poly(rng):
    """Random separable additive polynomial with disjoint progressions,
    r <= 3 variables, degrees p^d with d <= 2, over F_2(t) or F_3(t)."""
    tower = rng.choice([F2T, F3T])
    while True:
        nvars = rng.randint(1, 3)
        names = tuple("xyz"[:nvars])
        terms = []
        for var in range(nvars):
            top = rng.randint(1, 2)
            terms.append(Term(var, top, random_nonzero(tower, rng, 2)))
            for e in range(top):
                if rng.random() < 0.5:
                    c = random_element(tower, rng, 1)
                    if not c.is_zero:
                        terms.append(Term(var, e, c))
        if rng.random() < 0.7 and not any(t.pexp == 0 for t in terms):
            terms.append(Term(rng.randrange(nvars), 0, tower.one))
        try:
            P = AdditivePoly(tower, names, tuple(terms))
        except ValueError:
            continue
        if P.is_separable() and P.progressions_disjoint():
            return P


class TestC0:
    def test_single_with_lower_term(self):
        g = one_variable(F3T, {0: F3T.one, 1: T3})
        assert c0_constant([g]) == V((-3,))

    def test_single_pure_power(self):
        g = one_variable(F3T, {1: F3T.one})
        assert c0_constant([g]) == V((-1,))

    def test_russell_pair_regression(self):
        dk = dk_decompose(RUSSELL)
        assert c0_constant(dk.g) == V((-6,))

    def test_rejects_mixed_degrees(self):
        g1 = one_variable(F3T, {1: F3T.one})
        g2 = one_variable(F3T, {2: T3})
        with pytest.raises(HypothesisUnverified):
            c0_constant([g1, g2])

    def test_rejects_congruent_leading_values(self):
        g1 = one_variable(F3T, {1: F3T.one})
        g2 = one_variable(F3T, {1: F3T.const(2)})
        with pytest.raises(HypothesisUnverified):
            c0_constant([g1, g2])


class TestValueIdentity:
    def test_russell_bulk(self):
        dk = dk_decompose(RUSSELL)
        c0 = c0_constant(dk.g)
        report = tt_valuation_identity_check(dk.g, c0, samples=10_000, seed=3)
        assert report.passed
        assert report.checked > 1000

    def test_single_example_point(self):
        g = one_variable(F3T, {0: F3T.one, 1: T3})
        image = g.evaluate((1 / T3,))
        assert val(image) == V((-2,))
        assert val(image) == val(T3) + 3 * val(1 / T3)

    def test_nonnegative_values_skipped(self):
        dk = dk_decompose(RUSSELL)
        c0 = c0_constant(dk.g)
        report = tt_valuation_identity_check(
            dk.g, c0, samples=50, seed=0, exponent_range=(0, 5)
        )
        assert report.passed
        assert report.checked == 0 and report.skipped == 50


class TestCertify:
    def test_russell(self):
        cert = certify_infinite_cokernel(RUSSELL, count=3)
        cert.check()
        assert cert.verdict == CokernelCertificate.INFINITE
        assert cert.s == 2 and cert.capacity == 3
        assert cert.missing_residue.rep == (2,)
        assert cert.c0 == V((-6,))
        assert [str(e) for e in cert.representatives] == [
            "(1)/(t^7)",
            "(1)/(t^10)",
            "(1)/(t^13)",
        ]

    def test_boundary(self):
        cert = certify_infinite_cokernel(BOUNDARY, count=2)
        cert.check()
        assert cert.verdict == CokernelCertificate.INCONCLUSIVE
        assert cert.s == cert.capacity == 2
        assert (cert.nvars - 1) % (cert.p**cert.m - 1) == 0

    def test_cubing(self):
        cert = certify_infinite_cokernel(CUBING, count=1)
        cert.check()
        assert cert.verdict == CokernelCertificate.INFINITE
        assert cert.s == 1
        assert cert.missing_residue.rep == (1,)
        assert [str(e) for e in cert.representatives] == ["(1)/(t^2)"]

    def test_hypothesis_gate(self):
        P = AdditivePoly(
            F3T, ("x", "y"), (Term(0, 1, F3T.one), Term(1, 1, F3T.const(-1)))
        )
        with pytest.raises(HypothesisUnverified):
            certify_infinite_cokernel(P, count=1)

    def test_representative_difference_values(self):
        cert = certify_infinite_cokernel(RUSSELL, count=6)
        reps = cert.representatives
        pd = cert.p**cert.d
        for i in range(len(reps)):
            for j in range(i + 1, len(reps)):
                diff = val(reps[i] - reps[j])
                assert diff == val(reps[j])
                assert diff.residue(pd) == cert.missing_residue
                assert diff < cert.c0

    def test_sampled_non_membership(self, rng):
        cert = certify_infinite_cokernel(RUSSELL, count=4)
        diffs = {
            (reps_i - reps_j)
            for i, reps_i in enumerate(cert.representatives)
            for reps_j in cert.representatives[i + 1 :]
        }
        for _ in range(2000):
            point = tuple(random_element(F3T, rng, 1) for _ in range(2))
            assert RUSSELL.evaluate(point) not in diffs

    def test_json_golden(self):
        import pathlib

        cert = certify_infinite_cokernel(RUSSELL, count=3)
        golden = pathlib.Path(__file__).parent / "golden" / "russell_cert_count3.json"
        assert cert.to_json() == golden.read_text()


class TestOracle:
    def test_witness_found(self):
        target = 1 / T3 + 1 / T3**2
        result = oracle_image_contains(RUSSELL, target, bound=1)
        assert result.found
        assert result.witness == (1 / T3, F3T.zero)
        assert RUSSELL.evaluate(result.witness) == target

    def test_unreachable_residue(self):
        result = oracle_image_contains(RUSSELL, 1 / T3, bound=2)
        assert not result.found

    def test_identity_map(self):
        P = AdditivePoly(F2T, ("x",), (Term(0, 0, F2T.one),))
        target = T2 + 1
        result = oracle_image_contains(P, target, bound=1)
        assert result.found and result.witness == (target,)

    def test_jobs_partitioning_stable(self):
        target = 1 / T3 + 1 / T3**2
        base = oracle_image_contains(RUSSELL, target, bound=1)
        for jobs in (2, 3, 5):
            assert oracle_image_contains(RUSSELL, target, bound=1, jobs=jobs) == base

    def test_depth_guard(self):
        tower = F3T
        from conftest import F2TU

        P = AdditivePoly(F2TU, ("x",), (Term(0, 0, F2TU.one),))
        with pytest.raises(ToolkitError):
            oracle_image_contains(P, F2TU.one, bound=1)

    def test_size_guard(self):
        with pytest.raises(SearchTooLarge):
            oracle_image_contains(RUSSELL, F3T.one, bound=9)

    def test_table_matches_scan(self):
        table = ImageTable(RUSSELL, 1)
        target = 1 / T3 + 1 / T3**2
        assert table.lookup(target) == oracle_image_contains(RUSSELL, target, 1).witness
        assert table.lookup(1 / T3 + 1) is None or RUSSELL.evaluate(
            table.lookup(1 / T3 + 1)
        ) == 1 / T3 + 1

    def test_table_consistency(self, rng):
        table = ImageTable(RUSSELL, 1)
        for _ in range(50):
            point = tuple(
                sum(
                    (
                        F3T.const(rng.randrange(3)) * F3T.monomial((e,))
                        for e in (-1, 0, 1)
                    ),
                    F3T.zero,
                )
                for _ in range(2)
            )
            witness = table.lookup(RUSSELL.evaluate(point))
            assert witness is not None
            assert RUSSELL.evaluate(witness) == RUSSELL.evaluate(point)
