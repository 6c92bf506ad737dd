"""The composite valuation on tower fields and valuation bases.

The valuation sends t_i to the i-th unit vector of Z^r and an element of
the coefficient field to its value padded with zeros; the value group is
ordered lexicographically from the right.  On a polynomial in the outermost
variable the value is read off the smallest index with a nonzero
coefficient (order of vanishing at the origin), and extends to quotients by
subtraction.

A system of nonzero elements is valuation independent over k^{p^d} when
their values are pairwise distinct mod p^d; such a system is automatically
linearly independent over k^{p^d}.  `eliminate_to_valuation_basis` turns any
k^{p^d}-independent family into one with pairwise distinct values by
Gaussian-style elimination against the standard monomial basis, tracking
the change of basis as a matrix applied through p^d-th powers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .errors import NotIndependent, ZeroElement
from .fields import Tower, TowerElement, standard_monomial_exponents
from .valgroup import INFINITY, ValGroupElement, ValueGroup


def value_group(tower: Tower) -> ValueGroup:
    return ValueGroup(max(1, tower.depth), trivial=tower.depth == 0)


def val(a: TowerElement) -> ValGroupElement | object:
    """The tower valuation of a; INFINITY for zero."""
    coords = _value_coords(a.tower, a.value)
    if coords is None:
        return INFINITY
    if not coords:
        return ValGroupElement((0,))
    return ValGroupElement(tuple(coords))


def _value_coords(tower: Tower, value) -> list[int] | None:
    if tower.depth == 0:
        return None if value == 0 else []
    num, den = value
    if not num:
        return None
    vn = _poly_coords(tower, num)
    vd = _poly_coords(tower, den)
    return [a - b for a, b in zip(vn, vd)]


def _poly_coords(tower: Tower, poly: tuple) -> list[int]:
    z = tower.sub.vzero
    i0 = next(i for i, c in enumerate(poly) if c != z)
    return _value_coords(tower.sub, poly[i0]) + [i0]


@dataclass(frozen=True)
class AxiomsReport:
    samples: int
    failures: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.failures


def valuation_axioms_check(tower: Tower, samples: int = 1000, seed: int = 0) -> AxiomsReport:
    """Sample random pairs and check v(ab) = v(a)+v(b), the ultrametric
    inequality and v(1) = 0.  Returns the first counterexample if any."""
    from .sampling import random_element

    rng = random.Random(seed)
    failures = []
    if val(tower.one) != value_group(tower).zero:
        failures.append(("one", tower.one))
    for _ in range(samples):
        a = random_element(tower, rng)
        b = random_element(tower, rng)
        va, vb = val(a), val(b)
        if val(a * b) != va + vb:
            failures.append(("multiplicativity", a, b))
            break
        if not val(a + b) >= min(va, vb):
            failures.append(("ultrametric", a, b))
            break
    return AxiomsReport(samples, tuple(failures))


@dataclass(frozen=True)
class ValuationBasis:
    """Nonzero elements whose values are pairwise distinct mod p^d."""

    elements: tuple[TowerElement, ...]
    d: int
    valuations: tuple[ValGroupElement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "valuations", tuple(self.valuations))
        if len(self.elements) != len(self.valuations):
            raise ValueError("elements and valuations must align")
        if any(e.is_zero for e in self.elements):
            raise ZeroElement("valuation basis contains zero")
        pd = self.elements[0].tower.p ** self.d if self.elements else 0
        residues = {v.residue(pd) for v in self.valuations}
        if len(residues) != len(self.valuations):
            raise ValueError(f"valuations not pairwise distinct mod {pd}")


@lru_cache(maxsize=None)
def standard_basis(tower: Tower, d: int) -> ValuationBasis:
    """The p^{rd} monomials t1^j1 ... tr^jr, 0 <= j_i < p^d, with their values."""
    if d < 0:
        raise ValueError("d must be >= 0")
    elements = []
    valuations = []
    for exps in standard_monomial_exponents(tower, d):
        elements.append(tower.monomial(exps))
        valuations.append(ValGroupElement(exps if exps else (0,)))
    return ValuationBasis(tuple(elements), d, tuple(valuations))


def product_construction_basis(tower: Tower, d: int) -> list[TowerElement]:
    """Independent construction of the same basis by iterated products.

    Depth recursion gives the base set (each sub-basis element times a power
    of the new variable below p), and the d-recursion multiplies the (d-1)
    set by p^{d-1}-st powers of the base set.  Used as a cross-check against
    `standard_basis`.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return _base_set(tower)
    prev = product_construction_basis(tower, d - 1)
    out = []
    for g in prev:
        for e in _base_set(tower):
            out.append(g * e.pth_power(d - 1))
    return out


def _base_set(tower: Tower) -> list[TowerElement]:
    if tower.depth == 0:
        return [tower.one]
    sub_set = _base_set(tower.sub)
    x = tower.gen(tower.depth - 1)
    out = []
    for b in sub_set:
        lifted = _lift(tower, b)
        for j in range(tower.p):
            out.append(lifted * x**j)
    return out


def _lift(tower: Tower, sub_elem: TowerElement) -> TowerElement:
    return tower.element(((sub_elem.value,), tower._pone))


def is_valuation_independent(elems: list[TowerElement], d: int) -> bool:
    """True iff the valuations are pairwise distinct mod p^d."""
    if any(e.is_zero for e in elems):
        raise ZeroElement("valuation independence needs nonzero elements")
    if not elems:
        return True
    pd = elems[0].tower.p ** d
    residues = {val(e).residue(pd) for e in elems}
    return len(residues) == len(elems)


def eliminate_to_valuation_basis(
    b: list[TowerElement], d: int
) -> tuple[ValuationBasis, tuple[tuple[TowerElement, ...], ...]]:
    """Rewrite a k^{p^d}-independent family into a valuation basis of its span.

    Each b_i is expanded in k^{p^d}-coordinates over the standard monomials;
    the coordinate term of strictly minimal value is the pivot (unique,
    because monomial values are distinct mod p^d) and is eliminated from all
    later rows.  Rows are processed in input order.

    Returns (basis, T) with c_i = sum_j T[i][j]^{p^d} * b_j; c spans the same
    k^{p^d}-subspace and T is invertible.  Coordinate rows transform linearly
    in the untwisted entries because Frobenius is additive.
    """
    if not b:
        raise ValueError("empty input")
    if d < 1:
        raise ValueError("d must be >= 1")
    tower = b[0].tower
    if any(e.tower != tower for e in b):
        raise ValueError("mixed towers")
    if any(e.is_zero for e in b):
        raise ZeroElement("cannot eliminate a zero element")

    q = tower.p**d
    coords = [e.decompose(d) for e in b]
    keys = sorted({k for row in coords for k in row}, key=lambda k: k[::-1])
    dense = [[row.get(k, tower.zero) for k in keys] for row in coords]
    if linalg.rank(dense) != len(b):
        raise NotIndependent(f"{len(b)} elements are k^(p^{d})-linearly dependent")

    s = len(b)
    elements = list(b)
    rows = [dict(row) for row in coords]
    transform = [[tower.one if i == j else tower.zero for j in range(s)] for i in range(s)]

    for step in range(s):
        row = rows[step]
        pivot_key = min(
            row,
            key=lambda k: q * val(row[k]) + ValGroupElement(k if k else (0,)),
        )
        pivot_coeff = row[pivot_key]
        for i in range(step + 1, s):
            other = rows[i].get(pivot_key)
            if other is None:
                continue
            factor = other / pivot_coeff
            elements[i] = elements[i] - factor.pth_power(d) * elements[step]
            transform[i] = [x - factor * y for x, y in zip(transform[i], transform[step])]
            merged = {}
            for k in set(rows[i]) | set(row):
                v = rows[i].get(k, tower.zero) - factor * row.get(k, tower.zero)
                if v:
                    merged[k] = v
            rows[i] = merged

    basis = ValuationBasis(tuple(elements), d, tuple(val(e) for e in elements))
    return basis, tuple(tuple(r) for r in transform)


@dataclass(frozen=True)
class IndexEquality:
    field_index: int
    group_index: int


def index_equality(tower: Tower, d: int) -> IndexEquality:
    """[k : k^{p^d}] from the monomial basis versus [G : p^d G] by enumeration."""
    from .valgroup import all_residues

    field_index = len(standard_basis(tower, d).elements)
    group_index = len(all_residues(tower.p**d, tower.depth))
    if field_index != group_index:
        raise AssertionError(
            f"index mismatch: field {field_index}, group {group_index}"
        )
    return IndexEquality(field_index, group_index)
