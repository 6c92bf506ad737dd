"""Finite p-groups as explicit element tables: Frattini data and bounds.

Groups come either from abelian invariants [p^a1, ..., p^ak] or from
permutation generators; closure is plain product saturation with a size
guard.  The Frattini subgroup is computed two ways: the primary path closes
the set of all commutators and p-th powers (valid for p-groups), and for
orders <= 512 an oracle path intersects the kernels of every surjective
homomorphism onto Z/p (these kernels are exactly the maximal subgroups).
Both must agree.

The bound calculators turn group-theoretic size data into essential
dimension bounds: order p^n gives an upper bound of n; Frattini order p^e
gives e+1 over infinite fields and e+2 over finite ones; elementary groups
get 1 or 2 directly; and an elementary group of rank >= 3 cannot embed in
PGL_2(F_p) (p^3 > p(p^2-1)), forcing a lower bound of 2 over the prime
field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product

from .errors import NotPGroup, TooLarge

_CLOSURE_LIMIT = 10**4
_ORACLE_LIMIT = 512


class FiniteGroup:
    """Immutable finite p-group with an explicit element list."""

    def __init__(self, p, elements, identity, mult, generators, label=""):
        self.p = p
        self.elements = tuple(elements)
        self.identity = identity
        self._mult = mult
        self.generators = tuple(generators)
        self.label = label
        n = 0
        order = len(self.elements)
        while order % p == 0:
            order //= p
            n += 1
        if order != 1:
            raise NotPGroup(f"order {len(self.elements)} is not a power of {p}")
        self.n = n

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, a, b):
        return self._mult(a, b)

    def power(self, a, k: int):
        out = self.identity
        for _ in range(k):
            out = self._mult(out, a)
        return out

    def inv(self, a):
        # element order divides p^n
        return self.power(a, self.order - 1) if self.order > 1 else a

    def commutator(self, a, b):
        return self._mult(self._mult(self.inv(a), self.inv(b)), self._mult(a, b))

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(
            self._mult(a, b) == self._mult(b, a) for a in gens for b in gens
        )

    def is_elementary(self) -> bool:
        """Abelian with every element killed by p."""
        return self.is_abelian() and all(
            self.power(g, self.p) == self.identity for g in self.elements
        )

    def subgroup_closure(self, gens) -> frozenset:
        return frozenset(_closure(list(gens), self.identity, self._mult, self.order))

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_abelian_invariants(cls, invariants, p=None) -> "FiniteGroup":
        invariants = tuple(int(m) for m in invariants)
        if not invariants:
            raise ValueError("need at least one invariant")
        for m in invariants:
            if m > 1:
                root = _prime_root(m)
                if p is None:
                    p = root
                elif root != p:
                    raise NotPGroup("invariants must be powers of a single prime")
        if p is None:
            raise ValueError("trivial invariants need an explicit p")
        total = 1
        for m in invariants:
            total *= m
        if total > _CLOSURE_LIMIT:
            raise TooLarge(f"order {total} exceeds {_CLOSURE_LIMIT}")
        elements = sorted(product(*(range(m) for m in invariants)))
        identity = tuple(0 for _ in invariants)

        def mult(a, b):
            return tuple((x + y) % m for x, y, m in zip(a, b, invariants))

        gens = []
        for i in range(len(invariants)):
            unit = [0] * len(invariants)
            unit[i] = 1
            gens.append(tuple(unit))
        label = "x".join(f"Z/{m}" for m in invariants)
        return cls(p, elements, identity, mult, gens, label)

    @classmethod
    def from_permutations(cls, p, perms, degree=None) -> "FiniteGroup":
        perms = [tuple(perm) for perm in perms]
        if degree is None:
            degree = max((len(perm) for perm in perms), default=1)
        normalized = []
        for perm in perms:
            padded = tuple(perm) + tuple(range(len(perm), degree))
            if sorted(padded) != list(range(degree)):
                raise ValueError(f"not a permutation of 0..{degree - 1}: {perm}")
            normalized.append(padded)
        identity = tuple(range(degree))

        def mult(a, b):
            return tuple(a[b[i]] for i in range(degree))

        elements = sorted(_closure(normalized, identity, mult, _CLOSURE_LIMIT))
        return cls(p, elements, identity, mult, normalized, f"perm<{degree}>")

    @classmethod
    def from_spec(cls, text: str) -> "FiniteGroup":
        """Parse `cyclic:27`, `abelian:3,3,9` or `perm:p=2;(1 2)(3 4),(1 3)`."""
        kind, _, rest = text.partition(":")
        kind = kind.strip()
        if kind == "cyclic":
            return cls.from_abelian_invariants([int(rest)])
        if kind == "abelian":
            return cls.from_abelian_invariants(int(x) for x in rest.split(","))
        if kind == "perm":
            head, _, body = rest.partition(";")
            match = re.fullmatch(r"\s*p\s*=\s*(\d+)\s*", head)
            if not match:
                raise ValueError(f"perm spec needs p=<prime>: {text!r}")
            p = int(match.group(1))
            perms = [_parse_cycles(s) for s in _split_perms(body)]
            return cls.from_permutations(p, perms)
        raise ValueError(f"unknown group spec kind {kind!r}")


def _closure(gens, identity, mult, limit):
    elements = {identity}
    frontier = [identity]
    gens = [g for g in gens if g != identity]
    for g in gens:
        if g not in elements:
            elements.add(g)
            frontier.append(g)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = mult(a, g)
                if b not in elements:
                    elements.add(b)
                    nxt.append(b)
                    if len(elements) > limit:
                        raise TooLarge(f"closure exceeds {limit} elements")
        frontier = nxt
    return elements


def _prime_root(m: int) -> int:
    for p in (2, 3, 5, 7, 11, 13):
        if m % p == 0:
            while m % p == 0:
                m //= p
            if m != 1:
                break
            return p
    raise NotPGroup(f"{m} is not a small prime power")


def _split_perms(body: str) -> list[str]:
    parts = []
    depth = 0
    current = ""
    for ch in body:
        if ch == "," and depth == 0:
            parts.append(current)
            current = ""
            continue
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        current += ch
    if current.strip():
        parts.append(current)
    return parts


def _parse_cycles(text: str) -> tuple[int, ...]:
    points = [int(x) for run in re.findall(r"\(([^)]*)\)", text) for x in run.split()]
    degree = max(points, default=1)
    image = list(range(degree))
    for run in re.findall(r"\(([^)]*)\)", text):
        cycle = [int(x) - 1 for x in run.split()]
        for i, a in enumerate(cycle):
            image[a] = cycle[(i + 1) % len(cycle)]
    return tuple(image)


# ---------------------------------------------------------------------------
# Frattini subgroup


@dataclass(frozen=True)
class FrattiniData:
    phi_order: int
    quotient_rank: int
    e: int
    oracle_checked: bool
    phi: frozenset

    def __post_init__(self) -> None:
        assert self.phi_order == len(self.phi)


def frattini(G: FiniteGroup) -> FrattiniData:
    """Frattini subgroup order p^e and the rank of the elementary quotient.

    Primary path: close {[x, y]} for all pairs together with {x^p}.  Oracle
    path (order <= 512): intersect the kernels of all surjective
    homomorphisms onto Z/p; agreement is asserted whenever it runs.
    """
    phi = _frattini_commutator_power(G)
    oracle_checked = G.order <= _ORACLE_LIMIT
    if oracle_checked:
        phi_oracle = _frattini_maximal_intersection(G)
        if phi != phi_oracle:
            raise AssertionError("Frattini paths disagree")
    e = _log(G.p, len(phi))
    rank = _log(G.p, G.order // len(phi))
    return FrattiniData(len(phi), rank, e, oracle_checked, frozenset(phi))


def _frattini_commutator_power(G: FiniteGroup) -> frozenset:
    gens = set()
    for a in G.elements:
        gens.add(G.power(a, G.p))
        for b in G.elements:
            gens.add(G.commutator(a, b))
    gens.discard(G.identity)
    return G.subgroup_closure(gens)


def _frattini_maximal_intersection(G: FiniteGroup) -> frozenset:
    """Intersection of all index-p subgroups, via homomorphisms onto Z/p."""
    if G.order > _ORACLE_LIMIT:
        raise TooLarge(f"oracle path capped at order {_ORACLE_LIMIT}")
    # discover each element once as (previous element) * (generator)
    parents: dict = {G.identity: None}
    order = [G.identity]
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for gi, g in enumerate(G.generators):
                b = G.mult(a, g)
                if b not in parents:
                    parents[b] = (a, gi)
                    order.append(b)
                    nxt.append(b)
        frontier = nxt
    if len(parents) != G.order:
        raise AssertionError("generators do not generate the stored element set")

    kernel_intersection = set(G.elements)
    found = False
    for images in product(range(G.p), repeat=len(G.generators)):
        if all(v == 0 for v in images):
            continue
        phi = {G.identity: 0}
        for b in order[1:]:
            a, gi = parents[b]
            phi[b] = (phi[a] + images[gi]) % G.p
        # homomorphy on generator steps extends to all products
        ok = all(
            phi[G.mult(a, g)] == (phi[a] + images[gi]) % G.p
            for a in G.elements
            for gi, g in enumerate(G.generators)
        )
        if not ok:
            continue
        found = True
        kernel_intersection &= {a for a in G.elements if phi[a] == 0}
    if not found:
        return frozenset(G.elements)  # trivial group: no proper maximal subgroup
    return frozenset(kernel_intersection)


def _log(p: int, m: int) -> int:
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    assert m == 1
    return e


# ---------------------------------------------------------------------------
# essential dimension bounds from group data


def ledet_bound(G: FiniteGroup) -> int:
    """Upper bound n for a group of order p^n."""
    return G.n


def jly_bound(G: FiniteGroup, base_field_finite: bool) -> int:
    """Upper bound e+1 (infinite base) or e+2 (finite base), e from Frattini."""
    e = frattini(G).e
    return e + (2 if base_field_finite else 1)


def elementary_bound(G: FiniteGroup, base_field_finite: bool) -> int | None:
    """2 over finite fields, 1 over infinite ones; None when not elementary."""
    if not G.is_elementary():
        return None
    return 2 if base_field_finite else 1


def pgl2_lower_bound(G: FiniteGroup) -> int:
    """Lower bound 2 over the prime field for elementary groups of rank >= 3.

    Such a group has order p^n >= p^3 > p(p^2 - 1), the order of
    PGL_2(F_p), so it embeds in no 1-parameter projective action.
    """
    if G.is_elementary() and G.n >= 3:
        return 2
    return 0
