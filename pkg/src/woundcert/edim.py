"""Essential-dimension bound algebra over group profiles.

Each bound theorem becomes a rule mapping profile fields to an interval
update with a provenance trail.  Profiles carry structure data (dimension,
split part, component order, central-series length) as caller inputs; the
rules are pure arithmetic on them.

Rules applied by `bound`:
  R1  characteristic zero: the group is split, upper 0
  R2  upper = n + dim(G/G_s), n the exponent of the component group order
  R3  upper = l, the length of the iterated central p-torsion series of G/G_s
  R4  connected case (n = 0): upper = dim(G/G_s)
  R5  connected, dim(G/G_s) = 1, infinite base field: upper 1
  R6  split: exactly 0
  R7  geometric base field, known non-split, nontrivial: lower 1
  R8  geometric base field, connected non-split with dim(G/G_s) = 1: exactly 1
  R9  finite p-group rules (order, Frattini, elementary, PGL_2 embedding)
  R10 (separate combinator) central extension: upper(B) <= upper(C) + upper(A)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .addpoly import AdditivePoly
from .cokernel import CokernelCertificate, certify_infinite_cokernel
from .errors import InconsistentProfile, NotSeparable
from .fields import Tower
from .pgroup import (
    FiniteGroup,
    elementary_bound,
    frattini,
    jly_bound,
    ledet_bound,
    pgl2_lower_bound,
)


@dataclass(frozen=True)
class UnipotentProfile:
    """Structure data for a smooth unipotent group G over the base field.

    `dim` and `split_part_dim` size G and its maximal split subgroup;
    `component_order_exp` is n with |G/G^0 after splitting| = p^n;
    `cckp_length` is the iterated central p-torsion series length of the
    wound quotient when known.  Tri-state `is_split` distinguishes known
    split / known non-split / unknown.
    """

    dim: int
    split_part_dim: int = 0
    component_order_exp: int = 0
    cckp_length: int | None = None
    is_split: bool | None = None
    is_wound_witnessed: bool = False
    char_zero: bool = False

    def validate(self) -> None:
        if self.dim < 0 or self.split_part_dim < 0:
            raise InconsistentProfile("negative dimensions")
        if self.split_part_dim > self.dim:
            raise InconsistentProfile("split part larger than the group")
        if self.cckp_length is not None and self.cckp_length > self.dim - self.split_part_dim:
            raise InconsistentProfile("series length exceeds dim of the wound quotient")
        if self.cckp_length == 0 and self.dim > self.split_part_dim:
            raise InconsistentProfile("series length 0 forces a trivial wound quotient")
        if self.is_split and self.split_part_dim != self.dim:
            raise InconsistentProfile("split group must equal its split part")
        if self.is_split and self.component_order_exp:
            raise InconsistentProfile("a split group is connected")
        if (
            self.is_split is False
            and self.wound_dim == 0
            and self.component_order_exp == 0
        ):
            raise InconsistentProfile("a connected group equal to its split part is split")
        if self.char_zero and self.component_order_exp:
            raise InconsistentProfile("characteristic zero forces a connected group")
        if self.char_zero and (self.is_split is False or self.is_wound_witnessed):
            raise InconsistentProfile("characteristic zero forces a split group")

    @property
    def wound_dim(self) -> int:
        return self.dim - self.split_part_dim

    @property
    def known_not_split(self) -> bool:
        if self.is_split is False:
            return True
        return self.is_wound_witnessed and self.wound_dim >= 1

    @property
    def nontrivial(self) -> bool:
        return self.dim > 0 or self.component_order_exp > 0


@dataclass(frozen=True)
class PGroupProfile:
    group: FiniteGroup

    def validate(self) -> None:
        pass


@dataclass(frozen=True)
class FieldContext:
    finite: bool = False
    geometric_over_perfect: bool = False
    tower: Tower | None = None

    def validate_tower_witness(self) -> bool:
        """A tower witness always has the required iterated-extension shape."""
        return self.tower is not None


@dataclass(frozen=True)
class TrailEntry:
    rule: str
    cite: str
    kind: str  # "upper" | "lower"
    value: int
    inputs: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "rule": self.rule,
            "cite": self.cite,
            "kind": self.kind,
            "value": self.value,
            "inputs": dict(sorted(self.inputs.items())),
        }


@dataclass(frozen=True)
class EdBoundReport:
    lower: int
    upper: int
    trail: tuple[TrailEntry, ...]

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise InconsistentProfile(f"lower {self.lower} > upper {self.upper}")

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    def to_json_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "trail": [t.to_json_dict() for t in self.trail],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def bound(profile, field_ctx: FieldContext) -> EdBoundReport:
    """Apply every applicable rule; upper = min of uppers, lower = max of lowers."""
    profile.validate()
    if isinstance(profile, PGroupProfile):
        trail = list(_pgroup_rules(profile.group, field_ctx))
    else:
        trail = list(_unipotent_rules(profile, field_ctx))
    uppers = [t.value for t in trail if t.kind == "upper"]
    lowers = [t.value for t in trail if t.kind == "lower"]
    if not uppers:
        raise InconsistentProfile("no upper-bound rule applies")
    return EdBoundReport(max(lowers, default=0), min(uppers), tuple(trail))


def _unipotent_rules(pr: UnipotentProfile, ctx: FieldContext):
    n = pr.component_order_exp
    if pr.char_zero:
        yield TrailEntry("R1", "split in characteristic zero: upper 0", "upper", 0)
    yield TrailEntry(
        "R2",
        "upper = n + dim(G/G_s)",
        "upper",
        n + pr.wound_dim,
        {"n": n, "wound_dim": pr.wound_dim},
    )
    if pr.cckp_length is not None:
        yield TrailEntry(
            "R3",
            "upper = central p-torsion series length of G/G_s",
            "upper",
            pr.cckp_length,
            {"l": pr.cckp_length},
        )
    if n == 0:
        yield TrailEntry(
            "R4",
            "connected: upper = dim(G/G_s)",
            "upper",
            pr.wound_dim,
            {"wound_dim": pr.wound_dim},
        )
    if n == 0 and pr.wound_dim == 1 and not ctx.finite:
        yield TrailEntry(
            "R5",
            "one-dimensional commutative p-torsion quotient over an infinite field: upper 1",
            "upper",
            1,
        )
    if pr.is_split:
        yield TrailEntry("R6", "split: exactly 0", "upper", 0)
        yield TrailEntry("R6", "split: exactly 0", "lower", 0)
    if ctx.geometric_over_perfect and pr.known_not_split and pr.nontrivial:
        yield TrailEntry(
            "R7",
            "non-split over a geometric field: lower 1",
            "lower",
            1,
        )
    if (
        ctx.geometric_over_perfect
        and pr.known_not_split
        and n == 0
        and pr.wound_dim == 1
    ):
        yield TrailEntry("R8", "dimension-one non-split over a geometric field: exactly 1", "upper", 1)
        yield TrailEntry("R8", "dimension-one non-split over a geometric field: exactly 1", "lower", 1)


def _pgroup_rules(G: FiniteGroup, ctx: FieldContext):
    yield TrailEntry(
        "R9-order",
        "order p^n: upper n",
        "upper",
        ledet_bound(G),
        {"order": G.order},
    )
    fr = frattini(G)
    yield TrailEntry(
        "R9-frattini",
        "Frattini order p^e: upper e+1 (infinite base) / e+2 (finite base)",
        "upper",
        jly_bound(G, ctx.finite),
        {"e": fr.e, "finite": ctx.finite},
    )
    eb = elementary_bound(G, ctx.finite)
    if eb is not None:
        yield TrailEntry(
            "R9-elementary",
            "elementary: upper 1 (infinite base) / 2 (finite base)",
            "upper",
            eb,
            {"finite": ctx.finite},
        )
    if ctx.finite:
        lower = pgl2_lower_bound(G)
        if lower:
            yield TrailEntry(
                "R9-pgl2",
                "elementary of rank >= 3 does not embed in PGL_2(F_p): lower 2",
                "lower",
                lower,
                {"rank": G.n},
            )


def central_extension_bound(
    quotient: EdBoundReport, central: EdBoundReport
) -> EdBoundReport:
    """R10: for 1 -> A -> B -> C -> 1 with A central,
    upper(B) <= upper(C) + upper(A)."""
    entry = TrailEntry(
        "R10",
        "central extension: upper(B) <= upper(C) + upper(A)",
        "upper",
        quotient.upper + central.upper,
        {"upper_C": quotient.upper, "upper_A": central.upper},
    )
    return EdBoundReport(0, entry.value, (entry,))


def weil_restrict_profile(profile: UnipotentProfile, degree: int) -> UnipotentProfile:
    """Scalar restriction along a degree-d extension, as profile bookkeeping.

    Dimensions multiply by the degree; connectedness, woundness and
    splitness flags carry over unchanged.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    return replace(
        profile,
        dim=degree * profile.dim,
        split_part_dim=degree * profile.split_part_dim,
    )


def specialness_witness_degree(
    dim_g: int, ext_degree: int, base_p_index: int, p: int
) -> int:
    """Minimal m >= 0 with ext_degree * dim_g < base_p_index * p^m - 1.

    base_p_index must be a power of p.  Adjoining m more rational variables
    to the base pushes its p-index high enough for the dimension test.
    """
    if dim_g < 0 or ext_degree < 1 or p < 2:
        raise ValueError("bad inputs")
    q = base_p_index
    while q % p == 0:
        q //= p
    if q != 1:
        raise ValueError(f"{base_p_index} is not a power of {p}")
    if dim_g == 0:
        return 0
    m = 0
    while ext_degree * dim_g >= base_p_index * p**m - 1:
        m += 1
    return m


def h1_infinite(
    P: AdditivePoly, count: int = 3, assert_nowhere_vanishing: bool = False
) -> CokernelCertificate:
    """Certify that the degree-1 cohomology of ker P is infinite.

    For a separable P in r variables with nowhere-vanishing principal part,
    the kernel is a smooth wound group of dimension r - 1 and its
    cohomology is the cokernel k / P(k).  Below the p-index threshold
    (dim < p^m - 1) the verdict is provably infinite, which is asserted.
    """
    if not P.is_separable():
        raise NotSeparable("the polynomial has no degree-1 monomial")
    cert = certify_infinite_cokernel(
        P, count, assert_nowhere_vanishing=assert_nowhere_vanishing
    )
    dim = P.nvars - 1
    threshold = P.tower.p**P.tower.depth - 1
    if dim < threshold and cert.verdict != CokernelCertificate.INFINITE:
        raise AssertionError(
            "dimension below p^m - 1 must certify an infinite cokernel"
        )
    return cert
