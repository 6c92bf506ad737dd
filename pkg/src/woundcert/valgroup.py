"""Ordered value groups Z^r with lexicographic order from the right.

The rightmost coordinate is the most significant, matching the composite
valuation on iterated rational-function extensions (the outermost variable
dominates).  A depth-0 tower carries the trivial group, encoded as rank 1
with the single coordinate pinned to 0 so the recursion stays uniform.

The existence statements used by the certificate pipeline (an element below
a given one, a descending congruent sequence) are realised by fixed
deterministic rules so certificates reproduce byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import LengthMismatch, TrivialGroup

LT, EQ, GT = -1, 0, 1


class _Infinity:
    """The valuation of zero; larger than every group element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "INF"


INFINITY = _Infinity()


@dataclass(frozen=True)
class ValGroupElement:
    """An element of Z^r, compared coordinatewise from the right."""

    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise ValueError("rank must be >= 1")

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other: "ValGroupElement") -> None:
        if not isinstance(other, ValGroupElement):
            raise TypeError(f"cannot compare with {other!r}")
        if len(other.coords) != len(self.coords):
            raise LengthMismatch(f"rank {self.rank} vs {other.rank}")

    def __lt__(self, other):
        if other is INFINITY:
            return True
        self._check(other)
        return self.coords[::-1] < other.coords[::-1]

    def __le__(self, other):
        if other is INFINITY:
            return True
        self._check(other)
        return self.coords[::-1] <= other.coords[::-1]

    def __gt__(self, other):
        if other is INFINITY:
            return False
        self._check(other)
        return self.coords[::-1] > other.coords[::-1]

    def __ge__(self, other):
        if other is INFINITY:
            return False
        self._check(other)
        return self.coords[::-1] >= other.coords[::-1]

    def __add__(self, other):
        if other is INFINITY:
            return INFINITY
        self._check(other)
        return ValGroupElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return ValGroupElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return ValGroupElement(tuple(-a for a in self.coords))

    def __mul__(self, n: int):
        return ValGroupElement(tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def residue(self, modulus: int) -> "ResidueClass":
        return ResidueClass(modulus, tuple(c % modulus for c in self.coords))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def compare(a: ValGroupElement, b: ValGroupElement) -> int:
    """Right-lexicographic comparison: LT, EQ or GT."""
    if a < b:
        return LT
    if a > b:
        return GT
    return EQ


@dataclass(frozen=True)
class ResidueClass:
    """A coset of p^d * Z^m, stored by its componentwise-reduced representative."""

    modulus: int
    rep: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rep", tuple(self.rep))
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        if any(not 0 <= c < self.modulus for c in self.rep):
            raise ValueError("representative not reduced")

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.rep) + f") mod {self.modulus}"


@dataclass(frozen=True)
class ValueGroup:
    """Z^rank under right-lexicographic order; rank 1 with trivial=True is {0}."""

    rank: int
    trivial: bool = False

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError("rank must be >= 1")

    @property
    def zero(self) -> ValGroupElement:
        return ValGroupElement((0,) * self.rank)

    def _want(self, g: ValGroupElement) -> None:
        if g.rank != self.rank:
            raise LengthMismatch(f"rank {g.rank} element in rank {self.rank} group")

    def find_below(self, gamma: ValGroupElement) -> ValGroupElement:
        """A fixed element strictly below gamma: decrement the first coordinate."""
        if self.trivial:
            raise TrivialGroup("the trivial group has no smaller element")
        self._want(gamma)
        coords = list(gamma.coords)
        coords[0] -= 1
        return ValGroupElement(tuple(coords))

    def uniform_below(self, gammas: list[ValGroupElement], ns: list[int]) -> ValGroupElement:
        """gamma0 = min(gammas, 0): every gamma < gamma0 has n_i*gamma < gamma_i."""
        if not gammas or len(gammas) != len(ns):
            raise LengthMismatch("gammas and ns must be nonempty lists of equal length")
        for g in gammas:
            self._want(g)
        if any(n < 1 for n in ns):
            raise ValueError("ns must be positive")
        return min(list(gammas) + [self.zero])

    def scaled_max_below(self, tau: ValGroupElement, n: int) -> ValGroupElement:
        """The deterministic near-maximal delta with n*delta < tau.

        Coordinates are resolved from the most significant (rightmost) end:
        hold the coordinate at tau_j/n while it divides evenly, make the
        first non-even (or the last remaining) coordinate strictly smaller,
        and zero-fill anything left.  In rank >= 2 a true maximum need not
        exist; this rule is a fixed valid choice.
        """
        if self.trivial:
            raise TrivialGroup("no element scales below in the trivial group")
        self._want(tau)
        if n < 1:
            raise ValueError("scale must be positive")
        coords = [0] * self.rank
        for j in range(self.rank - 1, -1, -1):
            q, r = divmod(tau.coords[j], n)
            if r == 0 and j > 0:
                coords[j] = q
                continue
            coords[j] = q - 1 if r == 0 else q
            break
        return ValGroupElement(tuple(coords))

    def descending_congruent(
        self,
        alpha0: ValGroupElement,
        gamma0: ValGroupElement,
        pd: int,
        count: int,
    ) -> list[ValGroupElement]:
        """count elements below gamma0, strictly descending, all = alpha0 mod p^d.

        gamma_k = alpha0 + p^d * delta_k where delta_1 clears gamma0 via
        scaled_max_below and each later delta decrements the first coordinate.
        """
        if self.trivial:
            raise TrivialGroup("no descending sequence in the trivial group")
        if count < 1:
            raise ValueError("count must be >= 1")
        self._want(alpha0)
        self._want(gamma0)
        delta = self.scaled_max_below(gamma0 - alpha0, pd)
        out = []
        for _ in range(count):
            out.append(alpha0 + pd * delta)
            delta = self.find_below(delta)
        return out


def all_residues(pd: int, m: int) -> list[ResidueClass]:
    """Every class of Z^m / p^d Z^m, ascending in right-lexicographic order.

    m = 0 is the trivial group, represented by the single rank-1 zero class.
    """
    if m == 0:
        return [ResidueClass(pd, (0,))]
    out = []
    for rev in product(range(pd), repeat=m):
        out.append(ResidueClass(pd, rev[::-1]))
    return out


def missing_residues(used, pd: int, m: int) -> list[ResidueClass]:
    """All classes of Z^m / p^d Z^m not in `used`, in enumeration order."""
    used_set = set(used)
    return [c for c in all_residues(pd, m) if c not in used_set]
