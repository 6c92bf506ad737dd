"""Additive (p-)polynomials: sparse sums of monomials c * T_i^{p^j}.

Evaluation of such a polynomial is an F_p-linear map on k^r, which is what
the whole cokernel pipeline exploits.  The principal part collects the
per-variable leading terms; `progressions_disjoint` is the decidable
valuation criterion guaranteeing the principal part vanishes nowhere on
k^r minus the origin (leading values land in pairwise disjoint residue
progressions, so no cancellation can reach zero).  A False answer means
"inconclusive", never "vanishes somewhere".
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ArityMismatch, TowerMismatch
from .fields import Tower, TowerElement
from .parsing import parse_element
from .valuation import val


@dataclass(frozen=True)
class Term:
    var: int
    pexp: int
    coeff: TowerElement


@dataclass(frozen=True)
class AdditivePoly:
    """Sum of terms c_{ij} T_i^{p^j}, at most one term per (i, j)."""

    tower: Tower
    vars: tuple[str, ...]
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars:
            raise ValueError("need at least one variable")
        if not self.terms:
            raise ValueError("additive polynomial must have at least one term")
        seen = set()
        ordered = sorted(self.terms, key=lambda t: (t.var, t.pexp))
        for t in ordered:
            if not 0 <= t.var < len(self.vars):
                raise ValueError(f"variable index {t.var} out of range")
            if t.pexp < 0:
                raise ValueError("p-power exponents must be >= 0")
            if t.coeff.tower != self.tower:
                raise TowerMismatch("coefficient from a different tower")
            if t.coeff.is_zero:
                raise ValueError("zero coefficients are rejected, not dropped")
            if (t.var, t.pexp) in seen:
                raise ValueError(f"duplicate term for (var {t.var}, pexp {t.pexp})")
            seen.add((t.var, t.pexp))
        object.__setattr__(self, "terms", tuple(ordered))

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def degree_exponent(self) -> int:
        """d with max degree p^d."""
        return max(t.pexp for t in self.terms)

    def variable_degree_exponents(self) -> dict[int, int]:
        """Per-variable top p-exponent m_i, for variables that occur."""
        out: dict[int, int] = {}
        for t in self.terms:
            out[t.var] = max(out.get(t.var, 0), t.pexp)
        return out

    def evaluate(self, point: tuple[TowerElement, ...]) -> TowerElement:
        if len(point) != self.nvars:
            raise ArityMismatch(f"need {self.nvars} entries, got {len(point)}")
        acc = self.tower.zero
        for t in self.terms:
            a = point[t.var]
            if isinstance(a, int):
                a = self.tower.const(a)
            acc = acc + t.coeff * a.pth_power(t.pexp)
        return acc

    def principal_part(self) -> "PrincipalPart":
        tops = self.variable_degree_exponents()
        by_key = {(t.var, t.pexp): t.coeff for t in self.terms}
        entries = tuple(
            Term(i, m, by_key[(i, m)]) for i, m in sorted(tops.items())
        )
        return PrincipalPart(self.tower, self.vars, entries)

    def is_separable(self) -> bool:
        return any(t.pexp == 0 for t in self.terms)

    def progressions_disjoint(self) -> bool:
        """True iff the leading-term value progressions are pairwise disjoint.

        Progressions v(c_i) + p^{m_i} Z^r and v(c_j) + p^{m_j} Z^r meet iff
        v(c_i) - v(c_j) lies in p^{min(m_i, m_j)} Z^r.  A variable with no
        term at all makes the principal part vanish on that axis, so the
        check also fails then.
        """
        tops = self.variable_degree_exponents()
        if len(tops) != self.nvars:
            return False
        entries = self.principal_part().entries
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                ti, tj = entries[i], entries[j]
                q = self.tower.p ** min(ti.pexp, tj.pexp)
                diff = val(ti.coeff) - val(tj.coeff)
                if all(c % q == 0 for c in diff.coords):
                    return False
        return True

    # -- JSON wire format ---------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "p": self.tower.p,
            "tower": list(self.tower.vars),
            "vars": list(self.vars),
            "terms": [
                {"var": self.vars[t.var], "pexp": t.pexp, "coeff": str(t.coeff)}
                for t in self.terms
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"

    @classmethod
    def from_json_dict(cls, data: dict) -> "AdditivePoly":
        tower = Tower(int(data["p"]), tuple(data["tower"]))
        variables = tuple(data["vars"])
        terms = []
        for entry in data["terms"]:
            name = entry["var"]
            if name not in variables:
                raise ValueError(f"term uses unknown variable {name!r}")
            coeff = parse_element(entry["coeff"], tower)
            terms.append(Term(variables.index(name), int(entry["pexp"]), coeff))
        return cls(tower, variables, tuple(terms))

    @classmethod
    def from_json(cls, text: str) -> "AdditivePoly":
        return cls.from_json_dict(json.loads(text))

    def __str__(self) -> str:
        parts = []
        for t in self.terms:
            power = self.tower.p**t.pexp
            var = self.vars[t.var] if power == 1 else f"{self.vars[t.var]}^{power}"
            parts.append(f"({t.coeff})*{var}")
        return " + ".join(parts)


@dataclass(frozen=True)
class PrincipalPart:
    """The per-variable leading terms (i, m_i, c_i)."""

    tower: Tower
    vars: tuple[str, ...]
    entries: tuple[Term, ...]

    def poly(self) -> AdditivePoly:
        return AdditivePoly(self.tower, self.vars, self.entries)

    def max_exponent(self) -> int:
        return max(t.pexp for t in self.entries)


def one_variable(tower: Tower, terms: dict[int, TowerElement], name: str = "X") -> AdditivePoly:
    """Build a one-variable additive polynomial from {pexp: coeff}."""
    return AdditivePoly(
        tower, (name,), tuple(Term(0, e, c) for e, c in sorted(terms.items()))
    )
