"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all domain errors raised by this package."""


class TowerMismatch(ToolkitError):
    """Operands belong to different tower fields."""


class DivisionByZero(ToolkitError, ZeroDivisionError):
    """Exact division by the zero element."""


class NotAPthPower(ToolkitError):
    """p^d-th root requested of an element that has none."""


class LengthMismatch(ToolkitError):
    """Value-group elements of different rank were combined."""


class TrivialGroup(ToolkitError):
    """Operation needs a nontrivial value group."""


class ZeroElement(ToolkitError):
    """Zero element given where a nonzero one is required."""


class NotIndependent(ToolkitError):
    """Input elements are linearly dependent over k^{p^d}."""


class LeadingCoefficientsDependent(NotIndependent):
    """Leading coefficients of the one-variable pieces are k^{p^d}-dependent."""


class ArityMismatch(ToolkitError):
    """Evaluation point has the wrong number of entries."""


class DegreeZero(ToolkitError):
    """Additive polynomial is linear: its image is everything, nothing to certify."""


class SearchTooLarge(ToolkitError):
    """Brute-force enumeration would exceed the feasibility guard."""


class TooLarge(ToolkitError):
    """Enumeration would exceed the feasibility guard."""


class NotPGroup(ToolkitError):
    """Generators do not generate a group of p-power order."""


class HypothesisUnverified(ToolkitError):
    """A required valuation hypothesis is not checkable and was not asserted."""


class NotSeparable(ToolkitError):
    """Additive polynomial has no nonzero monomial of degree one."""


class InconsistentProfile(ToolkitError):
    """Group profile fields contradict each other."""


class UnknownVariable(ToolkitError):
    """Element source text references a variable outside the tower."""

    def __init__(self, name: str, pos: int | None = None) -> None:
        self.name = name
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"unknown variable {name!r}{where}")


class ElementSyntaxError(ToolkitError):
    """Malformed element source text; carries the offending position."""

    def __init__(self, message: str, pos: int) -> None:
        self.pos = pos
        super().__init__(f"{message} at position {pos}")
