"""Certificates that the cokernel k / P(k) of an additive map is infinite.

Pipeline
--------
1. `dk_decompose` rewrites the image of P as g_1(k) + ... + g_s(k) for
   one-variable additive polynomials g_i of a common degree p^d whose
   leading coefficients have pairwise distinct values mod p^d.  Each
   variable T_i of degree p^{d_i} is expanded over the standard monomial
   basis of k over k^{p^{d-d_i}} (substituting u * X^{p^{d-d_i}}), and the
   resulting leading coefficients are straightened by
   `eliminate_to_valuation_basis`.
2. `c0_constant` computes a threshold C0 such that any value v(Q(a)) < C0
   equals v(b_i) + p^d v(a_i) for exactly one i.  Every existential choice
   in the recursion is resolved by the deterministic scaled-max rule of the
   value group, so the constant is reproducible.
3. `certify_infinite_cokernel` compares s with the residue capacity p^{md}
   of the value group.  When s < p^{md} some residue class l mod p^d is
   missed by all leading values; monomials with strictly descending values
   below C0 in class l then have pairwise distinct images in k / P(k).

The brute-force oracle enumerates Laurent-polynomial inputs on a bounded
exponent window and answers membership within that search space, giving an
independent check on emitted certificates.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import linalg
from .addpoly import AdditivePoly, one_variable
from .errors import (
    DegreeZero,
    HypothesisUnverified,
    LeadingCoefficientsDependent,
    NotIndependent,
    SearchTooLarge,
    ToolkitError,
)
from .fields import Tower, TowerElement
from .valgroup import INFINITY, ResidueClass, ValGroupElement, missing_residues
from .valuation import eliminate_to_valuation_basis, standard_basis, val, value_group

_SEARCH_LIMIT = 10**8
_C0_MAX_PARTS = 16


# ---------------------------------------------------------------------------
# decomposition into equal-degree one-variable summands


@dataclass(frozen=True)
class DKDecomposition:
    """im(P) = g_1(k) + ... + g_s(k) with straightened leading coefficients.

    The matrices tie the g_i to the intermediate h̃_j exactly:
    g_i(X) = sum_j h̃_j(r[i][j] X) and h̃_i(X) = sum_j g_j(s[i][j] X), and
    r_matrix * s_matrix is the identity.
    """

    tower: Tower
    d: int
    g: tuple[AdditivePoly, ...]
    h_tilde: tuple[AdditivePoly, ...]
    leading: tuple[tuple[TowerElement, ValGroupElement], ...]
    r_matrix: tuple[tuple[TowerElement, ...], ...]
    s_matrix: tuple[tuple[TowerElement, ...], ...]

    @property
    def s(self) -> int:
        return len(self.g)

    def check_identities(self) -> None:
        """Verify both polynomial identities and r*s = identity, exactly."""
        n = self.s
        for i in range(n):
            lhs = _term_map(self.g[i])
            rhs = _sum_scaled(self.h_tilde, self.r_matrix[i])
            if lhs != rhs:
                raise AssertionError(f"g[{i}] != sum_j h~_j(r[{i}][j] X)")
        for i in range(n):
            lhs = _term_map(self.h_tilde[i])
            rhs = _sum_scaled(self.g, self.s_matrix[i])
            if lhs != rhs:
                raise AssertionError(f"h~[{i}] != sum_j g_j(s[{i}][j] X)")
        prod = linalg.mat_mul(self.r_matrix, self.s_matrix)
        if prod != linalg.identity(self.tower, n):
            raise AssertionError("r_matrix * s_matrix is not the identity")


def _term_map(poly: AdditivePoly) -> dict[int, TowerElement]:
    return {t.pexp: t.coeff for t in poly.terms}


def _scaled_terms(poly: AdditivePoly, scalar: TowerElement) -> dict[int, TowerElement]:
    """Term map of X -> poly(scalar * X); empty when scalar is zero."""
    if scalar.is_zero:
        return {}
    return {t.pexp: t.coeff * scalar.pth_power(t.pexp) for t in poly.terms}


def _sum_scaled(
    polys: tuple[AdditivePoly, ...], scalars
) -> dict[int, TowerElement]:
    acc: dict[int, TowerElement] = {}
    for poly, scalar in zip(polys, scalars):
        for e, c in _scaled_terms(poly, scalar).items():
            tot = acc.get(e, poly.tower.zero) + c
            if tot.is_zero:
                acc.pop(e, None)
            else:
                acc[e] = tot
    return acc


def dk_decompose(P: AdditivePoly, assert_nowhere_vanishing: bool = False) -> DKDecomposition:
    """Decompose im(P) into s one-variable summands of common degree p^d.

    Requires a nonconstant principal part (else DegreeZero: the map is
    already surjective) and disjoint value progressions, unless the caller
    asserts the principal part vanishes nowhere away from the origin.
    """
    tower = P.tower
    if tower.depth < 1:
        raise HypothesisUnverified("the base tower carries only the trivial valuation")
    d = P.principal_part().max_exponent()
    if d == 0:
        raise DegreeZero("all leading terms are linear; the image is the whole field")
    if not P.progressions_disjoint() and not assert_nowhere_vanishing:
        raise HypothesisUnverified(
            "value progressions overlap; pass assert_nowhere_vanishing to proceed"
        )

    per_var: dict[int, dict[int, TowerElement]] = {}
    for t in P.terms:
        per_var.setdefault(t.var, {})[t.pexp] = t.coeff

    h_tilde: list[AdditivePoly] = []
    c_tilde: list[TowerElement] = []
    for var in sorted(per_var):
        f_terms = per_var[var]
        d_i = max(f_terms)
        gap = d - d_i
        for u in standard_basis(tower, gap).elements:
            # h(X) = f(u * X^{p^gap}): term c T^{p^e} becomes c u^{p^e} X^{p^{e+gap}}
            terms = {e + gap: c * u.pth_power(e) for e, c in f_terms.items()}
            h = one_variable(tower, terms)
            h_tilde.append(h)
            c_tilde.append(terms[d])

    expected_s = sum(
        tower.p ** (tower.depth * (d - max(per_var[v]))) for v in per_var
    )
    assert len(h_tilde) == expected_s

    try:
        basis, transform = eliminate_to_valuation_basis(c_tilde, d)
    except NotIndependent as exc:
        raise LeadingCoefficientsDependent(
            "leading coefficients are not k^(p^d)-independent; "
            "the asserted nowhere-vanishing claim fails"
        ) from exc

    g_polys = []
    for i, row in enumerate(transform):
        terms = _sum_scaled(tuple(h_tilde), row)
        g = one_variable(tower, terms)
        assert _term_map(g)[d] == basis.elements[i]
        g_polys.append(g)

    s_matrix = linalg.inverse(tower, transform)
    if s_matrix is None:
        raise AssertionError("elimination returned a singular transformation")

    leading = tuple(zip(basis.elements, basis.valuations))
    return DKDecomposition(
        tower=tower,
        d=d,
        g=tuple(g_polys),
        h_tilde=tuple(h_tilde),
        leading=leading,
        r_matrix=transform,
        s_matrix=s_matrix,
    )


# ---------------------------------------------------------------------------
# the threshold constant


def c0_constant(polys) -> ValGroupElement:
    """Threshold C0 for a family of one-variable additive polynomials.

    Input must be shaped like a decomposition output: common top degree
    p^d >= p and leading-coefficient values pairwise distinct mod p^d.
    Below C0 the value of sum_i Q_i(a_i) is v(c_i) + p^d v(a_i) for exactly
    one i.  Existential constants are fixed by `scaled_max_below` applied
    per strict inequality, taking minima over constraint families, which
    makes C0 a pure function of the input.
    """
    polys = tuple(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    if len(polys) > _C0_MAX_PARTS:
        raise ToolkitError(
            f"threshold recursion over {len(polys)} parts exceeds the guard"
        )
    tower = polys[0].tower
    group = value_group(tower)
    d = polys[0].degree_exponent
    if any(q.degree_exponent != d for q in polys) or d < 1:
        raise HypothesisUnverified("summands must share one top degree p^d >= p")
    pd = tower.p**d
    leading_vals = [val(_term_map(q)[d]) for q in polys]
    if len({v.residue(pd) for v in leading_vals}) != len(polys):
        raise HypothesisUnverified("leading values must be pairwise distinct mod p^d")

    memo: dict[tuple[int, ...], ValGroupElement] = {}

    def recurse(indices: tuple[int, ...]) -> ValGroupElement:
        if indices in memo:
            return memo[indices]
        if len(indices) == 1:
            out = _c0_single(tower, group, polys[indices[0]])
        else:
            out = _c0_many(tower, group, polys, indices, recurse)
        memo[indices] = out
        return out

    return recurse(tuple(range(len(polys))))


def _c0_single(tower: Tower, group, poly: AdditivePoly) -> ValGroupElement:
    p = tower.p
    terms = _term_map(poly)
    m = max(terms)
    v_lead = val(terms[m])
    candidates = []
    for i, c in terms.items():
        if i == m:
            continue
        candidates.append(group.scaled_max_below(val(c) - v_lead, p**m - p**i))
    a_const = min(candidates) if candidates else group.zero
    b_const = min(p**i * a_const + val(c) for i, c in terms.items())
    return group.find_below(b_const)


def _c0_many(tower: Tower, group, polys, indices, recurse) -> ValGroupElement:
    p = tower.p
    chosen = [polys[i] for i in indices]
    tops = [_term_map(q) for q in chosen]
    ms = [max(t) for t in tops]
    lead_vals = [val(tops[j][ms[j]]) for j in range(len(chosen))]

    # one free constant per non-leading monomial lambda T_j^{p^{m_j - gap}}
    lower_terms = []
    for j, terms in enumerate(tops):
        for e, c in terms.items():
            if e == ms[j]:
                continue
            scale = p ** ms[j] - p**e
            a_t = group.scaled_max_below(val(c) - lead_vals[j], scale)
            lower_terms.append((j, e, val(c), a_t))

    if lower_terms:
        c3 = min(
            group.scaled_max_below(v_lam + (p**e) * a_t - lead_vals[i], p ** ms[i])
            for (_, e, v_lam, a_t) in lower_terms
            for i in range(len(chosen))
        )
    else:
        c3 = group.zero

    c2 = min(
        group.scaled_max_below(
            lead_vals[i] + (p ** ms[i]) * c3 - lead_vals[j], p ** ms[j]
        )
        for i in range(len(chosen))
        for j in range(len(chosen))
    )

    c1 = min(
        val(c) + (p**e) * c2 for terms in tops for e, c in terms.items()
    )

    best = c1
    for size in range(1, len(indices)):
        for subset in _subsets(indices, size):
            best = min(best, recurse(subset))
    return best


def _subsets(indices: tuple[int, ...], size: int):
    from itertools import combinations

    for combo in combinations(indices, size):
        yield tuple(combo)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class CokernelCertificate:
    """Verdict plus the finite data making it checkable.

    For an infinite cokernel: s < p^{md}, a residue class l missed by every
    leading value, the threshold c0, and representatives (monomials) whose
    values descend strictly below c0 inside class l.  Pairwise differences
    of representatives then avoid im(P), so the quotient is infinite.
    """

    verdict: str  # "infinite-cokernel" | "inconclusive"
    s: int
    capacity: int
    p: int
    m: int
    d: int
    nvars: int
    dk: DKDecomposition
    hypothesis_asserted: bool
    missing_residue: ResidueClass | None = None
    c0: ValGroupElement | None = None
    representatives: tuple[TowerElement, ...] = ()

    INFINITE = "infinite-cokernel"
    INCONCLUSIVE = "inconclusive"

    def check(self) -> None:
        pd = self.p**self.d
        if self.verdict == self.INFINITE:
            assert self.s < self.capacity
            used = {v.residue(pd) for _, v in self.dk.leading}
            assert self.missing_residue not in used
            vals = [val(e) for e in self.representatives]
            for i, v in enumerate(vals):
                assert v < self.c0
                assert v.residue(pd) == self.missing_residue
                if i:
                    assert v < vals[i - 1]
        else:
            assert self.s == self.capacity
            assert (self.nvars - 1) % (self.p**self.m - 1) == 0

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "s": self.s,
            "capacity": self.capacity,
            "p": self.p,
            "m": self.m,
            "d": self.d,
            "nvars": self.nvars,
            "missing_residue": (
                None
                if self.missing_residue is None
                else {
                    "modulus": self.missing_residue.modulus,
                    "rep": list(self.missing_residue.rep),
                }
            ),
            "c0": None if self.c0 is None else list(self.c0.coords),
            "representatives": [str(e) for e in self.representatives],
            "hypothesis_asserted": self.hypothesis_asserted,
            "dk": {
                "d": self.dk.d,
                "g": [g.to_json_dict() for g in self.dk.g],
                "h_tilde": [h.to_json_dict() for h in self.dk.h_tilde],
                "leading": [
                    {"coeff": str(b), "valuation": list(v.coords)}
                    for b, v in self.dk.leading
                ],
                "r_matrix": [[str(x) for x in row] for row in self.dk.r_matrix],
                "s_matrix": [[str(x) for x in row] for row in self.dk.s_matrix],
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def certify_infinite_cokernel(
    P: AdditivePoly, count: int, assert_nowhere_vanishing: bool = False
) -> CokernelCertificate:
    """Certify k / P(k) infinite, or report the boundary case s = p^{md}."""
    if count < 1:
        raise ValueError("count must be >= 1")
    tower = P.tower
    if tower.depth < 1:
        raise HypothesisUnverified("the base tower carries only the trivial valuation")
    disjoint = P.progressions_disjoint()
    if not disjoint and not assert_nowhere_vanishing:
        raise HypothesisUnverified(
            "value progressions overlap; pass assert_nowhere_vanishing to proceed"
        )
    asserted = not disjoint  # records which path established the hypothesis

    dk = dk_decompose(P, assert_nowhere_vanishing=True)
    m = tower.depth
    d = dk.d
    p = tower.p
    capacity = p ** (m * d)
    s = dk.s
    assert s <= capacity

    if s == capacity:
        if (P.nvars - 1) % (p**m - 1) != 0:
            raise AssertionError("boundary case must satisfy (p^m - 1) | (r - 1)")
        cert = CokernelCertificate(
            verdict=CokernelCertificate.INCONCLUSIVE,
            s=s,
            capacity=capacity,
            p=p,
            m=m,
            d=d,
            nvars=P.nvars,
            dk=dk,
            hypothesis_asserted=asserted,
        )
        return cert

    pd = p**d
    used = {v.residue(pd) for _, v in dk.leading}
    ell = missing_residues(used, pd, m)[0]
    c0 = c0_constant(dk.g)
    group = value_group(tower)
    gammas = group.descending_congruent(ValGroupElement(ell.rep), c0, pd, count)
    reps = tuple(tower.monomial(g.coords) for g in gammas)

    cert = CokernelCertificate(
        verdict=CokernelCertificate.INFINITE,
        s=s,
        capacity=capacity,
        p=p,
        m=m,
        d=d,
        nvars=P.nvars,
        dk=dk,
        hypothesis_asserted=asserted,
        missing_residue=ell,
        c0=c0,
        representatives=reps,
    )
    return cert


# ---------------------------------------------------------------------------
# value identity spot check


@dataclass(frozen=True)
class TTReport:
    checked: int
    skipped: int
    failures: tuple = ()

    @property
    def passed(self) -> bool:
        return not self.failures


def tt_valuation_identity_check(
    polys,
    c0: ValGroupElement,
    samples: int = 10_000,
    seed: int = 0,
    exponent_range: tuple[int, int] = (-30, 30),
) -> TTReport:
    """Sample tuples of monomials with wildly varying values and check that
    whenever v(Q(a)) < c0 it equals v(b_i) + p^d v(a_i) for exactly one i.

    Tuples whose image value is not below c0 (including zero tuples) are
    vacuous and counted as skipped.
    """
    import random

    polys = tuple(polys)
    tower = polys[0].tower
    d = polys[0].degree_exponent
    pd = tower.p**d
    lead_vals = [val(_term_map(q)[d]) for q in polys]
    rng = random.Random(seed)
    lo, hi = exponent_range

    checked = skipped = 0
    failures = []
    from .sampling import random_monomial

    for _ in range(samples):
        point = []
        for _i in range(len(polys)):
            if rng.random() < 0.0625:
                point.append(tower.zero)
            else:
                point.append(random_monomial(tower, rng, lo, hi))
        image = tower.zero
        for q, a in zip(polys, point):
            image = image + q.evaluate((a,))
        v = val(image)
        if v is INFINITY or not v < c0:
            skipped += 1
            continue
        matches = [
            i
            for i, a in enumerate(point)
            if not a.is_zero and v == lead_vals[i] + pd * val(a)
        ]
        if len(matches) == 1:
            checked += 1
        else:
            failures.append((tuple(point), v, tuple(matches)))
            break
    return TTReport(checked, skipped, tuple(failures))


# ---------------------------------------------------------------------------
# brute-force oracle


@dataclass(frozen=True)
class OracleResult:
    found: bool
    witness: tuple[TowerElement, ...] | None = None


def _laurent_of(elem: TowerElement) -> dict[int, int] | None:
    """Depth-1 element as {exponent: coeff} when the denominator is t^k."""
    num, den = elem.value
    k = None
    for i, c in enumerate(den):
        if c:
            if k is not None:
                return None
            k = i
    # canonical form makes den monic, so den = t^k exactly
    return {i - k: c for i, c in enumerate(num) if c}


class ImageTable:
    """Exhaustive image of P over the bounded Laurent box, with first witnesses.

    Entries for each variable are Laurent polynomials sum c_e t^e with
    e in [-bound, bound]; an entry is encoded by its base-p digit string,
    most significant digit at exponent -bound.  Tuples are enumerated with
    the first variable most significant, and the table keeps the first
    tuple reaching each image value.
    """

    def __init__(self, P: AdditivePoly, bound: int) -> None:
        _check_oracle_pre(P, bound)
        self.P = P
        self.bound = bound
        self.tower = P.tower
        per_var, self.laurent_mode = _entry_values(P, bound)
        width = 2 * bound + 1
        self.entry_count = P.tower.p**width
        table: dict = {}
        self._fill(table, per_var)
        self.table = table

    def _fill(self, table, per_var) -> None:
        nvars = self.P.nvars
        p = self.tower.p

        def rec(var: int, prefix, acc):
            if var == nvars:
                key = _freeze(acc, self.laurent_mode)
                if key not in table:
                    table[key] = prefix
                return
            for n, value in enumerate(per_var[var]):
                rec(var + 1, prefix + (n,), _combine(acc, value, p, self.laurent_mode))

        zero = {} if self.laurent_mode else self.tower.zero
        rec(0, (), zero)

    def lookup(self, target: TowerElement) -> tuple[TowerElement, ...] | None:
        key = _target_key(target, self.laurent_mode)
        if key is None:
            return None
        hit = self.table.get(key)
        if hit is None:
            return None
        return tuple(
            _decode_entry(self.tower, n, self.bound) for n in hit
        )


def oracle_image_contains(
    P: AdditivePoly, target: TowerElement, bound: int, jobs: int = 1
) -> OracleResult:
    """Search the bounded Laurent box for a preimage of `target` under P.

    Returns the first witness in lexicographic enumeration order, so the
    answer is independent of how the scan is partitioned across workers.
    """
    _check_oracle_pre(P, bound)
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    per_var, laurent_mode = _entry_values(P, bound)
    p = P.tower.p
    width = 2 * bound + 1
    entry_count = p**width
    target_key = _target_key(target, laurent_mode)
    if target_key is None:
        return OracleResult(False)

    nvars = P.nvars
    zero = {} if laurent_mode else P.tower.zero

    def scan(first_range) -> tuple[int, ...] | None:
        def rec(var: int, prefix, acc):
            if var == nvars:
                return prefix if _freeze(acc, laurent_mode) == target_key else None
            values = per_var[var]
            loop = first_range if var == 0 else range(entry_count)
            for n in loop:
                hit = rec(var + 1, prefix + (n,), _combine(acc, values[n], p, laurent_mode))
                if hit is not None:
                    return hit
            return None

        return rec(0, (), zero)

    chunks = _split_range(entry_count, jobs)
    if jobs == 1:
        hit = scan(chunks[0])
    else:
        hit = None
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            for result in pool.map(scan, chunks):
                if result is not None and (hit is None or result < hit):
                    hit = result
    if hit is None:
        return OracleResult(False)
    witness = tuple(_decode_entry(P.tower, n, bound) for n in hit)
    return OracleResult(True, witness)


def _check_oracle_pre(P: AdditivePoly, bound: int) -> None:
    if P.tower.depth != 1:
        raise ToolkitError("the oracle enumerates depth-1 towers only")
    if bound < 0:
        raise ValueError("bound must be >= 0")
    total = P.tower.p ** ((2 * bound + 1) * P.nvars)
    if total > _SEARCH_LIMIT:
        raise SearchTooLarge(f"{total} tuples exceed the {_SEARCH_LIMIT} guard")


def _entry_values(P: AdditivePoly, bound: int):
    """Per-variable lists of f_i(entry) for every encoded entry.

    Evaluation is F_p-linear in the entry coefficients, so the image of an
    entry is the digit-weighted sum of the images of the monomials t^e.
    Values are Laurent dicts when every base image has monomial denominator,
    otherwise tower elements.
    """
    tower = P.tower
    p = tower.p
    per_var_terms: dict[int, dict[int, TowerElement]] = {}
    for t in P.terms:
        per_var_terms.setdefault(t.var, {})[t.pexp] = t.coeff

    base_images: list[list[TowerElement]] = []
    for var in range(P.nvars):
        images = []
        for e in range(-bound, bound + 1):
            mono = tower.monomial((e,))
            acc = tower.zero
            for pexp, c in per_var_terms.get(var, {}).items():
                acc = acc + c * mono.pth_power(pexp)
            images.append(acc)
        base_images.append(images)

    laurent_mode = True
    laurent_images: list[list[dict[int, int] | None]] = []
    for images in base_images:
        row = [_laurent_of(img) for img in images]
        if any(r is None for r in row):
            laurent_mode = False
            break
        laurent_images.append(row)

    per_var = []
    for var in range(P.nvars):
        values = [{} if laurent_mode else tower.zero]
        source = laurent_images[var] if laurent_mode else base_images[var]
        for base in source:
            extended = []
            for v in values:
                for c in range(p):
                    extended.append(_combine(v, _scale(base, c, p, laurent_mode), p, laurent_mode))
            values = extended
        per_var.append(values)
    return per_var, laurent_mode


def _scale(value, c: int, p: int, laurent_mode: bool):
    if laurent_mode:
        if c == 0:
            return {}
        return {e: (c * v) % p for e, v in value.items() if (c * v) % p}
    return value * c


def _combine(a, b, p: int, laurent_mode: bool):
    if laurent_mode:
        out = dict(a)
        for e, v in b.items():
            s = (out.get(e, 0) + v) % p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return out
    return a + b


def _freeze(value, laurent_mode: bool):
    if laurent_mode:
        return tuple(sorted(value.items()))
    return value.value


def _target_key(target: TowerElement, laurent_mode: bool):
    if laurent_mode:
        lau = _laurent_of(target)
        if lau is None:
            return None
        return tuple(sorted(lau.items()))
    return target.value


def _decode_entry(tower: Tower, n: int, bound: int) -> TowerElement:
    width = 2 * bound + 1
    digits = []
    for _ in range(width):
        n, digit = divmod(n, tower.p)
        digits.append(digit)
    digits.reverse()  # most significant digit sits at exponent -bound
    acc = tower.zero
    for offset, c in enumerate(digits):
        if c:
            acc = acc + tower.const(c) * tower.monomial((offset - bound,))
    return acc


def _split_range(n: int, jobs: int) -> list[range]:
    jobs = max(1, min(jobs, n)) if n else 1
    step = -(-n // jobs)
    return [range(i, min(i + step, n)) for i in range(0, n, step)] or [range(0)]
