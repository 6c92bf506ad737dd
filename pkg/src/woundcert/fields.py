"""Exact arithmetic in rational-function towers k = F_p(t1, ..., tr).

The tower is built by iterated rational-function extension of the prime
field.  An element of depth r is stored as a pair (num, den) of polynomials
in the outermost variable whose coefficients are elements of the sub-tower
of depth r-1; at depth 0 an element is a residue modulo p.  Polynomials are
coefficient tuples, lowest degree first, with no trailing zeros; () is the
zero polynomial.

Every constructor normalises to a canonical form: gcd(num, den) = 1 and den
monic, recursively.  Equality and hashing of elements are therefore literal
equality of the nested representation, which is what makes certificates
checkable by pure comparison.

The Frobenius structure is explicit: d-fold p-th powers and p-th roots are
coefficient maps (no factorisation), and `decompose` writes an element in
k^{p^d}-coordinates over the standard monomial basis t1^j1 ... tr^jr with
0 <= ji < p^d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import DivisionByZero, NotAPthPower, TowerMismatch

# Internal value encoding: int in [0, p) at depth 0, otherwise a pair
# (num, den) of coefficient tuples over depth r-1 values.
Value = object

_MAX_PRIME = 13
_MAX_DEPTH = 3


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class Tower:
    """The field F_p(t1, ..., tr); depth 0 is the prime field F_p."""

    p: int
    vars: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        if not _is_prime(self.p) or self.p > _MAX_PRIME:
            raise ValueError(f"p must be a prime <= {_MAX_PRIME}, got {self.p}")
        if len(self.vars) > _MAX_DEPTH:
            raise ValueError(f"tower depth is capped at {_MAX_DEPTH}")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variable names must be unique")
        for name in self.vars:
            if not name or not name.isidentifier():
                raise ValueError(f"bad variable name {name!r}")

    @property
    def depth(self) -> int:
        return len(self.vars)

    @cached_property
    def sub(self) -> "Tower | None":
        if not self.vars:
            return None
        return Tower(self.p, self.vars[:-1])

    def __repr__(self) -> str:
        return f"F_{self.p}({', '.join(self.vars)})" if self.vars else f"F_{self.p}"

    # -- public element constructors ------------------------------------

    @cached_property
    def zero(self) -> "TowerElement":
        return TowerElement(self, self.vzero)

    @cached_property
    def one(self) -> "TowerElement":
        return TowerElement(self, self.vone)

    def const(self, c: int) -> "TowerElement":
        return TowerElement(self, self._vconst(c))

    def gen(self, which: int | str) -> "TowerElement":
        """The variable t_i as an element (index or name)."""
        i = self.vars.index(which) if isinstance(which, str) else which
        if not 0 <= i < self.depth:
            raise ValueError(f"no variable {which!r} in {self!r}")
        exps = [0] * self.depth
        exps[i] = 1
        return self.monomial(tuple(exps))

    @property
    def gens(self) -> tuple["TowerElement", ...]:
        return tuple(self.gen(i) for i in range(self.depth))

    def monomial(self, exps: tuple[int, ...]) -> "TowerElement":
        """t1^e1 * ... * tr^er with integer (possibly negative) exponents."""
        if len(exps) != self.depth:
            raise ValueError(f"need {self.depth} exponents, got {len(exps)}")
        return TowerElement(self, self._vmonomial(tuple(exps)))

    def element(self, value: Value) -> "TowerElement":
        """Wrap an already-canonical internal value (trusted)."""
        return TowerElement(self, value)

    # -- value-level field arithmetic -----------------------------------

    @cached_property
    def vzero(self) -> Value:
        if not self.vars:
            return 0
        return ((), (self.sub.vone,))

    @cached_property
    def vone(self) -> Value:
        if not self.vars:
            return 1
        return ((self.sub.vone,), (self.sub.vone,))

    @cached_property
    def _pone(self) -> tuple:
        return (self.sub.vone,)

    def _vconst(self, c: int) -> Value:
        if not self.vars:
            return c % self.p
        sc = self.sub._vconst(c)
        if sc == self.sub.vzero:
            return self.vzero
        return ((sc,), self._pone)

    def _vmonomial(self, exps: tuple[int, ...]) -> Value:
        if not self.vars:
            return 1
        scoef = self.sub._vmonomial(exps[:-1])
        e = exps[-1]
        if e >= 0:
            num = (self.sub.vzero,) * e + (scoef,)
            return (num, self._pone)
        den = (self.sub.vzero,) * (-e) + (self.sub.vone,)
        return ((scoef,), den)

    def vis_zero(self, a: Value) -> bool:
        return a == self.vzero

    def vadd(self, a: Value, b: Value) -> Value:
        if not self.vars:
            return (a + b) % self.p
        (na, da), (nb, db) = a, b
        if da == db:
            num = self._padd(na, nb)
            if da == self._pone:
                return (num, da) if num else self.vzero
            return self._vcanon(num, da)
        num = self._padd(self._pmul(na, db), self._pmul(nb, da))
        return self._vcanon(num, self._pmul(da, db))

    def vneg(self, a: Value) -> Value:
        if not self.vars:
            return (-a) % self.p
        num, den = a
        return (self._pneg(num), den)

    def vsub(self, a: Value, b: Value) -> Value:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a: Value, b: Value) -> Value:
        if not self.vars:
            return (a * b) % self.p
        (na, da), (nb, db) = a, b
        if da == self._pone and db == self._pone:
            num = self._pmul(na, nb)
            return (num, da) if num else self.vzero
        return self._vcanon(self._pmul(na, nb), self._pmul(da, db))

    def vinv(self, a: Value) -> Value:
        if not self.vars:
            if a == 0:
                raise DivisionByZero("inverse of zero")
            return pow(a, -1, self.p)
        num, den = a
        return self._vcanon(den, num)

    def vdiv(self, a: Value, b: Value) -> Value:
        if not self.vars:
            if b == 0:
                raise DivisionByZero("division by zero")
            return (a * pow(b, -1, self.p)) % self.p
        (na, da), (nb, db) = a, b
        return self._vcanon(self._pmul(na, db), self._pmul(da, nb))

    def vpow(self, a: Value, n: int) -> Value:
        if n < 0:
            return self.vpow(self.vinv(a), -n)
        result = self.vone
        base = a
        while n:
            if n & 1:
                result = self.vmul(result, base)
            base = self.vmul(base, base)
            n >>= 1
        return result

    # -- Frobenius structure --------------------------------------------

    def vfrob(self, a: Value, d: int) -> Value:
        """a^{p^d}; a coefficient map, exact in characteristic p."""
        if d == 0 or not self.vars:
            return a  # the prime field is fixed by Frobenius
        num, den = a
        return (self._pfrob(num, d), self._pfrob(den, d))

    def vroot(self, a: Value, d: int) -> Value:
        """The unique x with x^{p^d} = a, or NotAPthPower."""
        if d == 0 or not self.vars:
            return a
        num, den = a
        return (self._proot(num, d), self._proot(den, d))

    def vdecompose(self, a: Value, d: int) -> dict[tuple[int, ...], Value]:
        """Coordinates {j: a_j} with a = sum a_j^{p^d} * t^j, zeros omitted.

        j runs over exponent tuples with 0 <= j_i < p^d.  Uniqueness comes
        from the standard monomials being a k^{p^d}-basis of k.
        """
        if not self.vars:
            return {(): a} if a else {}
        q = self.p**d
        num, den = a
        # a = g / den^{p^d} with g = num * den^{p^d - 1}
        den_q = self._pfrob(den, d)
        cof, rem = self._pdivmod(den_q, den)
        assert not rem
        g = self._pmul(num, cof)
        sub = self.sub
        buckets: dict[tuple[int, ...], dict[int, Value]] = {}
        for i, c in enumerate(g):
            if c == sub.vzero:
                continue
            qq, s = divmod(i, q)
            for jsub, csub in sub.vdecompose(c, d).items():
                buckets.setdefault(jsub + (s,), {})[qq] = csub
        e_value = (den, self._pone)
        coords = {}
        for key in sorted(buckets, key=lambda k: k[::-1]):
            sparse = buckets[key]
            top = max(sparse)
            poly = tuple(sparse.get(i, sub.vzero) for i in range(top + 1))
            coords[key] = self.vdiv((poly, self._pone), e_value)
        return coords

    # -- polynomial layer over the sub-tower ----------------------------

    def _ptrim(self, coeffs: tuple) -> tuple:
        z = self.sub.vzero
        n = len(coeffs)
        while n and coeffs[n - 1] == z:
            n -= 1
        return coeffs[:n]

    def _padd(self, a: tuple, b: tuple) -> tuple:
        if len(a) < len(b):
            a, b = b, a
        sub = self.sub
        out = list(a)
        for i, c in enumerate(b):
            out[i] = sub.vadd(out[i], c)
        return self._ptrim(tuple(out))

    def _pneg(self, a: tuple) -> tuple:
        sub = self.sub
        return tuple(sub.vneg(c) for c in a)

    def _pscale(self, a: tuple, s: Value) -> tuple:
        sub = self.sub
        if s == sub.vzero:
            return ()
        return tuple(sub.vmul(c, s) for c in a)

    def _pmul(self, a: tuple, b: tuple) -> tuple:
        if not a or not b:
            return ()
        sub = self.sub
        z = sub.vzero
        out = [z] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == z:
                continue
            for j, bj in enumerate(b):
                if bj == z:
                    continue
                out[i + j] = sub.vadd(out[i + j], sub.vmul(ai, bj))
        return self._ptrim(tuple(out))

    def _pdivmod(self, a: tuple, b: tuple) -> tuple[tuple, tuple]:
        if not b:
            raise DivisionByZero("polynomial division by zero")
        if not a or len(a) < len(b):
            return (), a
        sub = self.sub
        z = sub.vzero
        inv_lead = sub.vinv(b[-1])
        rem = list(a)
        quo = [z] * (len(a) - len(b) + 1)
        for shift in range(len(a) - len(b), -1, -1):
            top = rem[shift + len(b) - 1]
            if top == z:
                continue
            coef = sub.vmul(top, inv_lead)
            quo[shift] = coef
            for k, bk in enumerate(b):
                if bk == z:
                    continue
                rem[shift + k] = sub.vsub(rem[shift + k], sub.vmul(coef, bk))
        return self._ptrim(tuple(quo)), self._ptrim(tuple(rem))

    def _pgcd(self, a: tuple, b: tuple) -> tuple:
        while b:
            a, b = b, self._pdivmod(a, b)[1]
        if not a:
            return ()
        return self._pmonic(a)

    def _pmonic(self, a: tuple) -> tuple:
        sub = self.sub
        if a[-1] == sub.vone:
            return a
        return self._pscale(a, sub.vinv(a[-1]))

    def _pfrob(self, a: tuple, d: int) -> tuple:
        if not a:
            return ()
        sub = self.sub
        q = self.p**d
        z = sub.vzero
        out = [z] * ((len(a) - 1) * q + 1)
        for i, c in enumerate(a):
            if c != z:
                out[i * q] = sub.vfrob(c, d)
        return tuple(out)

    def _proot(self, a: tuple, d: int) -> tuple:
        if not a:
            return ()
        sub = self.sub
        q = self.p**d
        z = sub.vzero
        if (len(a) - 1) % q:
            raise NotAPthPower(f"degree {len(a) - 1} not divisible by p^{d}")
        out = [z] * ((len(a) - 1) // q + 1)
        for i, c in enumerate(a):
            if c == z:
                continue
            if i % q:
                raise NotAPthPower(f"exponent {i} not divisible by p^{d}")
            out[i // q] = sub.vroot(c, d)
        return tuple(out)

    def _vcanon(self, num: tuple, den: tuple) -> Value:
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return self.vzero
        if den != self._pone:
            g = self._pgcd(num, den)
            if len(g) > 1:
                num, _ = self._pdivmod(num, g)
                den, _ = self._pdivmod(den, g)
            lead = den[-1]
            if lead != self.sub.vone:
                inv = self.sub.vinv(lead)
                num = self._pscale(num, inv)
                den = self._pscale(den, inv)
        return (num, den)


@dataclass(frozen=True)
class TowerElement:
    """An element of a tower field, in canonical form.

    Immutable; equality and hashing are structural, so equal elements are
    interchangeable everywhere (and safe to share across threads).
    """

    tower: Tower
    value: Value

    def _peer(self, other) -> "TowerElement":
        if isinstance(other, TowerElement):
            if other.tower != self.tower:
                raise TowerMismatch(f"{self.tower!r} vs {other.tower!r}")
            return other
        if isinstance(other, int):
            return self.tower.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        return TowerElement(self.tower, self.tower.vadd(self.value, other.value))

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, self.tower.vneg(self.value))

    def __sub__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        return TowerElement(self.tower, self.tower.vsub(self.value, other.value))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        return TowerElement(self.tower, self.tower.vmul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._peer(other)
        if other is NotImplemented:
            return NotImplemented
        return TowerElement(self.tower, self.tower.vdiv(self.value, other.value))

    def __rtruediv__(self, other):
        return self.tower.const(other) / self

    def __pow__(self, n: int):
        return TowerElement(self.tower, self.tower.vpow(self.value, n))

    def __bool__(self) -> bool:
        return self.value != self.tower.vzero

    @property
    def is_zero(self) -> bool:
        return self.value == self.tower.vzero

    def inverse(self) -> "TowerElement":
        return TowerElement(self.tower, self.tower.vinv(self.value))

    def pth_power(self, d: int = 1) -> "TowerElement":
        """self^{p^d} via the d-fold Frobenius coefficient map."""
        if d < 0:
            raise ValueError("d must be >= 0")
        return TowerElement(self.tower, self.tower.vfrob(self.value, d))

    def pth_root(self, d: int = 1) -> "TowerElement":
        """The unique x with x^{p^d} = self; NotAPthPower if none exists.

        Works on the canonical form: the element is a p^d-th power iff every
        exponent of the outermost variable in num and den is divisible by
        p^d and the coefficients are recursively p^d-th powers.
        """
        if d < 0:
            raise ValueError("d must be >= 0")
        return TowerElement(self.tower, self.tower.vroot(self.value, d))

    def decompose(self, d: int) -> dict[tuple[int, ...], "TowerElement"]:
        """k^{p^d}-coordinates over the standard monomial basis, zeros omitted."""
        if d < 1:
            raise ValueError("d must be >= 1")
        raw = self.tower.vdecompose(self.value, d)
        return {j: TowerElement(self.tower, v) for j, v in raw.items()}

    def __str__(self) -> str:
        return format_value(self.tower, self.value)

    __repr__ = __str__


# -- canonical printing ---------------------------------------------------
#
# The printed form of an element is a single flat fraction (N)/(D) of
# multivariate polynomials over F_p (just N when D = 1), obtained by
# clearing inner denominators bottom-up.  Terms are ordered by exponent
# tuple, rightmost variable most significant, so equal elements always
# print identically.

_MPoly = dict  # exponent tuple -> int coefficient in [1, p)


def _mp_mul(p: int, a: _MPoly, b: _MPoly) -> _MPoly:
    out: _MPoly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(x + y for x, y in zip(ka, kb))
            c = (out.get(k, 0) + va * vb) % p
            if c:
                out[k] = c
            else:
                out.pop(k, None)
    return out


def _mp_add_into(p: int, acc: _MPoly, a: _MPoly) -> None:
    for k, v in a.items():
        c = (acc.get(k, 0) + v) % p
        if c:
            acc[k] = c
        else:
            acc.pop(k, None)


def _flatten_value(tower: Tower, value: Value) -> tuple[_MPoly, _MPoly]:
    if not tower.vars:
        one = {(): 1}
        return ({(): value} if value else {}, one)
    num, den = value
    nn, dn = _flatten_poly(tower, num)
    nd, dd = _flatten_poly(tower, den)
    return _mp_mul(tower.p, nn, dd), _mp_mul(tower.p, dn, nd)


def _flatten_poly(tower: Tower, coeffs: tuple) -> tuple[_MPoly, _MPoly]:
    sub = tower.sub
    p = tower.p
    sub_one: _MPoly = {(0,) * sub.depth: 1}
    pairs = []
    for i, c in enumerate(coeffs):
        if c == sub.vzero:
            continue
        pairs.append((i, *_flatten_value(sub, c)))
    if not pairs:
        return {}, {(0,) * tower.depth: 1}
    # distinct denominators only, so repeated ones do not pile up
    distinct: list[_MPoly] = []
    seen = set()
    for _, _, d in pairs:
        key = tuple(sorted(d.items()))
        if key not in seen:
            seen.add(key)
            distinct.append(d)
    num: _MPoly = {}
    for i, n, d in pairs:
        cof = sub_one
        dkey = tuple(sorted(d.items()))
        for other in distinct:
            if tuple(sorted(other.items())) != dkey:
                cof = _mp_mul(p, cof, other)
        term = _mp_mul(p, n, cof)
        shifted = {k + (i,): v for k, v in term.items()}
        _mp_add_into(p, num, shifted)
    den: _MPoly = sub_one
    for d in distinct:
        den = _mp_mul(p, den, d)
    den = {k + (0,): v for k, v in den.items()}
    return num, den


def _format_mpoly(tower: Tower, mp: _MPoly) -> str:
    if not mp:
        return "0"
    parts = []
    for exps in sorted(mp, key=lambda k: k[::-1]):
        c = mp[exps]
        factors = []
        for name, e in zip(tower.vars, exps):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


def _mp_is_one(mp: _MPoly) -> bool:
    if len(mp) != 1:
        return False
    (exps, coeff), = mp.items()
    return coeff == 1 and not any(exps)


def format_value(tower: Tower, value: Value) -> str:
    num, den = _flatten_value(tower, value)
    num_s = _format_mpoly(tower, num)
    if not num or _mp_is_one(den):
        return num_s
    return f"({num_s})/({_format_mpoly(tower, den)})"


def standard_monomial_exponents(tower: Tower, d: int):
    """Exponent tuples j with 0 <= j_i < p^d, rightmost coordinate slowest."""
    q = tower.p**d
    for rev in product(range(q), repeat=tower.depth):
        yield rev[::-1]
