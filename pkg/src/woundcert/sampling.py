"""Deterministic random generators for elements, used by checks and tests."""

from __future__ import annotations

import random

from .fields import Tower, TowerElement


def random_poly_element(
    tower: Tower, rng: random.Random, max_degree: int = 2
) -> TowerElement:
    """Random polynomial-shaped element (denominator 1), possibly zero."""
    if tower.depth == 0:
        return tower.const(rng.randrange(tower.p))
    x = tower.gen(tower.depth - 1)
    acc = tower.zero
    for i in range(rng.randint(0, max_degree) + 1):
        c = random_poly_element(tower.sub, rng, max_degree=1)
        if c.is_zero:
            continue
        acc = acc + _lift(tower, c) * x**i
    return acc


def random_element(tower: Tower, rng: random.Random, max_degree: int = 2) -> TowerElement:
    """Random element; denominators appear about half the time."""
    num = random_poly_element(tower, rng, max_degree)
    if tower.depth == 0 or rng.random() < 0.5:
        return num
    den = random_nonzero_poly(tower, rng, max_degree=1)
    return num / den


def random_nonzero_poly(tower: Tower, rng: random.Random, max_degree: int = 2) -> TowerElement:
    while True:
        e = random_poly_element(tower, rng, max_degree)
        if not e.is_zero:
            return e


def random_nonzero(tower: Tower, rng: random.Random, max_degree: int = 2) -> TowerElement:
    while True:
        e = random_element(tower, rng, max_degree)
        if not e.is_zero:
            return e


def random_monomial(
    tower: Tower, rng: random.Random, lo: int = -30, hi: int = 30
) -> TowerElement:
    """c * t1^e1 ... tr^er with uniform exponents in [lo, hi] and c nonzero."""
    exps = tuple(rng.randint(lo, hi) for _ in range(tower.depth))
    c = rng.randrange(1, tower.p)
    return tower.const(c) * tower.monomial(exps)


def _lift(tower: Tower, sub_elem: TowerElement) -> TowerElement:
    return tower.element(((sub_elem.value,), tower._pone))
