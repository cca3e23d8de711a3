"""Deterministic parameter generators, one per classification clause.

Each generator draws from a seeded RNG so every run tests the same points.
The expected character set is the one stated by the clause; for the
parabolic general type with a > 0 the proof-level discriminant rule is used
(spacelike iff p > 0).
"""
from __future__ import annotations

import math

import numpy as np

from riemann_zmc.families import (
    EuclideanGeneral,
    EuclideanSingular,
    HyperbolaGeneral,
    HyperbolaSingular,
    Parabola,
)
from riemann_zmc.minkowski import CausalCharacter

S, T, L = CausalCharacter.SPACELIKE, CausalCharacter.TIMELIKE, CausalCharacter.LIGHTLIKE


def _rng(name: str) -> np.random.Generator:
    return np.random.default_rng(sum(ord(ch) * 31**i for i, ch in enumerate(name)) % 2**32)


def _euclid(name, n):
    rng = _rng(name)
    for _ in range(n):
        a = float(rng.uniform(0.2, 3.0))
        if name == "euclid-i":
            yield EuclideanGeneral(a, 2 * a + float(rng.uniform(0.05, 3.0)))
        elif name == "euclid-ii":
            yield EuclideanGeneral(a, -2 * a - float(rng.uniform(0.05, 3.0)))
        elif name == "euclid-iii":
            yield EuclideanGeneral(a, 2 * a)
        elif name == "euclid-iv":
            yield EuclideanGeneral(a, -2 * a)
        elif name == "euclid-v":
            if rng.uniform() < 0.5:
                yield EuclideanGeneral(a, float(rng.uniform(-2 * a + 0.05, 2 * a - 0.05)))
            else:  # outer component of b < -2a
                b = -2 * a - float(rng.uniform(0.05, 3.0))
                rho = math.sqrt((-b + math.sqrt(b * b - 4 * a * a)) / (2 * a * a))
                yield EuclideanGeneral(a, b, r0=1.5 * rho)
        elif name == "euclid-v-line-curves":
            yield EuclideanGeneral(a, -2 * a, r0=2.0 / math.sqrt(a))
        elif name == "euclid-singular":
            yield EuclideanSingular(a)


def _hyperbola(name, n):
    rng = _rng(name)
    for _ in range(n):
        c = float(rng.uniform(0.3, 2.0))
        sh = float(rng.uniform(-1.5, 1.5))
        if name == "hyperbola-I":
            a, b = rng.uniform(-2, 2, 2)
            d = float(rng.uniform(-1, 2))
            f = _try(lambda: HyperbolaGeneral("I", float(a), float(b), d))
            if f is None:
                f = HyperbolaGeneral("I", 2.0, 0.5, d)
            yield f
            continue
        if name == "hyperbola-II-ii-1":
            # a < b, |b| > |a|: |delta| < c, delta <= -c, or delta >= c on the outer part
            a, b = c * sh, c * math.cosh(math.asinh(sh))
            b = math.sqrt(a * a + c * c)
            mode = rng.integers(3)
            if mode == 0:
                yield HyperbolaGeneral("II", a, b, float(rng.uniform(-0.95, 0.95)) * c)
            elif mode == 1:
                yield HyperbolaGeneral("II", a, b, -c * float(rng.uniform(1.0, 2.0)))
            else:
                d = c * float(rng.uniform(1.0, 2.0))
                root = (d + math.sqrt(d * d - c * c)) / (c * c)
                yield HyperbolaGeneral("II", a, b, d, r0=1.5 * math.sqrt(root))
        elif name == "hyperbola-II-ii-2":
            a = float(rng.uniform(0.2, 2.0))
            yield HyperbolaGeneral("II", a, a, -float(rng.uniform(0.0, 2.0)))
        elif name == "hyperbola-II-ii-3":
            b = -math.sqrt((c * sh) ** 2 + c * c)
            a = c * sh
            d = c * float(rng.uniform(1.05, 2.0))
            root = (d + math.sqrt(d * d - c * c)) / (c * c)
            yield HyperbolaGeneral("II", a, b, d, r0=1.5 * math.sqrt(root))
        elif name == "hyperbola-II-iv-1":
            a = c * sh
            yield HyperbolaGeneral("II", a, math.sqrt(a * a + c * c), c)
        elif name == "hyperbola-II-iv-2":
            a = c * sh
            yield HyperbolaGeneral("II", a, -math.sqrt(a * a + c * c), c, r0=2.0 / math.sqrt(c))
        elif name == "hyperbola-II-v":
            mode = rng.integers(3)
            if mode == 0:  # |a| > |b|
                b = float(rng.uniform(-1.5, 1.5))
                a = math.copysign(abs(b) + float(rng.uniform(0.1, 1.5)), float(rng.uniform(-1, 1)))
                yield HyperbolaGeneral("II", a, b, float(rng.uniform(-2, 2)))
            elif mode == 1:  # b < 0, delta < c
                a = c * sh
                yield HyperbolaGeneral("II", a, -math.sqrt(a * a + c * c), float(rng.uniform(-2, 0.95)) * c)
            else:  # b > 0, delta > c, inner part
                a = c * sh
                yield HyperbolaGeneral("II", a, math.sqrt(a * a + c * c), c * float(rng.uniform(1.05, 2.0)))
        elif name == "hyperbola-singular-I":
            a = c * sh
            yield HyperbolaSingular("I", a, math.copysign(math.sqrt(a * a + c * c), float(rng.uniform(-1, 1))))
        elif name == "hyperbola-singular-II":
            a = c * sh
            yield HyperbolaSingular("II", a, math.copysign(math.sqrt(a * a + c * c), float(rng.uniform(-1, 1))))


def _try(make):
    try:
        return make()
    except ValueError:
        return None


def _parabola(name, n):
    rng = _rng(name)
    for _ in range(n):
        b = float(rng.uniform(-2, 2))
        c = float(rng.uniform(-0.5, 0.5))
        if name == "parabola-pos-spacelike":
            yield Parabola("gen-pos", float(rng.uniform(0.2, 2)), b, c, float(rng.uniform(0.2, 2)))
        elif name == "parabola-gen-neg-timelike":
            yield Parabola("gen-neg", -float(rng.uniform(0.2, 2)), b, c, -float(rng.uniform(0.2, 2)))
        elif name == "parabola-pos-line":
            yield Parabola("gen-pos", float(rng.uniform(0.2, 2)), b, c, 0.0)
        elif name == "parabola-gen-neg-line":
            yield Parabola("gen-neg", -float(rng.uniform(0.2, 2)), b, c, 0.0)
        elif name == "parabola-general-all":
            mode = rng.integers(3)
            if mode == 0:
                bb = math.copysign(float(rng.uniform(0.2, 2)), b)
                yield Parabola("gen-zero", 0.0, bb, c, float(rng.uniform(-2, 2)))
            elif mode == 1:
                yield Parabola("gen-pos", float(rng.uniform(0.2, 2)), b, c, -float(rng.uniform(0.2, 2)))
            else:
                yield Parabola("gen-neg", -float(rng.uniform(0.2, 2)), b, c, float(rng.uniform(0.2, 2)))
        elif name == "parabola-singular-timelike":
            yield Parabola("singular", -float(rng.uniform(0.2, 2)), b, 0.0, float(rng.uniform(0.2, 2)))
        elif name == "parabola-singular-line":
            yield Parabola("singular", -float(rng.uniform(0.2, 2)), b, 0.0, 0.0)
        elif name == "parabola-singular-all":
            yield Parabola("singular", -float(rng.uniform(0.2, 2)), b, 0.0, -float(rng.uniform(0.2, 2)))


EXPECTED = {
    "euclid-i": {S},
    "euclid-ii": {T},
    "euclid-iii": {S, L},
    "euclid-iv": {T, L},
    "euclid-v": {S, T, L},
    "euclid-v-line-curves": {S, T, L},
    "euclid-singular": {T, L},
    "hyperbola-I": {T},
    "hyperbola-II-ii-1": {T},
    "hyperbola-II-ii-2": {T},
    "hyperbola-II-ii-3": {T},
    "hyperbola-II-iv-1": {T, L},
    "hyperbola-II-iv-2": {T, L},
    "hyperbola-II-v": {S, T, L},
    "hyperbola-singular-I": {T},
    "hyperbola-singular-II": {T, L},
    "parabola-pos-spacelike": {S},
    "parabola-gen-neg-timelike": {T},
    "parabola-pos-line": {S, L},
    "parabola-gen-neg-line": {T, L},
    "parabola-general-all": {S, T, L},
    "parabola-singular-timelike": {T},
    "parabola-singular-line": {T, L},
    "parabola-singular-all": {S, T, L},
}

FAMILY_OF = {name: ("euclid" if name.startswith("euclid") else
                     "hyperbola" if name.startswith("hyperbola") else "parabola")
              for name in EXPECTED}


def clause_params(name: str, n: int = 50):
    """``n`` surfaces for which the clause ``name`` predicts ``EXPECTED[name]``."""
    kind = FAMILY_OF[name]
    gen = {"euclid": _euclid, "hyperbola": _hyperbola, "parabola": _parabola}[kind]
    return list(gen(name, n))
