"""Ball-mass oracles: atomic, middle-third, cylinder-product, and products.

Every oracle answers ``ball_mass(space, center, r)`` with the exact rational
mass of the closed ball; all oracles are probability measures.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .metric import FiniteMetricSpace

__all__ = [
    "MeasureOracle",
    "AtomicMeasure",
    "CantorMeasure",
    "DaviesMeasure",
    "ProductMeasure",
    "ball_mass",
    "cantor_ball_mass",
    "cantor_cdf",
    "davies_ball_mass",
    "doubling_estimate",
    "oracle_to_json",
    "oracle_from_json",
]


class MeasureOracle:
    kind = "abstract"
    total_mass = Fraction(1)

    def ball_mass(self, space: FiniteMetricSpace, center: int, r) -> Fraction:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


class AtomicMeasure(MeasureOracle):
    """Point masses on the space's own points (weights sum to 1)."""

    kind = "atomic"

    def __init__(self, weights: Sequence):
        ws = [Fraction(w) for w in weights]
        if any(w < 0 for w in ws):
            raise ValueError("atomic weights must be non-negative")
        if sum(ws) != 1:
            raise ValueError("atomic weights must sum to 1")
        self.weights = ws

    def ball_mass(self, space, center, r) -> Fraction:
        if len(self.weights) != space.point_count:
            raise ValueError("oracle/space size mismatch")
        return sum((self.weights[j] for j in space.ball_members(center, r)), Fraction(0))

    def to_json(self):
        return {
            "kind": "atomic",
            "weights": [f"{w.numerator}/{w.denominator}" for w in self.weights],
        }


# ---------------------------------------------------------------------------
# Middle-third construction
# ---------------------------------------------------------------------------


def _ternary_digits(x: Fraction) -> tuple[list[int], int]:
    """Base-3 digits of x in [0, 1) with cycle detection.

    Returns (digits, cycle_start); the digit sequence repeats from
    ``cycle_start`` onward.  Rationals always terminate here.
    """
    digits: list[int] = []
    seen: dict[Fraction, int] = {}
    while x not in seen:
        seen[x] = len(digits)
        x *= 3
        d = int(x)  # floor, x >= 0
        digits.append(d)
        x -= d
    return digits, seen[x]


def cantor_cdf(x) -> Fraction:
    """Exact value of the middle-third distribution function at a rational x.

    Digits 0/2 map to binary 0/1; the first digit 1 truncates the expansion
    and contributes a final binary 1.  Periodic ternary tails turn into exact
    geometric sums, so the result is a closed-form rational for every input.
    """
    x = Fraction(x)
    if x <= 0:
        return Fraction(0)
    if x >= 1:
        return Fraction(1)
    digits, cycle_start = _ternary_digits(x)
    bits: list[int] = []
    for d in digits:
        if d == 1:
            bits.append(1)
            return _bits_value(bits, None, 0)
        bits.append(0 if d == 0 else 1)
    return _bits_value(bits, cycle_start, len(digits))


def _bits_value(bits: list[int], cycle_start: int | None, total: int) -> Fraction:
    if cycle_start is None or cycle_start >= total:
        val = Fraction(0)
        for i, b in enumerate(bits, start=1):
            if b:
                val += Fraction(1, 2**i)
        return val
    pre = bits[:cycle_start]
    per = bits[cycle_start:]
    val = Fraction(0)
    for i, b in enumerate(pre, start=1):
        if b:
            val += Fraction(1, 2**i)
    per_int = 0
    for b in per:
        per_int = (per_int << 1) | b
    p = len(per)
    val += Fraction(per_int, (2**p - 1)) / (2 ** len(pre))
    return val


def in_cantor_set(x) -> bool:
    """Membership of a rational in the middle-third set (no-ones expansion)."""
    x = Fraction(x)
    if x < 0 or x > 1:
        return False
    seen = set()
    while x not in seen:
        seen.add(x)
        if x == 0 or x == 1:
            return True
        if 3 * x <= 1:
            x = 3 * x
        elif 3 * x >= 2:
            x = 3 * x - 2
        else:
            return False
    return True  # periodic orbit that never hit the middle third


def cantor_ball_mass(k: int, x, r) -> Fraction:
    """Natural-measure mass of [x - r, x + r] for a center in the level-k net.

    The net consists of both endpoints of every level-k basic interval; these
    are exactly the triadic rationals of denominator 3**k lying in the set.
    """
    x, r = Fraction(x), Fraction(r)
    if r < 0:
        raise ValueError("radius must be non-negative")
    if (x * 3**k).denominator != 1 or not in_cantor_set(x):
        raise ValueError(f"{x} is not an endpoint of a level-{k} basic interval")
    return cantor_cdf(x + r) - cantor_cdf(x - r)


class CantorMeasure(MeasureOracle):
    """The natural (coin-flipping) measure of the middle-third construction,
    truncated to a level-k endpoint net as its center set."""

    kind = "cantor"

    def __init__(self, level: int):
        if not 1 <= level <= 8:
            raise ValueError("level must be between 1 and 8")
        self.level = level

    def ball_mass(self, space, center, r) -> Fraction:
        coords = space.meta.get("coords")
        if coords is None:
            raise ValueError("space does not carry coordinates")
        return cantor_ball_mass(self.level, coords[center], r)

    def to_json(self):
        return {"kind": "cantor", "level": self.level}


# ---------------------------------------------------------------------------
# Cylinder-product (graph-product) measure
# ---------------------------------------------------------------------------


def davies_ball_mass(n_seq: Sequence[int], depth: int, u: Sequence[tuple[int, int]], r) -> Fraction:
    """Closed-ball mass around a depth-``depth`` cylinder point.

    With n chosen so that 2**-n <= r < 2**-(n-1): a central n-th vertex gives
    2*N_n*gamma_n, a peripheral one 2*gamma_n.  Radii >= 1 cover the whole
    space (mass 1); radii below the truncation scale are a hard error instead
    of an extrapolation.
    """
    r = Fraction(r)
    if r >= 1:
        return Fraction(1)
    if r < Fraction(1, 2**depth):
        raise ValueError(f"radius {r} below the truncation scale 2^-{depth}")
    n = 1
    while Fraction(1, 2**n) > r:
        n += 1
    gamma = Fraction(1)
    for m in range(n):
        nn = n_seq[m]
        gamma /= nn * (nn + 1)
    i, j = u[n - 1]
    return 2 * n_seq[n - 1] * gamma if j == 0 else 2 * gamma


class DaviesMeasure(MeasureOracle):
    """Cylinder measure gamma_n = gamma_{n-1} / (N_n (N_n + 1)) evaluated via
    the closed ball-mass formulas."""

    kind = "davies"

    def __init__(self, n_seq: Sequence[int], depth: int):
        self.n_seq = list(n_seq)
        self.depth = depth

    def ball_mass(self, space, center, r) -> Fraction:
        coords = space.meta.get("coords")
        if coords is None:
            raise ValueError("space does not carry cylinder coordinates")
        return davies_ball_mass(self.n_seq, self.depth, coords[center], r)

    def to_json(self):
        return {"kind": "davies", "N": list(self.n_seq), "depth": self.depth}


class ProductMeasure(MeasureOracle):
    """Product measure on a row-major max-metric product space.

    Max-metric balls factorize, so the closed-ball mass is the product of the
    factor ball masses.
    """

    kind = "product"

    def __init__(self, left: MeasureOracle, right: MeasureOracle,
                 left_space: FiniteMetricSpace, right_space: FiniteMetricSpace):
        self.left = left
        self.right = right
        self.left_space = left_space
        self.right_space = right_space

    def ball_mass(self, space, center, r) -> Fraction:
        ny = self.right_space.point_count
        ix, iy = divmod(center, ny)
        return self.left.ball_mass(self.left_space, ix, r) * self.right.ball_mass(
            self.right_space, iy, r
        )

    def to_json(self):
        return {"kind": "product", "left": self.left.to_json(), "right": self.right.to_json()}


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------


def ball_mass(oracle: MeasureOracle, space: FiniteMetricSpace, center: int, r) -> Fraction:
    if not 0 <= center < space.point_count:
        raise ValueError("center index out of range")
    if r < 0:
        raise ValueError("radius must be non-negative")
    return oracle.ball_mass(space, center, r)


def doubling_estimate(oracle: MeasureOracle, space: FiniteMetricSpace, a, radius_grid) -> Fraction:
    """max over centers and grid radii of mass(B(x, a*r)) / mass(B(x, r)).

    The empirical doubling constant of the measure on the instance's band;
    used as the gamma in ratio-bound checks.
    """
    a = Fraction(a)
    if a <= 1:
        raise ValueError("the scale factor must exceed 1")
    best = None
    for r in radius_grid:
        for x in range(space.point_count):
            denom = ball_mass(oracle, space, x, r)
            if denom == 0:
                continue
            ratio = ball_mass(oracle, space, x, a * r) / denom
            if best is None or ratio > best:
                best = ratio
    if best is None:
        raise ValueError("no center had positive ball mass on the grid")
    return best


def oracle_to_json(oracle: MeasureOracle) -> dict:
    return oracle.to_json()


def oracle_from_json(obj: dict, left_space=None, right_space=None) -> MeasureOracle:
    kind = obj.get("kind")
    if kind == "atomic":
        return AtomicMeasure([Fraction(w) for w in obj["weights"]])
    if kind == "cantor":
        return CantorMeasure(int(obj["level"]))
    if kind == "davies":
        return DaviesMeasure([int(n) for n in obj["N"]], int(obj["depth"]))
    if kind == "product":
        if left_space is None or right_space is None:
            raise ValueError("product oracle needs its factor spaces")
        return ProductMeasure(
            oracle_from_json(obj["left"]),
            oracle_from_json(obj["right"]),
            left_space,
            right_space,
        )
    raise ValueError(f"unknown oracle kind: {kind!r}")
