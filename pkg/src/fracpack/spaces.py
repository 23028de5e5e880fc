"""Builders for the concrete instances: triadic nets, cylinder-product spaces,
Euclidean clouds, and their derived exact quantities."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .extmath import ExtValue, MonotoneTable, HausdorffFunction, eval_h, pow_q
from .measures import CantorMeasure, DaviesMeasure, MeasureOracle
from .metric import FiniteMetricSpace

__all__ = [
    "DaviesSpec",
    "build_cantor",
    "build_davies",
    "build_euclidean_cloud",
    "gamma_sequence",
    "davies_series_tail",
    "davies_theorem_gauge",
    "peripheral_mass_bound",
    "peripheral_count",
]


# ---------------------------------------------------------------------------
# Middle-third net
# ---------------------------------------------------------------------------


def build_cantor(k: int) -> tuple[FiniteMetricSpace, MeasureOracle]:
    """Level-k endpoint net of the middle-third construction.

    Points are both endpoints of every level-k basic interval (2**(k+1) exact
    triadic rationals); the oracle is the natural measure.
    """
    if not 1 <= k <= 8:
        raise ValueError("level must be between 1 and 8")
    lefts = [Fraction(0)]
    for j in range(1, k + 1):
        step = 2 * Fraction(1, 3**j)
        lefts = [a + off for a in lefts for off in (Fraction(0), step)]
    width = Fraction(1, 3**k)
    coords = sorted({a for left in lefts for a in (left, left + width)})
    labels = [str(c) for c in coords]

    def dist(i: int, j: int) -> Fraction:
        return abs(coords[i] - coords[j])

    space = FiniteMetricSpace(
        len(coords),
        labels,
        dist,
        resolution=width,
        meta={"coords": coords, "scale_hint": "triadic", "generator": f"cantor:k={k}"},
    )
    return space, CantorMeasure(k)


# ---------------------------------------------------------------------------
# Cylinder-product space
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DaviesSpec:
    """Sequence N_1..N_D (each > 1), truncation depth D, and q in [0, 1)."""

    n_seq: tuple[int, ...]
    q: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "n_seq", tuple(int(n) for n in self.n_seq))
        object.__setattr__(self, "q", Fraction(self.q))
        if not self.n_seq:
            raise ValueError("the sequence must be non-empty")
        if any(n <= 1 for n in self.n_seq):
            raise ValueError("every N_n must exceed 1")
        if not 0 <= self.q < 1:
            raise ValueError("q must lie in [0, 1)")

    @property
    def depth(self) -> int:
        return len(self.n_seq)

    def summability_certificate(self) -> ExtValue:
        """Finite truncation of sum_n N_n ** -(1 - q)."""
        total = ExtValue.zero()
        for n in self.n_seq:
            total = total + pow_q(Fraction(n), -(1 - self.q))
        return total


def gamma_sequence(n_seq: Sequence[int]) -> list[Fraction]:
    """gamma_0 = 1, gamma_n = gamma_{n-1} / (N_n (N_n + 1)), exactly."""
    gammas = [Fraction(1)]
    for n in n_seq:
        if n < 2:
            raise ValueError("every N_n must be at least 2")
        gammas.append(gammas[-1] / (n * (n + 1)))
    return gammas


def _graph_vertices(n: int, peripheral_only: bool) -> list[tuple[int, int]]:
    if peripheral_only:
        return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    return [(i, j) for i in range(1, n + 1) for j in range(0, n + 1)]


def _joined(a: tuple[int, int], b: tuple[int, int]) -> bool:
    # central vertices form a clique; a peripheral vertex touches only its
    # own central neighbour
    if a == b:
        return True
    if a[1] == 0 and b[1] == 0:
        return True
    if a[0] == b[0] and (a[1] == 0 or b[1] == 0):
        return True
    return False


def build_davies(
    spec: DaviesSpec,
    mode: str = "full",
    limit: int = 100_000,
) -> tuple[FiniteMetricSpace, MeasureOracle]:
    """Depth-D truncation of the graph-product space.

    ``full`` enumerates all depth-D cylinders; ``peripheral_only`` keeps the
    cylinders whose every coordinate is peripheral (the family realizing the
    separation lower bound).
    """
    if mode not in ("full", "peripheral_only"):
        raise ValueError("mode must be 'full' or 'peripheral_only'")
    peripheral = mode == "peripheral_only"
    count = 1
    for n in spec.n_seq:
        count *= n * n if peripheral else n * (n + 1)
    if count > limit:
        raise ValueError(f"{mode} enumeration would have {count} points, above {limit}")

    level_vertices = [_graph_vertices(n, peripheral) for n in spec.n_seq]
    coords = [tuple(p) for p in itertools.product(*level_vertices)]
    labels = ["|".join(f"{i}.{j}" for i, j in p) for p in coords]

    def dist(a: int, b: int) -> Fraction:
        u, v = coords[a], coords[b]
        for n in range(spec.depth):
            if u[n] != v[n]:
                if _joined(u[n], v[n]):
                    return Fraction(1, 2 ** (n + 1))
                return Fraction(1, 2**n)
        return Fraction(0)

    space = FiniteMetricSpace(
        len(coords),
        labels,
        dist,
        resolution=Fraction(1, 2**spec.depth),
        meta={
            "coords": coords,
            "scale_hint": "dyadic",
            "generator": f"davies:N={','.join(map(str, spec.n_seq))};depth={spec.depth};mode={mode}",
        },
    )
    return space, DaviesMeasure(spec.n_seq, spec.depth)


def peripheral_count(spec: DaviesSpec, n: int) -> int:
    """Number of depth-n all-peripheral cylinders: prod_{k<=n} N_k**2."""
    if not 1 <= n <= spec.depth:
        raise ValueError("scale index out of range")
    out = 1
    for k in range(n):
        out *= spec.n_seq[k] ** 2
    return out


def peripheral_mass_bound(spec: DaviesSpec, n: int) -> Fraction:
    """prod_{k<=n} N_k / (N_k + 1): total mass of the depth-n all-peripheral
    cylinders, i.e. the count times gamma_n."""
    if not 1 <= n <= spec.depth:
        raise ValueError("scale index out of range")
    out = Fraction(1)
    for k in range(n):
        out *= Fraction(spec.n_seq[k], spec.n_seq[k] + 1)
    return out


def davies_theorem_gauge(spec: DaviesSpec) -> MonotoneTable:
    """The gauge pinned by h(2**(-n+2)) = gamma_n**(1-q) at every scale."""
    gammas = gamma_sequence(spec.n_seq)
    points = []
    for n in range(1, spec.depth + 1):
        r = Fraction(4, 2**n)  # 2**(-n+2)
        points.append((r, pow_q(gammas[n], 1 - spec.q)))
    return MonotoneTable(points)


def davies_series_tail(
    spec: DaviesSpec,
    h: HausdorffFunction | None,
    m: int,
) -> ExtValue:
    """sum_{n=m..D} h(2**(-n+2)) (2 N_n)**q / ((N_n + 1) gamma_n**(1-q)).

    With ``h=None`` the gauge pinned at gamma_n**(1-q) is assumed and each
    term collapses to (2 N_n)**q / (N_n + 1).
    """
    if not 1 <= m <= spec.depth:
        raise ValueError("start index out of range")
    total = ExtValue.zero()
    gammas = gamma_sequence(spec.n_seq)
    for n in range(m, spec.depth + 1):
        nn = spec.n_seq[n - 1]
        factor = pow_q(Fraction(2 * nn), spec.q) / ExtValue.exact(nn + 1)
        if h is None:
            term = factor
        else:
            hv = eval_h(h, Fraction(4, 2**n))
            term = hv * factor / pow_q(gammas[n], 1 - spec.q)
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Euclidean clouds
# ---------------------------------------------------------------------------


def build_euclidean_cloud(points: Sequence[Sequence]) -> FiniteMetricSpace:
    """Floating-distance cloud in dimension 1..3 with exact rational inputs."""
    coords = [tuple(Fraction(c) for c in p) for p in points]
    if not coords:
        raise ValueError("empty cloud")
    d = len(coords[0])
    if d not in (1, 2, 3):
        raise ValueError("dimension must be 1, 2 or 3")
    if any(len(p) != d for p in coords):
        raise ValueError("inconsistent dimensions")
    if len(coords) > 200:
        raise ValueError("clouds are capped at 200 points")
    if len(set(coords)) != len(coords):
        raise ValueError("duplicate points")

    def dist(i: int, j: int) -> float:
        return math.sqrt(sum(float(a - b) ** 2 for a, b in zip(coords[i], coords[j])))

    min_d = None
    for i in range(len(coords)):
        for j in range(i):
            dd = dist(i, j)
            if min_d is None or dd < min_d:
                min_d = dd
    resolution = Fraction(min_d) / 4 if min_d is not None else Fraction(1)
    labels = ["(" + ",".join(str(c) for c in p) + ")" for p in coords]
    return FiniteMetricSpace(
        len(coords),
        labels,
        dist,
        resolution=resolution,
        is_exact=False,
        cmp_tol=1e-9,
        meta={"coords": coords, "dim": d, "scale_hint": "generic"},
    )
