"""Finite metric spaces, closed balls, and max-metric products.

Spaces are immutable after construction.  Distances are exact Fractions for
the combinatorial constructions (triadic nets, cylinder spaces, trees) and
floats for Euclidean clouds; float spaces carry a comparison tolerance and
every strict clause downstream treats a margin below that tolerance as a
violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

__all__ = [
    "FiniteMetricSpace",
    "Gauge",
    "MetricReport",
    "validate_metric",
    "ball_members",
    "product_space",
]

DEFAULT_PRODUCT_LIMIT = 100_000
_MATRIX_CACHE_MAX = 600  # precompute the distance matrix up to this many points


class FiniteMetricSpace:
    """An indexed point set with a symmetric distance oracle.

    ``resolution`` is the smallest meaningful radius of the instance (the
    truncation scale); premeasure bands never go below it.
    """

    __slots__ = (
        "point_count",
        "labels",
        "resolution",
        "flags",
        "is_exact",
        "cmp_tol",
        "meta",
        "_dist_fn",
        "_matrix",
    )

    def __init__(
        self,
        point_count: int,
        labels: Sequence[str],
        dist_fn: Callable[[int, int], object],
        resolution: Fraction,
        *,
        is_exact: bool = True,
        cmp_tol: float = 1e-9,
        flags: dict | None = None,
        meta: dict | None = None,
        cache_matrix: bool | None = None,
    ):
        if point_count < 1:
            raise ValueError("a space needs at least one point")
        if len(labels) != point_count:
            raise ValueError("label count mismatch")
        if resolution <= 0:
            raise ValueError("resolution must be positive")
        self.point_count = point_count
        self.labels = list(labels)
        self.resolution = Fraction(resolution)
        self.flags = dict(flags or {"is_ultrametric": False, "triangle_checked": False})
        self.is_exact = is_exact
        self.cmp_tol = cmp_tol if not is_exact else 0.0
        self.meta = dict(meta or {})
        self._dist_fn = dist_fn
        if cache_matrix is None:
            cache_matrix = point_count <= _MATRIX_CACHE_MAX
        self._matrix = None
        if cache_matrix:
            self._matrix = [
                [dist_fn(i, j) if j < i else None for j in range(i + 1)]
                for i in range(point_count)
            ]

    @classmethod
    def from_matrix(
        cls,
        matrix: Sequence[Sequence],
        labels: Sequence[str] | None = None,
        resolution: Fraction | None = None,
        **kw,
    ) -> "FiniteMetricSpace":
        n = len(matrix)
        rows = [list(r) for r in matrix]
        for i in range(n):
            if len(rows[i]) != n:
                raise ValueError("distance matrix must be square")
            if rows[i][i] != 0:
                raise ValueError("distance(i, i) must be 0")
        if labels is None:
            labels = [str(i) for i in range(n)]
        if resolution is None:
            positive = [rows[i][j] for i in range(n) for j in range(i) if rows[i][j] > 0]
            if not positive:
                resolution = Fraction(1)
            else:
                m = min(positive)
                resolution = Fraction(m) / 2 if not isinstance(m, float) else Fraction(m) / 2
        return cls(n, labels, lambda i, j: rows[i][j], Fraction(resolution), **kw)

    # -- geometry -----------------------------------------------------------
    def distance(self, i: int, j: int):
        if i == j:
            return Fraction(0) if self.is_exact else 0.0
        if self._matrix is not None:
            return self._matrix[i][j] if j < i else self._matrix[j][i]
        return self._dist_fn(i, j)

    def ball_members(self, center: int, r) -> frozenset[int]:
        """Closed ball: indices within distance r of the center (always
        containing the center itself)."""
        if r < 0:
            raise ValueError("radius must be non-negative")
        if self.is_exact:
            return frozenset(j for j in range(self.point_count) if self.distance(center, j) <= r)
        bound = float(r) + self.cmp_tol
        return frozenset(j for j in range(self.point_count) if float(self.distance(center, j)) <= bound)

    def diameter(self):
        best = Fraction(0) if self.is_exact else 0.0
        for i in range(self.point_count):
            for j in range(i):
                d = self.distance(i, j)
                if d > best:
                    best = d
        return best

    def distinct_distances(self) -> list:
        seen = set()
        for i in range(self.point_count):
            for j in range(i):
                seen.add(self.distance(i, j))
        return sorted(seen)

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        def enc(d):
            if isinstance(d, float):
                return d
            f = Fraction(d)
            return f"{f.numerator}/{f.denominator}"

        return {
            "schema": "fracpack-space/1",
            "labels": self.labels,
            "resolution": f"{self.resolution.numerator}/{self.resolution.denominator}",
            "exact": self.is_exact,
            "flags": dict(self.flags),
            "matrix": [
                [enc(self.distance(i, j)) for j in range(self.point_count)]
                for i in range(self.point_count)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteMetricSpace":
        exact = bool(obj.get("exact", True))
        if exact:
            rows = [[Fraction(v) for v in row] for row in obj["matrix"]]
        else:
            rows = [[float(v) for v in row] for row in obj["matrix"]]
        return cls.from_matrix(
            rows,
            labels=obj.get("labels"),
            resolution=Fraction(obj["resolution"]),
            is_exact=exact,
            flags=obj.get("flags"),
        )

    def __repr__(self):
        return f"FiniteMetricSpace(n={self.point_count}, resolution={self.resolution})"


@dataclass(frozen=True)
class Gauge:
    """Per-point positive radius cap; a family is gauge-fine when every radius
    sits strictly below the cap at its center."""

    caps: dict[int, Fraction] = field(default_factory=dict)
    default: Fraction | None = None

    def cap(self, i: int) -> Fraction:
        v = self.caps.get(i, self.default)
        if v is None:
            raise KeyError(f"gauge has no cap for point {i}")
        if v <= 0:
            raise ValueError("gauge caps must be positive")
        return v

    @staticmethod
    def constant(value, point_count: int | None = None) -> "Gauge":
        return Gauge({}, Fraction(value))


@dataclass
class MetricReport:
    symmetric: bool
    identity: bool
    triangle: bool
    ultrametric: bool

    def all_metric_axioms(self) -> bool:
        return self.symmetric and self.identity and self.triangle


def validate_metric(space: FiniteMetricSpace) -> MetricReport:
    """Exhaustive metric-axiom check over all pairs and triples.

    Updates the space's flags in place.  Float spaces get a tolerance slack of
    ``cmp_tol`` on the triangle inequalities.
    """
    n = space.point_count
    tol = space.cmp_tol if not space.is_exact else 0
    symmetric = True
    identity = True
    for i in range(n):
        if space.distance(i, i) != 0:
            identity = False
        for j in range(i):
            d = space.distance(i, j)
            if d <= 0:
                identity = False
            if space.distance(j, i) != d:
                symmetric = False
    triangle = True
    ultrametric = True
    for i in range(n):
        di = [space.distance(i, m) for m in range(n)]
        for j in range(i + 1, n):
            dij = di[j]
            dj = [space.distance(j, m) for m in range(n)]
            for k in range(j + 1, n):
                dik, djk = di[k], dj[k]
                a, b, c = dij, dik, djk
                hi = max(a, b, c)
                rest = sorted((a, b, c))[:2]
                if tol:
                    if hi > rest[0] + rest[1] + tol:
                        triangle = False
                    if hi > max(rest) + tol:
                        ultrametric = False
                else:
                    if hi > rest[0] + rest[1]:
                        triangle = False
                    if hi > max(rest):
                        ultrametric = False
            if not triangle and not ultrametric:
                break
    space.flags["triangle_checked"] = triangle
    space.flags["is_ultrametric"] = ultrametric
    return MetricReport(symmetric, identity, triangle, ultrametric)


def ball_members(space: FiniteMetricSpace, center: int, r) -> frozenset[int]:
    return space.ball_members(center, r)


def product_space(
    x: FiniteMetricSpace,
    y: FiniteMetricSpace,
    limit: int = DEFAULT_PRODUCT_LIMIT,
) -> FiniteMetricSpace:
    """Cartesian product under the max metric.

    Index layout is row-major: pair (i, j) maps to ``i * y.point_count + j``.
    Closed balls factorize: members(B((a,b), r)) is exactly the product of the
    factor balls, which is what makes product masses multiplicative.
    """
    n = x.point_count * y.point_count
    if n > limit:
        raise ValueError(f"product would have {n} points, above the limit {limit}")
    ny = y.point_count
    exact = x.is_exact and y.is_exact

    if exact:
        def dist(i: int, j: int):
            xi, yi = divmod(i, ny)
            xj, yj = divmod(j, ny)
            return max(x.distance(xi, xj), y.distance(yi, yj))
    else:
        def dist(i: int, j: int):
            xi, yi = divmod(i, ny)
            xj, yj = divmod(j, ny)
            return max(float(x.distance(xi, xj)), float(y.distance(yi, yj)))

    labels = [f"{lx}|{ly}" for lx in x.labels for ly in y.labels]
    meta = {
        "product_of": (x.point_count, y.point_count),
        "scale_hint": _merge_hint(x.meta.get("scale_hint"), y.meta.get("scale_hint")),
    }
    return FiniteMetricSpace(
        n,
        labels,
        dist,
        max(x.resolution, y.resolution),
        is_exact=exact,
        cmp_tol=max(x.cmp_tol, y.cmp_tol) if not exact else 1e-9,
        meta=meta,
    )


def _merge_hint(a, b):
    return a if a == b else "generic"


def product_index(y_count: int, ix: int, iy: int) -> int:
    return ix * y_count + iy


def product_subset(y_count: int, e: Iterable[int], f: Iterable[int]) -> tuple[int, ...]:
    """Indices of E x F inside the row-major product space."""
    return tuple(ix * y_count + iy for ix in e for iy in f)
