"""Premeasure engine: packing-kind validation, greedy maximal families,
sup-type premeasures by branch and bound, the weighted premeasure by exact
linear programming, the centered-cover value by exact set cover, gauge-fine
variants, and a subset-enumeration oracle.

Every result is a sound enclosure of the band-level optimum together with an
explicit witness family; statuses say whether the optimizer completed
(``exact_on_grid``) or the value is a one-sided bound.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .extmath import ExtValue, HausdorffFunction, eval_h, pow_q
from .measures import MeasureOracle, ball_mass
from .metric import FiniteMetricSpace, Gauge
from .solvers import max_weight_conflict_free, min_weight_cover, simplex_max

__all__ = [
    "PackingKind",
    "HAUSDORFF",
    "Constituent",
    "Band",
    "Status",
    "Limits",
    "PremeasureResult",
    "ValidationReport",
    "is_valid",
    "greedy_maximal_pseudo_packing",
    "maximal_pseudo_packing_from_family",
    "sup_premeasure",
    "gauge_fine_sup",
    "weighted_premeasure",
    "hausdorff_premeasure",
    "regularized_hausdorff",
    "brute_force_oracle",
    "amenability_witness_count",
    "candidate_family",
]


class PackingKind(Enum):
    PACKING = "packing"
    PSEUDO = "pseudo"
    RELATIVE = "relative"
    WEAK_PSEUDO = "weak"
    WEIGHTED = "weighted"


HAUSDORFF = "hausdorff"

KIND_BY_NAME = {k.value: k for k in PackingKind}
KIND_BY_NAME[HAUSDORFF] = HAUSDORFF


@dataclass(frozen=True)
class Constituent:
    center: int
    radius: Fraction
    weight: Fraction | None = None  # used by the weighted kind only

    def to_json(self):
        out = {"center": self.center, "radius": _frac_str(self.radius)}
        if self.weight is not None:
            out["weight"] = _frac_str(self.weight)
        return out


def _frac_str(f: Fraction) -> str:
    f = Fraction(f)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class Band:
    """Radius window [r_min, delta] with its finite candidate grid."""

    r_min: Fraction
    delta: Fraction
    radius_grid: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "r_min", Fraction(self.r_min))
        object.__setattr__(self, "delta", Fraction(self.delta))
        grid = tuple(Fraction(r) for r in self.radius_grid)
        object.__setattr__(self, "radius_grid", grid)
        if not grid:
            raise ValueError("empty radius grid")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("grid must be strictly increasing")
        if grid[0] < self.r_min or grid[-1] > self.delta:
            raise ValueError("grid must lie inside [r_min, delta]")

    @staticmethod
    def from_space(space: FiniteMetricSpace, delta, r_min=None) -> "Band":
        """Default grid: scale family for scaled constructions (powers of the
        scale ratio, plus halves for the triadic one), distances-and-halves
        for everything else, always including delta itself."""
        delta = Fraction(delta)
        r_min = Fraction(r_min) if r_min is not None else space.resolution
        hint = space.meta.get("scale_hint", "generic")
        radii: set[Fraction] = {delta}
        if hint == "triadic":
            j = 0
            while Fraction(1, 3**j) >= r_min:
                for cand in (Fraction(1, 3**j), Fraction(1, 2 * 3**j)):
                    if r_min <= cand <= delta:
                        radii.add(cand)
                j += 1
        elif hint == "dyadic":
            n = 0
            while Fraction(1, 2**n) >= r_min:
                cand = Fraction(1, 2**n)
                if r_min <= cand <= delta:
                    radii.add(cand)
                n += 1
        else:
            for d in space.distinct_distances():
                f = Fraction(d)
                for cand in (f, f / 2):
                    if r_min <= cand <= delta:
                        radii.add(cand)
        radii = {r for r in radii if r_min <= r <= delta}
        return Band(r_min, delta, tuple(sorted(radii)))

    def to_json(self):
        return {
            "r_min": _frac_str(self.r_min),
            "delta": _frac_str(self.delta),
            "grid": [_frac_str(r) for r in self.radius_grid],
        }


class Status(Enum):
    EXACT_ON_GRID = "exact_on_grid"
    LOWER_BOUND = "lower_bound"
    UPPER_BOUND = "upper_bound"


@dataclass
class Limits:
    """Size guards; overridable via FRACPACK_LIMITS=bb=...,bbnodes=...,..."""

    bb_candidates: int = 2000
    bb_nodes: int = 400_000
    lp_cells: int = 250_000
    oracle_candidates: int = 22
    product_points: int = 100_000
    subset_regularization: int = 15

    @staticmethod
    def from_env() -> "Limits":
        lim = Limits()
        raw = os.environ.get("FRACPACK_LIMITS", "")
        names = {
            "bb": "bb_candidates",
            "bbnodes": "bb_nodes",
            "lp": "lp_cells",
            "oracle": "oracle_candidates",
            "product": "product_points",
            "subset": "subset_regularization",
        }
        for part in raw.split(","):
            part = part.strip()
            if not part:
                continue
            key, _, val = part.partition("=")
            attr = names.get(key.strip())
            if attr is None:
                raise ValueError(f"unknown FRACPACK_LIMITS key {key!r}")
            setattr(lim, attr, int(val))
        return lim


@dataclass
class PremeasureResult:
    value: ExtValue
    status: Status
    witness: list[Constituent]
    band: Band
    kind: object  # PackingKind or HAUSDORFF
    extras: dict = field(default_factory=dict)

    def kind_name(self) -> str:
        return self.kind.value if isinstance(self.kind, PackingKind) else str(self.kind)

    def to_json(self):
        out = {
            "value": self.value.to_json(),
            "status": self.status.value,
            "kind": self.kind_name(),
            "band": self.band.to_json(),
            "witness": [c.to_json() for c in self.witness],
        }
        if self.extras:
            extras = {}
            for k, v in sorted(self.extras.items()):
                if isinstance(v, ExtValue):
                    extras[k] = v.to_json()
                elif isinstance(v, Fraction):
                    extras[k] = _frac_str(v)
                elif isinstance(v, (bool, int, str, float, list)):
                    extras[k] = v
            out["extras"] = extras
        return out


# ---------------------------------------------------------------------------
# Pairwise clauses and validation
# ---------------------------------------------------------------------------


def _strictly_greater(space: FiniteMetricSpace, lhs, rhs) -> bool:
    """lhs > rhs, treating a margin inside the float tolerance as violated."""
    if space.is_exact:
        return lhs > rhs
    return float(lhs) > float(rhs) + space.cmp_tol


def _pair_allowed(
    kind: PackingKind,
    space: FiniteMetricSpace,
    c1: Constituent,
    c2: Constituent,
    members: dict,
    weak_reference: frozenset[int] | None,
) -> bool:
    if c1.center == c2.center:
        return False
    rho = space.distance(c1.center, c2.center)
    if kind is PackingKind.PACKING:
        return _strictly_greater(space, rho, c1.radius + c2.radius)
    if kind is PackingKind.PSEUDO:
        return _strictly_greater(space, rho, max(c1.radius, c2.radius))
    if kind is PackingKind.RELATIVE:
        return not (_members_of(space, c1, members) & _members_of(space, c2, members))
    if kind is PackingKind.WEAK_PSEUDO:
        if not _strictly_greater(space, rho, max(c1.radius, c2.radius)):
            return False
        shared = _members_of(space, c1, members) & _members_of(space, c2, members)
        return not (shared & weak_reference)
    raise ValueError(f"no pairwise clause for kind {kind}")


def _members_of(space: FiniteMetricSpace, c: Constituent, cache: dict) -> frozenset[int]:
    key = (c.center, c.radius)
    got = cache.get(key)
    if got is None:
        got = space.ball_members(c.center, c.radius)
        cache[key] = got
    return got


@dataclass
class ValidationReport:
    ok: bool
    reason: str | None = None
    culprit: tuple | None = None

    def __bool__(self):
        return self.ok


def is_valid(
    kind: PackingKind,
    pi: Sequence[Constituent],
    space: FiniteMetricSpace,
    e_subset: Sequence[int],
    weak_reference: Sequence[int] | None = None,
) -> ValidationReport:
    """Check a constituent family against its packing kind, strictly.

    Returns the first violated clause (pair or point) on failure.  For the
    weighted kind the per-point covering sums are checked instead of pairwise
    clauses.  Centers outside the packed subset raise.
    """
    e_set = frozenset(e_subset)
    for c in pi:
        if c.center not in e_set:
            raise ValueError(f"center {c.center} lies outside the packed subset")
        if c.radius <= 0:
            return ValidationReport(False, "non-positive radius", (c,))
    if kind is PackingKind.WEIGHTED:
        for c in pi:
            if c.weight is None or c.weight <= 0:
                return ValidationReport(False, "weighted constituents need a positive weight", (c,))
        tol = 0 if space.is_exact else space.cmp_tol
        for x in e_set:
            total = Fraction(0)
            for c in pi:
                d = space.distance(c.center, x)
                inside = d <= c.radius if space.is_exact else float(d) <= float(c.radius) + space.cmp_tol
                if inside:
                    total += c.weight
            if total > 1 + tol:
                return ValidationReport(False, f"covering weight {total} above 1 at point {x}", (x,))
        return ValidationReport(True)

    weak = frozenset(weak_reference) if weak_reference is not None else e_set
    members: dict = {}
    for i in range(len(pi)):
        for j in range(i):
            if not _pair_allowed(kind, space, pi[i], pi[j], members, weak):
                return ValidationReport(
                    False,
                    f"{kind.value} clause violated by constituents {j} and {i}",
                    (j, i),
                )
    return ValidationReport(True)


# ---------------------------------------------------------------------------
# Greedy maximal pseudo-packings
# ---------------------------------------------------------------------------


def greedy_maximal_pseudo_packing(
    space: FiniteMetricSpace, e_subset: Sequence[int], r
) -> list[Constituent]:
    """Index-order greedy at constant radius r.

    The result is a pseudo-packing whose balls cover the subset: any rejected
    point sits within distance r of an accepted one.
    """
    r = Fraction(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    chosen: list[int] = []
    for x in sorted(e_subset):
        if all(_strictly_greater(space, space.distance(x, y), r) for y in chosen):
            chosen.append(x)
    return [Constituent(x, r) for x in chosen]


def maximal_pseudo_packing_from_family(
    space: FiniteMetricSpace, family: Sequence[Constituent]
) -> list[Constituent]:
    """Greedy maximal pseudo-packing from a mixed-radius family (largest radius
    first, then center index); the chosen balls cover every family center."""
    order = sorted(range(len(family)), key=lambda i: (-family[i].radius, family[i].center, i))
    chosen: list[Constituent] = []
    for idx in order:
        c = family[idx]
        if all(
            _strictly_greater(space, space.distance(c.center, d.center), max(c.radius, d.radius))
            for d in chosen
        ):
            chosen.append(c)
    return chosen


# ---------------------------------------------------------------------------
# Candidate machinery
# ---------------------------------------------------------------------------


def candidate_family(
    space: FiniteMetricSpace,
    e_subset: Sequence[int],
    mu: MeasureOracle,
    q,
    h: HausdorffFunction,
    band: Band,
    gauge: Gauge | None = None,
) -> tuple[list[Constituent], list[ExtValue]]:
    """All (center, radius) candidates with their term weights mu(B)^q h(2r).

    Candidates are ordered center-ascending then radius-descending; that order
    is part of the determinism contract.
    """
    cands: list[Constituent] = []
    weights: list[ExtValue] = []
    for x in sorted(e_subset):
        for r in sorted(band.radius_grid, reverse=True):
            if gauge is not None and not r < gauge.cap(x):
                continue
            mass = ball_mass(mu, space, x, r)
            w = pow_q(mass, q) * eval_h(h, 2 * r)
            cands.append(Constituent(x, r))
            weights.append(w)
    return cands, weights


def _weight_mode(weights: Sequence[ExtValue]) -> str:
    if any(w.is_infinite for w in weights):
        return "infinite"
    if all(w.is_rational for w in weights):
        return "rational"
    if all(w.is_exact for w in weights):
        return "exact"
    return "interval"


def _weight_columns(weights: Sequence[ExtValue], mode: str):
    """Solver-ready weight vectors: one column for exact modes, (lo, hi) for
    interval mode."""
    if mode == "rational":
        return [[w.as_fraction() for w in weights]]
    if mode == "exact":
        return [[w.as_quad() for w in weights]]
    los, his = [], []
    for w in weights:
        lo, hi = w.bounds(128)
        los.append(lo)
        his.append(hi)
    return [los, his]


def _conflicts_and_groups(
    kind: PackingKind,
    space: FiniteMetricSpace,
    cands: Sequence[Constituent],
    weak_reference: frozenset[int],
):
    m = len(cands)
    members: dict = {}
    if kind is PackingKind.RELATIVE:
        for c in cands:
            _members_of(space, c, members)
    conflicts = [0] * m
    for i in range(m):
        ci = cands[i]
        for j in range(i):
            cj = cands[j]
            if not _pair_allowed(kind, space, ci, cj, members, weak_reference):
                conflicts[i] |= 1 << j
                conflicts[j] |= 1 << i
    groups: list[list[int]] = []
    for i, c in enumerate(cands):
        if groups and cands[groups[-1][-1]].center == c.center:
            groups[-1].append(i)
        else:
            groups.append([i])
    return conflicts, groups


def _infinite_result(cands, weights, band, kind) -> PremeasureResult:
    idx = next(i for i, w in enumerate(weights) if w.is_infinite)
    return PremeasureResult(
        ExtValue.infinity(),
        Status.EXACT_ON_GRID,
        [cands[idx]],
        band,
        kind,
        {"note": "a candidate with zero ball mass and q <= 0 makes the value infinite"},
    )


# ---------------------------------------------------------------------------
# Sup-type premeasures
# ---------------------------------------------------------------------------


def sup_premeasure(
    kind: PackingKind,
    space: FiniteMetricSpace,
    e_subset: Sequence[int],
    mu: MeasureOracle,
    q,
    h: HausdorffFunction,
    band: Band,
    limits: Limits | None = None,
    gauge: Gauge | None = None,
    weak_reference: Sequence[int] | None = None,
) -> PremeasureResult:
    """Band-level sup of sum mu(B(x,r))^q h(2r) over valid families of `kind`.

    Exact on the grid via branch and bound whenever the candidate count and
    node budget allow; otherwise the value is the greedy enclosure with a
    lower_bound status.
    """
    if kind in (PackingKind.WEIGHTED,):
        raise ValueError("use weighted_premeasure for the weighted kind")
    if not e_subset:
        raise ValueError("the packed subset must be non-empty")
    limits = limits or Limits.from_env()
    weak = frozenset(weak_reference) if weak_reference is not None else frozenset(e_subset)
    cands, weights = candidate_family(space, e_subset, mu, q, h, band, gauge)
    if not cands:
        return PremeasureResult(ExtValue.zero(), Status.EXACT_ON_GRID, [], band, kind,
                                {"note": "no admissible candidates"})
    mode = _weight_mode(weights)
    if mode == "infinite":
        return _infinite_result(cands, weights, band, kind)

    if len(cands) > limits.bb_candidates:
        chosen = _greedy_valid_family(kind, space, cands, weights, weak)
        lo = sum((weights[i].bounds()[0] for i in chosen), Fraction(0))
        hi = sum((w.bounds()[1] for w in weights), Fraction(0))
        return PremeasureResult(
            ExtValue.from_bounds(lo, hi),
            Status.LOWER_BOUND,
            [cands[i] for i in chosen],
            band,
            kind,
            {"mode": mode, "note": "candidate count above the branch-and-bound limit"},
        )

    conflicts, groups = _conflicts_and_groups(kind, space, cands, weak)
    columns = _weight_columns(weights, mode)
    sols = [
        max_weight_conflict_free(col, conflicts, groups, node_budget=limits.bb_nodes)
        for col in columns
    ]
    complete = all(s.complete for s in sols)
    witness_idx = sols[0].chosen
    extras = {"mode": mode, "nodes": max(s.nodes for s in sols), "complete": complete}

    if mode in ("rational", "exact"):
        sol = sols[0]
        if complete:
            value = ExtValue.exact(sol.value)
            status = Status.EXACT_ON_GRID
        else:
            value = ExtValue.from_bounds(_lower_of(sol.value), _upper_of(sol.upper))
            status = Status.LOWER_BOUND
    else:
        lo_sol, hi_sol = sols
        value = ExtValue.from_bounds(_lower_of(lo_sol.value), _upper_of(hi_sol.upper))
        status = Status.EXACT_ON_GRID if complete else Status.LOWER_BOUND
    return PremeasureResult(value, status, [cands[i] for i in witness_idx], band, kind, extras)


def _lower_of(v):
    if isinstance(v, Fraction):
        return v
    return v.bounds()[0]


def _upper_of(v):
    if isinstance(v, Fraction):
        return v
    return v.bounds()[1]


def _greedy_valid_family(kind, space, cands, weights, weak) -> list[int]:
    order = sorted(range(len(cands)), key=lambda i: weights[i].bounds()[0], reverse=True)
    members: dict = {}
    chosen: list[int] = []
    for i in order:
        if all(_pair_allowed(kind, space, cands[i], cands[j], members, weak) for j in chosen):
            chosen.append(i)
    chosen.sort()
    return chosen


def gauge_fine_sup(
    kind: PackingKind,
    space: FiniteMetricSpace,
    e_subset: Sequence[int],
    mu: MeasureOracle,
    q,
    h: HausdorffFunction,
    gauge: Gauge,
    band: Band,
    limits: Limits | None = None,
) -> PremeasureResult:
    """sup over gauge-fine families: each candidate needs r < gauge(center)."""
    if kind not in (PackingKind.PACKING, PackingKind.PSEUDO):
        raise ValueError("gauge-fine variants exist for the packing and pseudo kinds")
    cands, _ = candidate_family(space, e_subset, mu, q, h, band, gauge)
    if not cands:
        return PremeasureResult(ExtValue.zero(), Status.EXACT_ON_GRID, [], band, kind,
                                {"note": "gauge excludes every candidate"})
    return sup_premeasure(kind, space, e_subset, mu, q, h, band, limits, gauge=gauge)


# ---------------------------------------------------------------------------
# Weighted premeasure (exact LP)
# ---------------------------------------------------------------------------


def weighted_premeasure(
    space: FiniteMetricSpace,
    e_subset: Sequence[int],
    mu: MeasureOracle,
    q,
    h: HausdorffFunction,
    band: Band,
    limits: Limits | None = None,
) -> PremeasureResult:
    """sup of sum c_i mu(B_i)^q h(2 r_i) over weighted families: the covering
    weight of every point of the subset stays at most 1.

    Solved as an exact LP (rational constraints, possibly surd objective);
    the optimal basic solution is rational, and the dual vector certifies
    optimality (primal value equals dual value identically).
    """
    if not e_subset:
        raise ValueError("the packed subset must be non-empty")
    limits = limits or Limits.from_env()
    cands, weights = candidate_family(space, e_subset, mu, q, h, band)
    mode = _weight_mode(weights)
    if mode == "infinite":
        idx = next(i for i, w in enumerate(weights) if w.is_infinite)
        witness = [Constituent(cands[idx].center, cands[idx].radius, Fraction(1))]
        return PremeasureResult(ExtValue.infinity(), Status.EXACT_ON_GRID, witness, band,
                                PackingKind.WEIGHTED,
                                {"note": "infinite candidate weight; unit weight on it is feasible"})

    points = sorted(e_subset)
    pos = {x: i for i, x in enumerate(points)}
    covers = []
    members: dict = {}
    e_set = frozenset(points)
    for c in cands:
        me = _members_of(space, c, members) & e_set
        covers.append(me)

    if len(cands) * len(points) > limits.lp_cells:
        return _weighted_oversize(cands, weights, covers, points, band)

    a_rows = []
    for x in points:
        a_rows.append([Fraction(1) if x in covers[i] else Fraction(0) for i in range(len(cands))])
    b = [Fraction(1)] * len(points)
    columns = _weight_columns(weights, mode)
    sols = [simplex_max(a_rows, b, col) for col in columns]
    sol = sols[0]
    witness = [
        Constituent(cands[i].center, cands[i].radius, sol.primal[i])
        for i in range(len(cands))
        if sol.primal[i] > 0
    ]
    extras = {"mode": mode, "pivots": max(s.pivots for s in sols)}
    if mode in ("rational", "exact"):
        value = ExtValue.exact(sol.value)
        dual_total = sum(sol.duals, Fraction(0))
        extras["dual_value"] = ExtValue.exact(dual_total)
        extras["strong_duality"] = bool(ExtValue.exact(dual_total).eq_exact(value))
    else:
        lo_sol, hi_sol = sols
        value = ExtValue.from_bounds(_lower_of(lo_sol.value), _upper_of(hi_sol.value))
        dual_lo = sum(lo_sol.duals, Fraction(0))
        dual_hi = sum(hi_sol.duals, Fraction(0))
        extras["dual_value"] = ExtValue.from_bounds(min(dual_lo, _lower_of(lo_sol.value)),
                                                    max(dual_hi, _upper_of(hi_sol.value)))
        extras["strong_duality"] = bool(dual_lo == lo_sol.value and dual_hi == hi_sol.value)
    return PremeasureResult(value, Status.EXACT_ON_GRID, witness, band, PackingKind.WEIGHTED, extras)


def _weighted_oversize(cands, weights, covers, points, band) -> PremeasureResult:
    """Dual-feasible price vector gives a certified upper bound; the best
    single unit-weight candidate gives the attained lower side."""
    y = {}
    for x in points:
        best = None
        for i, cov in enumerate(covers):
            if x in cov and cov:
                rate = weights[i].bounds()[1] / len(cov)
                if best is None or rate > best:
                    best = rate
        y[x] = best or Fraction(0)
    upper = sum(y.values(), Fraction(0))
    best_i = max(range(len(cands)), key=lambda i: weights[i].bounds()[0])
    lo = weights[best_i].bounds()[0]
    witness = [Constituent(cands[best_i].center, cands[best_i].radius, Fraction(1))]
    return PremeasureResult(
        ExtValue.from_bounds(lo, max(upper, lo)),
        Status.UPPER_BOUND,
        witness,
        band,
        PackingKind.WEIGHTED,
        {"note": "LP size limit exceeded; dual-feasible price bound"},
    )


# ---------------------------------------------------------------------------
# Centered-cover premeasure (exact set cover)
# ---------------------------------------------------------------------------


def hausdorff_premeasure(
    space: FiniteMetricSpace,
    e_subset: Sequence[int],
    mu: MeasureOracle,
    q,
    h: HausdorffFunction,
    band: Band,
    limits: Limits | None = None,
) -> PremeasureResult:
    """Band-level inf of sum mu(B)^q h(2r) over centered covers of the subset.

    Candidates with infinite term weight are avoided whenever a finite cover
    exists; if they are unavoidable the value is infinite.
    """
    if not e_subset:
        raise ValueError("the covered subset must be non-empty")
    limits = limits or Limits.from_env()
    cands, weights = candidate_family(space, e_subset, mu, q, h, band)
    points = sorted(e_subset)
    posn = {x: i for i, x in enumerate(points)}
    e_set = frozenset(points)
    members: dict = {}

    finite_idx = [i for i, w in enumerate(weights) if not w.is_infinite]
    cover_masks = []
    for i in finite_idx:
        mask = 0
        for x in _members_of(space, cands[i], members) & e_set:
            mask |= 1 << posn[x]
        cover_masks.append(mask)
    universe = (1 << len(points)) - 1

    feasible = 0
    for m in cover_masks:
        feasible |= m
    if feasible != universe:
        return PremeasureResult(
            ExtValue.infinity(),
            Status.EXACT_ON_GRID,
            [],
            band,
            HAUSDORFF,
            {"note": "no cover avoids infinite-weight balls"},
        )

    sub_weights = [weights[i] for i in finite_idx]
    mode = _weight_mode(sub_weights)

    if len(finite_idx) > limits.bb_candidates:
        from .solvers import _cover_greedy, _cover_ratio_bound

        his = [w.bounds()[1] for w in sub_weights]
        los = [w.bounds()[0] for w in sub_weights]
        greedy = _cover_greedy(his, cover_masks, universe)
        root = _cover_ratio_bound(los, cover_masks, universe)
        chosen = [cands[finite_idx[i]] for i in greedy[1]]
        return PremeasureResult(
            ExtValue.from_bounds(min(root, greedy[0]), greedy[0]),
            Status.UPPER_BOUND,
            chosen,
            band,
            HAUSDORFF,
            {"mode": mode, "note": "candidate count above the set-cover limit"},
        )

    columns = _weight_columns(sub_weights, mode)
    sols = [
        min_weight_cover(col, cover_masks, universe, node_budget=limits.bb_nodes)
        for col in columns
    ]
    complete = all(s.complete for s in sols)
    extras = {"mode": mode, "nodes": max(s.nodes for s in sols), "complete": complete}
    if mode in ("rational", "exact"):
        sol = sols[0]
        witness = [cands[finite_idx[i]] for i in sol.chosen]
        if complete:
            value = ExtValue.exact(sol.value)
            status = Status.EXACT_ON_GRID
        else:
            value = ExtValue.from_bounds(_lower_of(sol.lower), _upper_of(sol.value))
            status = Status.UPPER_BOUND
    else:
        lo_sol, hi_sol = sols
        witness = [cands[finite_idx[i]] for i in hi_sol.chosen]
        value = ExtValue.from_bounds(_lower_of(lo_sol.lower), _upper_of(hi_sol.value))
        status = Status.EXACT_ON_GRID if complete else Status.UPPER_BOUND

    return PremeasureResult(value, status, witness, band, HAUSDORFF, extras)


def regularized_hausdorff(
    space: FiniteMetricSpace,
    e_subset: Sequence[int],
    mu: MeasureOracle,
    q,
    h: HausdorffFunction,
    band: Band,
    limits: Limits | None = None,
) -> PremeasureResult:
    """sup over non-empty subsets F of the centered-cover value of F.

    Exponential subset enumeration, guarded by the subset limit; exposed for
    completeness, not used by the verification chains.
    """
    limits = limits or Limits.from_env()
    points = sorted(e_subset)
    if len(points) > limits.subset_regularization:
        raise ValueError("subset enumeration limit exceeded")
    best: PremeasureResult | None = None
    n = len(points)
    for mask in range(1, 1 << n):
        subset = [points[i] for i in range(n) if (mask >> i) & 1]
        res = hausdorff_premeasure(space, subset, mu, q, h, band, limits)
        if best is None or best.value.certainly_lt(res.value):
            best = res
    assert best is not None
    return best


# ---------------------------------------------------------------------------
# Subset-enumeration oracle
# ---------------------------------------------------------------------------


def brute_force_oracle(
    kind,
    space: FiniteMetricSpace,
    e_subset: Sequence[int],
    cands: Sequence[Constituent],
    weights: Sequence[ExtValue],
    weak_reference: Sequence[int] | None = None,
    limit: int = 22,
) -> ExtValue:
    """Exhaustive enumeration over candidate subsets; the independent check
    for every branch-and-bound value (weighted excluded: the LP certifies
    itself through duality)."""
    if kind is PackingKind.WEIGHTED:
        raise ValueError("the weighted kind is certified by LP duality, not enumeration")
    m = len(cands)
    if m > limit:
        raise ValueError(f"{m} candidates exceed the oracle limit {limit}")
    weak = frozenset(weak_reference) if weak_reference is not None else frozenset(e_subset)
    if any(w.is_infinite for w in weights):
        if kind == HAUSDORFF:
            raise ValueError("oracle expects finite cover weights")
        return ExtValue.infinity()
    mode = _weight_mode(weights)
    columns = _weight_columns(weights, mode)
    members: dict = {}

    if kind == HAUSDORFF:
        points = sorted(e_subset)
        posn = {x: i for i, x in enumerate(points)}
        masks = []
        for c in cands:
            mk = 0
            for x in _members_of(space, c, members) & frozenset(points):
                mk |= 1 << posn[x]
            masks.append(mk)
        universe = (1 << len(points)) - 1

        def best_cover(col):
            best = None

            def rec(uncovered, used_mask, total):
                nonlocal best
                if best is not None and total >= best:
                    return
                if not uncovered:
                    best = total
                    return
                lsb = uncovered & -uncovered
                for i in range(m):
                    if masks[i] & lsb and not (used_mask >> i) & 1:
                        rec(uncovered & ~masks[i], used_mask | (1 << i), total + col[i])

            rec(universe, 0, Fraction(0))
            return best

        vals = [best_cover(col) for col in columns]
        if any(v is None for v in vals):
            return ExtValue.infinity()
        if mode in ("rational", "exact"):
            return ExtValue.exact(vals[0])
        return ExtValue.from_bounds(_lower_of(vals[0]), _upper_of(vals[1]))

    def best_sup(col):
        best = Fraction(0)

        def rec(start: int, chosen: list[int], total):
            nonlocal best
            if total > best:
                best = total
            for i in range(start, m):
                ci = cands[i]
                if all(_pair_allowed(kind, space, ci, cands[j], members, weak) for j in chosen):
                    chosen.append(i)
                    rec(i + 1, chosen, total + col[i])
                    chosen.pop()

        rec(0, [], Fraction(0))
        return best

    vals = [best_sup(col) for col in columns]
    if mode in ("rational", "exact"):
        return ExtValue.exact(vals[0])
    return ExtValue.from_bounds(_lower_of(vals[0]), _upper_of(vals[1]))


def amenability_witness_count(
    space: FiniteMetricSpace, pi: Sequence[Constituent], y: int
) -> int:
    """Number of constituents whose closed ball contains the point y."""
    count = 0
    for c in pi:
        d = space.distance(c.center, y)
        inside = d <= c.radius if space.is_exact else float(d) <= float(c.radius) + space.cmp_tol
        if inside:
            count += 1
    return count
