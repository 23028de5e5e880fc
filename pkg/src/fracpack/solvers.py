"""Exact combinatorial solvers behind the premeasure engine.

All three solvers are deterministic and work over any weight type supporting
exact +, -, comparisons (Fraction or the quadratic-surd ring): maximum-weight
conflict-free selection (branch and bound over center groups, greedy warm
start, suffix-max bound), minimum-weight cover (branch and bound with an
LP-dual-feasible ratio bound), and a primal simplex with Bland's rule whose
constraint data stays rational while the objective may be irrational-exact.

When a node budget interrupts a search the result still carries a sound
enclosure of the optimum: the incumbent is attained by the returned witness
and the open-node bounds close the other side.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["SupSolution", "CoverSolution", "LpSolution",
           "max_weight_conflict_free", "min_weight_cover", "simplex_max"]

sys.setrecursionlimit(20_000)


@dataclass
class SupSolution:
    value: object          # attained by `chosen`
    chosen: tuple[int, ...]
    upper: object          # certified upper bound for the true optimum
    complete: bool
    nodes: int


@dataclass
class CoverSolution:
    value: object          # attained by `chosen`
    chosen: tuple[int, ...]
    lower: object          # certified lower bound for the true optimum
    complete: bool
    nodes: int


@dataclass
class LpSolution:
    value: object
    primal: list[Fraction]
    duals: list
    pivots: int


def _greedy_max(weights, conflicts) -> tuple[object, tuple[int, ...]]:
    order = sorted(range(len(weights)), key=lambda i: weights[i], reverse=True)
    chosen: list[int] = []
    blocked = 0
    total = Fraction(0)
    for i in order:
        if not (blocked >> i) & 1:
            chosen.append(i)
            blocked |= conflicts[i] | (1 << i)
            total = total + weights[i]
    chosen.sort()
    return total, tuple(chosen)


def max_weight_conflict_free(
    weights: Sequence,
    conflicts: Sequence[int],
    groups: Sequence[Sequence[int]],
    node_budget: int | None = None,
) -> SupSolution:
    """Exact maximum of sum(w_i) over conflict-free candidate subsets.

    ``conflicts[i]`` is a bitmask of candidates incompatible with i (members
    of the same group must be mutually conflicting); ``groups`` partitions the
    candidates, listed in branching order.  The witness is the first optimum
    in depth-first order (take-branches before the skip-branch), which makes
    results reproducible bit for bit.
    """
    m = len(weights)
    if m == 0:
        return SupSolution(Fraction(0), (), Fraction(0), True, 0)

    group_masks = []
    group_best = []
    for g in groups:
        mask = 0
        best = None
        for i in g:
            mask |= 1 << i
            if best is None or weights[i] > best:
                best = weights[i]
        group_masks.append(mask)
        group_best.append(best if best is not None else Fraction(0))

    ng = len(groups)
    suffix = [Fraction(0)] * (ng + 1)
    for g in range(ng - 1, -1, -1):
        suffix[g] = suffix[g + 1] + group_best[g]

    inc_value, inc_chosen = _greedy_max(weights, conflicts)

    state = {
        "best": inc_value,
        "chosen": inc_chosen,
        "nodes": 0,
        "exhausted": False,
        "open_upper": None,
    }
    budget = node_budget if node_budget is not None else float("inf")

    def dfs(g: int, avail: int, current, picked: list[int]):
        if state["exhausted"]:
            bound = current + suffix[g]
            ou = state["open_upper"]
            if ou is None or bound > ou:
                state["open_upper"] = bound
            return
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["exhausted"] = True
            bound = current + suffix[g]
            ou = state["open_upper"]
            if ou is None or bound > ou:
                state["open_upper"] = bound
            return
        if g == ng:
            if current > state["best"]:
                state["best"] = current
                state["chosen"] = tuple(sorted(picked))
            return
        if current + suffix[g] <= state["best"]:
            return
        options = avail & group_masks[g]
        while options:
            lsb = options & -options
            i = lsb.bit_length() - 1
            options -= lsb
            picked.append(i)
            dfs(g + 1, avail & ~conflicts[i] & ~group_masks[g], current + weights[i], picked)
            picked.pop()
        dfs(g + 1, avail & ~group_masks[g], current, picked)

    dfs(0, (1 << m) - 1, Fraction(0), [])

    if state["exhausted"]:
        upper = state["open_upper"]
        if upper is None or upper < state["best"]:
            upper = state["best"]
        return SupSolution(state["best"], state["chosen"], upper, False, state["nodes"])
    return SupSolution(state["best"], state["chosen"], state["best"], True, state["nodes"])


# ---------------------------------------------------------------------------
# Minimum-weight cover
# ---------------------------------------------------------------------------


def _cover_greedy(weights, cover_masks, universe: int) -> tuple[object, tuple[int, ...]] | None:
    uncovered = universe
    chosen: list[int] = []
    total = Fraction(0)
    while uncovered:
        best_i = None
        best_ratio = None
        for i, cm in enumerate(cover_masks):
            new = (cm & uncovered).bit_count()
            if not new:
                continue
            ratio = weights[i] / new
            if best_ratio is None or ratio < best_ratio:
                best_ratio = ratio
                best_i = i
        if best_i is None:
            return None
        chosen.append(best_i)
        total = total + weights[best_i]
        uncovered &= ~cover_masks[best_i]
    chosen.sort()
    return total, tuple(chosen)


def _cover_ratio_bound(weights, cover_masks, uncovered: int):
    """LP-dual-feasible lower bound: each uncovered element is priced at the
    cheapest per-element rate of any candidate covering it."""
    bound = Fraction(0)
    rem = uncovered
    while rem:
        lsb = rem & -rem
        rem -= lsb
        best = None
        for i, cm in enumerate(cover_masks):
            if cm & lsb:
                new = (cm & uncovered).bit_count()
                ratio = weights[i] / new
                if best is None or ratio < best:
                    best = ratio
        if best is None:
            return None  # infeasible
        bound = bound + best
    return bound


def min_weight_cover(
    weights: Sequence,
    cover_masks: Sequence[int],
    universe: int,
    node_budget: int | None = None,
) -> CoverSolution | None:
    """Exact minimum of sum(w_i) over candidate subsets covering the universe.

    Returns None when no cover exists.  Branches on the scarcest uncovered
    element; zero-weight candidates are harmless (covers need not be minimal
    for the value to be exact).
    """
    if universe == 0:
        return CoverSolution(Fraction(0), (), Fraction(0), True, 0)
    greedy = _cover_greedy(weights, cover_masks, universe)
    if greedy is None:
        return None
    inc_value, inc_chosen = greedy

    element_candidates: dict[int, list[int]] = {}
    rem = universe
    while rem:
        lsb = rem & -rem
        rem -= lsb
        pos = lsb.bit_length() - 1
        element_candidates[pos] = [i for i, cm in enumerate(cover_masks) if cm & lsb]

    state = {
        "best": inc_value,
        "chosen": inc_chosen,
        "nodes": 0,
        "exhausted": False,
        "open_lower": None,
    }
    budget = node_budget if node_budget is not None else float("inf")

    def note_open(bound):
        ol = state["open_lower"]
        if ol is None or bound < ol:
            state["open_lower"] = bound

    def dfs(uncovered: int, current, picked: list[int]):
        if state["exhausted"]:
            note_open(current)
            return
        state["nodes"] += 1
        if state["nodes"] > budget:
            state["exhausted"] = True
            note_open(current)
            return
        if not uncovered:
            if current < state["best"]:
                state["best"] = current
                state["chosen"] = tuple(sorted(picked))
            return
        bound = _cover_ratio_bound(weights, cover_masks, uncovered)
        if bound is None:
            return
        if current + bound >= state["best"]:
            return
        # scarcest uncovered element, smallest position on ties
        best_pos = None
        best_count = None
        rem2 = uncovered
        while rem2:
            lsb = rem2 & -rem2
            rem2 -= lsb
            pos = lsb.bit_length() - 1
            cnt = len(element_candidates[pos])
            if best_count is None or cnt < best_count:
                best_count = cnt
                best_pos = pos
        for i in element_candidates[best_pos]:
            picked.append(i)
            dfs(uncovered & ~cover_masks[i], current + weights[i], picked)
            picked.pop()

    dfs(universe, Fraction(0), [])

    if state["exhausted"]:
        lower = state["open_lower"]
        if lower is None or lower > state["best"]:
            lower = state["best"]
        root = _cover_ratio_bound(weights, cover_masks, universe)
        if root is not None and root > lower:
            lower = root
        return CoverSolution(state["best"], state["chosen"], lower, False, state["nodes"])
    return CoverSolution(state["best"], state["chosen"], state["best"], True, state["nodes"])


# ---------------------------------------------------------------------------
# Exact primal simplex
# ---------------------------------------------------------------------------


def simplex_max(a_rows: Sequence[Sequence[Fraction]], b: Sequence[Fraction], c: Sequence) -> LpSolution:
    """Maximize c.x subject to A x <= b, x >= 0 (b >= 0, so slacks start basic).

    Constraint data must be rational; objective coefficients may live in any
    exactly-comparable ordered extension (surds included): pivot elements are
    always drawn from the rational constraint rows, so no division ever
    touches the objective coefficients.  Bland's rule on both the entering
    and leaving choices guarantees termination.
    """
    n_cons = len(a_rows)
    n_vars = len(c)
    for bi in b:
        if bi < 0:
            raise ValueError("rhs must be non-negative")

    # rows over [x | slacks], rational throughout
    rows = [[Fraction(v) for v in a_rows[i]] + [Fraction(int(i == j)) for j in range(n_cons)]
            for i in range(n_cons)]
    rhs = [Fraction(v) for v in b]
    obj = [-(c[j]) for j in range(n_vars)] + [Fraction(0)] * n_cons  # z_j - c_j
    basis = [n_vars + i for i in range(n_cons)]
    total_cols = n_vars + n_cons

    pivots = 0
    while True:
        enter = None
        for j in range(total_cols):
            if obj[j] < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best_ratio = None
        for i in range(n_cons):
            aij = rows[i][enter]
            if aij > 0:
                ratio = rhs[i] / aij
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[leave])):
                    best_ratio = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("LP is unbounded")
        piv = rows[leave][enter]
        rows[leave] = [v / piv for v in rows[leave]]
        rhs[leave] /= piv
        for i in range(n_cons):
            if i != leave and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [vi - f * vl for vi, vl in zip(rows[i], rows[leave])]
                rhs[i] -= f * rhs[leave]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [vo - f * vl for vo, vl in zip(obj, rows[leave])]
        basis[leave] = enter
        pivots += 1
        if pivots > 20_000:
            raise ArithmeticError("simplex exceeded the pivot cap")

    primal = [Fraction(0)] * n_vars
    for i, bv in enumerate(basis):
        if bv < n_vars:
            primal[bv] = rhs[i]
    value = Fraction(0)
    for j in range(n_vars):
        if primal[j]:
            value = value + c[j] * primal[j]
    duals = [obj[n_vars + i] for i in range(n_cons)]
    return LpSolution(value, primal, duals, pivots)
