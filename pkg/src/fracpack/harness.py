"""Verification harness: the band-level inequality lattice, the product
inequalities with their constructive certificates, the separation experiment
on the graph-product space, the triadic trend table, and seeded random
instance generators.

Every check compares certified enclosures: ``holds`` means the inequality is
true for every point of both enclosures, ``fails`` means it is certainly
violated (and the report carries the witnesses), anything else is
``inconclusive``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .engine import (
    HAUSDORFF,
    Band,
    Constituent,
    Limits,
    PackingKind,
    PremeasureResult,
    Status,
    amenability_witness_count,
    brute_force_oracle,
    candidate_family,
    greedy_maximal_pseudo_packing,
    hausdorff_premeasure,
    is_valid,
    sup_premeasure,
    weighted_premeasure,
)
from .extmath import ExtValue, HausdorffFunction, MonotoneTable, PowerLaw, ProductOf, eval_h, pow_q
from .measures import AtomicMeasure, MeasureOracle, ProductMeasure, ball_mass
from .metric import FiniteMetricSpace, product_space, product_subset, validate_metric
from .spaces import (
    DaviesSpec,
    build_cantor,
    build_davies,
    build_euclidean_cloud,
    davies_series_tail,
    davies_theorem_gauge,
    gamma_sequence,
    peripheral_count,
    peripheral_mass_bound,
)

__all__ = [
    "CheckReport",
    "le_check",
    "lt_check",
    "guarded_product",
    "compute_premeasures",
    "verify_chain",
    "verify_theorem_a",
    "verify_theorem_c",
    "verify_theorem_b_bounds",
    "davies_separation",
    "cantor_trend",
    "random_ultrametric_space",
    "random_cloud",
    "random_atomic",
    "random_gauge_function",
    "chain_suite",
]


# ---------------------------------------------------------------------------
# Check reports
# ---------------------------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    verdict: str  # holds | fails | inconclusive
    left_label: str = ""
    right_label: str = ""
    left: ExtValue | None = None
    right: ExtValue | None = None
    left_status: str = ""
    right_status: str = ""
    witnesses: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self):
        out = {
            "name": self.name,
            "verdict": self.verdict,
            "left_label": self.left_label,
            "right_label": self.right_label,
            "left": self.left.to_json() if self.left is not None else None,
            "right": self.right.to_json() if self.right is not None else None,
            "left_status": self.left_status,
            "right_status": self.right_status,
            "notes": list(self.notes),
        }
        if self.witnesses:
            out["witnesses"] = {
                k: [c.to_json() for c in v] for k, v in sorted(self.witnesses.items())
            }
        return out


def _check(name, rel, left_label, left_res, right_label, right_res, notes=()):
    left = left_res.value if isinstance(left_res, PremeasureResult) else left_res
    right = right_res.value if isinstance(right_res, PremeasureResult) else right_res
    if rel == "<=":
        if left.certainly_le(right):
            verdict = "holds"
        elif left.certainly_gt(right):
            verdict = "fails"
        else:
            verdict = "inconclusive"
    else:  # strict
        if left.certainly_lt(right):
            verdict = "holds"
        elif left.certainly_ge(right):
            verdict = "fails"
        else:
            verdict = "inconclusive"
    rep = CheckReport(
        name,
        verdict,
        left_label,
        right_label,
        left,
        right,
        left_res.status.value if isinstance(left_res, PremeasureResult) else "",
        right_res.status.value if isinstance(right_res, PremeasureResult) else "",
        notes=list(notes),
    )
    if verdict == "fails":
        # ship the machine-checkable certificate: both witnesses travel with
        # the report so the violation can be re-evaluated independently
        if isinstance(left_res, PremeasureResult):
            rep.witnesses["left"] = list(left_res.witness)
        if isinstance(right_res, PremeasureResult):
            rep.witnesses["right"] = list(right_res.witness)
    return rep


def le_check(name, left_label, left_res, right_label, right_res, notes=()):
    return _check(name, "<=", left_label, left_res, right_label, right_res, notes)


def lt_check(name, left_label, left_res, right_label, right_res, notes=()):
    return _check(name, "<", left_label, left_res, right_label, right_res, notes)


def bool_check(name, ok: bool, notes=()) -> CheckReport:
    return CheckReport(name, "holds" if ok else "fails", notes=list(notes))


def guarded_product(a: ExtValue, b: ExtValue) -> tuple[ExtValue | None, bool]:
    """Product of two side values with the zero-times-infinity proviso: when
    the pair is (0, inf) in either order the conclusion is unreliable and the
    guard fires instead of producing a value."""
    zero_inf = (a.is_zero() and b.is_infinite) or (a.is_infinite and b.is_zero())
    if zero_inf:
        return None, True
    return a * b, False


def guarded_product_check(name, left_label, left_res, mid_a_label, mid_a, mid_b_label, mid_b,
                          direction="left<=mid") -> CheckReport:
    """Compare a premeasure against a guarded product of two side values."""
    a = mid_a.value if isinstance(mid_a, PremeasureResult) else mid_a
    b = mid_b.value if isinstance(mid_b, PremeasureResult) else mid_b
    prod, fired = guarded_product(a, b)
    label = f"{mid_a_label}*{mid_b_label}"
    if fired:
        rep = CheckReport(name, "inconclusive", left_label, label,
                          left_res.value if isinstance(left_res, PremeasureResult) else left_res,
                          None)
        rep.notes.append("guard: the product is of the form 0*infinity")
        return rep
    if direction == "left<=mid":
        return le_check(name, left_label, left_res, label, prod)
    return le_check(name, label, prod, left_label, left_res)


# ---------------------------------------------------------------------------
# Premeasure bundles and the inequality chain
# ---------------------------------------------------------------------------

CHAIN_KINDS = ("packing", "weighted", "pseudo", "hausdorff", "weak", "relative")


def compute_premeasures(
    space: FiniteMetricSpace,
    e_subset: Sequence[int],
    mu: MeasureOracle,
    q,
    h: HausdorffFunction,
    band: Band,
    limits: Limits | None = None,
    cross_check: bool = True,
) -> dict[str, PremeasureResult]:
    """All six band-level values on a shared band.

    When the candidate count is inside the oracle limit, every non-weighted
    value is recomputed by subset enumeration and must agree exactly; the
    outcome is recorded under ``extras['oracle_agrees']``.
    """
    limits = limits or Limits.from_env()
    out = {
        "packing": sup_premeasure(PackingKind.PACKING, space, e_subset, mu, q, h, band, limits),
        "weighted": weighted_premeasure(space, e_subset, mu, q, h, band, limits),
        "pseudo": sup_premeasure(PackingKind.PSEUDO, space, e_subset, mu, q, h, band, limits),
        "hausdorff": hausdorff_premeasure(space, e_subset, mu, q, h, band, limits),
        "weak": sup_premeasure(PackingKind.WEAK_PSEUDO, space, e_subset, mu, q, h, band, limits),
        "relative": sup_premeasure(PackingKind.RELATIVE, space, e_subset, mu, q, h, band, limits),
    }
    if cross_check:
        cands, weights = candidate_family(space, e_subset, mu, q, h, band)
        if len(cands) <= limits.oracle_candidates:
            kind_map = {
                "packing": PackingKind.PACKING,
                "pseudo": PackingKind.PSEUDO,
                "weak": PackingKind.WEAK_PSEUDO,
                "relative": PackingKind.RELATIVE,
                "hausdorff": HAUSDORFF,
            }
            for key, kind in kind_map.items():
                if out[key].value.is_infinite:
                    oracle = brute_force_oracle(kind, space, e_subset, cands, weights,
                                                limit=limits.oracle_candidates)
                    agrees = oracle.is_infinite
                else:
                    oracle = brute_force_oracle(kind, space, e_subset, cands, weights,
                                                limit=limits.oracle_candidates)
                    lo, hi = out[key].value.bounds()
                    olo, ohi = (oracle.bounds() if not oracle.is_infinite else (None, None))
                    agrees = (not oracle.is_infinite) and lo == olo and hi == ohi
                out[key].extras["oracle_agrees"] = agrees
                if not agrees:
                    raise AssertionError(
                        f"engine/oracle disagreement on {key}: {out[key].value!r} vs {oracle!r}"
                    )
    return out


def verify_chain(
    space: FiniteMetricSpace,
    e_subset: Sequence[int],
    mu: MeasureOracle,
    q,
    h: HausdorffFunction,
    band: Band,
    limits: Limits | None = None,
    cross_check: bool = True,
) -> list[CheckReport]:
    """The band-level lattice: P <= Q <= R, H <= R, P <= r <= R, P <= relative."""
    vals = compute_premeasures(space, e_subset, mu, q, h, band, limits, cross_check)
    P, Q, R = vals["packing"], vals["weighted"], vals["pseudo"]
    H, W, T = vals["hausdorff"], vals["weak"], vals["relative"]
    return [
        le_check("packing<=weighted", "P", P, "Q", Q),
        le_check("weighted<=pseudo", "Q", Q, "R", R),
        le_check("hausdorff<=pseudo", "H", H, "R", R),
        le_check("packing<=weak", "P", P, "r", W),
        le_check("weak<=pseudo", "r", W, "R", R),
        le_check("packing<=relative", "P", P, "Pt", T),
    ]


# ---------------------------------------------------------------------------
# Product inequalities
# ---------------------------------------------------------------------------


def _family_value(space, mu, q, h, family) -> ExtValue:
    total = ExtValue.zero()
    for c in family:
        total = total + pow_q(ball_mass(mu, space, c.center, c.radius), q) * eval_h(h, 2 * c.radius)
    return total


def _product_setup(x_space, y_space, e_subset, f_subset, mu, nu, limits):
    prod = product_space(x_space, y_space, limit=limits.product_points)
    prod_mu = ProductMeasure(mu, nu, x_space, y_space)
    ef = product_subset(y_space.point_count, sorted(e_subset), sorted(f_subset))
    return prod, prod_mu, tuple(sorted(ef))


def verify_theorem_a(
    x_space: FiniteMetricSpace,
    y_space: FiniteMetricSpace,
    e_subset: Sequence[int],
    f_subset: Sequence[int],
    mu: MeasureOracle,
    nu: MeasureOracle,
    q,
    h: HausdorffFunction,
    g: HausdorffFunction,
    band: Band,
    limits: Limits | None = None,
) -> list[CheckReport]:
    """Both product inequalities on a matched band:

        H(ExF) <= H(E) * R(F)   and   R(E) * H(F) <= R(ExF).

    Alongside the direct product-side computation, the proof constructions
    are materialized as certificates: a product cover built from a factor
    cover crossed with maximal pseudo-packings at matching radii (upper side),
    and a product pseudo-packing from a factor pseudo-packing crossed with
    covering maximal families (lower side).  They tighten whichever side the
    branch-and-bound left open.
    """
    limits = limits or Limits.from_env()
    prod, prod_mu, ef = _product_setup(x_space, y_space, e_subset, f_subset, mu, nu, limits)
    hg = ProductOf(h, g)
    ny = y_space.point_count

    h_e = hausdorff_premeasure(x_space, e_subset, mu, q, h, band, limits)
    r_f = sup_premeasure(PackingKind.PSEUDO, y_space, f_subset, nu, q, g, band, limits)
    r_e = sup_premeasure(PackingKind.PSEUDO, x_space, e_subset, mu, q, h, band, limits)
    h_f = hausdorff_premeasure(y_space, f_subset, nu, q, g, band, limits)

    h_prod = hausdorff_premeasure(prod, ef, prod_mu, q, hg, band, limits)
    r_prod = sup_premeasure(PackingKind.PSEUDO, prod, ef, prod_mu, q, hg, band, limits)

    notes_first: list[str] = []
    notes_second: list[str] = []

    # cover-cross-packing certificate: a genuine centered cover of E x F
    if h_e.witness and not h_e.value.is_infinite:
        family: list[Constituent] = []
        for c in h_e.witness:
            maximal = greedy_maximal_pseudo_packing(y_space, f_subset, c.radius)
            family.extend(
                Constituent(c.center * ny + d.center, c.radius) for d in maximal
            )
        covered = set()
        for c in family:
            covered |= prod.ball_members(c.center, c.radius)
        if covered >= set(ef):
            cert = _family_value(prod, prod_mu, q, hg, family)
            lo, hi = h_prod.value.bounds()
            chi = cert.bounds()[1]
            if chi < hi:
                h_prod = PremeasureResult(
                    ExtValue.from_bounds(min(lo, chi), chi),
                    h_prod.status,
                    family,
                    band,
                    HAUSDORFF,
                    dict(h_prod.extras),
                )
                notes_first.append("upper side tightened by the cover-cross-packing certificate")

    # packing-cross-cover certificate: a genuine pseudo-packing of E x F
    if r_e.witness and not h_f.value.is_infinite and not r_e.value.is_infinite:
        family = []
        for c in r_e.witness:
            maximal = greedy_maximal_pseudo_packing(y_space, f_subset, c.radius)
            family.extend(
                Constituent(c.center * ny + d.center, c.radius) for d in maximal
            )
        rep = is_valid(PackingKind.PSEUDO, family, prod, ef)
        if rep.ok:
            cert = _family_value(prod, prod_mu, q, hg, family)
            if not r_prod.value.is_infinite:
                lo, hi = r_prod.value.bounds()
                clo = cert.bounds()[0]
                if clo > lo:
                    r_prod = PremeasureResult(
                        ExtValue.from_bounds(clo, max(hi, clo)),
                        r_prod.status,
                        family,
                        band,
                        PackingKind.PSEUDO,
                        dict(r_prod.extras),
                    )
                    notes_second.append(
                        "lower side tightened by the packing-cross-cover certificate"
                    )

    first = guarded_product_check(
        "product-hausdorff<=hausdorff*pseudo",
        "H(ExF)", h_prod, "H(E)", h_e, "R(F)", r_f,
        direction="left<=mid",
    )
    first.notes.extend(notes_first)
    second = guarded_product_check(
        "pseudo*hausdorff<=product-pseudo",
        "R(ExF)", r_prod, "R(E)", r_e, "H(F)", h_f,
        direction="mid<=left",
    )
    second.notes.extend(notes_second)
    return [first, second]


def verify_theorem_c(
    x_space: FiniteMetricSpace,
    y_space: FiniteMetricSpace,
    e_subset: Sequence[int],
    f_subset: Sequence[int],
    mu: MeasureOracle,
    nu: MeasureOracle,
    q,
    h: HausdorffFunction,
    g: HausdorffFunction,
    band: Band,
    limits: Limits | None = None,
) -> CheckReport:
    """P(ExF) <= Q(E) * P(F) on a matched band, with the 0*infinity guard."""
    limits = limits or Limits.from_env()
    prod, prod_mu, ef = _product_setup(x_space, y_space, e_subset, f_subset, mu, nu, limits)
    hg = ProductOf(h, g)
    p_prod = sup_premeasure(PackingKind.PACKING, prod, ef, prod_mu, q, hg, band, limits)
    q_e = weighted_premeasure(x_space, e_subset, mu, q, h, band, limits)
    p_f = sup_premeasure(PackingKind.PACKING, y_space, f_subset, nu, q, g, band, limits)
    return guarded_product_check(
        "product-packing<=weighted*packing",
        "P(ExF)", p_prod, "Q(E)", q_e, "P(F)", p_f,
        direction="left<=mid",
    )


def verify_theorem_b_bounds(
    cloud: FiniteMetricSpace,
    e_subset: Sequence[int],
    mu: MeasureOracle,
    q,
    h: HausdorffFunction,
    band: Band,
    limits: Limits | None = None,
) -> list[CheckReport]:
    """Two-sided surrogate on clouds: P <= r <= 3**d * P."""
    d = cloud.meta.get("dim")
    if d is None or d > 2:
        raise ValueError("the two-sided bound check expects a cloud of dimension 1 or 2")
    limits = limits or Limits.from_env()
    p = sup_premeasure(PackingKind.PACKING, cloud, e_subset, mu, q, h, band, limits)
    w = sup_premeasure(PackingKind.WEAK_PSEUDO, cloud, e_subset, mu, q, h, band, limits)
    scaled = ExtValue.exact(3**d) * p.value if not p.value.is_infinite else ExtValue.infinity()
    return [
        le_check("packing<=weak", "P", p, "r", w),
        le_check("weak<=3^d*packing", "r", w, f"3^{d}*P", scaled),
    ]


# ---------------------------------------------------------------------------
# Separation experiment on the graph-product space
# ---------------------------------------------------------------------------


def davies_separation(
    spec: DaviesSpec,
    n: int,
    limits: Limits | None = None,
    enumeration_limit: int = 5000,
) -> list[CheckReport]:
    """Closed-form gap at scale n plus engine-level cross-checks.

    Lower bound L: total mass of the depth-n all-peripheral cylinders,
    prod N_k/(N_k+1).  Upper bound U: the series tail from index n that
    dominates every relative-packing value at those scales.  The separation
    verdict is the certified strict comparison U < L.

    When the peripheral enumeration fits the limit the closed forms are
    re-derived by explicit enumeration and the peripheral family is validated
    as a strict pseudo-packing at radius 2**-n (the largest dyadic radius at
    which all pairwise clauses hold strictly).
    """
    limits = limits or Limits.from_env()
    if not 1 <= n <= spec.depth:
        raise ValueError("scale index out of range")
    lower = peripheral_mass_bound(spec, n)
    upper = davies_series_tail(spec, None, n)
    reports = [
        lt_check(
            "separation-gap",
            "series-tail", upper,
            "peripheral-mass", ExtValue.exact(lower),
            notes=[f"scale n={n}: tail {upper.approx():.6f} < mass bound {float(lower):.6f}"],
        )
    ]

    count_cf = peripheral_count(spec, n)
    if count_cf <= enumeration_limit:
        sub = DaviesSpec(spec.n_seq[:n], spec.q)
        psp, _ = build_davies(sub, "peripheral_only", limit=enumeration_limit)
        gammas = gamma_sequence(sub.n_seq)
        enum_count = psp.point_count
        enum_mass = enum_count * gammas[n]
        reports.append(bool_check(
            "peripheral-count-enumeration",
            enum_count == count_cf,
            notes=[f"enumerated {enum_count} == closed form {count_cf}"],
        ))
        reports.append(bool_check(
            "peripheral-mass-enumeration",
            enum_mass == lower,
            notes=[f"enumered mass {enum_mass} == closed form {lower}"],
        ))
        radius = Fraction(1, 2**n)
        family = [Constituent(i, radius) for i in range(psp.point_count)]
        ok = is_valid(PackingKind.PSEUDO, family, psp, range(psp.point_count))
        reports.append(bool_check(
            "peripheral-family-pseudo-valid",
            bool(ok),
            notes=[f"all-peripheral family at radius 2^-{n} ({enum_count} constituents)"],
        ))

    # relative-packing values at on-table scales stay below the matching tail
    if spec.depth >= 2:
        m = min(n, spec.depth - 1)
        full_count = 1
        for nn in spec.n_seq:
            full_count *= nn * (nn + 1)
        if full_count <= enumeration_limit:
            fsp, forc = build_davies(spec, "full", limit=enumeration_limit)
            gauge_fn = davies_theorem_gauge(spec)
            grid = tuple(Fraction(1, 2**k) for k in range(spec.depth - 1, m - 1, -1))
            band = Band(grid[0], grid[-1], grid)
            rel = sup_premeasure(
                PackingKind.RELATIVE, fsp, range(fsp.point_count), forc,
                spec.q, gauge_fn, band, limits,
            )
            tail = davies_series_tail(spec, None, m)
            reports.append(le_check(
                "relative<=series-tail",
                "relative-packing", rel,
                "series-tail", tail,
                notes=[f"dyadic grid from 2^-{spec.depth - 1} to 2^-{m}"],
            ))
    return reports


# ---------------------------------------------------------------------------
# Triadic trend table
# ---------------------------------------------------------------------------


def cantor_trend(
    k_range: Sequence[int],
    q,
    s,
    t,
    scale: Fraction = Fraction(3),
    limits: Limits | None = None,
    product_max_level: int = 2,
) -> tuple[list[dict], list[CheckReport]]:
    """Per-level band values on the middle-third net with delta_k = scale * 3**-k.

    Emits the cover value and packing value for exponent s, the packing value
    for exponent t, and (for small levels) the product packing value with the
    combined gauge plus its ratio against the cover-times-packing product.
    Asserts the strict cover-below-packing comparison at every level.
    """
    limits = limits or Limits.from_env()
    rows: list[dict] = []
    reports: list[CheckReport] = []
    hs, ht = PowerLaw(s), PowerLaw(t)
    for k in k_range:
        space, mu = build_cantor(k)
        delta = Fraction(scale) * Fraction(1, 3**k)
        band = Band.from_space(space, delta)
        e_all = range(space.point_count)
        h_s = hausdorff_premeasure(space, e_all, mu, q, hs, band, limits)
        p_s = sup_premeasure(PackingKind.PACKING, space, e_all, mu, q, hs, band, limits)
        p_t = sup_premeasure(PackingKind.PACKING, space, e_all, mu, q, ht, band, limits)
        row = {
            "k": k,
            "delta": delta,
            "hausdorff_s": h_s.value,
            "packing_s": p_s.value,
            "packing_t": p_t.value,
            "product_st": None,
            "ratio": None,
        }
        reports.append(lt_check(
            f"hausdorff<packing@k={k}",
            "H^s", h_s, "P^s", p_s,
        ))
        if k <= product_max_level:
            prod = product_space(space, space, limit=limits.product_points)
            prod_mu = ProductMeasure(mu, mu, space, space)
            ef = range(prod.point_count)
            p_prod = sup_premeasure(
                PackingKind.PACKING, prod, ef, prod_mu, q, ProductOf(hs, ht), band, limits
            )
            row["product_st"] = p_prod.value
            denom, fired = guarded_product(h_s.value, p_t.value)
            if not fired and not denom.is_zero():
                row["ratio"] = p_prod.value / denom
        rows.append(row)
    return rows, reports


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


def random_ultrametric_space(rng: random.Random, n: int) -> FiniteMetricSpace:
    """Random hierarchical split with dyadic level scales; always ultrametric."""
    level_of_pair: dict[tuple[int, int], int] = {}

    def split(points: list[int], level: int):
        if len(points) <= 1:
            return
        k = rng.randint(2, min(3, len(points)))
        buckets: list[list[int]] = [[] for _ in range(k)]
        for p in points:
            buckets[rng.randrange(k)].append(p)
        buckets = [b for b in buckets if b]
        if len(buckets) == 1:
            # degenerate split: force a real one
            b = buckets[0]
            buckets = [b[: len(b) // 2] or [b[0]], b[len(b) // 2:] or [b[-1]]]
            buckets = [x for x in buckets if x]
            if len(buckets) == 1:
                return
        for i, bi in enumerate(buckets):
            for j in range(i):
                for p in bi:
                    for q_ in buckets[j]:
                        level_of_pair[(min(p, q_), max(p, q_))] = level
        for b in buckets:
            split(b, level + 1)

    pts = list(range(n))
    split(pts, 1)
    max_level = max(level_of_pair.values(), default=1)

    def dist(i: int, j: int) -> Fraction:
        if i == j:
            return Fraction(0)
        lvl = level_of_pair.get((min(i, j), max(i, j)), max_level)
        return Fraction(1, 2 ** (lvl - 1))

    resolution = Fraction(1, 2**max_level)
    return FiniteMetricSpace(
        n, [str(i) for i in range(n)], dist, resolution,
        meta={"scale_hint": "dyadic", "generator": "random-ultrametric"},
    )


def random_cloud(rng: random.Random, n: int, dim: int) -> FiniteMetricSpace:
    seen = set()
    pts = []
    while len(pts) < n:
        p = tuple(Fraction(rng.randint(0, 48), 8) for _ in range(dim))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return build_euclidean_cloud(pts)


def random_atomic(rng: random.Random, n: int, allow_zero: bool = True) -> AtomicMeasure:
    weights = [Fraction(rng.randint(1, 12)) for _ in range(n)]
    if allow_zero and n >= 3 and rng.random() < 0.25:
        weights[rng.randrange(n)] = Fraction(0)
    total = sum(weights)
    return AtomicMeasure([w / total for w in weights])


def random_gauge_function(rng: random.Random) -> HausdorffFunction:
    roll = rng.random()
    if roll < 0.4:
        return PowerLaw(1)
    if roll < 0.8:
        return PowerLaw(Fraction(1, 2))
    # random table with half-integer local exponents (keeps values exact)
    r = Fraction(1, 64)
    v = Fraction(1, rng.randint(20, 60))
    points = [(r, v)]
    for _ in range(3):
        ratio = Fraction(rng.choice((2, 3, 4)))
        expo = Fraction(rng.choice((1, 2, 3)), rng.choice((1, 2)))
        r = r * ratio
        v = v * ratio**expo if expo.denominator == 1 else v * ratio ** expo.numerator
        points.append((r, v))
    return MonotoneTable(points)


def random_instance(rng: random.Random, max_points: int = 8):
    n = rng.randint(4, max_points)
    if rng.random() < 0.5:
        space = random_ultrametric_space(rng, n)
    else:
        space = random_cloud(rng, n, rng.choice((1, 2)))
    mu = random_atomic(rng, n)
    return space, mu


def _chain_band(space: FiniteMetricSpace) -> Band:
    dists = [Fraction(d) for d in space.distinct_distances() if d > 0]
    delta = dists[min(2, len(dists) - 1)]
    if delta < space.resolution:
        delta = dists[-1]
    return Band.from_space(space, delta)


def chain_suite(
    seed: int,
    count: int,
    qs: Sequence = (-1, 0, Fraction(1, 2), 2),
    gauges: Sequence[HausdorffFunction] = (PowerLaw(1), PowerLaw(Fraction(1, 2))),
    max_points: int = 8,
    limits: Limits | None = None,
) -> dict:
    """Seeded random chain verification: returns per-instance verdicts and
    the overall outcome."""
    limits = limits or Limits.from_env()
    rng = random.Random(seed)
    instances = []
    all_hold = True
    exact_sides = True
    for idx in range(count):
        space, mu = random_instance(rng, max_points)
        band = _chain_band(space)
        e_all = range(space.point_count)
        for q in qs:
            for h in gauges:
                reports = verify_chain(space, e_all, mu, q, h, band, limits, cross_check=False)
                for rep in reports:
                    if rep.verdict != "holds":
                        all_hold = False
                    for side in (rep.left, rep.right):
                        if side is not None and not (side.is_exact or side.is_infinite):
                            exact_sides = False
                instances.append({
                    "instance": idx,
                    "points": space.point_count,
                    "q": str(Fraction(q)),
                    "h": h.describe(),
                    "verdicts": {r.name: r.verdict for r in reports},
                })
    return {"instances": instances, "all_hold": all_hold, "exact_sides": exact_sides}
