"""Extended non-negative arithmetic and gauge (Hausdorff) functions.

All quantities produced by the premeasure machinery are non-negative extended
reals. Strict inequalities between them must be decided soundly, so values are
kept in one of three exact-or-certified forms:

* ``Quad`` -- a rational combination ``sum c_d * sqrt(d)`` over squarefree
  integers ``d``.  Closed under + and *, covers every value reachable with
  half-integer exponents, and admits an exact sign test (sums of square roots
  of distinct squarefree integers with rational coefficients vanish only when
  all coefficients do).
* a certified interval ``[lo, hi]`` of Fractions, produced when an exponent is
  irrational (e.g. ``log 2 / log 3``).  Interval endpoints come from directed
  rounding in mpmath's interval arithmetic and are refined to a relative width
  of at most 2**-64 (far below the 1e-12 contract).
* the absorbing value ``INFINITY``.

Conventions: ``0 ** q == INFINITY`` for ``q <= 0`` and ``0 * INFINITY == 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

import mpmath

__all__ = [
    "LogRatio",
    "Quad",
    "ExtValue",
    "INFINITY",
    "pow_q",
    "ext_mul",
    "PowerLaw",
    "MonotoneTable",
    "ProductOf",
    "HausdorffFunction",
    "eval_h",
    "finite_order_estimate",
    "h_to_json",
    "h_from_json",
]

# Relative enclosure width target for transcendental evaluations (2**-64).
_DEFAULT_REL_WIDTH = Fraction(1, 2**64)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _mpf_tuple_to_fraction(tup) -> Fraction:
    sign, man, exp, _ = tup
    f = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -f if sign else f


def _iv_to_fractions(x) -> tuple[Fraction, Fraction]:
    lo_t, hi_t = x._mpi_
    return _mpf_tuple_to_fraction(lo_t), _mpf_tuple_to_fraction(hi_t)


def _iv_fraction(f: Fraction, ctx):
    return ctx.mpf(f.numerator) / ctx.mpf(f.denominator)


# ---------------------------------------------------------------------------
# Exponents
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogRatio:
    """The exponent ``log(num) / log(den)`` for positive rationals != 1.

    This is how irrational exponents (``log 2 / log 3`` for the middle-third
    construction) enter the system with full certification.
    """

    num: Fraction
    den: Fraction

    def __post_init__(self):
        num = _as_fraction(self.num)
        den = _as_fraction(self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        if num <= 0 or den <= 0 or num == 1 or den == 1:
            raise ValueError("LogRatio arguments must be positive rationals != 1")

    def bounds(self, rel_width: Fraction = _DEFAULT_REL_WIDTH) -> tuple[Fraction, Fraction]:
        prec = 64
        while True:
            ctx = mpmath.iv
            old = ctx.prec
            try:
                ctx.prec = prec
                val = ctx.log(_iv_fraction(self.num, ctx)) / ctx.log(_iv_fraction(self.den, ctx))
                lo, hi = _iv_to_fractions(val)
            finally:
                ctx.prec = old
            if hi == lo or (hi - lo) <= abs(lo) * rel_width:
                return lo, hi
            prec *= 2

    def __float__(self) -> float:
        return math.log(float(self.num)) / math.log(float(self.den))

    def is_positive(self) -> bool:
        lo, hi = self.bounds(Fraction(1, 2**10))
        if lo > 0:
            return True
        if hi < 0:
            return False
        raise ArithmeticError("LogRatio sign could not be certified")

    def __str__(self) -> str:
        return f"log({self.num})/log({self.den})"


Exponent = Union[Fraction, int, LogRatio]


# ---------------------------------------------------------------------------
# Quadratic-surd ring
# ---------------------------------------------------------------------------


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return (outer, core) with n == outer**2 * core and core squarefree."""
    if n <= 0:
        raise ValueError("positive integer required")
    outer, core = 1, 1
    # strip small prime factors
    p = 2
    while p * p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            outer *= p ** (e // 2)
            if e % 2:
                core *= p
        p += 1 if p == 2 else 2
    # remainder n has all prime factors > cbrt(original n): it is 1, p, p*q or p**2
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            outer *= r
        else:
            core *= n
    return outer, core


def _sqrt_bounds(f: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Certified enclosure of sqrt(f) with relative width about 2**-prec."""
    if f < 0:
        raise ValueError("negative radicand")
    if f == 0:
        return Fraction(0), Fraction(0)
    scaled = f.numerator * f.denominator * (1 << (2 * prec))
    root = math.isqrt(scaled)
    den = f.denominator << prec
    lo = Fraction(root, den)
    hi = Fraction(root + 1, den)
    return lo, hi


class Quad:
    """Exact element of the ring spanned by sqrt(d), d squarefree positive."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction]):
        self.terms = {d: c for d, c in terms.items() if c != 0}

    # -- constructors ------------------------------------------------------
    @staticmethod
    def from_fraction(f) -> "Quad":
        f = _as_fraction(f)
        return Quad({1: f}) if f else Quad({})

    @staticmethod
    def sqrt_of(f) -> "Quad":
        """sqrt of a non-negative rational, exactly."""
        f = _as_fraction(f)
        if f < 0:
            raise ValueError("negative radicand")
        if f == 0:
            return Quad({})
        n = f.numerator * f.denominator
        outer, core = _squarefree_split(n)
        return Quad({core: Fraction(outer, f.denominator)})

    # -- queries -----------------------------------------------------------
    def is_rational(self) -> bool:
        return all(d == 1 for d in self.terms)

    def as_fraction(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if self.is_rational():
            return self.terms[1]
        raise ValueError("not a rational value")

    def bounds(self, prec: int = 64) -> tuple[Fraction, Fraction]:
        lo = Fraction(0)
        hi = Fraction(0)
        for d, c in self.terms.items():
            if d == 1:
                lo += c
                hi += c
                continue
            slo, shi = _sqrt_bounds(Fraction(d), prec)
            if c >= 0:
                lo += c * slo
                hi += c * shi
            else:
                lo += c * shi
                hi += c * slo
        return lo, hi

    def sign(self) -> int:
        if not self.terms:
            return 0
        coeffs = list(self.terms.values())
        if all(c > 0 for c in coeffs):
            return 1
        if all(c < 0 for c in coeffs):
            return -1
        prec = 64
        while prec <= 2**14:
            lo, hi = self.bounds(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2
        raise ArithmeticError("sign refinement did not converge")

    def __float__(self) -> float:
        lo, hi = self.bounds(64)
        return float((lo + hi) / 2)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other = _coerce_quad(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms.get(d, Fraction(0)) + c
        return Quad(terms)

    __radd__ = __add__

    def __neg__(self):
        return Quad({d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_quad(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                if d1 == d2:
                    core, coeff = 1, Fraction(d1)
                else:
                    g = math.gcd(d1, d2)
                    core = (d1 // g) * (d2 // g)
                    coeff = Fraction(g)
                c = c1 * c2 * coeff
                terms[core] = terms.get(core, Fraction(0)) + c
        return Quad(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Quad({d: c / other for d, c in self.terms.items()})
        if isinstance(other, Quad):
            if len(other.terms) == 1:
                (d, c), = other.terms.items()
                # 1 / (c sqrt(d)) == sqrt(d) / (c d)
                return self * Quad({d: Fraction(1, 1) / (c * d)})
            raise ValueError("division by multi-term surd is not exact")
        return NotImplemented

    # -- comparisons (exact) -------------------------------------------------
    def __eq__(self, other):
        other = _coerce_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __lt__(self, other):
        other = _coerce_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __le__(self, other):
        other = _coerce_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = _coerce_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = _coerce_quad(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() >= 0

    def __repr__(self):
        if not self.terms:
            return "Quad(0)"
        parts = []
        for d in sorted(self.terms):
            c = self.terms[d]
            parts.append(str(c) if d == 1 else f"{c}*sqrt({d})")
        return "Quad(" + " + ".join(parts) + ")"


def _coerce_quad(x):
    if isinstance(x, Quad):
        return x
    if isinstance(x, (int, Fraction)):
        return Quad.from_fraction(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# Extended values
# ---------------------------------------------------------------------------


class _InfinityType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


_INF = _InfinityType()


class ExtValue:
    """Non-negative extended value: exact surd, certified interval, or infinity.

    Comparison helpers are *certified*: ``certainly_le`` returns True only when
    the inequality holds for every point of both enclosures.  Exact (Quad)
    values compare exactly, so equality never blocks a certified ``<=``.
    """

    __slots__ = ("_mag",)

    def __init__(self, mag):
        self._mag = mag
        if isinstance(mag, Quad):
            if mag.sign() < 0:
                raise ValueError("extended values are non-negative")
        elif isinstance(mag, tuple):
            lo, hi = mag
            if lo < 0 or hi < lo:
                raise ValueError(f"invalid enclosure [{lo}, {hi}]")
        elif mag is not _INF:
            raise TypeError("bad magnitude")

    # -- constructors ------------------------------------------------------
    @staticmethod
    def infinity() -> "ExtValue":
        return ExtValue(_INF)

    @staticmethod
    def exact(x) -> "ExtValue":
        if isinstance(x, Quad):
            return ExtValue(x)
        return ExtValue(Quad.from_fraction(_as_fraction(x)))

    @staticmethod
    def from_bounds(lo, hi) -> "ExtValue":
        lo, hi = _as_fraction(lo), _as_fraction(hi)
        if lo == hi:
            return ExtValue.exact(lo)
        return ExtValue((lo, hi))

    @staticmethod
    def zero() -> "ExtValue":
        return ExtValue.exact(0)

    @staticmethod
    def one() -> "ExtValue":
        return ExtValue.exact(1)

    # -- queries -----------------------------------------------------------
    @property
    def is_infinite(self) -> bool:
        return self._mag is _INF

    @property
    def is_exact(self) -> bool:
        return isinstance(self._mag, Quad)

    @property
    def is_rational(self) -> bool:
        return isinstance(self._mag, Quad) and self._mag.is_rational()

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self!r} is not an exact rational")
        return self._mag.as_fraction()

    def as_quad(self) -> Quad:
        if not self.is_exact:
            raise ValueError(f"{self!r} is not exact")
        return self._mag

    def bounds(self, prec: int = 64) -> tuple[Fraction, Fraction]:
        if self.is_infinite:
            raise OverflowError("infinite value has no finite bounds")
        if isinstance(self._mag, Quad):
            return self._mag.bounds(prec)
        return self._mag

    def approx(self) -> float:
        if self.is_infinite:
            return math.inf
        lo, hi = self.bounds()
        return float((lo + hi) / 2)

    def is_zero(self) -> bool:
        return self.is_exact and not self._mag.terms

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _coerce_ext(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return ExtValue.infinity()
        if self.is_exact and other.is_exact:
            return ExtValue(self._mag + other._mag)
        alo, ahi = self.bounds()
        blo, bhi = other.bounds()
        return ExtValue.from_bounds(alo + blo, ahi + bhi)

    __radd__ = __add__

    def __mul__(self, other):
        other = _coerce_ext(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            fin = other if self.is_infinite else self
            if fin.is_infinite:
                return ExtValue.infinity()
            if fin.is_zero():
                return ExtValue.zero()  # 0 * inf == 0
            lo, _ = fin.bounds()
            if lo > 0:
                return ExtValue.infinity()
            raise ArithmeticError(
                "cannot decide 0*infinity: finite factor encloses zero without being exactly zero"
            )
        if self.is_exact and other.is_exact:
            return ExtValue(self._mag * other._mag)
        alo, ahi = self.bounds()
        blo, bhi = other.bounds()
        return ExtValue.from_bounds(alo * blo, ahi * bhi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_ext(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_infinite:
            raise ZeroDivisionError("division by infinity is not used here")
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_infinite:
            return ExtValue.infinity()
        if self.is_exact and other.is_exact:
            try:
                return ExtValue(self._mag / other._mag)
            except ValueError:
                pass  # multi-term divisor: fall through to interval quotient
        alo, ahi = self.bounds()
        blo, bhi = other.bounds()
        if blo <= 0:
            blo, bhi = other.bounds(256)
            if blo <= 0:
                raise ArithmeticError("divisor enclosure touches zero")
        return ExtValue.from_bounds(alo / bhi, ahi / blo)

    # -- certified comparisons ----------------------------------------------
    def certainly_le(self, other) -> bool:
        other = _coerce_ext(other)
        if other.is_infinite:
            return True
        if self.is_infinite:
            return False
        if self.is_exact and other.is_exact:
            return (self._mag - other._mag).sign() <= 0
        _, ahi = self.bounds()
        blo, _ = other.bounds()
        return ahi <= blo

    def certainly_lt(self, other) -> bool:
        other = _coerce_ext(other)
        if other.is_infinite:
            return not self.is_infinite
        if self.is_infinite:
            return False
        if self.is_exact and other.is_exact:
            return (self._mag - other._mag).sign() < 0
        _, ahi = self.bounds()
        blo, _ = other.bounds()
        return ahi < blo

    def certainly_ge(self, other) -> bool:
        return _coerce_ext(other).certainly_le(self)

    def certainly_gt(self, other) -> bool:
        return _coerce_ext(other).certainly_lt(self)

    def eq_exact(self, other) -> bool:
        other = _coerce_ext(other)
        if self.is_infinite or other.is_infinite:
            return self.is_infinite and other.is_infinite
        if self.is_exact and other.is_exact:
            return (self._mag - other._mag).sign() == 0
        return False

    def __eq__(self, other):
        try:
            return self.eq_exact(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.is_infinite:
            return hash("ext-inf")
        if self.is_exact:
            return hash(self._mag)
        return hash(self._mag)

    # -- serialization -------------------------------------------------------
    def to_json(self):
        if self.is_infinite:
            return "inf"
        if self.is_rational:
            f = self.as_fraction()
            return f"{f.numerator}/{f.denominator}"
        lo, hi = self.bounds(128)
        return {
            "lo": f"{lo.numerator}/{lo.denominator}",
            "hi": f"{hi.numerator}/{hi.denominator}",
            "approx": self.approx(),
            "exact": self.is_exact,
        }

    @staticmethod
    def from_json(obj) -> "ExtValue":
        if obj == "inf":
            return ExtValue.infinity()
        if isinstance(obj, str):
            return ExtValue.exact(Fraction(obj))
        if isinstance(obj, dict):
            return ExtValue.from_bounds(Fraction(obj["lo"]), Fraction(obj["hi"]))
        return ExtValue.exact(_as_fraction(obj))

    def __repr__(self):
        if self.is_infinite:
            return "ExtValue(inf)"
        if self.is_rational:
            return f"ExtValue({self.as_fraction()})"
        if self.is_exact:
            return f"ExtValue({self._mag!r})"
        lo, hi = self._mag
        return f"ExtValue[{float(lo)}, {float(hi)}]"


INFINITY = ExtValue.infinity()


def _coerce_ext(x):
    if isinstance(x, ExtValue):
        return x
    if isinstance(x, (int, Fraction, Quad)):
        return ExtValue.exact(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# Powers under the conventions
# ---------------------------------------------------------------------------


def _exponent_sign(q: Exponent) -> int:
    if isinstance(q, LogRatio):
        return 1 if q.is_positive() else -1
    q = _as_fraction(q)
    return (q > 0) - (q < 0)


def _certified_pow(base: Fraction, q, rel_width: Fraction = _DEFAULT_REL_WIDTH) -> ExtValue:
    """Enclosure of base**q for base > 0 and an arbitrary real exponent."""
    prec = 64
    while True:
        ctx = mpmath.iv
        old = ctx.prec
        try:
            ctx.prec = prec
            if isinstance(q, LogRatio):
                expo = ctx.log(_iv_fraction(q.num, ctx)) / ctx.log(_iv_fraction(q.den, ctx))
            else:
                qf = _as_fraction(q)
                expo = _iv_fraction(qf, ctx)
            val = ctx.exp(expo * ctx.log(_iv_fraction(base, ctx)))
            lo, hi = _iv_to_fractions(val)
        finally:
            ctx.prec = old
        if lo > 0 and (hi - lo) <= lo * rel_width:
            return ExtValue.from_bounds(lo, hi)
        prec *= 2


def pow_q(base, q: Exponent) -> ExtValue:
    """base ** q with the conventions 0**q == INFINITY for q <= 0, 0 otherwise.

    Rational exponents with denominator 1 or 2 evaluate exactly (the result
    stays in the surd ring); anything else returns a certified enclosure.
    """
    base = _as_fraction(base)
    if base < 0:
        raise ValueError("pow_q requires a non-negative base")
    if base == 0:
        return ExtValue.infinity() if _exponent_sign(q) <= 0 else ExtValue.zero()
    if isinstance(q, LogRatio):
        return _certified_pow(base, q)
    q = _as_fraction(q)
    if q == 0:
        return ExtValue.one()
    if q.denominator == 1:
        return ExtValue.exact(base ** q.numerator)
    if q.denominator == 2:
        n = q.numerator
        root = Quad.sqrt_of(base)
        if n > 0:
            whole = ExtValue.exact(base ** (n // 2))
            return whole * ExtValue(root) if n % 2 else whole
        m = -n
        whole = ExtValue.exact(base ** (m // 2))
        denom = whole * ExtValue(root) if m % 2 else whole
        return ExtValue.one() / denom
    return _certified_pow(base, q)


def ext_mul(a, b) -> ExtValue:
    """Product of extended values, with 0 * INFINITY == 0."""
    return _coerce_ext(a) * _coerce_ext(b)


# ---------------------------------------------------------------------------
# Gauge (Hausdorff) functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerLaw:
    """h(r) = r**t for a fixed exponent t > 0."""

    exponent: Exponent

    def __post_init__(self):
        if isinstance(self.exponent, LogRatio):
            if not self.exponent.is_positive():
                raise ValueError("power-law exponent must be positive")
            return
        t = _as_fraction(self.exponent)
        object.__setattr__(self, "exponent", t)
        if t <= 0:
            # t == 0 would give h(0) == 1, breaking the h(0) == 0 axiom.
            raise ValueError("power-law exponent must be positive")

    def describe(self) -> str:
        return f"power:{self.exponent}"


class MonotoneTable:
    """Piecewise-geometric gauge given by strictly increasing breakpoints.

    Between (and beyond) breakpoints the value follows the power law fitted to
    the nearest segment, so the extension is continuous, increasing, and has
    h(0+) -> 0.  Values may be exact surds (used for tables whose values are
    square roots of cylinder masses).
    """

    def __init__(self, points: Iterable[tuple]):
        pts = []
        for r, v in points:
            r = _as_fraction(r)
            if isinstance(v, ExtValue):
                vv = v
            elif isinstance(v, Quad):
                vv = ExtValue(v)
            else:
                vv = ExtValue.exact(_as_fraction(v))
            pts.append((r, vv))
        pts.sort(key=lambda p: p[0])
        if len(pts) < 2:
            raise ValueError("a table needs at least two breakpoints")
        for (r1, v1), (r2, v2) in zip(pts, pts[1:]):
            if r1 <= 0 or not ExtValue.zero().certainly_lt(v1):
                raise ValueError("breakpoints must have positive radius and value")
            if r2 <= r1 or not v1.certainly_lt(v2):
                raise ValueError("breakpoints must be strictly increasing in both coordinates")
        self.points = pts

    def describe(self) -> str:
        return f"table:{len(self.points)}pts"

    def _segment(self, r: Fraction) -> tuple[tuple, tuple]:
        pts = self.points
        if r <= pts[0][0]:
            return pts[0], pts[1]
        if r >= pts[-1][0]:
            return pts[-2], pts[-1]
        lo, hi = 0, len(pts) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if pts[mid][0] <= r:
                lo = mid
            else:
                hi = mid
        return pts[lo], pts[hi]

    def value_at(self, r: Fraction) -> ExtValue:
        for rr, vv in self.points:
            if rr == r:
                return vv
        (r1, v1), (r2, v2) = self._segment(r)
        ratio_r = r / r1
        ratio_v = v2 / v1
        # exact path when the segment is a true rational power law
        if ratio_v.is_rational:
            rv = ratio_v.as_fraction()
            rr = r2 / r1
            for den in (1, 2, 3, 4):
                for num in range(-8 * den, 8 * den + 1):
                    if num == 0:
                        continue
                    if rr ** num == rv ** den:
                        e = Fraction(num, den)
                        return v1 * pow_q(ratio_r, e)
        # certified fallback: v1 * (r/r1) ** (log(v2/v1) / log(r2/r1))
        vlo, vhi = ratio_v.bounds(128)
        prec = 96
        while True:
            ctx = mpmath.iv
            old = ctx.prec
            try:
                ctx.prec = prec
                lv = ctx.log(ctx.mpf([_f(vlo), _f(vhi)]))
                lr = ctx.log(_iv_fraction(r2 / r1, ctx))
                e = lv / lr
                val = ctx.exp(e * ctx.log(_iv_fraction(ratio_r, ctx)))
                lo, hi = _iv_to_fractions(val)
            finally:
                ctx.prec = old
            if lo > 0 and (hi - lo) <= lo * _DEFAULT_REL_WIDTH * 16:
                return v1 * ExtValue.from_bounds(lo, hi)
            prec *= 2


def _f(fr: Fraction):
    return mpmath.mpf(fr.numerator) / mpmath.mpf(fr.denominator)


@dataclass(frozen=True)
class ProductOf:
    """h(r) = left(r) * right(r); used for product-space gauges."""

    left: "HausdorffFunction"
    right: "HausdorffFunction"

    def describe(self) -> str:
        return f"product({self.left.describe()},{self.right.describe()})"


HausdorffFunction = Union[PowerLaw, MonotoneTable, ProductOf]


def eval_h(h: HausdorffFunction, r) -> ExtValue:
    """Evaluate a gauge function at radius r >= 0."""
    r = _as_fraction(r)
    if r < 0:
        raise ValueError("gauge functions are defined for r >= 0")
    if r == 0:
        return ExtValue.zero()
    if isinstance(h, PowerLaw):
        return pow_q(r, h.exponent)
    if isinstance(h, MonotoneTable):
        return h.value_at(r)
    if isinstance(h, ProductOf):
        return eval_h(h.left, r) * eval_h(h.right, r)
    raise TypeError(f"not a gauge function: {h!r}")


def finite_order_estimate(h: HausdorffFunction, radius_grid: Iterable) -> ExtValue:
    """max over the grid of h(2r)/h(r): the empirical doubling order of h."""
    best: ExtValue | None = None
    for r in radius_grid:
        r = _as_fraction(r)
        if r <= 0:
            raise ValueError("grid radii must be positive")
        ratio = eval_h(h, 2 * r) / eval_h(h, r)
        if best is None or best.certainly_lt(ratio):
            best = ratio
    if best is None:
        raise ValueError("empty radius grid")
    return best


# ---------------------------------------------------------------------------
# JSON descriptors
# ---------------------------------------------------------------------------


def _exponent_to_json(e: Exponent):
    if isinstance(e, LogRatio):
        return {"log": [str(e.num), str(e.den)]}
    e = _as_fraction(e)
    return f"{e.numerator}/{e.denominator}"


def _exponent_from_json(obj) -> Exponent:
    if isinstance(obj, dict) and "log" in obj:
        a, b = obj["log"]
        return LogRatio(Fraction(a), Fraction(b))
    if isinstance(obj, str):
        return Fraction(obj)
    return _as_fraction(obj)


def h_to_json(h: HausdorffFunction):
    if isinstance(h, PowerLaw):
        return {"kind": "power", "t": _exponent_to_json(h.exponent)}
    if isinstance(h, MonotoneTable):
        pts = []
        for r, v in h.points:
            if not v.is_rational:
                raise ValueError("only rational-valued tables serialize to JSON")
            f = v.as_fraction()
            pts.append([f"{r.numerator}/{r.denominator}", f"{f.numerator}/{f.denominator}"])
        return {"kind": "table", "points": pts}
    if isinstance(h, ProductOf):
        return {"kind": "product", "left": h_to_json(h.left), "right": h_to_json(h.right)}
    raise TypeError(f"not a gauge function: {h!r}")


def h_from_json(obj) -> HausdorffFunction:
    kind = obj.get("kind")
    if kind == "power":
        return PowerLaw(_exponent_from_json(obj["t"]))
    if kind == "table":
        return MonotoneTable([(Fraction(r), Fraction(v)) for r, v in obj["points"]])
    if kind == "product":
        return ProductOf(h_from_json(obj["left"]), h_from_json(obj["right"]))
    raise ValueError(f"unknown gauge descriptor kind: {kind!r}")
