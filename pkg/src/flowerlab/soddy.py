"""Rational three-petal flowers and mutually tangent circle quadruples.

Contents:

* a four-integer parametrization of rational cosine triples on the
  three-petal flower variety, with the five positivity constraints that are
  supposed to accompany it (``cosines_from_params`` / ``constraint_report``);
* the exact radii solver ``solve_radii``: given a cosine triple, the three
  pairwise law-of-cosines equations factor as
  (r_i - u)(r_j - u) = w with u = (1-x)/(1+x) and w = u(u+1), and
  eliminating r_2, r_3 leaves a quadratic in r_1 that is solved exactly;
  every root is back-substituted, re-verified against all three equations,
  classified by sign, and gated by the numeric angle-sum branch check;
* ``sweep_radii``: a float grid-plus-bisection search for positive
  solutions of the same system, kept deliberately independent of the exact
  algebra so the two can audit each other;
* the Descartes curvature identity, the two tangent-curvature companions of
  a triple, an integer curvature-quadruple generator with its side
  condition x^2 + m^2 = d1*d2, and the rational inverse mapping from the
  four-integer parametrization onto those generator ratios;
* ``scan_lattice``: an exhaustive audit over the parameter lattice,
  parallelizable across processes (FLOWERLAB_THREADS caps the workers).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

from .geometry import FlowerConfig, angle_sum_residual
from .ratpoly import format_rational


# -- small exact helpers -------------------------------------------------------


def sqrt_exact(value: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None if irrational."""
    value = Fraction(value)
    if value < 0:
        raise ValueError("negative radicand")
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def rational_sine(x) -> Optional[Fraction]:
    """sin from cos when it is rational: sqrt(1 - x^2) if that is a perfect
    rational square, else None.  Requires |x| <= 1."""
    x = Fraction(x)
    if abs(x) > 1:
        raise ValueError(f"|{x}| > 1 is not a cosine")
    return sqrt_exact(1 - x * x)


def _squarefree_split(n: int, limit: int = 1_000_000) -> tuple[int, int]:
    """n = s^2 * f with f square-free; exact whenever every prime factor of
    the square part is below ``limit`` (always true for the sizes here)."""
    s, f = 1, 1
    d = 2
    while d * d <= n and d <= limit:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                f *= d
        d += 1 if d == 2 else 2
    if n > 1:
        r = isqrt(n)
        if r * r == n:
            s *= r
        else:
            f *= n
    return s, f


@dataclass(frozen=True)
class QuadraticValue:
    """Exact number of the form base + coef*sqrt(radicand).

    Perfect-square radicands are folded away at construction, so
    ``coef != 0`` means the value is genuinely irrational.  Field arithmetic
    within one Q(sqrt(radicand)) is exact; mixing distinct irrational
    radicands is refused.
    """

    base: Fraction
    coef: Fraction
    radicand: Fraction

    @classmethod
    def make(cls, base, coef=0, radicand=0) -> "QuadraticValue":
        base, coef, radicand = Fraction(base), Fraction(coef), Fraction(radicand)
        if radicand < 0:
            raise ValueError("negative radicand")
        if coef == 0 or radicand == 0:
            return cls(base, Fraction(0), Fraction(0))
        root = sqrt_exact(radicand)
        if root is not None:
            return cls(base + coef * root, Fraction(0), Fraction(0))
        # Canonicalize: sqrt(p/q) = sqrt(p*q)/q, then pull the square part
        # out of the integer radicand so equal values compare equal.
        p, q = radicand.numerator, radicand.denominator
        coef = coef / q
        s, f = _squarefree_split(p * q)
        return cls(base, coef * s, Fraction(f))

    @property
    def is_rational(self) -> bool:
        return self.coef == 0

    @property
    def exact(self) -> Optional[Fraction]:
        return self.base if self.coef == 0 else None

    def approx(self) -> float:
        return float(self.base) + float(self.coef) * math.sqrt(float(self.radicand))

    # -- exact field arithmetic in Q(sqrt(radicand)) --

    def _coerce(self, other) -> "QuadraticValue":
        if isinstance(other, QuadraticValue):
            if self.radicand and other.radicand and self.radicand != other.radicand:
                raise ValueError("mixing values from different quadratic fields")
            return other
        return QuadraticValue.make(Fraction(other))

    def _rad(self, other: "QuadraticValue") -> Fraction:
        return self.radicand if self.radicand else other.radicand

    def __add__(self, other) -> "QuadraticValue":
        other = self._coerce(other)
        return QuadraticValue.make(
            self.base + other.base, self.coef + other.coef, self._rad(other)
        )

    def __radd__(self, other) -> "QuadraticValue":
        return self.__add__(other)

    def __neg__(self) -> "QuadraticValue":
        return QuadraticValue(-self.base, -self.coef, self.radicand)

    def __sub__(self, other) -> "QuadraticValue":
        return self.__add__(-self._coerce(other))

    def __rsub__(self, other) -> "QuadraticValue":
        return (-self).__add__(other)

    def __mul__(self, other) -> "QuadraticValue":
        other = self._coerce(other)
        rad = self._rad(other)
        return QuadraticValue.make(
            self.base * other.base + self.coef * other.coef * rad,
            self.base * other.coef + self.coef * other.base,
            rad,
        )

    def __rmul__(self, other) -> "QuadraticValue":
        return self.__mul__(other)

    def reciprocal(self) -> "QuadraticValue":
        norm = self.base * self.base - self.coef * self.coef * self.radicand
        if norm == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return QuadraticValue.make(self.base / norm, -self.coef / norm, self.radicand)

    def sign(self) -> int:
        """Exact sign: -1, 0 or 1."""
        a, b = self.base, self.coef
        if b == 0:
            return -1 if a < 0 else (0 if a == 0 else 1)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # Opposite signs: compare a^2 with b^2 * radicand.
        lead = 1 if a > 0 else -1
        return lead if a * a > b * b * self.radicand else -lead

    def is_positive(self) -> bool:
        return self.sign() > 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.coef == 0 and self.base == other
        if isinstance(other, QuadraticValue):
            return (self.base, self.coef, self.radicand) == (
                other.base, other.coef, other.radicand
            )
        return NotImplemented

    def __hash__(self):
        if self.coef == 0:
            return hash(self.base)
        return hash((self.base, self.coef, self.radicand))

    def to_obj(self) -> dict:
        out = {"rational": self.is_rational, "approx": self.approx()}
        if self.is_rational:
            out["value"] = format_rational(self.base)
        else:
            out["base"] = format_rational(self.base)
            out["coef"] = format_rational(self.coef)
            out["radicand"] = format_rational(self.radicand)
        return out


# -- parametrized cosines -------------------------------------------------------


@dataclass(frozen=True)
class SoddyParams:
    """Four positive integers parametrizing a rational cosine triple."""

    m1: int
    n1: int
    m2: int
    n2: int

    def __post_init__(self):
        for name in ("m1", "n1", "m2", "n2"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.m1, self.n1, self.m2, self.n2)


@dataclass(frozen=True)
class CosTriple:
    x1: Fraction
    x2: Fraction
    x3: Fraction

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x1, self.x2, self.x3)

    def to_obj(self) -> list[str]:
        return [format_rational(x) for x in self.as_tuple()]


def cosines_from_params(p: SoddyParams) -> CosTriple:
    """Exact cosine triple on the three-petal flower variety.

    x1 and x2 come from the classic two-square parametrization of rational
    points on the unit circle, and x3 is the angle-sum cosine
    x1*x2 - sqrt(1-x1^2)*sqrt(1-x2^2), which here is rational by
    construction; the triple zeroes the flower polynomial identically and
    all three components admit rational sines.
    """
    m1, n1, m2, n2 = p.as_tuple()
    q1 = m1 * m1 + n1 * n1
    q2 = m2 * m2 + n2 * n2
    a1 = m1 * m1 - n1 * n1
    a2 = m2 * m2 - n2 * n2
    x1 = Fraction(a1, q1)
    x2 = Fraction(a2, q2)
    x3 = Fraction(a1 * a2 - 4 * m1 * m2 * n1 * n2, q1 * q2)
    return CosTriple(x1, x2, x3)


@dataclass(frozen=True)
class ConstraintReport:
    """The five inequalities that are supposed to pick out genuine flowers."""

    n1_gt_m1: bool
    n2_gt_m2: bool
    cross_gt_product: bool  # m1*n2 + m2*n1 > n1*n2
    r1_positive: bool  # n1*(m1*n2 + m2*n1) > n2*(m1^2 + n1^2)
    r3_positive: bool  # n1*(m2^2 + n2^2) > n2*(m1*n2 + m2*n1)

    @property
    def all_hold(self) -> bool:
        return all(
            (self.n1_gt_m1, self.n2_gt_m2, self.cross_gt_product,
             self.r1_positive, self.r3_positive)
        )

    def as_tuple(self) -> tuple[bool, ...]:
        return (self.n1_gt_m1, self.n2_gt_m2, self.cross_gt_product,
                self.r1_positive, self.r3_positive)

    def to_obj(self) -> dict:
        return {
            "n1_gt_m1": self.n1_gt_m1,
            "n2_gt_m2": self.n2_gt_m2,
            "cross_gt_product": self.cross_gt_product,
            "r1_positive": self.r1_positive,
            "r3_positive": self.r3_positive,
            "all_hold": self.all_hold,
        }


def constraint_report(p: SoddyParams) -> ConstraintReport:
    m1, n1, m2, n2 = p.as_tuple()
    cross = m1 * n2 + m2 * n1
    return ConstraintReport(
        n1_gt_m1=n1 > m1,
        n2_gt_m2=n2 > m2,
        cross_gt_product=cross > n1 * n2,
        r1_positive=n1 * cross > n2 * (m1 * m1 + n1 * n1),
        r3_positive=n1 * (m2 * m2 + n2 * n2) > n2 * cross,
    )


# -- Descartes circle identity ----------------------------------------------------


@dataclass(frozen=True)
class CurvatureQuad:
    """Four curvatures; zero means a tangent line, negative an enclosing circle."""

    b1: Fraction
    b2: Fraction
    b3: Fraction
    b4: Fraction

    def __post_init__(self):
        for name in ("b1", "b2", "b3", "b4"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def as_tuple(self):
        return (self.b1, self.b2, self.b3, self.b4)

    def to_obj(self) -> list[str]:
        return [format_rational(b) for b in self.as_tuple()]


def descartes_check(quad: CurvatureQuad) -> bool:
    """Exact test of the four-circle curvature identity:
    b1^2+b2^2+b3^2+b4^2 = (b1+b2+b3+b4)^2 / 2."""
    b = quad.as_tuple()
    return sum(x * x for x in b) * 2 == sum(b) ** 2


def tangent_curvatures(k1, k2, k3) -> tuple[QuadraticValue, QuadraticValue]:
    """The two curvatures completing three mutually tangent circles:
    k1 + k2 + k3 +/- 2*sqrt(k1*k2 + k2*k3 + k3*k1).  Both companions satisfy
    the Descartes identity with the given triple."""
    k1, k2, k3 = Fraction(k1), Fraction(k2), Fraction(k3)
    radicand = k1 * k2 + k2 * k3 + k3 * k1
    if radicand < 0:
        raise ValueError(f"negative radicand {radicand}; no real tangent circle")
    s = k1 + k2 + k3
    return (
        QuadraticValue.make(s, 2, radicand),
        QuadraticValue.make(s, -2, radicand),
    )


# -- exact radii solver ------------------------------------------------------------


@dataclass(frozen=True)
class RadiiCandidate:
    """One root of the r_1 quadratic with the matching r_2, r_3."""

    r1: QuadraticValue
    r2: QuadraticValue
    r3: QuadraticValue
    rational: bool
    positive: bool
    equations_ok: bool
    angle_sum_ok: bool
    degenerate: bool = False

    @property
    def valid(self) -> bool:
        return (
            self.positive and self.equations_ok and self.angle_sum_ok
            and not self.degenerate
        )

    def to_obj(self) -> dict:
        return {
            "r1": self.r1.to_obj(),
            "r2": self.r2.to_obj(),
            "r3": self.r3.to_obj(),
            "rational": self.rational,
            "positive": self.positive,
            "equations_ok": self.equations_ok,
            "angle_sum_ok": self.angle_sum_ok,
            "degenerate": self.degenerate,
            "valid": self.valid,
        }


@dataclass(frozen=True)
class SolveReport:
    cosines: CosTriple
    u: tuple[Fraction, Fraction, Fraction]
    w: tuple[Fraction, Fraction, Fraction]
    quadratic: tuple[Fraction, Fraction, Fraction]  # a, b, c in a*r^2 + b*r + c
    discriminant: Optional[Fraction]  # None when the equation degenerates to linear
    discriminant_square: Optional[bool]
    angle_sum_residual: float
    angle_sum_ok: bool
    candidates: tuple[RadiiCandidate, ...]
    valid_flowers: tuple[FlowerConfig, ...]  # rational valid solutions, center radius 1

    def to_obj(self) -> dict:
        return {
            "cosines": self.cosines.to_obj(),
            "quadratic": [format_rational(v) for v in self.quadratic],
            "discriminant": None if self.discriminant is None else format_rational(self.discriminant),
            "discriminant_square": self.discriminant_square,
            "angle_sum_residual": self.angle_sum_residual,
            "angle_sum_ok": self.angle_sum_ok,
            "candidates": [c.to_obj() for c in self.candidates],
            "valid_flowers": [f.to_obj() for f in self.valid_flowers],
        }


def _pair_equation_ok(u: Fraction, w: Fraction, ra: Fraction, rb: Fraction) -> bool:
    return (ra - u) * (rb - u) == w


def solve_radii(cosines: CosTriple | Sequence, tol: float = 1e-9) -> SolveReport:
    """Solve for petal radii (center radius 1) matching an exact cosine triple.

    Eliminating r_2 (via the x_1 equation) and r_3 (via the x_3 equation)
    from the x_2 equation leaves one quadratic in r_1.  Both roots are
    reported: exact rationals when the discriminant is a perfect square,
    flagged irrationals with float approximations otherwise.  A candidate is
    a valid flower only if all radii are positive, all three pairwise
    equations re-verify, and the angle-sum branch check passes.
    """
    if not isinstance(cosines, CosTriple):
        cosines = CosTriple(*(Fraction(x) for x in cosines))
    xs = cosines.as_tuple()
    for x in xs:
        if x == -1:
            raise ValueError("cosine -1 gives a degenerate (straight-angle) petal pair")
        if not (Fraction(-1) < x < 1):
            raise ValueError(f"cosine {x} outside (-1, 1)")
    u = tuple((1 - x) / (1 + x) for x in xs)
    w = tuple(ui * (ui + 1) for ui in u)

    # [w1 + A1(r - u1)] * [w3 + A3(r - u3)] = w2 (r - u1)(r - u3),
    # with A1 = u1 - u2, A3 = u3 - u2.
    a1 = u[0] - u[1]
    a3 = u[2] - u[1]
    p1 = w[0] - a1 * u[0]  # w1 + A1*(r-u1) = A1*r + p1
    p3 = w[2] - a3 * u[2]
    qa = a1 * a3 - w[1]
    qb = a1 * p3 + a3 * p1 + w[1] * (u[0] + u[2])
    qc = p1 * p3 - w[1] * u[0] * u[2]

    # Double precision decides the branch check except within three orders
    # of magnitude of the tolerance; the ambiguous window escalates to
    # 40-digit arithmetic.
    fast = abs(math.fsum(math.acos(float(x)) for x in xs) - 2.0 * math.pi)
    if fast > 1e3 * tol or fast < 1e-3 * tol:
        sum_residual = fast
    else:
        sum_residual = angle_sum_residual(xs)
    angle_ok = sum_residual <= tol

    roots: list[QuadraticValue] = []
    disc: Optional[Fraction] = None
    disc_square: Optional[bool] = None
    if qa != 0:
        disc = qb * qb - 4 * qa * qc
        disc_square = disc >= 0 and sqrt_exact(disc) is not None
        if disc >= 0:
            roots = [
                QuadraticValue.make(Fraction(-qb, 2 * qa), Fraction(1, 2 * qa), disc),
                QuadraticValue.make(Fraction(-qb, 2 * qa), Fraction(-1, 2 * qa), disc),
            ]
            if disc == 0:
                roots = roots[:1]
    elif qb != 0:
        roots = [QuadraticValue.make(Fraction(-qc, qb))]
    # qa == qb == 0: either no solution (qc != 0) or a fully degenerate
    # one-parameter family; both are reported as an empty candidate list.

    candidates: list[RadiiCandidate] = []
    flowers: list[FlowerConfig] = []
    for root in roots:
        if root.is_rational:
            r1 = root.exact
            if r1 == u[0] or r1 == u[2]:
                zero = QuadraticValue.make(0)
                candidates.append(
                    RadiiCandidate(root, zero, zero, True, False, False, angle_ok, degenerate=True)
                )
                continue
            r2 = u[0] + w[0] / (r1 - u[0])
            r3 = u[2] + w[2] / (r1 - u[2])
            eq_ok = (
                _pair_equation_ok(u[0], w[0], r1, r2)
                and _pair_equation_ok(u[1], w[1], r2, r3)
                and _pair_equation_ok(u[2], w[2], r3, r1)
            )
            positive = r1 > 0 and r2 > 0 and r3 > 0
            cand = RadiiCandidate(
                QuadraticValue.make(r1), QuadraticValue.make(r2), QuadraticValue.make(r3),
                True, positive, eq_ok, angle_ok,
            )
            candidates.append(cand)
            if cand.valid:
                flowers.append(FlowerConfig(Fraction(1), (r1, r2, r3)))
        else:
            # r1 is irrational, u rational, so the divisors cannot vanish;
            # all arithmetic stays exact in Q(sqrt(disc)).
            r2q = (root - u[0]).reciprocal() * w[0] + u[0]
            r3q = (root - u[2]).reciprocal() * w[2] + u[2]
            eq_ok = (
                (root - u[0]) * (r2q - u[0]) == w[0]
                and (r2q - u[1]) * (r3q - u[1]) == w[1]
                and (r3q - u[2]) * (root - u[2]) == w[2]
            )
            positive = root.is_positive() and r2q.is_positive() and r3q.is_positive()
            candidates.append(
                RadiiCandidate(root, r2q, r3q, False, positive, eq_ok, angle_ok)
            )

    return SolveReport(
        cosines=cosines,
        u=u,
        w=w,
        quadratic=(qa, qb, qc),
        discriminant=disc,
        discriminant_square=disc_square,
        angle_sum_residual=sum_residual,
        angle_sum_ok=angle_ok,
        candidates=tuple(candidates),
        valid_flowers=tuple(flowers),
    )


def sweep_radii(
    cosines: Sequence,
    samples: int = 4000,
    r_min: float = 1e-6,
    r_max: float = 1e6,
) -> list[tuple[float, float, float]]:
    """Positive radii solutions found by float grid search plus bisection.

    Independent of the exact solver: walks r_1 over a log grid, derives r_2
    and r_3 from the first and third pairwise equations, and bisects sign
    changes of the second equation's residual.  Spurious pole crossings are
    rejected by re-checking the residual at the bisected point.  Returns
    (r1, r2, r3) triples with all entries positive.
    """
    xs = [float(x) for x in (cosines.as_tuple() if isinstance(cosines, CosTriple) else cosines)]
    u = [(1.0 - x) / (1.0 + x) for x in xs]
    w = [ui * (ui + 1.0) for ui in u]

    def residual(r1: float):
        d1 = r1 - u[0]
        d3 = r1 - u[2]
        if abs(d1) < 1e-300 or abs(d3) < 1e-300:
            return None
        r2 = u[0] + w[0] / d1
        r3 = u[2] + w[2] / d3
        f = (r2 - u[1]) * (r3 - u[1]) - w[1]
        if not math.isfinite(f):
            return None
        return f, r2, r3

    ratio = r_max / r_min
    grid = [r_min * ratio ** (i / samples) for i in range(samples + 1)]
    # Make sure the poles split grid cells instead of hiding inside one.
    for pole in (u[0], u[2]):
        if r_min < pole < r_max:
            grid.extend([pole * (1 - 1e-9), pole * (1 + 1e-9)])
    grid.sort()

    tol = 1e-7 * (1.0 + abs(w[1]))
    found: list[tuple[float, float, float]] = []
    prev: Optional[tuple[float, float]] = None
    for r in grid:
        res = residual(r)
        if res is None:
            prev = None
            continue
        f = res[0]
        if prev is not None:
            r0, f0 = prev
            if f == 0.0 or f0 == 0.0 or (f < 0.0) != (f0 < 0.0):
                lo, hi, flo = r0, r, f0
                for _ in range(200):
                    mid = 0.5 * (lo + hi)
                    rm = residual(mid)
                    if rm is None:
                        break
                    fm = rm[0]
                    if fm == 0.0:
                        lo = hi = mid
                        break
                    if (fm < 0.0) == (flo < 0.0):
                        lo, flo = mid, fm
                    else:
                        hi = mid
                root = 0.5 * (lo + hi)
                rr = residual(root)
                if rr is not None and abs(rr[0]) <= tol:
                    _, r2, r3 = rr
                    if root > 0 and r2 > 0 and r3 > 0:
                        if not any(abs(root - f0_) <= 1e-6 * (1 + abs(root)) for f0_, _, _ in found):
                            found.append((root, r2, r3))
        prev = (r, f)
    return found


# -- integer scaling ------------------------------------------------------------


@dataclass(frozen=True)
class ScaledFlower:
    scale: int
    config: FlowerConfig

    def to_obj(self) -> dict:
        return {"scale": self.scale, "config": self.config.to_obj()}


def integer_scale(center, petals: Sequence) -> ScaledFlower:
    """Scale a rational flower by the lcm of all denominators, producing
    integer radii; the multiplier is reported, common factors are kept."""
    center = Fraction(center)
    petals = [Fraction(p) for p in petals]
    if center <= 0 or any(p <= 0 for p in petals):
        raise ValueError("radii must be strictly positive")
    scale = 1
    for v in [center, *petals]:
        scale = scale * v.denominator // gcd(scale, v.denominator)
    return ScaledFlower(
        scale=scale,
        config=FlowerConfig(center * scale, tuple(p * scale for p in petals)),
    )


# -- integer curvature quadruples --------------------------------------------------


@dataclass(frozen=True)
class GrahamParams:
    """Witness (x, m, d1, d2) with x^2 + m^2 = d1*d2."""

    x: int
    m: int
    d1: int
    d2: int

    def __post_init__(self):
        if self.x * self.x + self.m * self.m != self.d1 * self.d2:
            raise ValueError(
                f"side condition x^2 + m^2 = d1*d2 fails for {self}"
            )

    def quadruple(self) -> CurvatureQuad:
        return CurvatureQuad(
            Fraction(self.x),
            Fraction(self.d1 - self.x),
            Fraction(self.d2 - self.x),
            Fraction(-2 * self.m + self.d1 + self.d2 - self.x),
        )


@dataclass(frozen=True)
class GrahamRecord:
    params: GrahamParams
    quad: CurvatureQuad
    degenerate: bool  # some curvature <= 0 (tangent line or enclosing circle)

    def to_obj(self) -> dict:
        return {
            "x": self.params.x,
            "m": self.params.m,
            "d1": self.params.d1,
            "d2": self.params.d2,
            "curvatures": self.quad.to_obj(),
            "degenerate": self.degenerate,
        }


def graham_quadruples(d2_bound: int) -> list[GrahamRecord]:
    """All integer curvature quadruples from the generator
    b = (x, d1-x, d2-x, d1+d2-2m-x) over 0 <= 2m <= d1 <= d2 <= bound with
    x^2 + m^2 = d1*d2 and x >= 0.  Every output satisfies the Descartes
    identity; non-positive curvatures are flagged, not dropped."""
    if d2_bound < 1:
        raise ValueError("bound must be at least 1")
    out: list[GrahamRecord] = []
    for d2 in range(1, d2_bound + 1):
        for d1 in range(0, d2 + 1):
            prod = d1 * d2
            for m in range(0, d1 // 2 + 1):
                t = prod - m * m
                if t < 0:
                    continue
                x = isqrt(t)
                if x * x != t:
                    continue
                params = GrahamParams(x, m, d1, d2)
                quad = params.quadruple()
                degenerate = any(b <= 0 for b in quad.as_tuple())
                out.append(GrahamRecord(params, quad, degenerate))
    return out


@dataclass(frozen=True)
class GrahamRatios:
    """The generator parameters, per unit of x, recovered from a
    four-integer cosine parametrization."""

    m_over_x: Fraction
    d1_over_x: Fraction
    d2_over_x: Fraction

    @property
    def identity_holds(self) -> bool:
        return 1 + self.m_over_x**2 == self.d1_over_x * self.d2_over_x

    def to_obj(self) -> dict:
        return {
            "m_over_x": format_rational(self.m_over_x),
            "d1_over_x": format_rational(self.d1_over_x),
            "d2_over_x": format_rational(self.d2_over_x),
            "identity_holds": self.identity_holds,
        }


def graham_inverse(p: SoddyParams) -> GrahamRatios:
    """Map cosine parameters onto curvature-generator ratios:
    m/x = (n1*n2 - m1*m2)/(m1*n2 + m2*n1),
    d1/x = n2*(m1^2 + n1^2)/(n1*(m1*n2 + m2*n1)),
    d2/x = n1*(m2^2 + n2^2)/(n2*(m1*n2 + m2*n1)).
    The side condition 1 + (m/x)^2 = (d1/x)(d2/x) holds identically."""
    m1, n1, m2, n2 = p.as_tuple()
    cross = m1 * n2 + m2 * n1
    return GrahamRatios(
        m_over_x=Fraction(n1 * n2 - m1 * m2, cross),
        d1_over_x=Fraction(n2 * (m1 * m1 + n1 * n1), n1 * cross),
        d2_over_x=Fraction(n1 * (m2 * m2 + n2 * n2), n2 * cross),
    )


# -- lattice scan ----------------------------------------------------------------


@dataclass(frozen=True)
class ScanRecord:
    params: tuple[int, int, int, int]
    constraints: tuple[bool, bool, bool, bool, bool]
    all_pass: bool
    degenerate: bool  # a cosine hit -1; the radii system has no meaning there
    discriminant_square: Optional[bool]
    valid_flower_count: int
    d1_le_d2: bool
    two_m_gt_d1: bool

    def to_obj(self) -> dict:
        m1, n1, m2, n2 = self.params
        return {
            "m1": m1, "n1": n1, "m2": m2, "n2": n2,
            "constraints": list(self.constraints),
            "all_pass": self.all_pass,
            "degenerate": self.degenerate,
            "discriminant_square": self.discriminant_square,
            "valid_flower_count": self.valid_flower_count,
            "d1_le_d2": self.d1_le_d2,
            "two_m_gt_d1": self.two_m_gt_d1,
        }

    CSV_FIELDS = (
        "m1", "n1", "m2", "n2",
        "c_n1_gt_m1", "c_n2_gt_m2", "c_cross", "c_r1_pos", "c_r3_pos",
        "all_pass", "degenerate", "discriminant_square", "valid_flower_count",
        "d1_le_d2", "two_m_gt_d1",
    )

    def csv_row(self) -> list:
        return [*self.params, *(int(c) for c in self.constraints), int(self.all_pass),
                int(self.degenerate), self.discriminant_square, self.valid_flower_count,
                int(self.d1_le_d2), int(self.two_m_gt_d1)]


def _scan_tuple(params: tuple[int, int, int, int]) -> ScanRecord:
    p = SoddyParams(*params)
    rep = constraint_report(p)
    triple = cosines_from_params(p)
    ratios = graham_inverse(p)
    degenerate = False
    disc_square: Optional[bool] = None
    flowers = 0
    try:
        solved = solve_radii(triple)
        disc_square = solved.discriminant_square
        flowers = len(solved.valid_flowers)
    except ValueError:
        degenerate = True
    return ScanRecord(
        params,
        rep.as_tuple(),
        rep.all_hold,
        degenerate,
        disc_square,
        flowers,
        ratios.d1_over_x <= ratios.d2_over_x,
        2 * ratios.m_over_x > ratios.d1_over_x,
    )


def worker_count(explicit: Optional[int] = None) -> int:
    """Resolve the worker cap: explicit argument, else FLOWERLAB_THREADS,
    else 1 (serial)."""
    if explicit is not None:
        return max(1, int(explicit))
    env = os.environ.get("FLOWERLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            return 1
    return 1


@dataclass(frozen=True)
class ScanResult:
    bound: int
    records: tuple[ScanRecord, ...]
    summary: dict

    def to_obj(self) -> dict:
        return {"bound": self.bound, "summary": dict(self.summary),
                "records": [r.to_obj() for r in self.records]}


def scan_lattice(bound: int, workers: Optional[int] = None) -> ScanResult:
    """Audit every parameter tuple with entries in 1..bound.

    Records are always in lexicographic parameter order, whatever the
    worker count; the summary tallies how the constraint set relates to
    square discriminants, solvable flowers, and the two generator
    inequalities."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    from itertools import product

    tuples = list(product(range(1, bound + 1), repeat=4))
    nworkers = worker_count(workers)
    if nworkers > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunk = max(16, len(tuples) // (nworkers * 8))
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            records = list(pool.map(_scan_tuple, tuples, chunksize=chunk))
    else:
        records = [_scan_tuple(t) for t in tuples]
    passing = [r for r in records if r.all_pass]
    summary = {
        "total": len(records),
        "constraint_pass": len(passing),
        "pass_square_discriminant": sum(1 for r in passing if r.discriminant_square),
        "pass_with_valid_flower": sum(1 for r in passing if r.valid_flower_count),
        "pass_d1_le_d2": sum(1 for r in passing if r.d1_le_d2),
        "pass_2m_gt_d1": sum(1 for r in passing if r.two_m_gt_d1),
        "solvable_total": sum(1 for r in records if r.valid_flower_count),
        "solvable_and_constraint_pass": sum(
            1 for r in passing if r.valid_flower_count
        ),
    }
    return ScanResult(bound=bound, records=tuple(records), summary=summary)
