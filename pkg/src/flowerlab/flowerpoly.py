"""Flower polynomials of wheel coin graphs, with cross-checked constructions.

For an n-petal flower (center coin tangent to a cycle of n petal coins) the
cosines x_i of the n center angles satisfy a single polynomial relation.
This module builds that polynomial three ways:

* ``flower_poly(n)``           two-factor conjugate recursion (the cheap
                               route, used everywhere else in the package);
* ``flower_poly_from_product`` product of (x_n - sigma(cos expansion)) over
                               the sign group on the first n-1 variables;
* ``closure_product_poly(n)``  the full product of (sigma(cos expansion)-1)
                               over all 2^(n-1) sign vectors, which equals
                               the square of the flower polynomial.

The verify_* helpers check the structural identities relating these routes
(square decomposition, symmetry, specialization at x_i = 1, and the general
block recursion), returning small report objects instead of bare booleans so
a failure carries the first differing term.

``radius_expansion`` performs the n = 3 change of variables from cosines to
radii: substituting the law-of-cosines expression for each cosine into the
closure polynomial and clearing denominators yields a homogeneous polynomial
in (r, r1, r2, r3) whose coefficients with respect to powers of r are each
symmetric under rotating or reversing the petal radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .mixedring import (
    MixedElement,
    SignVector,
    apply_sign,
    cos_sin_over_slots,
    poly_at_mixed,
    sign_vectors,
)
from .ratpoly import Coeff, Exponents, SparsePoly

DEFAULT_MAX_N = 7

TWO_PI = 2.0 * math.pi


class SizeLimitError(ValueError):
    """Requested petal count exceeds the configured ceiling."""


_RECURSION_CACHE: dict[int, SparsePoly] = {}


def clear_cache() -> None:
    _RECURSION_CACHE.clear()


def _check_n(n: int, low: int, high: int, what: str) -> None:
    if not isinstance(n, int) or not low <= n <= high:
        raise ValueError(f"{what} supports n in {low}..{high}, got {n}")


def _product(factors: Sequence[MixedElement]) -> MixedElement:
    # Balanced pairing keeps intermediate term counts low; the result is
    # independent of association order.
    items = list(factors)
    if not items:
        raise ValueError("empty product")
    while len(items) > 1:
        nxt = []
        for i in range(0, len(items) - 1, 2):
            nxt.append(items[i] * items[i + 1])
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def _conjugate_pair_product(prev: SparsePoly, n: int) -> SparsePoly:
    """prev(x_1..x_{n-2}, w) * prev(x_1..x_{n-2}, w~) expanded and reduced,
    where w / w~ are the conjugate cos expansions of t_{n-1} + t_n."""
    last = prev.nvars - 1
    groups: dict[int, dict[Exponents, Coeff]] = {}
    for exps, coeff in prev.items():
        k = exps[last]
        groups.setdefault(k, {})[exps[:last] + (0, 0)] = coeff
    w = cos_sin_over_slots(n, (n - 2, n - 1))[0]
    w_pow: dict[int, MixedElement] = {0: MixedElement.one(n)}
    for k in range(1, max(groups) + 1):
        w_pow[k] = w_pow[k - 1] * w
    a = MixedElement.zero(n)
    for k, terms in groups.items():
        a = a + MixedElement(n, {(e, 0): c for e, c in terms.items()}) * w_pow[k]
    b = apply_sign(SignVector.generator(n, n - 2), a)
    return (a * b).to_poly()


def flower_poly(n: int, max_n: int = DEFAULT_MAX_N) -> SparsePoly:
    """The n-variable flower polynomial, by the conjugate-pair recursion.

    Monic of degree 2^(n-2) in each variable for n >= 2 and symmetric for
    n >= 3.  Term counts grow exponentially with n, so sizes beyond
    ``max_n`` are refused rather than attempted.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"petal count must be a positive integer, got {n}")
    if n > max_n:
        raise SizeLimitError(
            f"n={n} exceeds the size ceiling {max_n}; "
            "raise max_n explicitly if you really want this"
        )
    cached = _RECURSION_CACHE.get(n)
    if cached is not None:
        return cached
    if n == 1:
        result = SparsePoly(1, {(1,): 1, (0,): -1})
    elif n == 2:
        result = SparsePoly(2, {(0, 1): 1, (1, 0): -1})
    else:
        result = _conjugate_pair_product(flower_poly(n - 1, max_n), n)
    _RECURSION_CACHE[n] = result
    return result


def flower_poly_from_product(n: int) -> SparsePoly:
    """The flower polynomial as the product of (x_n - sigma(cos expansion))
    over all sign vectors acting on the first n-1 variables.

    Independent of the recursion route; gated to n <= 5 because the product
    has 2^(n-2) factors.
    """
    _check_n(n, 2, 5, "flower_poly_from_product")
    ec = cos_sin_over_slots(n, range(n - 1))[0]
    xn = MixedElement.x_var(n, n - 1)
    factors = []
    for bits in _block_sign_bits(n, 0, n - 1):
        factors.append(xn - apply_sign(SignVector(n, bits), ec))
    return _product(factors).to_poly()


def closure_product_poly(n: int) -> SparsePoly:
    """Product of (sigma(cos expansion) - 1) over the whole sign group.

    This is the defining construction of the closure polynomial: all sine
    factors cancel in the full product, and the result is the square of
    ``flower_poly(n)`` for n >= 2.  Gated to n <= 5 (2^(n-1) factors).
    """
    _check_n(n, 1, 5, "closure_product_poly")
    ec = cos_sin_over_slots(n, range(n))[0]
    factors = [apply_sign(sv, ec) - 1 for sv in sign_vectors(n)]
    return _product(factors).to_poly()


def _block_sign_bits(n: int, offset: int, size: int):
    """Bit tuples (length n-1) for the sign subgroup acting inside one block
    of ``size`` consecutive variables starting at ``offset``."""
    from itertools import product as iproduct

    positions = list(range(offset, offset + size - 1))
    for chosen in iproduct((False, True), repeat=len(positions)):
        bits = [False] * (n - 1)
        for pos, on in zip(positions, chosen):
            bits[pos] = on
        yield tuple(bits)


# -- structural checks ---------------------------------------------------------


def first_difference(a: SparsePoly, b: SparsePoly) -> Optional[tuple[Exponents, Coeff, Coeff]]:
    """Leading term (canonical order) where two polynomials disagree, or None."""
    diff = a - b
    if not diff:
        return None
    exps = diff.sorted_terms()[0][0]
    return exps, a.coefficient(exps), b.coefficient(exps)


@dataclass(frozen=True)
class CheckReport:
    name: str
    n: int
    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_square(n: int) -> CheckReport:
    """Does the closure product equal the square of the flower polynomial?"""
    _check_n(n, 2, 5, "verify_square")
    pn = flower_poly(n)
    cn = closure_product_poly(n)
    diff = first_difference(cn, pn * pn)
    if diff is None:
        return CheckReport("square", n, True)
    exps, lhs, rhs = diff
    return CheckReport(
        "square", n, False,
        f"first differing term {exps}: closure={lhs}, square={rhs}",
    )


def verify_specialization(n: int, index: int) -> CheckReport:
    """Setting x_index := 1 must give the square of the (n-1)-petal polynomial."""
    _check_n(n, 3, 6, "verify_specialization")
    if not 0 <= index < n:
        raise ValueError(f"variable index {index} out of range")
    specialized = flower_poly(n).specialize(index, 1)
    smaller = flower_poly(n - 1)
    diff = first_difference(specialized, smaller * smaller)
    if diff is None:
        return CheckReport("specialization", n, True)
    exps, lhs, rhs = diff
    return CheckReport(
        "specialization", n, False,
        f"x_{index + 1}:=1, first differing term {exps}: {lhs} vs {rhs}",
    )


def verify_general_recursion(n: int, composition: Sequence[int]) -> CheckReport:
    """Check the block recursion: splitting the n angles into consecutive
    blocks of sizes (n_1..n_k) and taking the product of the k-variable
    flower polynomial over all per-block sign choices must reproduce the
    n-variable polynomial."""
    composition = tuple(composition)
    if len(composition) < 2 or any(s < 1 for s in composition):
        raise ValueError(f"composition must have >= 2 positive parts: {composition}")
    if sum(composition) != n:
        raise ValueError(f"composition {composition} does not sum to {n}")
    k = len(composition)
    if n > 6 or n - k > 4:
        raise ValueError(f"composition {composition} of {n} exceeds the cost gate")
    outer = flower_poly(k)
    offsets = []
    pos = 0
    for size in composition:
        offsets.append(pos)
        pos += size
    block_cos = [
        cos_sin_over_slots(n, range(off, off + size))[0]
        for off, size in zip(offsets, composition)
    ]
    block_groups = [
        [SignVector(n, bits) for bits in _block_sign_bits(n, off, size)]
        for off, size in zip(offsets, composition)
    ]
    factors = []
    from itertools import product as iproduct

    for choice in iproduct(*block_groups):
        args = [apply_sign(sv, ec) for sv, ec in zip(choice, block_cos)]
        factors.append(poly_at_mixed(outer, args))
    combined = _product(factors).to_poly()
    diff = first_difference(combined, flower_poly(n))
    if diff is None:
        return CheckReport("general-recursion", n, True, f"composition {composition}")
    exps, lhs, rhs = diff
    return CheckReport(
        "general-recursion", n, False,
        f"composition {composition}, first differing term {exps}: {lhs} vs {rhs}",
    )


def verify_symmetry(n: int, permutations: Sequence[Sequence[int]]) -> CheckReport:
    """The polynomial must be invariant under each given variable permutation."""
    pn = flower_poly(n)
    for perm in permutations:
        if pn.permute(perm) != pn:
            return CheckReport("symmetry", n, False, f"not invariant under {tuple(perm)}")
    return CheckReport("symmetry", n, True, f"{len(permutations)} permutations")


def verify_monic(n: int) -> CheckReport:
    """Degree in every variable must be 2^(n-2); the leading coefficient is
    the constant 1 in every variable for n >= 3 (for n = 2 only the last
    variable carries +1, the first carries -1)."""
    _check_n(n, 2, 7, "verify_monic")
    pn = flower_poly(n)
    want = 1 << (n - 2)
    for i in range(n):
        if pn.degree_in(i) != want:
            return CheckReport(
                "monic", n, False, f"degree in x{i + 1} is {pn.degree_in(i)}, want {want}"
            )
        lead = pn.coefficient_in(i, want)
        expect = 1 if (n >= 3 or i == n - 1) else -1
        if lead != SparsePoly.const(n - 1, expect):
            return CheckReport(
                "monic", n, False,
                f"leading coefficient in x{i + 1} is {lead.pretty()}, want {expect}",
            )
    return CheckReport("monic", n, True)


# -- numeric variety membership --------------------------------------------------


def variety_residual(n: int, angles: Sequence[float], max_n: int = DEFAULT_MAX_N) -> float:
    """|flower polynomial at (cos a_1, ..., cos a_n)| for angles summing to 2*pi."""
    if n < 3:
        raise ValueError("need at least three angles")
    if len(angles) != n:
        raise ValueError(f"expected {n} angles, got {len(angles)}")
    if any(a <= 0 for a in angles):
        raise ValueError("angles must be positive")
    if abs(math.fsum(angles) - TWO_PI) > 1e-12:
        raise ValueError(f"angles sum to {math.fsum(angles)!r}, not 2*pi")
    pn = flower_poly(n, max_n)
    return abs(pn.evaluate_float([math.cos(a) for a in angles]))


def random_flower_angles(n: int, rng) -> list[float]:
    """Random positive angles summing to 2*pi: draw n-1 uniformly on
    (0, 2*pi) and set the last to the remainder, rejecting non-positive."""
    while True:
        head = [rng.uniform(0.0, TWO_PI) for _ in range(n - 1)]
        last = TWO_PI - math.fsum(head)
        if last > 1e-9 and all(a > 1e-9 for a in head):
            return head + [last]


# -- radius polynomial for three petals -------------------------------------------


@dataclass(frozen=True)
class RadiusExpansion:
    """Homogeneous degree-12 polynomial in (r, r1, r2, r3) from the 3-petal
    closure relation, split by powers of the center radius r.

    ``coefficients[j]`` is the coefficient of r^j, a polynomial in
    (r1, r2, r3) of total degree 12 - j; each one is invariant under all
    permutations of the petal radii.
    """

    homogeneous: SparsePoly  # 4 variables: r, r1, r2, r3
    coefficients: tuple[SparsePoly, ...]  # index = power of r, 3 variables

    VAR_NAMES = ("r", "r1", "r2", "r3")


def radius_expansion() -> RadiusExpansion:
    """Substitute the law-of-cosines expression for each center-angle cosine
    into the 3-petal closure polynomial and clear all denominators.

    With center radius r and petal radii r_i, the cosine between petals a,b
    is (r^2 + r*r_a + r*r_b - r_a*r_b) / ((r+r_a)(r+r_b)).  Clearing the
    common denominator of the inner (unsquared) relation gives a homogeneous
    degree-6 polynomial F; the closure relation is F^2 = 0.
    """
    n4 = 4  # slots: 0 = r, 1..3 = petal radii
    r = SparsePoly.variable(n4, 0)
    radii = [SparsePoly.variable(n4, i) for i in (1, 2, 3)]
    pairs = [(0, 1), (1, 2), (2, 0)]  # petal index pairs for x1, x2, x3
    numerators = []
    for a, b in pairs:
        ra, rb = radii[a], radii[b]
        numerators.append(r * r + r * ra + r * rb - ra * rb)
    shifted = [r + ri for ri in radii]  # (r + r_i)
    missing = [2, 0, 1]  # petal not involved in cosine x_i
    f = SparsePoly.zero(n4)
    for num, miss in zip(numerators, missing):
        f = f + num * num * shifted[miss] * shifted[miss]
    f = f - 2 * numerators[0] * numerators[1] * numerators[2]
    f = f - shifted[0] * shifted[0] * shifted[1] * shifted[1] * shifted[2] * shifted[2]
    g = f * f
    top = g.degree_in(0)
    coeffs = tuple(g.coefficient_in(0, j) for j in range(top + 1))
    return RadiusExpansion(homogeneous=g, coefficients=coeffs)


def radius_coefficients_symmetric(expansion: RadiusExpansion) -> bool:
    """Every r-power coefficient invariant under rotating and reversing the
    petal radii (these generate all six permutations)."""
    rotation = (1, 2, 0)
    reversal = (0, 2, 1)  # fix r1, swap r2 and r3
    for coeff in expansion.coefficients:
        if coeff.permute(rotation) != coeff or coeff.permute(reversal) != coeff:
            return False
    return True


# -- bundled result for serialization --------------------------------------------


@dataclass(frozen=True)
class FlowerPolySet:
    """A flower polynomial with optional closure square and provenance tags."""

    n: int
    pn: SparsePoly
    cn: Optional[SparsePoly] = None
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.pn.nvars != self.n:
            raise ValueError("polynomial arity does not match petal count")
        if self.cn is not None and self.cn != self.pn * self.pn:
            raise ValueError("closure polynomial is not the square of the flower polynomial")

    def to_obj(self) -> dict:
        from .ratpoly import poly_to_obj

        out = {
            "n": self.n,
            "provenance": dict(self.provenance),
            "pn": poly_to_obj(self.pn),
        }
        out["cn"] = poly_to_obj(self.cn) if self.cn is not None else None
        return out
