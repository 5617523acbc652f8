"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent tuples to nonzero rational coefficients:

    x1^2*x2 + 3/2   (2 variables)  ->  {(2, 1): 1, (0, 0): Fraction(3, 2)}

Coefficients are ``fractions.Fraction`` values, stored as plain ``int``
whenever the denominator is 1 (ints and Fractions mix freely in arithmetic
and compare/hash identically, and integer fast paths matter in the big
products this package computes).  The zero polynomial is an empty term map
that still remembers its variable count, so ring arity survives arithmetic
with 0.

Canonical term order is graded lexicographic, descending: higher total
degree first, ties broken lexicographically on the exponent tuple with the
first variable strongest.  Serialization always uses this order, so two
equal polynomials serialize identically.

All values are immutable after construction and every operation is a pure
function; instances can be shared freely between threads or processes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponents = tuple[int, ...]
Coeff = int | Fraction

# Exponents far beyond any computable polynomial here; catches plumbing bugs
# (e.g. an exponent that was accidentally multiplied instead of added).
_MAX_EXPONENT = 1 << 62


def normalize_coeff(value: Coeff) -> Coeff:
    """Collapse integral Fractions to int; leave everything else alone."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational from a string like ``-3``, ``3/4`` or ``-3/4``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value: Coeff) -> str:
    """Canonical string for a rational: ``p`` when integral, else ``p/q``."""
    return str(Fraction(value))


def _grlex_key(exps: Exponents) -> tuple[int, Exponents]:
    return (sum(exps), exps)


class SparsePoly:
    """Immutable sparse polynomial over the rationals."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Coeff] | None = None):
        if nvars < 0:
            raise ValueError("variable count must be non-negative")
        clean: dict[Exponents, Coeff] = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise ValueError(
                        f"exponent tuple {exps} does not match variable count {nvars}"
                    )
                for e in exps:
                    if not isinstance(e, int) or e < 0:
                        raise ValueError(f"exponents must be non-negative ints: {exps}")
                    if e > _MAX_EXPONENT:
                        raise ValueError(f"exponent overflow: {e}")
                coeff = normalize_coeff(coeff if isinstance(coeff, (int, Fraction)) else Fraction(coeff))
                if coeff != 0:
                    clean[exps] = coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("SparsePoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, value: Coeff) -> "SparsePoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "SparsePoly":
        return cls.const(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "SparsePoly":
        """The polynomial x_index (0-based index)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponents, Coeff]) -> "SparsePoly":
        # Internal: terms must already be canonical (validated exponents,
        # normalized nonzero coefficients).
        self = object.__new__(cls)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", terms)
        return self

    # -- inspection --------------------------------------------------------

    def items(self) -> Iterable[tuple[Exponents, Coeff]]:
        """Read-only view of (exponents, coefficient) pairs (unordered)."""
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[Exponents, Coeff]]:
        """Terms in canonical (graded-lex descending) order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exps: Sequence[int]) -> Coeff:
        return self._terms.get(tuple(exps), 0)

    def constant(self) -> Coeff:
        return self._terms.get((0,) * self.nvars, 0)

    def degree_in(self, index: int) -> int:
        """Largest exponent of the given variable; 0 if the variable is absent."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        if not self._terms:
            return 0
        return max(e[index] for e in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def coefficient_in(self, index: int, power: int) -> "SparsePoly":
        """Coefficient of x_index^power, as a polynomial in the other variables."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        out: dict[Exponents, Coeff] = {}
        for exps, coeff in self._terms.items():
            if exps[index] == power:
                out[exps[:index] + exps[index + 1 :]] = coeff
        return SparsePoly._raw(self.nvars - 1, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"SparsePoly({self.nvars}, {self.pretty()!r})"

    # -- ring operations ----------------------------------------------------

    def _check_arity(self, other: "SparsePoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable-count mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(self.nvars, other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check_arity(other)
        out = dict(self._terms)
        for exps, coeff in other._terms.items():
            new = out.get(exps, 0) + coeff
            if new == 0:
                out.pop(exps, None)
            else:
                out[exps] = normalize_coeff(new)
        return SparsePoly._raw(self.nvars, out)

    def __radd__(self, other) -> "SparsePoly":
        return self.__add__(other)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.const(self.nvars, other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.__add__(-other)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self).__add__(other)

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return SparsePoly.zero(self.nvars)
            other = normalize_coeff(other)
            return SparsePoly._raw(
                self.nvars,
                {e: normalize_coeff(c * other) for e, c in self._terms.items()},
            )
        if not isinstance(other, SparsePoly):
            return NotImplemented
        self._check_arity(other)
        out: dict[Exponents, Coeff] = {}
        items_b = list(other._terms.items())
        for ea, ca in self._terms.items():
            for eb, cb in items_b:
                key = tuple(map(int.__add__, ea, eb))
                new = out.get(key, 0) + ca * cb
                if new == 0:
                    out.pop(key, None)
                else:
                    out[key] = new
        for key, val in out.items():
            out[key] = normalize_coeff(val)
        return SparsePoly._raw(self.nvars, out)

    def __rmul__(self, other) -> "SparsePoly":
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "SparsePoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = SparsePoly.one(self.nvars)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Sequence[Coeff]) -> Fraction:
        """Exact value at a rational point; a ring homomorphism Q[x] -> Q."""
        if len(point) != self.nvars:
            raise ValueError(
                f"point length {len(point)} does not match variable count {self.nvars}"
            )
        values = [v if isinstance(v, (int, Fraction)) else Fraction(v) for v in point]
        powers: list[dict[int, Coeff]] = [{} for _ in range(self.nvars)]
        total: Coeff = 0
        for exps, coeff in self._terms.items():
            term = coeff
            for i, e in enumerate(exps):
                if e:
                    cache = powers[i]
                    p = cache.get(e)
                    if p is None:
                        p = values[i] ** e
                        cache[e] = p
                    term = term * p
            total = total + term
        return Fraction(total)

    def evaluate_float(self, point: Sequence[float]) -> float:
        """Floating-point value at a real point."""
        if len(point) != self.nvars:
            raise ValueError(
                f"point length {len(point)} does not match variable count {self.nvars}"
            )
        values = [float(v) for v in point]
        total = 0.0
        for exps, coeff in self._terms.items():
            term = float(coeff)
            for i, e in enumerate(exps):
                if e:
                    term *= values[i] ** e
            total += term
        return total

    def substitute(self, index: int, replacement: "SparsePoly") -> "SparsePoly":
        """Replace x_index by a polynomial of the same arity, fully expanded."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        self._check_arity(replacement)
        powers: dict[int, SparsePoly] = {0: SparsePoly.one(self.nvars)}

        def power(k: int) -> SparsePoly:
            p = powers.get(k)
            if p is None:
                p = power(k - 1) * replacement
                powers[k] = p
            return p

        result = SparsePoly.zero(self.nvars)
        for exps, coeff in self._terms.items():
            k = exps[index]
            rest = exps[:index] + (0,) + exps[index + 1 :]
            result = result + power(k) * SparsePoly._raw(self.nvars, {rest: coeff})
        return result

    def specialize(self, index: int, value: Coeff) -> "SparsePoly":
        """Set x_index to a rational constant and drop that variable slot."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range")
        value = normalize_coeff(value if isinstance(value, (int, Fraction)) else Fraction(value))
        powers: dict[int, Coeff] = {0: 1}
        out: dict[Exponents, Coeff] = {}
        for exps, coeff in self._terms.items():
            k = exps[index]
            p = powers.get(k)
            if p is None:
                p = value**k
                powers[k] = p
            key = exps[:index] + exps[index + 1 :]
            new = out.get(key, 0) + coeff * p
            if new == 0:
                out.pop(key, None)
            else:
                out[key] = normalize_coeff(new)
        return SparsePoly._raw(self.nvars - 1, out)

    def embed(self, nvars: int) -> "SparsePoly":
        """Reinterpret in a larger ring; new trailing variables are unused."""
        if nvars < self.nvars:
            raise ValueError("cannot embed into a smaller ring")
        if nvars == self.nvars:
            return self
        pad = (0,) * (nvars - self.nvars)
        return SparsePoly._raw(nvars, {e + pad: c for e, c in self._terms.items()})

    def permute(self, perm: Sequence[int]) -> "SparsePoly":
        """Apply a variable permutation: result(x_1..x_n) = self(x_perm[0]+1, ...).

        ``perm`` must be a bijection of 0..n-1; slot i of self is moved to
        slot perm[i] of the result.
        """
        if len(perm) != self.nvars or sorted(perm) != list(range(self.nvars)):
            raise ValueError(f"not a bijection on {self.nvars} variables: {perm!r}")
        out: dict[Exponents, Coeff] = {}
        for exps, coeff in self._terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exps):
                new[perm[i]] = e
            out[tuple(new)] = coeff
        return SparsePoly._raw(self.nvars, out)

    # -- display -------------------------------------------------------------

    def pretty(self, var_names: Sequence[str] | None = None) -> str:
        """Plain-text form, e.g. ``x1^2+x2^2+x3^2-2*x1*x2*x3-1``."""
        if not self._terms:
            return "0"
        names = list(var_names) if var_names else default_var_names(self.nvars)
        if len(names) != self.nvars:
            raise ValueError("variable name list has wrong length")
        parts: list[str] = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            negative = coeff < 0
            mag = -coeff if negative else coeff
            if mono:
                body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            sign = "-" if negative else ("" if not parts else "+")
            parts.append(sign + body)
        return "".join(parts)


def default_var_names(nvars: int) -> list[str]:
    return [f"x{i + 1}" for i in range(nvars)]


# -- JSON serialization -------------------------------------------------------
#
# Wire format:
#   {"vars": ["x1", ...], "terms": [{"c": "<p>" or "<p>/<q>", "e": [e1, ...]}]}
# with terms in graded-lex descending order and canonical fraction strings.


def poly_to_obj(poly: SparsePoly, var_names: Sequence[str] | None = None) -> dict:
    names = list(var_names) if var_names else default_var_names(poly.nvars)
    if len(names) != poly.nvars:
        raise ValueError("variable name list has wrong length")
    return {
        "vars": names,
        "terms": [
            {"c": format_rational(c), "e": list(e)} for e, c in poly.sorted_terms()
        ],
    }


def poly_from_obj(obj: Mapping) -> tuple[SparsePoly, list[str]]:
    try:
        names = [str(v) for v in obj["vars"]]
        raw_terms = obj["terms"]
    except (KeyError, TypeError) as exc:
        raise ValueError("polynomial object needs 'vars' and 'terms'") from exc
    nvars = len(names)
    terms: dict[Exponents, Coeff] = {}
    for entry in raw_terms:
        coeff = parse_rational(str(entry["c"]))
        exps = tuple(int(e) for e in entry["e"])
        if exps in terms:
            raise ValueError(f"duplicate monomial in serialized polynomial: {exps}")
        terms[exps] = coeff
    return SparsePoly(nvars, terms), names


def poly_dumps(poly: SparsePoly, var_names: Sequence[str] | None = None) -> str:
    return json.dumps(poly_to_obj(poly, var_names), separators=(",", ":"))


def poly_loads(text: str) -> tuple[SparsePoly, list[str]]:
    return poly_from_obj(json.loads(text))


def random_poly(rng, nvars: int, max_terms: int = 5, max_exp: int = 3,
                coeff_range: int = 6) -> SparsePoly:
    """Small random polynomial for property tests (exercises negative,
    fractional and zero coefficients)."""
    terms: dict[Exponents, Coeff] = {}
    for _ in range(rng.randrange(max_terms + 1)):
        exps = tuple(rng.randrange(max_exp + 1) for _ in range(nvars))
        num = rng.randrange(-coeff_range, coeff_range + 1)
        den = rng.randrange(1, 4)
        terms[exps] = terms.get(exps, 0) + Fraction(num, den)
    return SparsePoly(nvars, terms)
