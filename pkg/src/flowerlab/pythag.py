"""Primitive solutions of x^2 + beta*y^2 = z^2 for square-free beta.

``generate_triples`` enumerates solutions through their witness form: a
factorization beta = b*c with b*m^2 and c*n^2 coprime gives

    x = |b*m^2 - c*n^2| / 2,  y = m*n,    z = (b*m^2 + c*n^2) / 2

when m and n share parity (only both-odd survives the coprimality filter),
and the unhalved variant x = |b*m^2 - c*n^2|, y = 2*m*n, z = b*m^2 + c*n^2
for mixed parity.  Witness combinations whose halved forms are not integers
are skipped; ``brute_force_triples`` is the exhaustive oracle that confirms
nothing is lost that way.  Distinct witnesses for one (x, y, z) are merged,
keeping every witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterator


def is_squarefree(n: int) -> bool:
    """True iff no prime square divides n (n >= 1)."""
    if n < 1:
        raise ValueError("expected a positive integer")
    if n % 4 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 2
    return True


def coprime_square_split(r: int, s: int) -> tuple[int, int]:
    """For coprime r, s with r*s a perfect square, return (m, n) with
    m^2 = r, n^2 = s and gcd(m, n) = 1."""
    if r < 1 or s < 1:
        raise ValueError("expected positive integers")
    if gcd(r, s) != 1:
        raise ValueError(f"gcd({r}, {s}) != 1")
    t = isqrt(r * s)
    if t * t != r * s:
        raise ValueError(f"{r}*{s} is not a perfect square")
    m, n = isqrt(r), isqrt(s)
    if m * m != r or n * n != s:
        # Cannot happen for coprime factors of a square; guards bad input.
        raise ValueError(f"{r} and {s} are coprime but not both squares")
    return m, n


@dataclass(frozen=True)
class Witness:
    b: int
    c: int
    m: int
    n: int
    halved: bool

    def to_obj(self) -> dict:
        return {"b": self.b, "c": self.c, "m": self.m, "n": self.n, "halved": self.halved}


@dataclass(frozen=True)
class PythSolution:
    beta: int
    x: int
    y: int
    z: int
    witnesses: tuple[Witness, ...]

    def triple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def verifies(self) -> bool:
        x, y, z = self.x, self.y, self.z
        return (
            x >= 1 and y >= 1 and z >= 1
            and x * x + self.beta * y * y == z * z
            and gcd(x, y) == 1 and gcd(y, z) == 1 and gcd(x, z) == 1
        )

    def to_obj(self) -> dict:
        return {
            "beta": self.beta,
            "x": self.x, "y": self.y, "z": self.z,
            "witnesses": [w.to_obj() for w in self.witnesses],
        }


def _factor_pairs(beta: int) -> Iterator[tuple[int, int]]:
    for b in range(1, beta + 1):
        if beta % b == 0:
            yield b, beta // b


def generate_triples(beta: int, z_bound: int) -> list[PythSolution]:
    """All primitive solutions with z <= z_bound, each with its witnesses."""
    if not is_squarefree(beta):
        raise ValueError(f"beta = {beta} is not square-free")
    if z_bound < 1:
        raise ValueError("bound must be at least 1")
    found: dict[tuple[int, int, int], list[Witness]] = {}

    def emit(x: int, y: int, z: int, witness: Witness) -> None:
        if x < 1 or z > z_bound:
            return
        if gcd(x, y) != 1 or gcd(y, z) != 1 or gcd(x, z) != 1:
            return
        found.setdefault((x, y, z), []).append(witness)

    # Both branch formulas solve the equation identically for any m, n;
    # integrality of the halved form and the primitivity filter are what
    # select the genuine witnesses, so neither branch restricts parity
    # up front.  (For even beta a same-parity pair can only appear through
    # the unhalved branch, its halved form being non-integral.)
    for b, c in _factor_pairs(beta):
        m = 1
        while b * m * m <= 2 * z_bound:
            n = 1
            while b * m * m + c * n * n <= 2 * z_bound:
                bm2, cn2 = b * m * m, c * n * n
                if gcd(bm2, cn2) == 1:
                    if (bm2 + cn2) % 2 == 0:
                        emit(abs(bm2 - cn2) // 2, m * n, (bm2 + cn2) // 2,
                             Witness(b, c, m, n, True))
                    if bm2 + cn2 <= z_bound:
                        emit(abs(bm2 - cn2), 2 * m * n, bm2 + cn2,
                             Witness(b, c, m, n, False))
                n += 1
            m += 1

    out = [
        PythSolution(beta, x, y, z, tuple(ws))
        for (x, y, z), ws in sorted(found.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1]))
    ]
    return out


def brute_force_triples(beta: int, z_bound: int) -> set[tuple[int, int, int]]:
    """Exhaustive oracle: scan x < z <= z_bound, solve for y, keep pairwise
    coprime solutions."""
    if z_bound < 1:
        raise ValueError("bound must be at least 1")
    out: set[tuple[int, int, int]] = set()
    for z in range(2, z_bound + 1):
        zz = z * z
        for x in range(1, z):
            t = zz - x * x
            q, r = divmod(t, beta)
            if r:
                continue
            y = isqrt(q)
            if y < 1 or y * y != q:
                continue
            if gcd(x, y) == 1 and gcd(y, z) == 1 and gcd(x, z) == 1:
                out.add((x, y, z))
    return out
