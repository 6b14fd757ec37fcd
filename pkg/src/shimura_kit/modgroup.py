"""SL2(Z), its reductions SL2(Z/NZ), lifting, and the g -> g_lambda twist."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Optional


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class UniMat:
    """Integer matrix (a b; c d) with determinant exactly 1."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant of {self.entries} is not 1")

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "UniMat") -> "UniMat":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return UniMat(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "UniMat":
        return UniMat(self.d, -self.b, -self.c, self.a)

    def act(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def automorphy(self, tau: complex) -> complex:
        return self.c * tau + self.d

    def __str__(self) -> str:
        return f"({self.a} {self.b}; {self.c} {self.d})"


@dataclass(frozen=True)
class ResMat:
    """Matrix over Z/NZ with determinant 1 mod N; entries kept in [0, N)."""

    modulus: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        N = self.modulus
        if N < 1:
            raise ValueError("modulus must be positive")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % N)
        if (self.a * self.d - self.b * self.c - 1) % N:
            raise ValueError(f"determinant of {self.entries} is not 1 mod {N}")

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "ResMat") -> "ResMat":
        if other.modulus != self.modulus:
            raise ValueError("moduli differ")
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return ResMat(self.modulus, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "ResMat":
        return ResMat(self.modulus, self.d, -self.b, -self.c, self.a)

    def __str__(self) -> str:
        return f"({self.a} {self.b}; {self.c} {self.d}) mod {self.modulus}"


S = UniMat(0, -1, 1, 0)
T = UniMat(1, 1, 0, 1)
IDENTITY = UniMat(1, 0, 0, 1)


def reduce_mod(g: UniMat, N: int) -> ResMat:
    return ResMat(N, g.a, g.b, g.c, g.d)


def _coprime_column(c: int, d: int, N: int) -> tuple[int, int]:
    # c == 0 cannot stay 0 unless d lifts to +-1, so move it to N
    c1 = c if c else N
    k = 0
    while True:
        for dk in (d + k * N, d - k * N) if k else (d,):
            if math.gcd(c1, dk) == 1:
                return c1, dk
        k += 1


def sl2_lift(gbar: ResMat) -> UniMat:
    """Some g in SL2(Z) reducing to gbar.

    Centered representatives are returned when they already have determinant
    1.  Otherwise the bottom row is lifted to a coprime pair first and the top
    row is corrected inside its residue class using a Bezout relation.
    """
    N = gbar.modulus
    a, b, c, d = gbar.entries
    if N == 1:
        return IDENTITY
    small = [x - N if 2 * x > N else x for x in gbar.entries]
    if small[0] * small[3] - small[1] * small[2] == 1:
        return UniMat(*small)
    c1, d1 = _coprime_column(c, d, N)
    _, x, y = _egcd(d1, c1)
    # x*d1 + y*c1 = 1, so (a0, b0) = (x, -y) solves a0*d1 - b0*c1 = 1
    a0, b0 = x, -y
    u, v = -b0, a0  # u*c1 + v*d1 = 1
    t = (a - a0) * u + (b - b0) * v
    a1, b1 = a0 + t * c1, b0 + t * d1
    # shrink the top row by a multiple of N*(c1, d1); stays in the residue class
    s = _round_div(a1 * c1 + b1 * d1, N * (c1 * c1 + d1 * d1))
    a1, b1 = a1 - s * N * c1, b1 - s * N * d1
    g = UniMat(a1, b1, c1, d1)
    assert reduce_mod(g, N) == gbar
    return g


def _round_div(p: int, q: int) -> int:
    return (2 * p + q) // (2 * q)


def principal_element(N: int, rng: random.Random, length: int = 3) -> UniMat:
    """A pseudorandom non-identity element of Gamma(N)."""
    gens = [UniMat(1, N, 0, 1), UniMat(1, 0, N, 1)]
    gens += [g.inverse() for g in gens]
    g = gens[rng.randrange(2)]
    for _ in range(length - 1):
        g = g @ gens[rng.randrange(4)]
    return g


def alternate_lift(gbar: ResMat, rng: Optional[random.Random] = None) -> UniMat:
    """A lift of gbar different from sl2_lift(gbar), when N > 1."""
    base = sl2_lift(gbar)
    if gbar.modulus == 1:
        return base @ T
    rng = rng or random.Random(0)
    while True:
        g = base @ principal_element(gbar.modulus, rng)
        if g != base:
            return g


def theorem_target(gbar: ResMat, lam: int) -> ResMat:
    """(a, lam*b; lam^-1*c, d) mod N."""
    N = gbar.modulus
    if math.gcd(lam, N) != 1:
        raise ValueError(f"{lam} is not a unit modulo {N}")
    linv = pow(lam, -1, N) if N > 1 else 0
    return ResMat(N, gbar.a, lam * gbar.b, linv * gbar.c, gbar.d)


def g_lambda(g: UniMat, N: int, lam: int) -> UniMat:
    return sl2_lift(theorem_target(reduce_mod(g, N), lam))


def diag_unit(N: int, lam: int) -> tuple[int, int, int, int]:
    """Entries of diag(1, lam) mod N (a GL2 matrix, not in SL2)."""
    return (1 % N, 0, 0, lam % N)


def mat_mul_mod(x: tuple, y: tuple, N: int) -> tuple[int, int, int, int]:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % N, (a * f + b * h) % N, (c * e + d * g) % N, (c * f + d * h) % N)


def sl2_order(N: int) -> int:
    order, m, p = N ** 3, N, 2
    while p <= m:
        if m % p == 0:
            order = order * (p * p - 1) // (p * p)
            while m % p == 0:
                m //= p
        p += 1
    return order


@lru_cache(maxsize=32)
def _sl2_entries(N: int) -> tuple[tuple[int, int, int, int], ...]:
    out = []
    for a, b, c, d in product(range(N), repeat=4):
        if (a * d - b * c) % N == 1 % N:
            out.append((a, b, c, d))
    return tuple(out)


def sl2_elements(N: int) -> Iterator[ResMat]:
    """Every element of SL2(Z/NZ), in lexicographic order of (a, b, c, d)."""
    for e in _sl2_entries(N):
        yield ResMat(N, *e)


def random_sl2z(rng: random.Random, steps: int = 6, bound: int = 3) -> UniMat:
    """A pseudorandom word in S and powers of T."""
    g = IDENTITY
    for _ in range(steps):
        k = rng.randint(-bound, bound)
        g = g @ UniMat(1, k, 0, 1) @ S
    return g


def random_resmat(N: int, rng: random.Random) -> ResMat:
    elements = _sl2_entries(N)
    return ResMat(N, *elements[rng.randrange(len(elements))])


# -- parsing and JSON --------------------------------------------------------

def parse_matrix(text: str) -> tuple[int, int, int, int]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"expected four comma-separated integers, got {text!r}")
    return tuple(int(p) for p in parts)  # type: ignore[return-value]


def matrix_to_json(g) -> dict:
    return {k: str(v) for k, v in zip("abcd", g.entries)}


def unimat_from_json(obj: dict) -> UniMat:
    return UniMat(*(int(obj[k]) for k in "abcd"))
