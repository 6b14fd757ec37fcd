"""Exact arithmetic in the cyclotomic field Q(zeta_N).

An element is stored on the power basis 1, zeta, ..., zeta^(phi(N)-1) after
reduction modulo the N-th cyclotomic polynomial.  Internally the rational
coefficient vector is kept as an integer numerator vector over one positive
common denominator, normalized so that the representation is canonical and
equality is a plain tuple comparison.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class LevelMismatchError(ValueError):
    """Raised when elements of different cyclotomic levels are combined."""


def _check_level(N: int) -> None:
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"cyclotomic level must be a positive integer, got {N!r}")


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic; coefficient lists are low-degree first
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dn]
        q[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_N, constant term first.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    _check_level(N)
    poly = [-1] + [0] * (N - 1) + [1]
    for d in _divisors(N)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


class _Field:
    """Per-level tables: phi(N) and x^i mod Phi_N as integer vectors."""

    def __init__(self, N: int):
        self.N = N
        self.phi_poly = cyclotomic_polynomial(N)
        self.deg = len(self.phi_poly) - 1
        size = max(N, 2 * self.deg - 1)
        rows = []
        cur = [0] * self.deg
        cur[0] = 1
        for _ in range(size):
            rows.append(tuple(cur))
            # multiply by x and reduce with x^deg = -sum(phi_i x^i)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(self.deg):
                    cur[j] -= top * self.phi_poly[j]
        self.powers = rows

    def reduce(self, poly: Sequence[int]) -> list[int]:
        deg = self.deg
        out = list(poly[:deg]) + [0] * max(0, deg - len(poly))
        for i in range(deg, len(poly)):
            c = poly[i]
            if c:
                row = self.powers[i] if i < len(self.powers) else self.power(i)
                for j in range(deg):
                    out[j] += c * row[j]
        return out

    def power(self, e: int) -> tuple[int, ...]:
        return self.powers[e % self.N]


@lru_cache(maxsize=None)
def field(N: int) -> _Field:
    _check_level(N)
    return _Field(N)


def degree(N: int) -> int:
    return field(N).deg


def _unit_check(lam: int, N: int) -> int:
    if math.gcd(lam, N) != 1:
        raise ValueError(f"{lam} is not a unit modulo {N}")
    return lam % N


@dataclass(frozen=True, slots=True)
class CycElement:
    level: int
    nums: tuple[int, ...]
    den: int

    # -- construction ---------------------------------------------------
    @classmethod
    def _make(cls, N: int, nums: Sequence[int], den: int = 1) -> "CycElement":
        if den < 0:
            nums, den = [-c for c in nums], -den
        g = math.gcd(den, *nums)
        if g > 1:
            nums = [c // g for c in nums]
            den //= g
        return cls(N, tuple(nums), den)

    @classmethod
    def from_coeffs(cls, N: int, coeffs: Iterable[Scalar]) -> "CycElement":
        """Element sum(c_i zeta_N^i); any length, reduced modulo Phi_N."""
        fr = [Fraction(c) for c in coeffs]
        den = math.lcm(1, *(c.denominator for c in fr))
        ints = [c.numerator * (den // c.denominator) for c in fr]
        return cls._make(N, field(N).reduce(ints), den)

    @classmethod
    def from_rational(cls, N: int, q: Scalar) -> "CycElement":
        q = Fraction(q)
        nums = [0] * degree(N)
        nums[0] = q.numerator
        return cls._make(N, nums, q.denominator)

    @classmethod
    def zero(cls, N: int) -> "CycElement":
        return cls(N, (0,) * degree(N), 1)

    @classmethod
    def one(cls, N: int) -> "CycElement":
        return cls.from_rational(N, 1)

    @classmethod
    def zeta(cls, N: int, power: int = 1) -> "CycElement":
        return cls(N, field(N).power(power), 1)

    # -- accessors ------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def is_integral(self) -> bool:
        """True when the element lies in Z[zeta_N]."""
        return self.den == 1

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def to_complex(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.level)
        return sum(c * w**i for i, c in enumerate(self.nums) if c) / self.den

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "CycElement":
        if isinstance(other, CycElement):
            if other.level != self.level:
                raise LevelMismatchError(
                    f"levels {self.level} and {other.level} differ; embed explicitly")
            return other
        if isinstance(other, (int, Fraction)):
            return CycElement.from_rational(self.level, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.den * o.den // math.gcd(self.den, o.den)
        s, t = d // self.den, d // o.den
        return CycElement._make(
            self.level, [a * s + b * t for a, b in zip(self.nums, o.nums)], d)

    __radd__ = __add__

    def __neg__(self) -> "CycElement":
        return CycElement(self.level, tuple(-c for c in self.nums), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycElement._make(
                self.level, [c * q.numerator for c in self.nums], self.den * q.denominator)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.nums, o.nums
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycElement._make(self.level, field(self.level).reduce(prod), self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        s = _poly_inverse_mod([Fraction(c, self.den) for c in self.nums],
                              [Fraction(c) for c in cyclotomic_polynomial(self.level)])
        return CycElement.from_coeffs(self.level, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int) -> "CycElement":
        if e < 0:
            return self.inverse() ** (-e)
        result, base = CycElement.one(self.level), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- automorphisms and embeddings ----------------------------------
    def galois(self, lam: int) -> "CycElement":
        return galois_apply(lam, self)

    def embed(self, N: int) -> "CycElement":
        """Image under Q(zeta_M) -> Q(zeta_N), zeta_M -> zeta_N^(N/M), for M | N."""
        if N % self.level:
            raise ValueError(f"cannot embed level {self.level} into level {N}")
        step = N // self.level
        poly = [0] * N
        for i, c in enumerate(self.nums):
            poly[(i * step) % N] += c
        return CycElement._make(N, field(N).reduce(poly), self.den)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"CycElement({self.level}, {format_element(self)!r})"


def format_element(a: CycElement) -> str:
    parts = []
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        z = "" if i == 0 else (f"z{a.level}" if i == 1 else f"z{a.level}^{i}")
        if not z:
            mag = str(abs(c))
        elif abs(c) == 1:
            mag = z
        else:
            mag = f"{abs(c)}*{z}"
        if not parts:
            parts.append(mag if c > 0 else "-" + mag)
        else:
            parts.append((" + " if c > 0 else " - ") + mag)
    return "".join(parts) or "0"


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _poly_trim(q), _poly_trim(a[: len(b) - 1])


def _poly_sub_mul(a: list[Fraction], q: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        for j, y in enumerate(b):
            out[i + j] -= x * y
    return _poly_trim(out)


def _poly_inverse_mod(a: list[Fraction], m: list[Fraction]) -> list[Fraction]:
    """s with s*a = 1 mod m, via the extended Euclidean algorithm in Q[x]."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


def galois_apply(lam: int, a: CycElement) -> CycElement:
    """Apply the automorphism zeta_N -> zeta_N^lam."""
    N = a.level
    lam = _unit_check(lam, N)
    if lam == 1 % N:
        return a
    poly = [0] * N
    for i, c in enumerate(a.nums):
        if c:
            poly[(i * lam) % N] += c
    return CycElement._make(N, field(N).reduce(poly), a.den)


def units(N: int) -> list[int]:
    """Representatives of (Z/NZ)^x in [1, N]; [1] for N = 1."""
    return [u for u in range(1, N + 1) if math.gcd(u, N) == 1 and (u < N or N == 1)]


def inverse_mod(a: int, N: int) -> int:
    _unit_check(a, N)
    return pow(a, -1, N) if N > 1 else 0


# -- matrices and the finite Fourier transform ---------------------------

@dataclass(frozen=True)
class CycMatrix:
    level: int
    entries: tuple[tuple[CycElement, ...], ...]

    def __post_init__(self):
        if any(e.level != self.level for row in self.entries for e in row):
            raise LevelMismatchError("matrix entries must share the matrix level")

    @property
    def size(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if other.level != self.level:
            raise LevelMismatchError("matrix levels differ")
        n = self.size
        zero = CycElement.zero(self.level)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for t in range(n):
                    acc = acc + self.entries[i][t] * other.entries[t][j]
                row.append(acc)
            rows.append(tuple(row))
        return CycMatrix(self.level, tuple(rows))

    def scale(self, c: Scalar) -> "CycMatrix":
        return CycMatrix(self.level, tuple(tuple(e * c for e in row) for row in self.entries))

    def is_identity(self) -> bool:
        one, zero = CycElement.one(self.level), CycElement.zero(self.level)
        return all(e == (one if i == j else zero)
                   for i, row in enumerate(self.entries) for j, e in enumerate(row))


def dft_matrices(N: int) -> tuple[CycMatrix, CycMatrix]:
    """The Fourier transform on Z/NZ and its inverse, exactly.

    F[j][k] = zeta^(jk), F_inv[j][k] = zeta^(-jk) / N.
    """
    _check_level(N)
    fwd = tuple(tuple(CycElement.zeta(N, j * k) for k in range(N)) for j in range(N))
    inv = tuple(tuple(CycElement.zeta(N, -j * k) / N for k in range(N)) for j in range(N))
    return CycMatrix(N, fwd), CycMatrix(N, inv)


# -- JSON ------------------------------------------------------------------

def element_to_json(a: CycElement) -> dict:
    return {"N": a.level, "coeffs": [[str(c.numerator), str(c.denominator)] for c in a.coeffs]}


def element_from_json(obj: dict) -> CycElement:
    N = int(obj["N"])
    coeffs = obj["coeffs"]
    if len(coeffs) != degree(N):
        raise ValueError(f"expected {degree(N)} coefficients for level {N}, got {len(coeffs)}")
    return CycElement.from_coeffs(N, [Fraction(int(p), int(q)) for p, q in coeffs])
