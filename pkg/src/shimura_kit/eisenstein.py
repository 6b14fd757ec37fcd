"""Level-N Eisenstein series of weight k >= 3 with coefficients in Q(zeta_N).

For v = (c1, c2) in (Z/NZ)^2 the normalized series is

    E_k^v(tau) = N^k (k-1)! / (-2 pi i)^k * sum'_{(m, n) = v mod N} (m tau + n)^-k,

a series in q^(1/N).  With this normalization all Fourier coefficients lie
in Q(zeta_N), the slash action permutes the vectors (E^v | g = E^(v g)) and
the Galois action twists the second entry (sigma_lam E^(c1, c2) = E^(c1, lam c2)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cyclotomic import CycElement, field
from .modgroup import ResMat
from .qexpansion import QExpansion


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return tuple(B)


def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = -1/2."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _bernoulli_table(max(k, 16))[k]


def bernoulli_poly_eval(k: int, x) -> Fraction:
    x = Fraction(x)
    B = _bernoulli_table(max(k, 16))
    return sum((math.comb(k, j) * B[j] * x ** (k - j) for j in range(k + 1)), Fraction(0))


@dataclass(frozen=True, order=True)
class EisSymbol:
    level: int
    weight: int
    c1: int
    c2: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.weight < 3:
            raise ValueError("Eisenstein symbols need weight >= 3")
        object.__setattr__(self, "c1", self.c1 % self.level)
        object.__setattr__(self, "c2", self.c2 % self.level)

    @property
    def vector(self) -> tuple[int, int]:
        return (self.c1, self.c2)

    def __str__(self) -> str:
        return f"E{self.weight}[{self.c1},{self.c2}]"


def constant_term(sym: EisSymbol) -> CycElement:
    N, k, c1, c2 = sym.level, sym.weight, sym.c1, sym.c2
    if c1 % N:
        return CycElement.zero(N)
    # coefficient of zeta^i is collected at index (-j*c2) mod N
    poly = [Fraction(0)] * N
    for j in range(N):
        poly[(-j * c2) % N] += bernoulli_poly_eval(k, Fraction(j, N))
    scale = Fraction((-1) ** (k + 1) * N ** (k - 1), k)
    return CycElement.from_coeffs(N, [scale * p for p in poly])


@lru_cache(maxsize=4096)
def eisenstein_qexp(sym: EisSymbol, prec: int) -> QExpansion:
    """Exact expansion of E_k^v in q^(1/N) on exponents [0, prec)."""
    if prec < 1:
        raise ValueError("prec must be at least 1")
    N, k, c1, c2 = sym.level, sym.weight, sym.c1, sym.c2
    sign = -1 if k % 2 else 1
    # acc[l][e] collects the integer coefficient of zeta^e in the l-th term
    acc = [[0] * N for _ in range(prec)]
    for m in range(1, prec):
        plus, minus = (m - c1) % N == 0, (m + c1) % N == 0
        if not (plus or minus):
            continue
        for d in range(1, (prec - 1) // m + 1):
            dk = d ** (k - 1)
            row = acc[d * m]
            if plus:
                row[(d * c2) % N] += dk
            if minus:
                row[(-d * c2) % N] += sign * dk
    fl = field(N)
    coeffs = [constant_term(sym)]
    coeffs += [CycElement._make(N, fl.reduce(acc[l])) for l in range(1, prec)]
    return QExpansion(N, N, 0, prec, tuple(coeffs))


def slash_symbol(sym: EisSymbol, g: ResMat) -> EisSymbol:
    """E^v | g = E^(v g), v a row vector."""
    if g.modulus != sym.level:
        raise ValueError("modulus mismatch")
    c1, c2 = sym.c1, sym.c2
    return EisSymbol(sym.level, sym.weight, c1 * g.a + c2 * g.c, c1 * g.b + c2 * g.d)


def galois_symbol(sym: EisSymbol, lam: int) -> EisSymbol:
    if math.gcd(lam, sym.level) != 1:
        raise ValueError(f"{lam} is not a unit modulo {sym.level}")
    return EisSymbol(sym.level, sym.weight, sym.c1, lam * sym.c2)


def negate_symbol(sym: EisSymbol) -> EisSymbol:
    return EisSymbol(sym.level, sym.weight, -sym.c1, -sym.c2)


# -- numeric lattice sums ------------------------------------------------------

def normalization(N: int, k: int) -> complex:
    return N**k * math.factorial(k - 1) / (-2j * math.pi) ** k


def _class_range(c: int, N: int, M: int) -> np.ndarray:
    r = np.arange(-M, M + 1)
    return r[(r - c) % N == 0]


def lattice_sum_numeric(sym: EisSymbol, tau: complex, cutoff: int) -> complex:
    """Normalized sum of (m tau + n)^-k over (m, n) = v mod N with |m|, |n| <= cutoff.

    Plain box truncation; the error decays like cutoff^(2-k).
    """
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    N, k = sym.level, sym.weight
    if cutoff < N:
        raise ValueError("cutoff must be at least N")
    ms = _class_range(sym.c1, N, cutoff)
    ns = _class_range(sym.c2, N, cutoff)
    total = 0j
    # row blocks keep memory bounded
    for start in range(0, len(ms), 256):
        z = ms[start:start + 256, None] * tau + ns[None, :]
        z = z[z != 0]
        total += np.sum(z ** (-k))
    return complex(total * normalization(N, k))


def richardson_exponent(k: int) -> int:
    # the leading tail term over a centrally symmetric box is even in 1/M
    return k - 2 if k % 2 == 0 else k - 1


def lattice_sum_extrapolated(sym: EisSymbol, tau: complex, cutoff: int) -> complex:
    """Box sums at M and M/2 (M the largest multiple of 2N <= cutoff) combined
    by one Richardson step against the leading truncation term."""
    N = sym.level
    M = cutoff - cutoff % (2 * N)
    if M < 2 * N:
        raise ValueError("cutoff must be at least 2N")
    full = lattice_sum_numeric(sym, tau, M)
    half = lattice_sum_numeric(sym, tau, M // 2)
    r = 2 ** richardson_exponent(sym.weight)
    return (r * full - half) / (r - 1)


def terms_for(tau: complex, width: int, weight: int, digits: int = 17) -> int:
    """Number of q^(1/width) terms after which the tail is below ~10^-digits."""
    y = complex(tau).imag
    if y <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    # |a_l| grows at most like l^weight; solve exp(-2 pi y l / w) l^weight < 10^-digits
    n = 8
    while -2 * math.pi * y * n / width + weight * math.log(n) > -digits * math.log(10):
        n += 8
    return n
