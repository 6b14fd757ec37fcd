"""Truncated Laurent series in q^(1/w) with coefficients in Q(zeta_N).

A :class:`QExpansion` knows its coefficients exactly on the exponent range
``[order_min, prec)``; everything below ``order_min`` is zero and everything
from ``prec`` on is unknown.  Operations propagate that range honestly, and
comparisons report the range they actually certified.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cyclotomic import (
    CycElement,
    LevelMismatchError,
    degree,
    element_from_json,
    element_to_json,
    field,
    galois_apply,
)


@dataclass(frozen=True)
class QExpansion:
    level: int
    width: int
    order_min: int
    prec: int
    coeffs: tuple[CycElement, ...]

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be positive")
        if self.prec <= self.order_min:
            raise ValueError("prec must exceed order_min")
        if len(self.coeffs) != self.prec - self.order_min:
            raise ValueError("coefficient count must equal prec - order_min")
        if any(c.level != self.level for c in self.coeffs):
            raise LevelMismatchError("all coefficients must share the series level")

    # -- construction ---------------------------------------------------
    @classmethod
    def from_list(cls, level: int, width: int, coeffs: Sequence, order_min: int = 0,
                  prec: Optional[int] = None) -> "QExpansion":
        """Build from CycElements or rationals; missing trailing terms are zero."""
        if prec is None:
            prec = order_min + len(coeffs)
        out = []
        for c in list(coeffs)[: prec - order_min]:
            out.append(c if isinstance(c, CycElement) else CycElement.from_rational(level, c))
        out += [CycElement.zero(level)] * (prec - order_min - len(out))
        return cls(level, width, order_min, prec, tuple(out))

    @classmethod
    def zero(cls, level: int, width: int, prec: int, order_min: int = 0) -> "QExpansion":
        return cls.from_list(level, width, [], order_min, prec)

    @classmethod
    def constant(cls, c, level: int, width: int, prec: int) -> "QExpansion":
        return cls.from_list(level, width, [c], 0, prec)

    # -- access ---------------------------------------------------------
    def __getitem__(self, n: int) -> CycElement:
        """Coefficient of q^(n/w)."""
        if n >= self.prec:
            raise IndexError(f"exponent {n} is beyond the known precision {self.prec}")
        if n < self.order_min:
            return CycElement.zero(self.level)
        return self.coeffs[n - self.order_min]

    @property
    def exponents(self) -> range:
        return range(self.order_min, self.prec)

    def valuation(self) -> Optional[int]:
        for n, c in zip(self.exponents, self.coeffs):
            if not c.is_zero():
                return n
        return None

    def truncate(self, prec: int) -> "QExpansion":
        prec = min(prec, self.prec)
        return QExpansion(self.level, self.width, self.order_min, prec,
                          self.coeffs[: prec - self.order_min])

    # -- width normalization -------------------------------------------
    def rescale(self, width: int) -> "QExpansion":
        """Same series written in q^(1/width); width must be a multiple of self.width."""
        if width % self.width:
            raise ValueError(f"width {width} is not a multiple of {self.width}")
        r = width // self.width
        if r == 1:
            return self
        zero = CycElement.zero(self.level)
        out = []
        for c in self.coeffs:
            out.append(c)
            out.extend([zero] * (r - 1))
        # the last known exponent n maps to r*n; r*prec is the first unknown one
        return QExpansion(self.level, width, r * self.order_min, r * self.prec, tuple(out))

    def _aligned(self, other: "QExpansion") -> tuple["QExpansion", "QExpansion"]:
        if other.level != self.level:
            raise LevelMismatchError(
                f"series levels {self.level} and {other.level} differ")
        w = math.lcm(self.width, other.width)
        return self.rescale(w), other.rescale(w)

    # -- ring operations -----------------------------------------------
    def __add__(self, other):
        if not isinstance(other, QExpansion):
            if isinstance(other, (int, Fraction, CycElement)):
                return self + QExpansion.constant(other, self.level, self.width, self.prec)
            return NotImplemented
        f, g = self._aligned(other)
        lo, hi = min(f.order_min, g.order_min), min(f.prec, g.prec)
        coeffs = tuple(f[n] + g[n] for n in range(lo, hi))
        return QExpansion(f.level, f.width, lo, hi, coeffs)

    __radd__ = __add__

    def __neg__(self) -> "QExpansion":
        return QExpansion(self.level, self.width, self.order_min, self.prec,
                          tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QExpansion":
        return QExpansion(self.level, self.width, self.order_min, self.prec,
                          tuple(x * c for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycElement)):
            return self.scale(other)
        if not isinstance(other, QExpansion):
            return NotImplemented
        f, g = self._aligned(other)
        lo = f.order_min + g.order_min
        hi = min(f.prec + g.order_min, g.prec + f.order_min)
        return QExpansion(f.level, f.width, lo, hi, _convolve(f, g, hi - lo))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QExpansion":
        if e < 1:
            raise ValueError("only positive powers of a truncated series are supported")
        result = self
        for _ in range(e - 1):
            result = result * self
        return result

    # -- Galois action and integrality ---------------------------------
    def galois(self, lam: int) -> "QExpansion":
        return series_galois(lam, self)

    def denominator_support(self) -> set[int]:
        return denominator_support(self)

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.coeffs)

    def denominator(self) -> int:
        return math.lcm(1, *(c.den for c in self.coeffs))

    # -- comparison ------------------------------------------------------
    def compare(self, other: "QExpansion") -> "SeriesComparison":
        return compare(self, other)

    def eval_numeric(self, tau: complex, terms: Optional[int] = None) -> complex:
        return series_eval_numeric(self, tau, terms)

    def __str__(self) -> str:
        def mono(n):
            if self.width == 1:
                return "q" if n == 1 else f"q^{n}"
            return f"q^({n}/{self.width})"

        parts = []
        for n, c in zip(self.exponents, self.coeffs):
            if not c.is_zero():
                parts.append(f"({c})" if n == 0 else f"({c})*{mono(n)}")
        parts.append(f"O({mono(self.prec)})")
        return " + ".join(parts)


def _convolve(f: QExpansion, g: QExpansion, length: int) -> tuple[CycElement, ...]:
    # integer convolution over common denominators; one reduction per output
    N = f.level
    deg = degree(N)
    fd, gd = f.denominator(), g.denominator()
    fa = [[x * (fd // c.den) for x in c.nums] if not c.is_zero() else None for c in f.coeffs]
    ga = [[x * (gd // c.den) for x in c.nums] if not c.is_zero() else None for c in g.coeffs]
    fl = field(N)
    out = []
    for n in range(length):
        acc = [0] * (2 * deg - 1)
        touched = False
        for i in range(max(0, n - len(ga) + 1), min(n + 1, len(fa))):
            a, b = fa[i], ga[n - i]
            if a is None or b is None:
                continue
            touched = True
            for s, x in enumerate(a):
                if x:
                    for t, y in enumerate(b):
                        if y:
                            acc[s + t] += x * y
        if touched:
            out.append(CycElement._make(N, fl.reduce(acc), fd * gd))
        else:
            out.append(CycElement.zero(N))
    return tuple(out)


def series_galois(lam: int, f: QExpansion) -> QExpansion:
    """Apply zeta_N -> zeta_N^lam to every coefficient."""
    return QExpansion(f.level, f.width, f.order_min, f.prec,
                      tuple(galois_apply(lam, c) for c in f.coeffs))


def _prime_factors(n: int) -> set[int]:
    out, p = set(), 2
    while p * p <= n:
        while n % p == 0:
            out.add(p)
            n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def denominator_support(f: QExpansion) -> set[int]:
    """Primes dividing some denominator of some power-basis coefficient."""
    return _prime_factors(f.denominator())


def series_eval_numeric(f: QExpansion, tau: complex, terms: Optional[int] = None) -> complex:
    """Evaluate sum a_n exp(2 pi i n tau / w) in floating point."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half-plane")
    if terms is None:
        terms = f.prec - f.order_min
    if terms > f.prec - f.order_min:
        raise ValueError("more terms requested than the series knows")
    qw = cmath.exp(2j * cmath.pi * tau / f.width)
    total = 0j
    for n, c in zip(f.exponents, f.coeffs[:terms]):
        if not c.is_zero():
            total += c.to_complex() * qw**n
    return total


@dataclass(frozen=True)
class SeriesComparison:
    """Outcome of comparing two series on the range both of them know."""

    equal: bool
    start: int
    stop: int
    width: int
    first_diff: Optional[int] = None
    lhs_coeff: Optional[CycElement] = None
    rhs_coeff: Optional[CycElement] = None

    @property
    def certified_range(self) -> tuple[int, int]:
        return (self.start, self.stop)

    def __bool__(self) -> bool:
        return self.equal


def compare(f: QExpansion, g: QExpansion) -> SeriesComparison:
    f, g = f._aligned(g)
    lo, hi = min(f.order_min, g.order_min), min(f.prec, g.prec)
    for n in range(lo, hi):
        if f[n] != g[n]:
            return SeriesComparison(False, lo, hi, f.width, n, f[n], g[n])
    return SeriesComparison(True, lo, hi, f.width)


# -- JSON ------------------------------------------------------------------

def qexp_to_json(f: QExpansion) -> dict:
    return {
        "N": f.level,
        "width": f.width,
        "order_min": f.order_min,
        "prec": f.prec,
        "coeffs": [element_to_json(c) for c in f.coeffs],
    }


def qexp_from_json(obj: dict) -> QExpansion:
    N = int(obj["N"])
    coeffs = tuple(element_from_json(c) for c in obj["coeffs"])
    for c in coeffs:
        if c.level != N:
            raise LevelMismatchError("coefficient level differs from series level")
    return QExpansion(N, int(obj["width"]), int(obj["order_min"]), int(obj["prec"]), coeffs)


def from_rationals(values: Iterable, level: int = 1, width: int = 1) -> QExpansion:
    return QExpansion.from_list(level, width, list(values))
