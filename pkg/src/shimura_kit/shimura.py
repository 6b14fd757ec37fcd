"""Symbolic modular forms built from Eisenstein symbols, and the theorem checks.

A :class:`FormExpr` is a Q(zeta_N)-linear combination of products of
Eisenstein symbols of equal total weight.  Both group actions are computed
exactly on the symbols; :func:`verify_theorem` then compares the two sides of
(f|g)^sigma = f^sigma | g_lambda as exact q-expansions.
"""
from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .cyclotomic import CycElement, element_from_json, element_to_json, units
from .eisenstein import (
    EisSymbol,
    eisenstein_qexp,
    galois_symbol,
    slash_symbol,
    terms_for,
)
from .levelstruct import thread_cap
from .modgroup import (
    S,
    T,
    ResMat,
    UniMat,
    g_lambda,
    matrix_to_json,
    reduce_mod,
)
from .qexpansion import QExpansion, SeriesComparison, denominator_support, series_galois

Monomial = tuple[EisSymbol, ...]

DEFAULT_PREC = 40

# three fixed matrices beyond S and T for the corpus sweep
FIXED_MATRICES = (
    S,
    T,
    UniMat(5, 3, 8, 5),
    UniMat(7, -3, 12, -5),
    UniMat(3, 11, 7, 26),
)


@dataclass(frozen=True)
class FormExpr:
    level: int
    weight: int
    terms: tuple[tuple[CycElement, Monomial], ...] = ()

    @classmethod
    def build(cls, level: int, weight: int,
              terms: Iterable[tuple[CycElement, Sequence[EisSymbol]]]) -> "FormExpr":
        merged: dict[Monomial, CycElement] = {}
        for coeff, mono in terms:
            if not isinstance(coeff, CycElement):
                coeff = CycElement.from_rational(level, coeff)
            if coeff.level != level:
                raise ValueError("coefficient level differs from the form level")
            mono = tuple(sorted(mono))
            if any(s.level != level for s in mono):
                raise ValueError("symbol level differs from the form level")
            if sum(s.weight for s in mono) != weight:
                raise ValueError(f"monomial {mono} does not have weight {weight}")
            merged[mono] = merged[mono] + coeff if mono in merged else coeff
        kept = tuple((c, m) for m, c in sorted(merged.items()) if not c.is_zero())
        return cls(level, weight, kept)

    @classmethod
    def symbol(cls, sym: EisSymbol, coeff=1) -> "FormExpr":
        return cls.build(sym.level, sym.weight, [(coeff, (sym,))])

    @classmethod
    def zero(cls, level: int, weight: int) -> "FormExpr":
        return cls(level, weight, ())

    def __add__(self, other: "FormExpr") -> "FormExpr":
        if (other.level, other.weight) != (self.level, self.weight):
            raise ValueError("can only add forms of equal level and weight")
        return FormExpr.build(self.level, self.weight, self.terms + other.terms)

    def __mul__(self, other):
        if isinstance(other, FormExpr):
            if other.level != self.level:
                raise ValueError("level mismatch")
            return FormExpr.build(self.level, self.weight + other.weight, [
                (c1 * c2, m1 + m2) for c1, m1 in self.terms for c2, m2 in other.terms])
        return FormExpr.build(self.level, self.weight,
                              [(c * other, m) for c, m in self.terms])

    __rmul__ = __mul__

    def __neg__(self) -> "FormExpr":
        return self * -1

    def __sub__(self, other: "FormExpr") -> "FormExpr":
        return self + (-other)

    def map_symbols(self, fn) -> "FormExpr":
        return FormExpr.build(self.level, self.weight,
                              [(c, tuple(fn(s) for s in m)) for c, m in self.terms])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*" + "*".join(map(str, m)) for c, m in self.terms)


def _as_residue(g: Union[UniMat, ResMat], N: int) -> ResMat:
    if isinstance(g, ResMat):
        if g.modulus != N:
            raise ValueError("modulus mismatch")
        return g
    return reduce_mod(g, N)


def form_slash(f: FormExpr, g: Union[UniMat, ResMat]) -> FormExpr:
    """f|g on symbols; a product of symbols is slashed factor by factor."""
    gbar = _as_residue(g, f.level)
    return f.map_symbols(lambda s: slash_symbol(s, gbar))


def form_galois(f: FormExpr, lam: int) -> FormExpr:
    if math.gcd(lam, f.level) != 1:
        raise ValueError(f"{lam} is not a unit modulo {f.level}")
    return FormExpr.build(f.level, f.weight, [
        (c.galois(lam), tuple(galois_symbol(s, lam) for s in m)) for c, m in f.terms])


@lru_cache(maxsize=8192)
def expand_monomial(mono: Monomial, prec: int) -> QExpansion:
    result = eisenstein_qexp(mono[0], prec)
    for sym in mono[1:]:
        result = result * eisenstein_qexp(sym, prec)
    return result


def expand(f: FormExpr, prec: int = DEFAULT_PREC) -> QExpansion:
    if prec < 1:
        raise ValueError("prec must be at least 1")
    total = QExpansion.zero(f.level, f.level, prec)
    for c, mono in f.terms:
        total = total + expand_monomial(mono, prec) * c
    return total


# -- numeric evaluation ----------------------------------------------------------

def evaluate(f: FormExpr, tau: complex) -> complex:
    """Numeric value at tau via an exact expansion long enough for double precision."""
    return expand(f, terms_for(tau, f.level, f.weight)).eval_numeric(tau)


def slash_numeric(f: FormExpr, g: UniMat, tau: complex) -> complex:
    """(c tau + d)^-k f(g tau), computed analytically."""
    return g.automorphy(tau) ** (-f.weight) * evaluate(f, g.act(tau))


# -- the theorem -----------------------------------------------------------------

@dataclass
class TheoremReport:
    N: int
    g: UniMat
    lam: int
    g_lam: UniMat
    comparison: SeriesComparison
    lhs: QExpansion
    rhs: QExpansion
    form: str = ""

    @property
    def equal(self) -> bool:
        return self.comparison.equal

    def witness(self) -> Optional[dict]:
        cmp = self.comparison
        if cmp.equal:
            return None
        return {
            "N": self.N, "g": matrix_to_json(self.g), "lambda": self.lam,
            "g_lambda": matrix_to_json(self.g_lam), "form": self.form,
            "exponent": cmp.first_diff,
            "lhs_coeff": element_to_json(cmp.lhs_coeff),
            "rhs_coeff": element_to_json(cmp.rhs_coeff),
        }


def verify_theorem(f: FormExpr, g: UniMat, lam: int, prec: int = DEFAULT_PREC,
                   lift: Optional[UniMat] = None) -> TheoremReport:
    """Compare (f|g)^sigma_lam with f^sigma_lam | g_lam exactly.

    ``lift`` overrides the lift used for g_lam; it must reduce to the
    twisted matrix mod N.
    """
    N = f.level
    g_lam = lift if lift is not None else g_lambda(g, N, lam)
    if lift is not None and reduce_mod(lift, N) != reduce_mod(g_lambda(g, N, lam), N):
        raise ValueError("supplied lift does not reduce to the twisted matrix")
    lhs = series_galois(lam, expand(form_slash(f, g), prec))
    rhs = expand(form_slash(form_galois(f, lam), g_lam), prec)
    return TheoremReport(N, g, lam, g_lam, lhs.compare(rhs), lhs, rhs, str(f))


# -- integrality ---------------------------------------------------------------

def clear_denominators(f: FormExpr, prec: int = DEFAULT_PREC) -> tuple[int, FormExpr]:
    D = expand(f, prec).denominator()
    return D, f * D


@dataclass
class RemarkReport:
    N: int
    g: UniMat
    support: set
    violations: set = field(default_factory=set)

    @property
    def ok(self) -> bool:
        return not self.violations


def remark_check(f: FormExpr, g: UniMat, prec: int = DEFAULT_PREC) -> RemarkReport:
    """Denominators of f|g may only involve primes dividing N, given f integral."""
    if not expand(f, prec).is_integral():
        raise ValueError("form is not integral; clear denominators first")
    support = denominator_support(expand(form_slash(f, g), prec))
    bad = {p for p in support if f.level % p}
    return RemarkReport(f.level, g, support, bad)


# -- corpus ---------------------------------------------------------------------

def all_symbols(N: int, weights: Iterable[int] = (3, 4)) -> list[EisSymbol]:
    return [EisSymbol(N, k, c1, c2) for k in weights for c1 in range(N) for c2 in range(N)]


def random_cyclotomic_integer(N: int, rng: random.Random, bound: int = 3) -> CycElement:
    while True:
        c = CycElement.from_coeffs(N, [rng.randint(-bound, bound) for _ in range(N)])
        if not c.is_zero():
            return c


_SPLITS = {6: (3, 3), 7: (3, 4), 8: (4, 4)}


def random_product_form(N: int, rng: random.Random, n_terms: int = 2) -> FormExpr:
    """Sum of n_terms two-factor Eisenstein products of one weight in 6..8."""
    k = rng.choice(sorted(_SPLITS))
    k1, k2 = _SPLITS[k]
    terms = []
    for _ in range(n_terms):
        s1 = EisSymbol(N, k1, rng.randrange(N), rng.randrange(N))
        s2 = EisSymbol(N, k2, rng.randrange(N), rng.randrange(N))
        terms.append((random_cyclotomic_integer(N, rng), (s1, s2)))
    return FormExpr.build(N, k, terms)


@dataclass
class SweepReport:
    checked: int = 0
    failures: list = field(default_factory=list)
    per_level: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"checked": self.checked, "failures": self.failures,
                "per_level": {str(k): v for k, v in sorted(self.per_level.items())}}


def corpus(N: int, n_random: int = 20, seed: int = 0) -> list[FormExpr]:
    rng = random.Random(1000 * seed + N)
    forms = [FormExpr.symbol(s) for s in all_symbols(N)]
    forms += [random_product_form(N, rng) for _ in range(n_random)]
    return forms


def _sweep_level(args) -> tuple[int, int, list]:
    N, prec, n_random, seed = args
    checked, failures = 0, []
    for f in corpus(N, n_random, seed):
        for g in FIXED_MATRICES:
            for lam in units(N):
                rep = verify_theorem(f, g, lam, prec)
                checked += 1
                if not rep.equal:
                    failures.append(rep.witness())
    return N, checked, failures


def sweep_theorem(levels: Iterable[int], prec: int = DEFAULT_PREC, n_random: int = 20,
                  seed: int = 0, workers: Optional[int] = None) -> SweepReport:
    jobs = [(N, prec, n_random, seed) for N in levels]
    workers = workers if workers is not None else thread_cap()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_level, jobs))
    else:
        parts = [_sweep_level(j) for j in jobs]
    report = SweepReport()
    for N, checked, failures in parts:
        report.checked += checked
        report.failures.extend(failures)
        report.per_level[N] = checked
    return report


# -- JSON ------------------------------------------------------------------------

def form_to_json(f: FormExpr) -> dict:
    return {
        "N": f.level,
        "k": f.weight,
        "terms": [{"coeff": element_to_json(c),
                   "symbols": [[s.weight, s.c1, s.c2] for s in m]} for c, m in f.terms],
    }


def form_from_json(obj: dict) -> FormExpr:
    N, k = int(obj["N"]), int(obj["k"])
    terms = []
    for t in obj["terms"]:
        coeff = element_from_json(t["coeff"])
        terms.append((coeff, tuple(EisSymbol(N, int(w), int(a), int(b)) for w, a, b in t["symbols"])))
    return FormExpr.build(N, k, terms)
