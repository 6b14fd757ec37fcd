"""Finite model of level-N structures and the commutation diagram.

A level structure is modelled in row-vector coordinates: ``alpha(a, b) =
(a, b) @ mat`` on (Z/NZ)^2.  The beta-coordinates (zeta^m, n) are related by
``psi(a, b) = (zeta^b, a)``, so ``beta(zeta^m, n) = alpha(n, m)``.

The model pairing is ``e(x, y) = zeta^(x2*y1 - x1*y2)``.  With it the
normalization ``e(beta(zeta, 0), beta(1, 1)) = zeta`` reads
``det(mat) == 1``; after Galois transport by sigma_lambda the pairing
exponent becomes ``lambda``, recorded as ``twist``.
"""
from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .cyclotomic import units
from .modgroup import ResMat, _sl2_entries, mat_mul_mod, sl2_elements, theorem_target

Vec = tuple[int, int]
Mat = tuple[int, int, int, int]


def row_times(v: Vec, m: Mat, N: int) -> Vec:
    a, b = v
    return ((a * m[0] + b * m[2]) % N, (a * m[1] + b * m[3]) % N)


def pairing_exponent(x: Vec, y: Vec, N: int) -> int:
    return (x[1] * y[0] - x[0] * y[1]) % N


@dataclass(frozen=True)
class LevelStructure:
    modulus: int
    mat: Mat
    twist: int = 1

    def __post_init__(self):
        N = self.modulus
        object.__setattr__(self, "mat", tuple(x % N for x in self.mat))
        object.__setattr__(self, "twist", self.twist % N)
        if math.gcd(self.twist, N) != 1:
            raise ValueError(f"twist {self.twist} is not a unit mod {N}")
        a, b, c, d = self.mat
        if (a * d - b * c - self.twist) % N:
            raise ValueError(f"det {self.mat} is not congruent to twist {self.twist} mod {N}")

    @classmethod
    def identity(cls, N: int) -> "LevelStructure":
        return cls(N, (1, 0, 0, 1), 1)

    def alpha(self, a: int, b: int) -> Vec:
        return row_times((a, b), self.mat, self.modulus)

    def beta(self, m: int, n: int) -> Vec:
        """Image of (zeta^m, n) in the torsion model."""
        return self.alpha(n, m)

    def pairing_condition(self) -> int:
        """Exponent of e(beta(zeta, 0), beta(1, 1)); equals twist by construction."""
        return pairing_exponent(self.beta(1, 0), self.beta(0, 1), self.modulus)


def psi(a: int, b: int, N: int) -> tuple[int, int]:
    """(a, b) -> (zeta^b, a), with zeta^b recorded by its exponent b."""
    return (b % N, a % N)


def psi_inverse(m: int, n: int, N: int) -> Vec:
    return (n % N, m % N)


def from_beta_coords(N: int, g: ResMat) -> LevelStructure:
    """Level structure obtained from the identity by the slash formula in beta coordinates.

    beta'(zeta^m, n) = beta(zeta^(md + nb), mc + na), with beta the identity
    structure, is read back through psi and must be linear.
    """
    if g.modulus != N:
        raise ValueError("modulus mismatch")
    a, b, c, d = g.entries
    base = LevelStructure.identity(N)

    def beta_prime(m: int, n: int) -> Vec:
        return base.beta((m * d + n * b) % N, (m * c + n * a) % N)

    def alpha_prime(x: int, y: int) -> Vec:
        return beta_prime(*psi(x, y, N))

    r1, r2 = alpha_prime(1, 0), alpha_prime(0, 1)
    mat = (r1[0], r1[1], r2[0], r2[1])
    for x, y in product(range(N), repeat=2):
        if alpha_prime(x, y) != row_times((x, y), mat, N):
            raise AssertionError(f"transported structure is not linear at {(x, y)}")
    return LevelStructure(N, mat, 1)


def act_g(g: ResMat, alpha: LevelStructure) -> LevelStructure:
    """(g . alpha)(a, b) = alpha((a, b) g)."""
    N = alpha.modulus
    if g.modulus != N:
        raise ValueError("modulus mismatch")
    return LevelStructure(N, mat_mul_mod(g.entries, alpha.mat, N), alpha.twist)


def sigma_twist(lam: int, alpha: LevelStructure) -> LevelStructure:
    """alpha^sigma(a, b) = alpha(a, lam*b); the pairing exponent picks up lam."""
    N = alpha.modulus
    if math.gcd(lam, N) != 1:
        raise ValueError(f"{lam} is not a unit modulo {N}")
    return LevelStructure(N, mat_mul_mod((1, 0, 0, lam), alpha.mat, N), alpha.twist * lam)


@dataclass
class DiagramReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "DiagramReport") -> None:
        self.checked += other.checked
        self.failures.extend(other.failures)

    def to_json(self) -> dict:
        return {"checked": self.checked, "failures": self.failures}


def verify_commutation(N: int, g: ResMat, lam: int,
                       structures: Optional[list[LevelStructure]] = None) -> DiagramReport:
    """Check g . alpha^sigma == (g_lambda . alpha)^sigma on the given structures.

    The identity structure is always included.  Both sides are left
    multiplications of alpha.mat, so the identity case is equivalent to the
    matrix identity g diag(1, lam) = diag(1, lam) g_lambda; extra structures
    exercise the group actions themselves.
    """
    target = theorem_target(g, lam)
    report = DiagramReport()
    for alpha in [LevelStructure.identity(N)] + list(structures or []):
        lhs = act_g(g, sigma_twist(lam, alpha))
        rhs = sigma_twist(lam, act_g(target, alpha))
        report.checked += 1
        if lhs != rhs:
            report.failures.append({
                "N": N, "g": list(g.entries), "lambda": lam,
                "alpha": list(alpha.mat), "lhs": list(lhs.mat), "rhs": list(rhs.mat),
            })
    return report


def _sweep_level(N: int, samples: int = 0, seed: int = 0) -> DiagramReport:
    rng = random.Random(seed * 1009 + N)
    elements = _sl2_entries(N)
    report = DiagramReport()
    for g in sl2_elements(N):
        extra = [LevelStructure(N, elements[rng.randrange(len(elements))]) for _ in range(samples)]
        for lam in units(N):
            report.merge(verify_commutation(N, g, lam, extra))
    return report


def sweep_diagram(levels, samples: int = 0, workers: Optional[int] = None) -> DiagramReport:
    """Exhaustive sweep over g in SL2(Z/NZ) and units lam, for each N in levels."""
    levels = list(levels)
    workers = workers if workers is not None else thread_cap()
    report = DiagramReport()
    if workers > 1 and len(levels) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_level, levels, [samples] * len(levels)))
    else:
        parts = [_sweep_level(N, samples) for N in levels]
    for part in parts:
        report.merge(part)
    return report


def thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("SHIMURA_KIT_THREADS", "1")))
    except ValueError:
        return 1
