import cmath
import random
from fractions import Fraction
from itertools import product

import mpmath
import pytest
import sympy

from shimura_kit.cyclotomic import units
from shimura_kit.eisenstein import (
    EisSymbol,
    bernoulli,
    bernoulli_poly_eval,
    constant_term,
    eisenstein_qexp,
    galois_symbol,
    lattice_sum_extrapolated,
    lattice_sum_numeric,
    negate_symbol,
    normalization,
    slash_symbol,
    terms_for,
)
from shimura_kit.modgroup import S, ResMat, UniMat, reduce_mod, sl2_elements
from shimura_kit.qexpansion import series_galois


def sigma(r, n):
    return sum(d**r for d in range(1, n + 1) if n % d == 0)


def series_value(sym, tau):
    return eisenstein_qexp(sym, terms_for(tau, sym.level, sym.weight)).eval_numeric(tau)


def test_bernoulli_examples():
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli_poly_eval(4, 0) == Fraction(-1, 30)
    assert bernoulli_poly_eval(4, Fraction(1, 2)) == Fraction(7, 240)


@pytest.mark.parametrize("k", [0, 2, 3, 4, 6, 8, 10, 12, 20])
def test_bernoulli_against_sympy(k):
    assert bernoulli(k) == Fraction(str(sympy.bernoulli(k)))


@pytest.mark.parametrize("k", range(2, 12))
def test_bernoulli_midpoint_identity(k):
    assert bernoulli_poly_eval(k, Fraction(1, 2)) == (Fraction(2) ** (1 - k) - 1) * bernoulli(k)


def test_level_one_weight_four():
    f = eisenstein_qexp(EisSymbol(1, 4, 0, 0), 51)
    expected = [Fraction(1, 120)] + [Fraction(240 * sigma(3, n), 120) for n in range(1, 51)]
    assert [c.to_rational() for c in f.coeffs] == expected


def test_level_two_example():
    f = eisenstein_qexp(EisSymbol(2, 4, 0, 1), 3)
    assert [c.to_rational() for c in f.coeffs] == [Fraction(1, 8), 0, -2]


def test_zero_constant_term_off_the_cusp():
    assert constant_term(EisSymbol(3, 3, 1, 0)).is_zero()


@pytest.mark.parametrize("N, k, c2", [(1, 4, 0), (2, 4, 1), (3, 3, 1), (4, 4, 1), (5, 3, 2),
                                      (6, 5, 1), (6, 4, 0), (7, 6, 3)])
def test_constant_term_against_hurwitz_zeta(N, k, c2):
    # m = 0 row of the lattice sum: sum over n = c2 mod N, n != 0, of n^-k
    mpmath.mp.dps = 30

    def positive(c):
        c %= N
        return mpmath.zeta(k) / N**k if c == 0 else mpmath.zeta(k, mpmath.mpf(c) / N) / N**k

    row = positive(c2) + (-1) ** k * positive(-c2)
    expected = complex(row) * normalization(N, k)
    got = constant_term(EisSymbol(N, k, 0, c2)).to_complex()
    assert cmath.isclose(got, expected, rel_tol=1e-12, abs_tol=1e-14)


def test_weight_must_be_at_least_three():
    with pytest.raises(ValueError):
        EisSymbol(4, 2, 1, 0)


def test_slash_symbol_examples():
    sym = EisSymbol(5, 3, 1, 0)
    assert slash_symbol(sym, ResMat(5, 1, 0, 0, 1)) == sym
    assert slash_symbol(sym, reduce_mod(S, 5)).vector == (0, 4)


@pytest.mark.parametrize("N", range(1, 7))
def test_slash_symbol_right_action(N):
    elements = list(sl2_elements(N)) if N > 1 else [ResMat(1, 0, 0, 0, 0)]
    rng = random.Random(N)
    pairs = [(rng.choice(elements), rng.choice(elements)) for _ in range(60)]
    for c1, c2 in product(range(N), repeat=2):
        sym = EisSymbol(N, 4, c1, c2)
        for g1, g2 in pairs:
            assert slash_symbol(slash_symbol(sym, g1), g2) == slash_symbol(sym, g1 @ g2)


def test_slash_numeric_cross_check():
    N, k, tau = 3, 4, 2j
    for g in (S, UniMat(1, 1, 0, 1), UniMat(2, 1, 1, 1), UniMat(1, 0, 2, 1)):
        for c1, c2 in product(range(N), repeat=2):
            sym = EisSymbol(N, k, c1, c2)
            lhs = series_value(slash_symbol(sym, reduce_mod(g, N)), tau)
            rhs = g.automorphy(tau) ** (-k) * series_value(sym, g.act(tau))
            assert cmath.isclose(lhs, rhs, rel_tol=1e-6, abs_tol=1e-12)


def test_galois_symbol_examples():
    sym = EisSymbol(5, 3, 1, 3)
    assert galois_symbol(sym, 1) == sym
    assert galois_symbol(sym, 2).vector == (1, 1)
    with pytest.raises(ValueError):
        galois_symbol(EisSymbol(4, 3, 1, 1), 2)


@pytest.mark.parametrize("N", range(1, 7))
@pytest.mark.parametrize("k", [3, 4])
def test_galois_symbol_series_identity(N, k):
    for c1, c2 in product(range(N), repeat=2):
        sym = EisSymbol(N, k, c1, c2)
        f = eisenstein_qexp(sym, 40)
        for lam in units(N):
            assert series_galois(lam, f) == eisenstein_qexp(galois_symbol(sym, lam), 40)


def test_parity():
    rng = random.Random(11)
    for _ in range(30):
        N, k = rng.randint(1, 8), rng.randint(3, 6)
        sym = EisSymbol(N, k, rng.randrange(N), rng.randrange(N))
        f, g = eisenstein_qexp(sym, 30), eisenstein_qexp(negate_symbol(sym), 30)
        assert g == f * (-1) ** k


def test_coefficients_integral_away_from_constant_term():
    for N in range(1, 8):
        for c1, c2 in product(range(N), repeat=2):
            f = eisenstein_qexp(EisSymbol(N, 5, c1, c2), 25)
            assert all(c.is_integral() for c in f.coeffs[1:])


def test_lattice_oracle_level_one():
    sym = EisSymbol(1, 4, 0, 0)
    value = series_value(sym, 1j)
    assert cmath.isclose(lattice_sum_extrapolated(sym, 1j, 400), value, rel_tol=1e-8)
    # the plain box converges like cutoff^-2 at weight 4
    assert cmath.isclose(lattice_sum_numeric(sym, 1j, 400), value, rel_tol=1e-5)


def test_lattice_oracle_level_four():
    sym, tau = EisSymbol(4, 5, 1, 2), 1 / 3 + 1j
    assert cmath.isclose(lattice_sum_numeric(sym, tau, 400), series_value(sym, tau), rel_tol=1e-6)


def test_lattice_oracle_preconditions():
    with pytest.raises(ValueError):
        lattice_sum_numeric(EisSymbol(5, 3, 1, 1), 1j, 4)
    with pytest.raises(ValueError):
        lattice_sum_numeric(EisSymbol(5, 3, 1, 1), -1j, 40)


def test_symmetric_odd_weight_class_vanishes():
    # v = -v mod N and k odd: both the series and the symmetric box sum vanish
    sym = EisSymbol(2, 3, 1, 0)
    assert all(c.is_zero() for c in eisenstein_qexp(sym, 20).coeffs)
    assert abs(lattice_sum_extrapolated(sym, 0.2 + 1.1j, 200)) < 1e-15


def test_terms_for_is_enough():
    sym, tau = EisSymbol(5, 4, 2, 1), 0.1 + 0.3j
    n = terms_for(tau, 5, 4)
    full = eisenstein_qexp(sym, 2 * n).eval_numeric(tau)
    assert cmath.isclose(eisenstein_qexp(sym, n).eval_numeric(tau), full, rel_tol=1e-13)
