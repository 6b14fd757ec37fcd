import random

import pytest
from hypothesis import given, settings, strategies as st

from shimura_kit.cyclotomic import units
from shimura_kit.modgroup import (
    IDENTITY,
    S,
    ResMat,
    UniMat,
    alternate_lift,
    diag_unit,
    g_lambda,
    mat_mul_mod,
    parse_matrix,
    random_resmat,
    random_sl2z,
    reduce_mod,
    sl2_elements,
    sl2_lift,
    sl2_order,
    theorem_target,
)

from conftest import resmats, units_mod


def is_lift(g: UniMat, gbar: ResMat) -> bool:
    return g.a * g.d - g.b * g.c == 1 and reduce_mod(g, gbar.modulus) == gbar


def test_reduce_examples():
    assert reduce_mod(IDENTITY, 5) == ResMat(5, 1, 0, 0, 1)
    assert reduce_mod(S, 5).entries == (0, 4, 1, 0)
    assert reduce_mod(UniMat(5, 3, 8, 5), 5).entries == (0, 3, 3, 0)


def test_determinant_enforced():
    with pytest.raises(ValueError):
        UniMat(1, 1, 1, 1)
    with pytest.raises(ValueError):
        ResMat(5, 1, 1, 1, 1)


def test_lift_examples():
    assert sl2_lift(ResMat(7, 1, 0, 0, 1)) == IDENTITY
    gbar = ResMat(5, 0, 3, 3, 0)
    g = sl2_lift(gbar)
    assert is_lift(g, gbar)
    assert is_lift(UniMat(5, 3, 8, 5), gbar)


@pytest.mark.parametrize("N", range(2, 9))
def test_lift_all_residues(N):
    for gbar in sl2_elements(N):
        assert is_lift(sl2_lift(gbar), gbar)


@settings(max_examples=1000)
@given(resmats())
def test_lift_round_trip(gbar):
    g = sl2_lift(gbar)
    assert is_lift(g, gbar)


def test_lift_round_trip_seeded_1000():
    rng = random.Random(7)
    for _ in range(1000):
        N = rng.randint(2, 24)
        gbar = (reduce_mod(random_sl2z(rng), N)
                @ ResMat(N, 1, rng.randrange(N), 0, 1) @ ResMat(N, 1, 0, rng.randrange(N), 1))
        assert is_lift(sl2_lift(gbar), gbar)


def test_alternate_lift_is_distinct():
    rng = random.Random(3)
    for N in range(2, 13):
        gbar = random_resmat(N, rng)
        g1, g2 = sl2_lift(gbar), alternate_lift(gbar, rng)
        assert g1 != g2 and is_lift(g2, gbar)


def test_sl2_enumeration_size():
    for N in range(2, 13):
        assert len(list(sl2_elements(N))) == sl2_order(N)
    assert sl2_order(4) == 48


def test_theorem_target_examples():
    gbar = ResMat(5, 0, 4, 1, 0)
    assert theorem_target(gbar, 1) == gbar
    assert theorem_target(gbar, 2).entries == (0, 3, 3, 0)
    with pytest.raises(ValueError):
        theorem_target(ResMat(6, 1, 0, 0, 1), 2)


@settings(max_examples=300)
@given(st.data())
def test_theorem_target_composes(data):
    gbar = data.draw(resmats(max_level=12))
    N = gbar.modulus
    lam, mu = data.draw(units_mod(N)), data.draw(units_mod(N))
    assert theorem_target(theorem_target(gbar, mu), lam) == theorem_target(gbar, lam * mu)


@pytest.mark.parametrize("N", range(2, 13))
def test_diag_identity_exhaustive(N):
    # g diag(1, lam) = diag(1, lam) g_lam mod N
    for gbar in sl2_elements(N):
        for lam in units(N):
            D = diag_unit(N, lam)
            left = mat_mul_mod(gbar.entries, D, N)
            right = mat_mul_mod(D, theorem_target(gbar, lam).entries, N)
            assert left == right


def test_g_lambda_examples():
    assert reduce_mod(g_lambda(S, 5, 2), 5).entries == (0, 3, 3, 0)
    g = UniMat(2, 1, 7, 4)
    assert reduce_mod(g_lambda(g, 9, 1), 9) == reduce_mod(g, 9)
    assert g_lambda(IDENTITY, 11, 3) == IDENTITY


def test_parse_matrix():
    assert parse_matrix("0,-1, 1,0") == (0, -1, 1, 0)
    with pytest.raises(ValueError):
        parse_matrix("1,2,3")
