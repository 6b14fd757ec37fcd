from itertools import product

import pytest

from shimura_kit.cyclotomic import units
from shimura_kit.levelstruct import (
    LevelStructure,
    act_g,
    from_beta_coords,
    pairing_exponent,
    psi,
    psi_inverse,
    row_times,
    sigma_twist,
    sweep_diagram,
    verify_commutation,
)
from shimura_kit.modgroup import ResMat, S, reduce_mod, sl2_elements, theorem_target


def test_psi_round_trip():
    N = 7
    for a, b in product(range(N), repeat=2):
        assert psi_inverse(*psi(a, b, N), N) == (a, b)
    assert psi(2, 5, 7) == (5, 2)  # (zeta^5, 2)


def test_from_beta_coords_identity():
    assert from_beta_coords(5, ResMat(5, 1, 0, 0, 1)) == LevelStructure.identity(5)


def test_from_beta_coords_unipotent_n3():
    # (m, n) -> (md + nb, mc + na) = (m + n, n); through psi this is (a, b) -> (a, b) g
    g = ResMat(3, 1, 1, 0, 1)
    alpha = from_beta_coords(3, g)
    for a, b in product(range(3), repeat=2):
        m, n = psi(a, b, 3)
        image = LevelStructure.identity(3).beta((m + n) % 3, n)
        assert alpha.alpha(a, b) == image == row_times((a, b), g.entries, 3)


def test_from_beta_coords_exhaustive_n4():
    elements = list(sl2_elements(4))
    assert len(elements) == 48
    for g in elements:
        alpha = from_beta_coords(4, g)
        for v in product(range(4), repeat=2):
            assert alpha.alpha(*v) == row_times(v, g.entries, 4)


@pytest.mark.parametrize("N", range(2, 9))
def test_beta_and_alpha_descriptions_agree(N):
    ident = LevelStructure.identity(N)
    for g in sl2_elements(N):
        assert from_beta_coords(N, g) == act_g(g, ident)


def test_act_g_examples():
    alpha = LevelStructure(5, (2, 1, 1, 1))
    assert act_g(ResMat(5, 1, 0, 0, 1), alpha) == alpha
    g1, g2 = ResMat(5, 2, 1, 1, 1), reduce_mod(S, 5)
    # (g1 . (g2 . alpha))(v) = alpha(v g1 g2): a left action
    assert act_g(g1, act_g(g2, alpha)) == act_g(g1 @ g2, alpha)
    assert act_g(g1, act_g(g2, alpha)) != act_g(g2 @ g1, alpha)
    s4 = act_g(reduce_mod(S, 4), LevelStructure.identity(4))
    assert s4.mat == reduce_mod(S, 4).entries and s4.twist == 1


def test_act_g_is_pullback_along_right_multiplication():
    N = 6
    alpha = LevelStructure(N, (5, 2, 2, 1))
    for g in list(sl2_elements(N))[::37]:
        moved = act_g(g, alpha)
        for v in product(range(N), repeat=2):
            assert moved.alpha(*v) == alpha.alpha(*row_times(v, g.entries, N))


def test_sigma_twist_examples():
    alpha = LevelStructure(7, (3, 1, 2, 1))
    assert sigma_twist(1, alpha) == alpha
    for lam, mu in product(units(7), repeat=2):
        assert sigma_twist(lam, sigma_twist(mu, alpha)) == sigma_twist(lam * mu, alpha)
    tw = sigma_twist(2, LevelStructure.identity(5))
    assert tw.mat == (1, 0, 0, 2) and tw.twist == 2
    with pytest.raises(ValueError):
        sigma_twist(2, LevelStructure.identity(4))


def test_sigma_twist_reads_second_coordinate_scaled():
    N, lam = 9, 4
    alpha = LevelStructure(N, (2, 3, 1, 2))
    tw = sigma_twist(lam, alpha)
    for a, b in product(range(N), repeat=2):
        assert tw.alpha(a, b) == alpha.alpha(a, lam * b % N)


def test_pairing_condition_tracks_twist():
    for N in (5, 8, 12):
        for g in list(sl2_elements(N))[::53]:
            alpha = act_g(g, LevelStructure.identity(N))
            assert alpha.pairing_condition() == 1
            for lam in units(N):
                assert sigma_twist(lam, alpha).pairing_condition() == lam % N


def test_pairing_is_alternating():
    N = 7
    for x, y in product(product(range(N), repeat=2), repeat=2):
        assert pairing_exponent(x, y, N) == (-pairing_exponent(y, x, N)) % N


def test_invariant_enforced():
    with pytest.raises(ValueError):
        LevelStructure(5, (1, 0, 0, 2), 1)
    with pytest.raises(ValueError):
        LevelStructure(6, (1, 0, 0, 2), 2)


def test_verify_commutation_examples():
    assert verify_commutation(7, ResMat(7, 1, 0, 0, 1), 3).ok
    g = reduce_mod(S, 5)
    assert theorem_target(g, 2).entries == (0, 3, 3, 0)
    assert verify_commutation(5, g, 2).ok


def test_verify_commutation_detects_wrong_target(monkeypatch):
    import shimura_kit.levelstruct as ls

    # using g itself in place of g_lambda must fail for S at N = 5, lambda = 2
    monkeypatch.setattr(ls, "theorem_target", lambda g, lam: g)
    rep = ls.verify_commutation(5, reduce_mod(S, 5), 2)
    assert not rep.ok
    assert rep.failures[0]["lambda"] == 2


@pytest.mark.parametrize("N", range(2, 6))
def test_commutation_on_every_structure(N):
    every = [LevelStructure(N, g.entries) for g in sl2_elements(N)]
    for g in sl2_elements(N):
        for lam in units(N):
            assert verify_commutation(N, g, lam, every).ok


def test_sweep_counts():
    rep = sweep_diagram([2, 3], samples=2)
    # |SL2(Z/2)| * 1 unit + |SL2(Z/3)| * 2 units, each with identity + 2 samples
    assert rep.checked == (6 * 1 + 24 * 2) * 3
    assert rep.ok
