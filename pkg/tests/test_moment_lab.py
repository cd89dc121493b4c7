"""Moment functionals: transforms, Hankel orthogonality, degeneracy flags."""
from __future__ import annotations

from fractions import Fraction

import pytest

from qkrall import (LAGUERRE_I, LAGUERRE_II, MEIXNER_I, MEIXNER_II,
                    MEIXNER_III, THEOREMS, DenominatorVanishes,
                    LaguerreParams, MeixnerParams, MomentFunctional,
                    NotQuasiDefinite, Poly, UnknownTheorem, ZeroDilation,
                    add, agree_up_to, christoffel, derive_recurrence, dilate,
                    favard_positivity, geronimus, gram_matrix, gram_to_csv,
                    hankel_orthogonal, laguerre, laguerre_moments,
                    combine_with_point_mass, measure_catalog, meixner,
                    meixner_moments, meixner_recurrence,
                    moments_from_recurrence, point_mass, scale, shift,
                    theorem_catalog)
from conftest import B0, C0, Q0, T0

F = Fraction


def _from_list(values) -> MomentFunctional:
    vals = [F(v) for v in values]
    return MomentFunctional(lambda n, _prev: vals[n], {"kind": "literal"},
                            max_n=len(vals) - 1)


def test_meixner_moments_mass_one_and_recurrence_consistency():
    mu = meixner_moments(MeixnerParams(Q0, B0, C0))
    assert mu.moment(0) == 1
    fam = meixner(Q0, B0, C0)
    rec = derive_recurrence(fam, 14)
    alt = moments_from_recurrence(rec, 12)
    assert agree_up_to(mu, alt, 12) is None


def test_laguerre_moments_match_family_orthogonality():
    lp = LaguerreParams(Q0, T0)
    mu = laguerre_moments(lp)
    assert mu.moment(0) == 1
    fam = laguerre(Q0, T0)
    gram = gram_matrix(mu, fam.polys_up_to(6))
    assert all(gram[i][j] == 0 for i in range(7) for j in range(7) if i != j)
    assert all(gram[i][i] != 0 for i in range(7))


def test_christoffel_is_polynomial_multiplication():
    mu = meixner_moments(MeixnerParams(Q0, B0, C0))
    r = Poly((F(1, 2), -2, 1))
    nu = christoffel(mu, r)
    for p in (Poly.one(), Poly((0, 1)), Poly((3, 0, F(5, 7)))):
        assert nu.pair(p) == mu.pair(r * p)


def test_geronimus_satisfies_its_defining_relation():
    mu = meixner_moments(MeixnerParams(Q0, B0, C0))
    lam, c_scale, seed = F(1, 4), F(3), F(9, 2)
    nu = geronimus(mu, lam, c_scale, seed)
    assert nu.moment(0) == seed
    for n in range(12):
        # (x - lam) nu = c_scale * mu, read off moment-wise
        assert nu.moment(n + 1) - lam * nu.moment(n) == c_scale * mu.moment(n)


def test_geronimus_inverts_christoffel_with_matched_seed():
    mu = meixner_moments(MeixnerParams(Q0, B0, C0))
    lam = F(2, 7)
    forward = christoffel(mu, Poly((-lam, 1)))
    back = geronimus(forward, lam, F(1), mu.moment(0))
    assert agree_up_to(back, mu, 15) is None


def test_point_mass_moments():
    delta = point_mass(F(5, 3))
    for p in (Poly((1, 1)), Poly((0, 0, 2)), Poly((-1, 4, 0, 1))):
        assert delta.pair(p) == p(F(5, 3))
    # first-derivative mass at the origin sees only the linear coefficient
    d1 = point_mass(0, 1, F(7))
    assert [d1.moment(n) for n in range(4)] == [0, -7, 0, 0]
    d2 = point_mass(0, 2, F(1))
    assert [d2.moment(n) for n in range(4)] == [0, 0, 2, 0]
    with pytest.raises(ValueError):
        point_mass(0, -1)


def test_moment_algebra_transforms():
    mu = _from_list([1, 2, 3, 4, 5])
    nu = _from_list([1, 0, 1, 0, 1])
    total = add(scale(mu, F(2)), nu)
    assert [total.moment(n) for n in range(5)] == [3, 4, 7, 8, 11]
    dil = dilate(mu, F(1, 2))
    assert [dil.moment(n) for n in range(5)] == [1, 1, F(3, 4), F(1, 2),
                                                 F(5, 16)]
    with pytest.raises(ZeroDilation):
        dilate(mu, 0)
    # shifting the argument: <mu(x+lam), p> = <mu, p(x-lam)>
    sh = shift(mu, F(3))
    p = Poly((1, -1, 2))
    assert sh.pair(p) == mu.pair(p.shift_arg(-F(3)))


def test_hankel_orthogonal_reproduces_family():
    mp = MeixnerParams(Q0, B0, C0)
    mu = meixner_moments(mp)
    fam = meixner(Q0, B0, C0)
    gd = hankel_orthogonal(mu, 8)
    for n in range(9):
        monic = fam.poly(n) * (1 / fam.poly(n).leading())
        assert gd.polys[n] == monic
        assert gd.norms[n] == gd.hankel_dets[n + 1] / gd.hankel_dets[n]
        assert gd.norms[n] == mu.pair(gd.polys[n] * gd.polys[n])


def test_hankel_degeneracy_is_named_with_its_index():
    # delta_1 + delta_(-1) has moments 2,0,2,0,...; the 3x3 Hankel
    # determinant vanishes, so only two orthogonal degrees exist.
    mu = add(point_mass(1), point_mass(-1))
    gd = hankel_orthogonal(mu, 1)
    assert gd.polys[1] == Poly.x()
    with pytest.raises(NotQuasiDefinite) as info:
        hankel_orthogonal(mu, 2)
    assert info.value.n == 3


def test_favard_positivity_flags():
    positive = meixner_recurrence(MeixnerParams(Q0, B0, C0))
    assert all(favard_positivity(positive, 10))
    # b > 1/q makes a_0 < 0 while c_1 > 0: not a positive instance
    signed = meixner_recurrence(MeixnerParams(Q0, F(4), C0))
    assert not all(favard_positivity(signed, 10))


def test_point_mass_combination_matches_displayed_beta():
    alpha, mass = 2, F(7, 3)
    t = Q0 ** alpha
    td = theorem_catalog(LAGUERRE_II, LaguerreParams(Q0, t), alpha,
                         mass=mass)
    nu = laguerre_moments(LaguerreParams(Q0, t / Q0))
    p_polys = laguerre(Q0, t).polys_up_to(8)
    betas, q_polys = combine_with_point_mass(nu, 0, mass, p_polys, 8)
    for n in range(1, 9):
        assert betas[n] == td.displayed_beta(n), f"n = {n}"
    combined = add(nu, point_mass(0, 0, mass))
    gram = gram_matrix(combined, q_polys)
    assert all(gram[i][j] == 0 for i in range(9) for j in range(9) if i != j)


def test_combination_vanishing_denominator_is_reported():
    nu = point_mass(0, 0, F(1))
    with pytest.raises(DenominatorVanishes) as info:
        combine_with_point_mass(nu, 0, F(-1), [Poly.one(), Poly.x()], 1)
    assert info.value.n == 1


def test_measure_catalog_builds_all_five(tmp_path):
    mp = MeixnerParams(Q0, B0, C0)
    lp = LaguerreParams(Q0, T0)
    for name in (MEIXNER_I, MEIXNER_II, MEIXNER_III):
        mu = measure_catalog(name, mp, 1)
        assert mu.moment(0) != 0
    mu = measure_catalog(LAGUERRE_I, lp, 1)
    assert mu.moment(0) != 0
    mu = measure_catalog(LAGUERRE_II, LaguerreParams(Q0, Q0 ** 2), 2,
                         mass=F(1))
    assert mu.moment(0) != 0
    with pytest.raises(UnknownTheorem):
        measure_catalog("nope", mp, 1)
    with pytest.raises(UnknownTheorem):
        measure_catalog(MEIXNER_I, lp, 1)
    gram = gram_matrix(mu, [Poly.one(), Poly.x()])
    out = tmp_path / "gram.csv"
    gram_to_csv(gram, str(out))
    text = out.read_text().strip().splitlines()
    assert len(text) == 2 and "," in text[0]


def test_moment_depth_is_bounded_honestly():
    mu = _from_list([1, 2, 3])
    assert mu.moment(2) == 3
    with pytest.raises(ValueError):
        mu.moment(3)
    with pytest.raises(ValueError):
        mu.moment(-1)
