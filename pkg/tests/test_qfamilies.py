"""Classical families: series values, eigen equations, recurrences."""
from __future__ import annotations

from fractions import Fraction

import pytest

from qkrall import (LaguerreParams, MeixnerParams, ParamDegeneracy, Poly,
                    UnsupportedFamily, alsalam_carlitz, derive_recurrence,
                    family_operator, gram_matrix, laguerre, laguerre_moments,
                    meixner, meixner_moments, meixner_recurrence,
                    polys_from_recurrence, q_power_exponent, qpochhammer)
from conftest import B0, C0, Q0, T0

F = Fraction


def test_meixner_eigen_equation():
    fam = meixner(Q0, B0, C0)
    op = family_operator(fam)
    for n in range(11):
        assert op.apply(fam.poly(n)) == Q0 ** n * fam.poly(n)
        assert fam.theta(n) == Q0 ** n


def test_laguerre_eigen_equation():
    fam = laguerre(Q0, T0)
    op = family_operator(fam)
    for n in range(11):
        assert op.apply(fam.poly(n)) == T0 * Q0 ** n * fam.poly(n)
        assert fam.theta(n) == T0 * Q0 ** n


def test_meixner_special_value_at_one():
    # m_k with parameter pair (-c, 1/(b c)) collapses at x = 1 to
    # (-1)^k / (q;q)_k for any admissible b, c.
    for b, c in ((B0, C0), (F(2, 7), F(5, 3)), (F(1, 2), F(9, 4))):
        fam = meixner(Q0, -c, 1 / (b * c))
        for k in range(5):
            assert fam.poly(k)(F(1)) == F(-1) ** k / qpochhammer(Q0, Q0, k)


def test_alsalam_carlitz_first_polynomials():
    a = F(4, 3)
    fam = alsalam_carlitz(Q0, a)
    assert fam.poly(0) == Poly.one()
    # v_1 = 1 + (1 - x)/a
    assert fam.poly(1) == Poly((1 + 1 / a, -1 / a))
    with pytest.raises(UnsupportedFamily):
        fam.theta(0)
    with pytest.raises(UnsupportedFamily):
        family_operator(fam)


def test_meixner_recurrence_regenerates_family():
    fam = meixner(Q0, B0, C0)
    rec = meixner_recurrence(fam.params)
    regen = polys_from_recurrence(rec, 10)
    for n in range(11):
        assert regen[n] == fam.poly(n)


def test_derived_recurrence_matches_closed_form():
    fam = meixner(Q0, B0, C0)
    closed = meixner_recurrence(fam.params)
    derived = derive_recurrence(fam, 8)
    for n in range(9):
        assert derived.a(n) == closed.a(n)
        assert derived.b(n) == closed.b(n)
        if n > 0:
            assert derived.c(n) == closed.c(n)


def test_laguerre_recurrence_round_trip():
    fam = laguerre(Q0, T0)
    rec = derive_recurrence(fam, 8)
    regen = polys_from_recurrence(rec, 8)
    for n in range(9):
        assert regen[n] == fam.poly(n)


def test_meixner_orthogonality_against_moments():
    fam = meixner(Q0, B0, C0)
    mu = meixner_moments(fam.params)
    polys = [fam.poly(n) for n in range(7)]
    gram = gram_matrix(mu, polys)
    for i in range(7):
        for j in range(7):
            if i == j:
                assert gram[i][j] != 0
            else:
                assert gram[i][j] == 0


def test_laguerre_orthogonality_against_moments():
    fam = laguerre(Q0, T0)
    mu = laguerre_moments(fam.params)
    polys = [fam.poly(n) for n in range(7)]
    gram = gram_matrix(mu, polys)
    for i in range(7):
        for j in range(7):
            if i == j:
                assert gram[i][j] != 0
            else:
                assert gram[i][j] == 0


def test_q_power_exponent():
    assert q_power_exponent(F(4, 25), Q0) == 2
    assert q_power_exponent(F(5, 2), Q0) == -1
    assert q_power_exponent(F(1), Q0) == 0
    assert q_power_exponent(F(3, 7), Q0) is None


def test_parameter_degeneracies_raise():
    with pytest.raises(ParamDegeneracy):
        MeixnerParams(F(1), B0, C0)
    with pytest.raises(ParamDegeneracy):
        MeixnerParams(Q0, Q0 ** -2, C0)  # b on the forbidden q-power ladder
    with pytest.raises(ParamDegeneracy):
        MeixnerParams(Q0, B0, -Q0 ** 2)  # c on the forbidden ladder
    with pytest.raises(ParamDegeneracy):
        LaguerreParams(Q0, F(0))
    with pytest.raises(ParamDegeneracy):
        LaguerreParams(Q0, Q0 ** -3)
    with pytest.raises(ParamDegeneracy):
        alsalam_carlitz(Q0, 0)


def test_polynomials_are_cached_and_consistent():
    fam = meixner(Q0, B0, C0)
    first = fam.poly(6)
    second = fam.poly(6)
    assert first is second
    assert [p.degree() for p in fam.polys_up_to(6)] == list(range(7))
