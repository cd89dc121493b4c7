"""q-difference operator algebra: action, composition, order bookkeeping."""
from __future__ import annotations

from fractions import Fraction

import pytest

from qkrall import (MixedBase, Poly, QDiffOperator, RationalFn,
                    poly_of_operator, q_derivative_ops)

F = Fraction
Q = F(2, 5)


def _dq_by_hand(p: Poly, q: F) -> Poly:
    """(p(qx) - p(x)) / ((q - 1) x), exact on polynomials."""
    diff = p.scale_arg(q) - p
    coeffs = list(diff.coeffs)
    assert coeffs[0] == 0
    return Poly(coeffs[1:]) * F(1, 1) * (1 / F(q - 1))


def test_q_derivative_matches_divided_difference():
    d_q, d_inv = q_derivative_ops(Q)
    p = Poly((3, -2, 0, F(5, 7)))
    assert d_q.apply(p) == _dq_by_hand(p, Q)
    assert d_inv.apply(p) == _dq_by_hand(p, 1 / Q)


def test_q_derivative_monomial_eigen_like_action():
    d_q, d_inv = q_derivative_ops(Q)
    for n in range(1, 6):
        xn = Poly.monomial(n)
        bracket = (Q ** n - 1) / (Q - 1)
        assert d_q.apply(xn) == bracket * Poly.monomial(n - 1)
        bracket_inv = (Q ** -n - 1) / (Q ** -1 - 1)
        assert d_inv.apply(xn) == bracket_inv * Poly.monomial(n - 1)
    assert d_q.apply(Poly.one()).is_zero()


def test_identity_zero_and_order():
    ident = QDiffOperator.identity(Q)
    zero = QDiffOperator.zero(Q)
    assert ident.order() == 0
    p = Poly((1, 2, 3))
    assert ident.apply(p) == p
    assert zero.apply(p).is_zero()
    d_q, d_inv = q_derivative_ops(Q)
    assert d_q.order() == 1
    assert d_q.min_shift() == 0 and d_q.max_shift() == 1
    both = d_q + d_inv
    assert both.order() == 2
    assert both.min_shift() == -1 and both.max_shift() == 1


def test_linear_structure():
    d_q, d_inv = q_derivative_ops(Q)
    p = Poly((0, 1, 1, 4))
    lhs = (d_q * F(3, 2) - d_inv).apply(p)
    rhs = F(3, 2) * d_q.apply(p) - d_inv.apply(p)
    assert lhs == rhs
    assert (d_q - d_q).apply(p).is_zero()
    assert (-d_q).apply(p) == -(d_q.apply(p))


def test_mul_fn_left_multiplies():
    d_q, _ = q_derivative_ops(Q)
    f = RationalFn(Poly((1, 1)), Poly.x())  # (x+1)/x
    op = d_q.mul_fn(f)
    p = Poly((0, 0, 1))
    # d_q(x^2) = (q+1) x, then times (x+1)/x stays polynomial
    assert op.apply(p) == (Q + 1) * Poly((1, 1))
    # d_q(x) = 1 and (x+1)/x is not polynomial: apply reports that honestly
    assert not op.apply(Poly.x()).is_polynomial()


def test_composition_matches_sequential_application():
    d_q, d_inv = q_derivative_ops(Q)
    comp = d_q @ d_inv
    for p in (Poly((1, 2, 3)), Poly((0, 0, 0, 1)), Poly((-1, 0, F(2, 3), 5))):
        assert comp.apply(p) == d_q.apply(d_inv.apply(p))
    assoc_a = (d_q @ d_inv) @ d_q
    assoc_b = d_q @ (d_inv @ d_q)
    assert assoc_a == assoc_b


def test_composition_rejects_mixed_bases():
    d_q, _ = q_derivative_ops(Q)
    d_other, _ = q_derivative_ops(F(1, 3))
    with pytest.raises(MixedBase):
        d_q @ d_other
    with pytest.raises(MixedBase):
        d_q + d_other


def test_poly_of_operator_is_evaluation_on_eigenvectors():
    # On x^n the scaling operator S: p -> p(qx) acts by q^n, so any
    # polynomial r evaluated at S acts by r(q^n).
    scaling = QDiffOperator(Q, {1: RationalFn.from_poly(Poly.one())})
    r = Poly((2, -1, F(1, 3)))
    op = poly_of_operator(r, scaling)
    for n in range(5):
        xn = Poly.monomial(n)
        assert op.apply(xn) == r(Q ** n) * xn


def test_json_round_trip_and_equality():
    d_q, d_inv = q_derivative_ops(Q)
    op = (d_q @ d_inv).mul_fn(RationalFn(Poly((1, 0, 1)), Poly.x())) + d_q
    payload = op.to_json()
    assert QDiffOperator.from_json(payload) == op
    assert hash(QDiffOperator.from_json(payload)) == hash(op)


def test_apply_reports_nonpolynomial_results():
    # 1/x as a multiplier on constants leaves the polynomial ring
    op = QDiffOperator(Q, {0: RationalFn(Poly.one(), Poly.x())})
    out = op.apply(Poly.x())
    assert out.is_polynomial() and out.as_poly() == Poly.one()
    assert not op.apply(Poly.one()).is_polynomial()
