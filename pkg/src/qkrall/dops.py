"""Spectral ladder operators for classical q-families.

A ladder operator here is determined by two scalar sequences (eps_n) and
(sigma_n): its action on the n-th family polynomial is the finite
lower-triangular combination

    -(1/2) sigma_{n+1} p_n
        + sum_{j=1}^{n} (-1)^{j+1} sigma_{n+1-j} (prod_{i=1}^{j} eps_{n-i+1}) p_{n-j}.

Each catalogued spec also carries a closed form: an explicit q-difference
operator whose action on p_n reproduces that combination exactly.  The two
realizations are kept side by side so they can be checked against each other
at any depth.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import UnsupportedFamily
from .exact import Poly, RationalFn
from .families import (LAGUERRE, MEIXNER, PolynomialFamily, family_operator)
from .operators import QDiffOperator, q_derivative_ops

__all__ = ["DOperatorSpec", "dop_action", "dop_catalog", "verify_dop"]


@dataclass(frozen=True, eq=False)
class DOperatorSpec:
    """One ladder operator: its defining sequences plus its closed form.

    geometric, when present, is the pair (u, v) with theta_n = u*q^n and
    sigma_n = v*q^n; it is what allows a first-degree companion polynomial
    to be attached to any second-degree one downstream.
    """

    spec_id: str
    eps: Callable[[int], Fraction]
    sigma: Callable[[int], Fraction]
    geometric: tuple[Fraction, Fraction] | None
    closed_form: QDiffOperator


def dop_action(spec: DOperatorSpec, family: PolynomialFamily, n: int) -> Poly:
    """The defining lower-triangular action of a ladder on family member n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    acc = Fraction(-1, 2) * spec.sigma(n + 1) * family.poly(n)
    chain = Fraction(1)
    for j in range(1, n + 1):
        chain *= spec.eps(n - j + 1)
        term = spec.sigma(n + 1 - j) * chain * family.poly(n - j)
        acc = acc + term if j % 2 == 1 else acc - term
    return acc


def _meixner_specs(family: PolynomialFamily) -> tuple[DOperatorSpec, ...]:
    params = family.params
    q, b, c = params.q, params.b, params.c
    second_order = family_operator(family)
    d_q, d_qinv = q_derivative_ops(q)
    ident = QDiffOperator.identity(q)

    one_minus_x = RationalFn.from_poly(Poly((Fraction(1), Fraction(-1))))
    spec1 = DOperatorSpec(
        spec_id="q-meixner-1",
        eps=lambda n: Fraction(1),
        sigma=lambda n: q ** (n - 1) / (q - 1),
        geometric=(Fraction(1), Fraction(1) / (q * (q - 1))),
        closed_form=(d_q.mul_fn(one_minus_x)
                     + (second_order - 2 * ident) * (Fraction(1, 2) / (q - 1))),
    )
    spec2 = DOperatorSpec(
        spec_id="q-meixner-2",
        eps=lambda n: Fraction(1) / (1 - b * q ** n),
        sigma=lambda n: q ** n / (c * (1 - q)),
        geometric=(Fraction(1), Fraction(1) / (c * (1 - q))),
        closed_form=d_qinv + second_order * (q / (2 * c * (q - 1))),
    )
    minus_x_minus_bc = RationalFn.from_poly(Poly((-b * c, Fraction(-1))))
    spec3 = DOperatorSpec(
        spec_id="q-meixner-3",
        eps=lambda n: (c + q ** n) / (c * (1 - b * q ** n)),
        sigma=lambda n: q ** (n - 1) / (q - 1),
        geometric=(Fraction(1), Fraction(1) / (q * (q - 1))),
        closed_form=(d_q.mul_fn(minus_x_minus_bc)
                     + (second_order - 2 * ident) * (Fraction(1, 2) / (q - 1))),
    )
    return (spec1, spec2, spec3)


def _laguerre_specs(family: PolynomialFamily) -> tuple[DOperatorSpec, ...]:
    params = family.params
    q, t = params.q, params.t
    d_q, d_qinv = q_derivative_ops(q)
    ident = QDiffOperator.identity(q)

    one_minus_x = RationalFn.from_poly(Poly((Fraction(1), Fraction(-1))))
    one_plus_x = RationalFn.from_poly(Poly((Fraction(1), Fraction(1))))
    spec1 = DOperatorSpec(
        spec_id="q-laguerre-1",
        eps=lambda n: Fraction(1),
        sigma=lambda n: q ** (n - 1),
        geometric=(t, Fraction(1) / q),
        closed_form=(d_q.mul_fn(one_minus_x) * (q - 1)
                     + d_qinv * ((1 - q) / (t * q)) - ident) * Fraction(1, 2),
    )
    spec2 = DOperatorSpec(
        spec_id="q-laguerre-2",
        eps=lambda n: Fraction(1) / (1 - t * q ** n),
        sigma=lambda n: q ** (n - 1),
        geometric=(t, Fraction(1) / q),
        closed_form=(d_q.mul_fn(one_plus_x) * (1 - q)
                     + d_qinv * ((1 - q) / (t * q)) - ident) * Fraction(1, 2),
    )
    return (spec1, spec2)


def dop_catalog(family: PolynomialFamily) -> tuple[DOperatorSpec, ...]:
    """All catalogued ladder operators for the given family."""
    if family.kind == MEIXNER:
        return _meixner_specs(family)
    if family.kind == LAGUERRE:
        return _laguerre_specs(family)
    raise UnsupportedFamily(
        f"no ladder operators catalogued for {family.kind!r}")


def verify_dop(spec: DOperatorSpec, family: PolynomialFamily,
               n_top: int) -> list[dict]:
    """Check closed form against defining action for n = 0..n_top.

    Each entry reports the residual closed_form(p_n) - action(n); an exact
    match leaves residual None and passed True.
    """
    report = []
    for n in range(n_top + 1):
        via_closed = spec.closed_form.apply(family.poly(n))
        via_action = RationalFn.from_poly(dop_action(spec, family, n))
        residual = via_closed - via_action
        report.append({
            "spec_id": spec.spec_id,
            "n": n,
            "passed": residual.is_zero(),
            "residual": None if residual.is_zero() else residual,
        })
    return report
