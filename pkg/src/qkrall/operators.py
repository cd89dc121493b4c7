"""Algebra of q-difference operators.

An operator is a finite sum  D(p) = sum_j f_j(x) * p(q^j x)  with rational
function coefficients f_j and integer shifts j.  Operators over different
bases q never mix.  The order of a nonzero operator is max shift minus min
shift after dropping zero coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .errors import DegenerateBase, MixedBase
from .exact import (Poly, RationalFn, poly_from_json, poly_to_json, rational,
                    rational_str)


class QDiffOperator:
    """Finite q-shift operator with rational function coefficients."""

    __slots__ = ("q", "terms")

    def __init__(self, q: Fraction | int | str,
                 terms: Mapping[int, RationalFn | Poly]):
        q = rational(q)
        if q in (0, 1, -1):
            raise DegenerateBase("operator base q must avoid 0, 1 and -1")
        canon: dict[int, RationalFn] = {}
        for j in sorted(terms):
            f = terms[j]
            if isinstance(f, Poly):
                f = RationalFn(f)
            if not f.is_zero():
                canon[int(j)] = f
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "terms", MappingProxyType(canon))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QDiffOperator is immutable")

    @classmethod
    def identity(cls, q: Fraction | int | str) -> QDiffOperator:
        return cls(q, {0: RationalFn.one()})

    @classmethod
    def zero(cls, q: Fraction | int | str) -> QDiffOperator:
        return cls(q, {})

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int | None:
        """max shift - min shift, or None for the zero operator."""
        if not self.terms:
            return None
        shifts = list(self.terms)
        return max(shifts) - min(shifts)

    def min_shift(self) -> int | None:
        return min(self.terms) if self.terms else None

    def max_shift(self) -> int | None:
        return max(self.terms) if self.terms else None

    def apply(self, p: Poly) -> RationalFn:
        """D(p) as a rational function (a polynomial iff den reduces to 1)."""
        out = RationalFn.zero()
        for j, f in self.terms.items():
            out = out + f * p.scale_arg(self.q ** j)
        return out

    def _require_same_base(self, other: QDiffOperator) -> None:
        if self.q != other.q:
            raise MixedBase(
                f"cannot combine operators over q = {self.q} and q = {other.q}")

    def __add__(self, other: QDiffOperator) -> QDiffOperator:
        if not isinstance(other, QDiffOperator):
            return NotImplemented
        self._require_same_base(other)
        terms = dict(self.terms)
        for j, f in other.terms.items():
            terms[j] = terms[j] + f if j in terms else f
        return QDiffOperator(self.q, terms)

    def __sub__(self, other: QDiffOperator) -> QDiffOperator:
        return self + (-other)

    def __neg__(self) -> QDiffOperator:
        return QDiffOperator(self.q, {j: -f for j, f in self.terms.items()})

    def __mul__(self, scalar: Fraction | int) -> QDiffOperator:
        if not isinstance(scalar, (Fraction, int)):
            return NotImplemented
        return QDiffOperator(self.q,
                             {j: f * scalar for j, f in self.terms.items()})

    def __rmul__(self, scalar: Fraction | int) -> QDiffOperator:
        return self.__mul__(scalar)

    def mul_fn(self, f: RationalFn | Poly) -> QDiffOperator:
        """Left-multiply by a coefficient function: (f*D)(p) = f * D(p)."""
        if isinstance(f, Poly):
            f = RationalFn(f)
        return QDiffOperator(self.q, {j: f * g for j, g in self.terms.items()})

    def compose(self, other: QDiffOperator) -> QDiffOperator:
        """(self o other)(p) = self(other(p))."""
        self._require_same_base(other)
        terms: dict[int, RationalFn] = {}
        for j1, f in self.terms.items():
            scale = self.q ** j1
            for j2, g in other.terms.items():
                j = j1 + j2
                contrib = f * g.scale_arg(scale)
                terms[j] = terms[j] + contrib if j in terms else contrib
        return QDiffOperator(self.q, terms)

    def __matmul__(self, other: QDiffOperator) -> QDiffOperator:
        return self.compose(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QDiffOperator):
            return NotImplemented
        return self.q == other.q and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash((self.q, tuple(sorted(self.terms.items()))))

    def __repr__(self) -> str:
        body = ", ".join(f"{j}: {f.pretty()}" for j, f in self.terms.items())
        return f"QDiffOperator(q={self.q}, {{{body}}})"

    def to_json(self) -> dict:
        return {
            "q": rational_str(self.q),
            "terms": [
                {"shift": j,
                 "num": poly_to_json(f.num),
                 "den": poly_to_json(f.den)}
                for j, f in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> QDiffOperator:
        terms = {
            int(t["shift"]): RationalFn(poly_from_json(t["num"]),
                                        poly_from_json(t["den"]))
            for t in data["terms"]
        }
        return cls(rational(data["q"]), terms)


def q_derivative_ops(q: Fraction | int | str) -> tuple[QDiffOperator, QDiffOperator]:
    """The pair (D_q, D_{1/q}) acting by divided q-differences.

    D_q(p)     = (p(qx) - p(x)) / (x (q - 1))
    D_{1/q}(p) = (p(x/q) - p(x)) / (x (1/q - 1))
    Both live in the same algebra over base q (shifts +1 / -1).
    """
    q = rational(q)
    if q in (0, 1, -1):
        raise DegenerateBase("q-derivative needs q outside {0, 1, -1}")
    x = Poly.x()
    fwd = RationalFn(Poly.one(), x * (q - 1))
    d_q = QDiffOperator(q, {1: fwd, 0: -fwd})
    bwd = RationalFn(Poly.constant(q), x * (1 - q))
    d_inv = QDiffOperator(q, {-1: bwd, 0: -bwd})
    return d_q, d_inv


def poly_of_operator(p: Poly, d: QDiffOperator) -> QDiffOperator:
    """Evaluate the polynomial p at the operator d (Horner in the algebra)."""
    if p.is_zero():
        return QDiffOperator.zero(d.q)
    acc = QDiffOperator(d.q, {0: RationalFn.constant(p.leading())})
    for k in range(p.degree() - 1, -1, -1):
        acc = acc.compose(d)
        c = p.coeff(k)
        if c:
            acc = acc + QDiffOperator(d.q, {0: RationalFn.constant(c)})
    return acc
