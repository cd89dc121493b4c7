"""Classical q-polynomial families defined by explicit basic hypergeometric sums.

Three kinds are implemented, all with exact rational data:

* ``q-meixner``        m_n(x; b, c)   eigenfunctions of a second order
  q-difference operator with eigenvalue q^n,
* ``q-laguerre``       L_n(x; t)      where the parameter t plays the role
  of q^alpha and the eigenvalue is t q^n,
* ``al-salam-carlitz`` v_n(x; a)      used as a coefficient carrier; it has
  no attached operator here.

Families memoize their polynomials; the cache is append-only and guarded
by a lock so families can be shared across threads.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import ParamDegeneracy, SingularSystem, UnsupportedFamily
from .exact import Poly, RationalFn, rational
from .linalg import solve_exact
from .operators import QDiffOperator

MEIXNER = "q-meixner"
LAGUERRE = "q-laguerre"
AL_SALAM_CARLITZ = "al-salam-carlitz"

# Exponent ceiling when testing whether a parameter equals a power of q.
# Parameters are fixed rationals, so any collision shows up well below this.
_POWER_SCAN = 512


def q_power_exponent(value: Fraction, q: Fraction,
                     limit: int = _POWER_SCAN) -> int | None:
    """Return e with q**e == value (|e| <= limit), or None."""
    if value == 0 or q == 0:
        return None
    pos, neg = Fraction(1), Fraction(1)
    for e in range(limit + 1):
        if pos == value:
            return e
        if neg == value:
            return -e
        pos *= q
        neg /= q
    return None


def _check_base(q: Fraction) -> None:
    if q in (0, 1, -1):
        raise ParamDegeneracy("base q must avoid 0, 1 and -1")


@dataclass(frozen=True)
class MeixnerParams:
    q: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        q = rational(self.q)
        b = rational(self.b)
        c = rational(self.c)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        _check_base(q)
        e = q_power_exponent(b, q)
        if e is not None and e <= 0:
            raise ParamDegeneracy(f"b = q^{e} is excluded for the Meixner family")
        if c == 0:
            raise ParamDegeneracy("c = 0 is excluded for the Meixner family")
        e = q_power_exponent(-c, q)
        if e is not None and e >= 0:
            raise ParamDegeneracy(f"c = -q^{e} is excluded for the Meixner family")


@dataclass(frozen=True)
class LaguerreParams:
    """q-Laguerre data; t stands for q^alpha and may be any allowed rational."""

    q: Fraction
    t: Fraction

    def __post_init__(self):
        q = rational(self.q)
        t = rational(self.t)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "t", t)
        _check_base(q)
        if t == 0:
            raise ParamDegeneracy("t = 0 is excluded for the Laguerre family")
        e = q_power_exponent(t, q)
        if e is not None and e < 0:
            raise ParamDegeneracy(f"t = q^{e} is excluded for the Laguerre family")


@dataclass(frozen=True)
class AlSalamCarlitzParams:
    q: Fraction
    a: Fraction

    def __post_init__(self):
        q = rational(self.q)
        a = rational(self.a)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "a", a)
        _check_base(q)
        if a == 0:
            raise ParamDegeneracy("a = 0 is excluded for the Al-Salam-Carlitz family")


FamilyParams = MeixnerParams | LaguerreParams | AlSalamCarlitzParams


def _meixner_poly(p: MeixnerParams, n: int) -> Poly:
    q, b, c = p.q, p.b, p.c
    q_inv_n = q ** (-n)
    ratio = -q ** (n + 1) / c
    coef = Fraction(1)
    xpoch = Poly.one()
    acc = Poly.one()
    for j in range(1, n + 1):
        qj = q ** (j - 1)
        coef *= (1 - q_inv_n * qj) * ratio / ((1 - b * q * qj) * (1 - q * qj))
        xpoch = xpoch * Poly((1, -qj))
        if coef:
            acc = acc + xpoch * coef
    pref = Fraction(1)
    for i in range(n):
        pref *= 1 - q ** (i + 1)
    return acc * (Fraction(-1) ** n / pref)


def _laguerre_poly(p: LaguerreParams, n: int) -> Poly:
    q, t = p.q, p.t
    q_inv_n = q ** (-n)
    step = t * q ** (n + 1)
    coef = Fraction(1)
    xpoch = Poly.one()
    acc = Poly.one()
    for j in range(1, n + 1):
        qj = q ** (j - 1)
        coef *= (1 - q_inv_n * qj) * step / (1 - q * qj)
        xpoch = xpoch * Poly((1, qj))
        if coef:
            acc = acc + xpoch * coef
    pref = Fraction(1)
    for i in range(n):
        pref *= (1 - t * q ** (i + 1)) * (1 - q ** (i + 1))
    if pref == 0:
        raise ParamDegeneracy(f"Laguerre prefactor vanishes at n = {n}")
    return acc * (Fraction(-1) ** n / pref)


def _alsalam_carlitz_poly(p: AlSalamCarlitzParams, n: int) -> Poly:
    q, a = p.q, p.a
    q_inv_n = q ** (-n)
    acc = Poly.one()
    coef = Fraction(1)
    xpoch = Poly.one()
    for j in range(1, n + 1):
        qj = q ** (j - 1)
        # exponent -C(j,2) + jn advances by n - (j - 1) at step j
        coef *= -(1 - q_inv_n * qj) * q ** (n - (j - 1)) / (a * (1 - q * qj))
        xpoch = xpoch * Poly((1, -qj))
        if coef:
            acc = acc + xpoch * coef
    return acc


class PolynomialFamily:
    """Memoized generator for one parametrized family."""

    def __init__(self, kind: str, params: FamilyParams, n_max: int = 32):
        if kind not in (MEIXNER, LAGUERRE, AL_SALAM_CARLITZ):
            raise UnsupportedFamily(f"unknown family kind {kind!r}")
        self.kind = kind
        self.params = params
        self.n_max = n_max
        self._cache: dict[int, Poly] = {}
        self._lock = threading.Lock()

    @property
    def q(self) -> Fraction:
        return self.params.q

    def poly(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("polynomial index must be >= 0")
        with self._lock:
            got = self._cache.get(n)
        if got is not None:
            return got
        if self.kind == MEIXNER:
            out = _meixner_poly(self.params, n)
        elif self.kind == LAGUERRE:
            out = _laguerre_poly(self.params, n)
        else:
            out = _alsalam_carlitz_poly(self.params, n)
        with self._lock:
            self._cache.setdefault(n, out)
        return out

    def polys_up_to(self, n: int) -> list[Poly]:
        return [self.poly(k) for k in range(n + 1)]

    def theta(self, n: int) -> Fraction:
        """Eigenvalue of the family operator on the degree-n polynomial."""
        if self.kind == MEIXNER:
            return self.q ** n
        if self.kind == LAGUERRE:
            return self.params.t * self.q ** n
        raise UnsupportedFamily("no eigenvalue data for Al-Salam-Carlitz")

    def __repr__(self) -> str:
        return f"PolynomialFamily({self.kind!r}, {self.params!r})"


def meixner(q, b, c, n_max: int = 32) -> PolynomialFamily:
    return PolynomialFamily(MEIXNER, MeixnerParams(rational(q), rational(b),
                                                   rational(c)), n_max)


def laguerre(q, t, n_max: int = 32) -> PolynomialFamily:
    return PolynomialFamily(LAGUERRE, LaguerreParams(rational(q), rational(t)),
                            n_max)


def alsalam_carlitz(q, a, n_max: int = 32) -> PolynomialFamily:
    return PolynomialFamily(AL_SALAM_CARLITZ,
                            AlSalamCarlitzParams(rational(q), rational(a)), n_max)


def family_operator(family: PolynomialFamily) -> QDiffOperator:
    """Second order q-difference operator with the family as eigenfunctions.

    q-Meixner:   D(m_n) = q^n m_n
    q-Laguerre:  D(L_n) = t q^n L_n
    """
    q = family.q
    x = Poly.x()
    x2 = x * x
    if family.kind == MEIXNER:
        b, c = family.params.b, family.params.c
        down = RationalFn(Poly((-b * q * c, c)), x2)
        up = RationalFn(Poly((-1, 1)) * Poly((b * c, 1)), x2)
        mid = RationalFn(x2 - down.num - up.num, x2)
        return QDiffOperator(q, {-1: down, 0: mid, 1: up})
    if family.kind == LAGUERRE:
        t = family.params.t
        down = RationalFn(Poly.one(), x)
        mid = RationalFn(Poly.constant(-(1 + t)), x)
        up = RationalFn(Poly((t, t)), x)
        return QDiffOperator(q, {-1: down, 0: mid, 1: up})
    raise UnsupportedFamily("no canonical operator for Al-Salam-Carlitz")


@dataclass(frozen=True)
class ThreeTermRecurrence:
    """Coefficients of  x p_n = a_n p_{n+1} + b_n p_n + c_n p_{n-1}."""

    a: Callable[[int], Fraction]
    b: Callable[[int], Fraction]
    c: Callable[[int], Fraction]
    label: str = field(default="recurrence")

    @classmethod
    def from_tables(cls, a: list[Fraction], b: list[Fraction],
                    c: list[Fraction], label: str = "derived") -> ThreeTermRecurrence:
        a_t, b_t, c_t = list(a), list(b), list(c)
        return cls(lambda n: a_t[n], lambda n: b_t[n], lambda n: c_t[n], label)


def meixner_recurrence(params: MeixnerParams) -> ThreeTermRecurrence:
    """Closed-form recurrence for the q-Meixner family, normalized so the
    underlying functional has total mass 1.  c(0) is returned as 0 since it
    multiplies the absent p_{-1}."""
    q, b, c = params.q, params.b, params.c

    def a_fn(n: int) -> Fraction:
        return c * (1 - q ** (n + 1)) * (1 - b * q ** (n + 1)) / q ** (2 * n + 1)

    def c_fn(n: int) -> Fraction:
        if n == 0:
            return Fraction(0)
        return (c + q ** n) / q ** (2 * n)

    def b_fn(n: int) -> Fraction:
        out = 1 + c * (1 - b * q ** (n + 1)) / q ** (2 * n + 1)
        if n > 0:
            out += (1 - q ** n) * (c + q ** n) / q ** (2 * n)
        return out

    return ThreeTermRecurrence(a_fn, b_fn, c_fn, label="q-meixner")


def derive_recurrence(family: PolynomialFamily, n_top: int) -> ThreeTermRecurrence:
    """Recover a_n, b_n, c_n for n <= n_top by exact coefficient matching.

    x p_n must equal a_n p_{n+1} + b_n p_n + c_n p_{n-1} in every
    coefficient; if the full linear system has no unique solution the
    family is not a genuine orthogonal sequence and SingularSystem is
    raised.
    """
    a_t: list[Fraction] = []
    b_t: list[Fraction] = []
    c_t: list[Fraction] = []
    for n in range(n_top + 1):
        lhs = Poly.x() * family.poly(n)
        cols = [family.poly(n + 1), family.poly(n)]
        if n > 0:
            cols.append(family.poly(n - 1))
        rows = lhs.degree() + 1
        mat = [[col.coeff(i) for col in cols] for i in range(rows)]
        rhs = [lhs.coeff(i) for i in range(rows)]
        try:
            sol = solve_exact(mat, rhs)
        except SingularSystem as exc:
            raise SingularSystem(
                f"no three-term recurrence at n = {n}: {exc}") from exc
        a_t.append(sol[0])
        b_t.append(sol[1])
        c_t.append(sol[2] if n > 0 else Fraction(0))
    return ThreeTermRecurrence.from_tables(a_t, b_t, c_t,
                                           label=f"derived:{family.kind}")


def polys_from_recurrence(rec: ThreeTermRecurrence, n_top: int) -> list[Poly]:
    """Regenerate p_0..p_{n_top} from the recurrence with p_0 = 1."""
    out = [Poly.one()]
    for n in range(n_top):
        an = rec.a(n)
        if an == 0:
            raise SingularSystem(f"a_{n} = 0, cannot advance the recurrence")
        nxt = Poly.x() * out[n] - rec.b(n) * out[n]
        if n > 0:
            nxt = nxt - rec.c(n) * out[n - 1]
        out.append(nxt * (Fraction(1) / an))
    return out
