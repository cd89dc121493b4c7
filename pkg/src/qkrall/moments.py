"""Exact moment functionals and their transform algebra.

A moment functional is the list of its moments mu_n = <mu, x^n>, produced
lazily from a provenance-tagged provider: a three-term recurrence, a
Christoffel or Geronimus transform, a (derivative of a) point mass, a
shift, a dilation, a scalar multiple, or a sum.  Moments are exact
rationals throughout; no representing measure is ever constructed.
"""

from __future__ import annotations

import csv
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import (CrossCheckFailed, DenominatorVanishes, NotQuasiDefinite,
                     UnknownTheorem, ZeroDilation)
from .exact import Poly, qpochhammer, rational, rational_str
from .families import (LaguerreParams, MeixnerParams, PolynomialFamily,
                       ThreeTermRecurrence, derive_recurrence, laguerre,
                       meixner, meixner_recurrence)
from .linalg import leading_principal_minors, solve_exact

Provider = Callable[[int, list[Fraction]], Fraction]


class MomentFunctional:
    """Lazily extended moment list with reproducible provenance.

    ``max_n`` bounds the available depth (None means unbounded); asking
    past it raises ValueError rather than inventing numbers.  Extension is
    append-only under a lock so functionals can be shared across threads.
    """

    def __init__(self, provider: Provider, provenance: dict,
                 max_n: int | None = None):
        self._provider = provider
        self.provenance = provenance
        self.max_n = max_n
        self._cache: list[Fraction] = []
        self._lock = threading.Lock()

    def moment(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("moment index must be >= 0")
        if self.max_n is not None and n > self.max_n:
            raise ValueError(
                f"moment {n} beyond available depth {self.max_n}")
        with self._lock:
            while len(self._cache) <= n:
                self._cache.append(self._provider(len(self._cache), self._cache))
            return self._cache[n]

    def moments(self, n_top: int) -> list[Fraction]:
        return [self.moment(n) for n in range(n_top + 1)]

    def pair(self, p: Poly) -> Fraction:
        """<mu, p> = sum of coeff_n * mu_n."""
        return sum((c * self.moment(n) for n, c in enumerate(p.coeffs)
                    if c != 0), Fraction(0))

    def to_json(self, n_top: int) -> dict:
        return {"provenance": self.provenance,
                "moments": [rational_str(m) for m in self.moments(n_top)]}

    def __repr__(self) -> str:
        kind = self.provenance.get("kind", "?")
        return f"MomentFunctional(kind={kind!r}, max_n={self.max_n})"


def pair(mu: MomentFunctional, p: Poly) -> Fraction:
    return mu.pair(p)


def agree_up_to(mu_a: MomentFunctional, mu_b: MomentFunctional,
                n_top: int) -> int | None:
    """First index <= n_top where the moments differ, or None if they agree."""
    for n in range(n_top + 1):
        if mu_a.moment(n) != mu_b.moment(n):
            return n
    return None


def moments_from_recurrence(rec: ThreeTermRecurrence, n_depth: int,
                            mu0: Fraction | int | str = 1) -> MomentFunctional:
    """Moments of the functional that makes the recurrence family orthogonal.

    Writes x^n in the p-basis by iterated tridiagonal multiplication
    (x p_j = a_j p_{j+1} + b_j p_j + c_j p_{j-1}); mu_n is mu0 times the
    p_0-coordinate.  Exact at every step.
    """
    mu0 = rational(mu0)
    state: dict = {"n": 0, "w": [Fraction(1)]}

    def provider(n: int, _prev: list[Fraction]) -> Fraction:
        if n < state["n"]:  # cache rebuilt from scratch; never happens in order
            state["n"], state["w"] = 0, [Fraction(1)]
        while state["n"] < n:
            w = state["w"]
            m = state["n"]
            try:
                nxt = [Fraction(0)] * (m + 2)
                for i in range(m + 2):
                    if i >= 1:
                        nxt[i] += rec.a(i - 1) * w[i - 1]
                    if i < len(w):
                        nxt[i] += rec.b(i) * w[i]
                    if i + 1 < len(w):
                        nxt[i] += rec.c(i + 1) * w[i + 1]
            except IndexError as exc:
                raise ValueError(
                    f"recurrence depth exhausted while extending to moment {n}"
                ) from exc
            state["w"] = nxt
            state["n"] = m + 1
        return state["w"][0] * mu0

    return MomentFunctional(
        provider,
        {"kind": "recurrence", "label": rec.label, "mu0": rational_str(mu0)},
        max_n=n_depth)


def christoffel(mu: MomentFunctional, r: Poly) -> MomentFunctional:
    """The functional r*mu: <r mu, p> = <mu, r p>."""
    coeffs = list(r.coeffs)

    def provider(n: int, _prev: list[Fraction]) -> Fraction:
        return sum((c * mu.moment(n + k) for k, c in enumerate(coeffs) if c),
                   Fraction(0))

    max_n = None if mu.max_n is None else mu.max_n - max(r.degree(), 0)
    return MomentFunctional(
        provider,
        {"kind": "christoffel", "r": [rational_str(c) for c in coeffs],
         "base": mu.provenance},
        max_n=max_n)


def geronimus(mu: MomentFunctional, lam: Fraction | int | str,
              c_scale: Fraction | int | str,
              seed0: Fraction | int | str) -> MomentFunctional:
    """The functional nu with (x - lam) nu = c_scale * mu and nu_0 = seed0."""
    lam = rational(lam)
    c_scale = rational(c_scale)
    seed0 = rational(seed0)

    def provider(n: int, prev: list[Fraction]) -> Fraction:
        if n == 0:
            return seed0
        return lam * prev[n - 1] + c_scale * mu.moment(n - 1)

    max_n = None if mu.max_n is None else mu.max_n + 1
    return MomentFunctional(
        provider,
        {"kind": "geronimus", "lambda": rational_str(lam),
         "C": rational_str(c_scale), "seed0": rational_str(seed0),
         "base": mu.provenance},
        max_n=max_n)


def point_mass(lam: Fraction | int | str, j: int = 0,
               mass: Fraction | int | str = 1) -> MomentFunctional:
    """mass * delta_lam^(j) with <delta_lam^(j), x^n> = (-1)^j (x^n)^(j)(lam)."""
    if j < 0:
        raise ValueError("derivative order must be >= 0")
    lam = rational(lam)
    mass = rational(mass)

    def provider(n: int, _prev: list[Fraction]) -> Fraction:
        if n < j:
            return Fraction(0)
        falling = Fraction(1)
        for i in range(j):
            falling *= n - i
        return mass * Fraction(-1) ** j * falling * lam ** (n - j)

    return MomentFunctional(
        provider,
        {"kind": "point-mass", "lambda": rational_str(lam), "order": j,
         "mass": rational_str(mass)})


def add(mu_a: MomentFunctional, mu_b: MomentFunctional) -> MomentFunctional:
    def provider(n: int, _prev: list[Fraction]) -> Fraction:
        return mu_a.moment(n) + mu_b.moment(n)

    if mu_a.max_n is None:
        max_n = mu_b.max_n
    elif mu_b.max_n is None:
        max_n = mu_a.max_n
    else:
        max_n = min(mu_a.max_n, mu_b.max_n)
    return MomentFunctional(
        provider,
        {"kind": "sum", "parts": [mu_a.provenance, mu_b.provenance]},
        max_n=max_n)


def scale(mu: MomentFunctional, s: Fraction | int | str) -> MomentFunctional:
    s = rational(s)

    def provider(n: int, _prev: list[Fraction]) -> Fraction:
        return s * mu.moment(n)

    return MomentFunctional(
        provider,
        {"kind": "scale", "factor": rational_str(s), "base": mu.provenance},
        max_n=mu.max_n)


def shift(mu: MomentFunctional, lam: Fraction | int | str) -> MomentFunctional:
    """The functional mu(x + lam): <mu(x+lam), p> = <mu, p(x - lam)>."""
    lam = rational(lam)

    def provider(n: int, _prev: list[Fraction]) -> Fraction:
        shifted = Poly.monomial(n).shift_arg(-lam)
        return mu.pair(shifted)

    return MomentFunctional(
        provider,
        {"kind": "shift", "lambda": rational_str(lam), "base": mu.provenance},
        max_n=mu.max_n)


def dilate(mu: MomentFunctional, lam: Fraction | int | str) -> MomentFunctional:
    """Support scaling x -> lam x: moments mu_n -> lam^n mu_n."""
    lam = rational(lam)
    if lam == 0:
        raise ZeroDilation("dilation scale must be nonzero")

    def provider(n: int, _prev: list[Fraction]) -> Fraction:
        return lam ** n * mu.moment(n)

    return MomentFunctional(
        provider,
        {"kind": "dilation", "lambda": rational_str(lam),
         "base": mu.provenance},
        max_n=mu.max_n)


@dataclass(frozen=True)
class GramData:
    """Monic orthogonal polynomials of a functional with their Hankel data.

    hankel_dets[n] is the n x n leading Hankel determinant (index 0 holds
    the empty determinant 1); norms[n] = <mu, pi_n^2> = Delta_{n+1}/Delta_n.
    """

    hankel_dets: list[Fraction]
    polys: list[Poly]
    norms: list[Fraction]


def hankel_orthogonal(mu: MomentFunctional, n_top: int) -> GramData:
    """Monic orthogonal polynomials pi_0..pi_{n_top} by exact linear solves.

    Raises NotQuasiDefinite(n) at the first vanishing Hankel determinant
    Delta_n with n <= n_top + 1 (norms through degree n_top need them all).
    """
    h = [[mu.moment(i + j) for j in range(n_top + 1)] for i in range(n_top + 1)]
    minors = leading_principal_minors(h)
    dets = [Fraction(1)] + minors
    for n in range(1, n_top + 2):
        if n < len(dets) and dets[n] == 0:
            raise NotQuasiDefinite(n)
    polys = [Poly.one()]
    for n in range(1, n_top + 1):
        mat = [[mu.moment(i + m) for m in range(n)] for i in range(n)]
        rhs = [-mu.moment(i + n) for i in range(n)]
        low = solve_exact(mat, rhs)
        polys.append(Poly(low + [Fraction(1)]))
    norms = [dets[n + 1] / dets[n] for n in range(n_top + 1)]
    return GramData(hankel_dets=dets, polys=polys, norms=norms)


def favard_positivity(rec: ThreeTermRecurrence, n_top: int) -> list[bool]:
    """Entry i reports a_{n-1} c_n > 0 at n = i + 1, for n <= n_top."""
    return [rec.a(n - 1) * rec.c(n) > 0 for n in range(1, n_top + 1)]


def combine_with_point_mass(nu: MomentFunctional, lam: Fraction | int | str,
                    mass: Fraction | int | str, p_polys: list[Poly],
                    n_top: int) -> tuple[list[Fraction], list[Poly]]:
    """Orthogonal combination q_n = p_n + beta_n p_{n-1} for nu + M delta_lam.

    The p_n must be orthogonal with respect to (x - lam) nu; with
    alpha_n = <nu, p_n>, beta_n = -(alpha_n + M p_n(lam)) /
    (alpha_{n-1} + M p_{n-1}(lam)).  Returns (betas, q_polys) with
    betas[0] unused (0) and q_0 = 1.
    """
    lam = rational(lam)
    mass = rational(mass)
    denom_terms = [nu.pair(p) + mass * p(lam) for p in p_polys]
    betas: list[Fraction] = [Fraction(0)]
    q_polys: list[Poly] = [Poly.one()]
    for n in range(1, n_top + 1):
        if denom_terms[n - 1] == 0:
            raise DenominatorVanishes(n)
        beta = -denom_terms[n] / denom_terms[n - 1]
        betas.append(beta)
        q_polys.append(p_polys[n] + beta * p_polys[n - 1])
    return betas, q_polys


def gram_matrix(mu: MomentFunctional, polys: list[Poly]) -> list[list[Fraction]]:
    return [[mu.pair(pn * pm) for pm in polys] for pn in polys]


def gram_to_csv(gram: list[list[Fraction]], path: str) -> None:
    """Exact rational strings, one Gram row per CSV row."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in gram:
            writer.writerow([rational_str(v) for v in row])


MEIXNER_I = "meixner-i"
MEIXNER_II = "meixner-ii"
MEIXNER_III = "meixner-iii"
LAGUERRE_I = "laguerre-i"
LAGUERRE_II = "laguerre-ii"

THEOREMS = (MEIXNER_I, MEIXNER_II, MEIXNER_III, LAGUERRE_I, LAGUERRE_II)


def meixner_moments(params: MeixnerParams, n_depth: int = 64) -> MomentFunctional:
    """Moments of the q-Meixner functional, normalized to total mass 1."""
    return moments_from_recurrence(meixner_recurrence(params), n_depth)


def laguerre_moments(params: LaguerreParams,
                     n_depth: int = 64) -> MomentFunctional:
    """Moments of the q-Laguerre functional via the derived recurrence,
    normalized to total mass 1.  The recurrence is recovered exactly from
    the polynomials themselves."""
    fam = PolynomialFamily("q-laguerre", params)
    rec = derive_recurrence(fam, n_depth + 1)
    return moments_from_recurrence(rec, n_depth)


def _product(factors: Iterable[Poly]) -> Poly:
    out = Poly.one()
    for f in factors:
        out = out * f
    return out


def _cross_check(built: MomentFunctional, divisor: Poly,
                 reference: MomentFunctional, n_top: int, label: str) -> None:
    lhs = christoffel(built, divisor)
    bad = agree_up_to(lhs, reference, n_top)
    if bad is not None:
        raise CrossCheckFailed(
            f"{label}: cross-check fails first at moment {bad}")


def measure_catalog(name: str, params: MeixnerParams | LaguerreParams,
                    k_or_alpha: int, mass: Fraction | int | str | None = None,
                    n_depth: int = 40,
                    check_to: int = 20) -> MomentFunctional:
    """The five theorem measures, each built by transform algebra and then
    validated against its displayed product identity before being returned.

    n_depth bounds the usable moment range of the result; check_to is how
    many moments of the identity are compared (CrossCheckFailed on any
    mismatch).
    """
    k = k_or_alpha
    if name in (MEIXNER_I, MEIXNER_II, MEIXNER_III):
        if not isinstance(params, MeixnerParams):
            raise UnknownTheorem(f"{name} needs Meixner parameters")
        q, b, c = params.q, params.b, params.c
        base = meixner_moments(params, n_depth + 2 * k + 4)
        if name == MEIXNER_I:
            shifted = meixner_moments(MeixnerParams(q, b, q ** (k + 1) * c),
                                      n_depth + 2 * k + 4)
            r = _product(Poly((b * c * q ** i, 1)) for i in range(1, k + 1))
            built = christoffel(shifted, r)
            _cross_check(built, Poly((b * c * q ** (k + 1), 1)),
                         scale(base, qpochhammer(-c, q, k + 1)),
                         check_to, name)
            return built
        if name == MEIXNER_II:
            shifted = meixner_moments(
                MeixnerParams(q, b / q ** (k + 1), q ** (k + 1) * c),
                n_depth + 2 * k + 4)
            r = _product(Poly((-b / q ** i, 1)) for i in range(k))
            built = christoffel(shifted, r)
            _cross_check(built, Poly((-b / q ** k, 1)),
                         scale(base, qpochhammer(b / q ** k, q, k + 1)
                               * qpochhammer(-c, q, k + 1)),
                         check_to, name)
            return built
        # Meixner III: Geronimus from the displayed relation
        # (x - q^{k+1}) rho~ = c^{k+1} q^C(k+1,2) (b/q^k; q)_{k+1} rho,
        # seeded by the displayed pairing value at n = 0.
        c_scale = (c ** (k + 1) * q ** (k * (k + 1) // 2)
                   * qpochhammer(b / q ** k, q, k + 1))
        carrier = meixner(q, 1 / b, b * c)
        seed0 = (Fraction(-1) ** k * qpochhammer(q, q, k)
                 * qpochhammer(b / q ** k, q, k) * c ** k
                 * q ** ((k + 1) * k // 2) * carrier.poly(k)(q))
        built = geronimus(base, q ** (k + 1), c_scale, seed0)
        _cross_check(built, Poly((-q ** (k + 1), 1)), scale(base, c_scale),
                     check_to, name)
        return built
    if name == LAGUERRE_I:
        if not isinstance(params, LaguerreParams):
            raise UnknownTheorem(f"{name} needs Laguerre parameters")
        q, t = params.q, params.t
        base = laguerre_moments(params, n_depth + 2 * k + 4)
        r = _product(Poly((1, Fraction(1) / q ** i)) for i in range(1, k + 1))
        # Density-substitution reading of the dilated base: replacing x by
        # x/lambda in a weight multiplies moment n by lambda^(n+1), the extra
        # lambda coming from the volume element.  The mass-preserving reading
        # (lambda^n alone) fails the product identity below by exactly that
        # factor, so the identity pins this choice.
        lam = q ** (k + 1)
        built = christoffel(scale(dilate(base, lam), lam), r)
        _cross_check(built, Poly((1, Fraction(1) / q ** (k + 1))),
                     scale(base, Fraction(1) / t ** (k + 1)),
                     check_to, name)
        return built
    if name == LAGUERRE_II:
        if not isinstance(params, LaguerreParams):
            raise UnknownTheorem(f"{name} needs Laguerre parameters")
        if mass is None:
            raise UnknownTheorem(f"{name} needs the point mass M")
        q, t = params.q, params.t
        lower = laguerre_moments(LaguerreParams(q, t / q), n_depth + 4)
        built = add(point_mass(0, 0, mass), lower)
        # x kills the delta mass, so x * rho~ must be proportional to the
        # alpha-level functional; the constant is the first moment of
        # rho_{alpha-1} since <rho_alpha, 1> = 1.
        upper = laguerre_moments(params, n_depth + 4)
        _cross_check(built, Poly.x(), scale(upper, lower.moment(1)),
                     check_to, name)
        return built
    raise UnknownTheorem(f"unknown theorem measure {name!r}")
