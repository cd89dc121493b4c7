"""Exact arithmetic over Q: scalars, polynomials, rational functions.

Everything in the package funnels through this module, and nothing here
ever touches a float.  Scalars are ``fractions.Fraction``; polynomials
store coefficients lowest degree first; rational functions are kept in a
canonical form (coprime numerator/denominator, monic denominator) so that
syntactic equality is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .errors import ZeroDenominator

Rational = Fraction


def rational(value: Fraction | int | str) -> Fraction:
    """Parse an exact rational from an int, Fraction or 'num/den' string."""
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot build a rational from {type(value).__name__}")


def rational_str(value: Fraction) -> str:
    """Serialize exactly: '7/3', '-2/5' or '4'.  Never a decimal."""
    return str(Fraction(value))


def qpochhammer(a: Fraction | int | str, q: Fraction | int | str, j: int) -> Fraction:
    """q-shifted factorial (a; q)_j = (1 - a)(1 - aq)...(1 - aq^(j-1))."""
    if j < 0:
        raise ValueError("qpochhammer needs j >= 0")
    a = rational(a)
    q = rational(q)
    out = Fraction(1)
    term = a
    for _ in range(j):
        out *= 1 - term
        term *= q
    return out


class Poly:
    """Univariate polynomial over Q.

    Coefficients run lowest degree first and trailing zeros are trimmed,
    so the zero polynomial is the empty tuple and degree() returns -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: object = ()):
        cs = [Fraction(c) for c in coeffs]  # type: ignore[union-attr]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls) -> Poly:
        return cls(())

    @classmethod
    def one(cls) -> Poly:
        return cls((1,))

    @classmethod
    def x(cls) -> Poly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: Fraction | int | str) -> Poly:
        return cls((rational(c),))

    @classmethod
    def monomial(cls, k: int, c: Fraction | int | str = 1) -> Poly:
        if k < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls((0,) * k + (rational(c),))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: Poly) -> Poly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Poly | Fraction | int) -> Poly:
        if isinstance(other, (Fraction, int)):
            return Poly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return Poly(out)

    def __rmul__(self, other: Fraction | int) -> Poly:
        return self.__mul__(other)

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x0: Fraction | int | str) -> Fraction:
        x0 = rational(x0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def scale_arg(self, lam: Fraction | int | str) -> Poly:
        """Substitute x -> lam * x."""
        lam = rational(lam)
        out = []
        power = Fraction(1)
        for c in self.coeffs:
            out.append(c * power)
            power *= lam
        return Poly(out)

    def shift_arg(self, lam: Fraction | int | str) -> Poly:
        """Substitute x -> x + lam."""
        lam = rational(lam)
        shifted_x = Poly((lam, 1))
        acc = Poly.zero()
        for c in reversed(self.coeffs):
            acc = acc * shifted_x + Poly.constant(c)
        return acc

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def pretty(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = var if k == 1 else f"{var}^{k}"
                parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Exact polynomial division: a = q*b + r with deg r < deg b."""
    if b.is_zero():
        raise ZeroDenominator("polynomial division by zero")
    rem = list(a.coeffs)
    db, lb = b.degree(), b.leading()
    if a.degree() < db:
        return Poly.zero(), a
    quo = [Fraction(0)] * (a.degree() - db + 1)
    for k in range(len(quo) - 1, -1, -1):
        c = rem[k + db] / lb
        quo[k] = c
        if c:
            for i, cb in enumerate(b.coeffs):
                rem[k + i] -= c * cb
    return Poly(quo), Poly(rem[:db])


def exact_div(a: Poly, b: Poly) -> Poly:
    """Divide a by b, insisting on zero remainder."""
    q, r = divmod_poly(a, b)
    if not r.is_zero():
        raise ValueError("polynomial division left a remainder")
    return q


def _int_content(v: list[int]) -> int:
    g = 0
    for c in v:
        g = _int_gcd(g, abs(c))
        if g == 1:
            break
    return g


def _to_int_primitive(p: Poly) -> list[int]:
    """Scale to integer coefficients with content 1 and positive leading."""
    den_lcm = 1
    for c in p.coeffs:
        den_lcm = den_lcm * c.denominator // _int_gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in p.coeffs]
    g = _int_content(ints)
    if g > 1:
        ints = [c // g for c in ints]
    if ints and ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via a primitive pseudo-remainder sequence over Z."""
    if a.is_zero() and b.is_zero():
        return Poly.zero()
    if a.is_zero() or b.is_zero():
        src = b if a.is_zero() else a
        return src * (1 / src.leading())
    fa, fb = _to_int_primitive(a), _to_int_primitive(b)
    if len(fa) < len(fb):
        fa, fb = fb, fa
    while fb:
        # pseudo-remainder: lc(fb)^(deg fa - deg fb + 1) * fa  mod  fb
        rem = list(fa)
        lb = fb[-1]
        steps = len(fa) - len(fb) + 1
        for k in range(steps - 1, -1, -1):
            lead = rem[k + len(fb) - 1]
            if lead:
                for i in range(len(rem)):
                    rem[i] *= lb
                for i, cb in enumerate(fb):
                    rem[k + i] -= lead * cb
        while rem and rem[-1] == 0:
            rem.pop()
        g = _int_content(rem)
        if g > 1:
            rem = [c // g for c in rem]
        fa, fb = fb, rem
    monic = Poly(fa)
    return monic * (1 / monic.leading())


class RationalFn:
    """Quotient of polynomials in canonical form.

    The canonical form has coprime numerator/denominator and a monic
    denominator, so == on the pair decides mathematical equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = Poly.one()):
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        else:
            g = poly_gcd(num, den)
            if g.degree() > 0:
                num, den = exact_div(num, g), exact_div(den, g)
            lc = den.leading()
            if lc != 1:
                inv = 1 / lc
                num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("RationalFn is immutable")

    @classmethod
    def zero(cls) -> RationalFn:
        return cls(Poly.zero())

    @classmethod
    def one(cls) -> RationalFn:
        return cls(Poly.one())

    @classmethod
    def from_poly(cls, p: Poly) -> RationalFn:
        return cls(p)

    @classmethod
    def constant(cls, c: Fraction | int | str) -> RationalFn:
        return cls(Poly.constant(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == Poly.one()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("rational function is not a polynomial")
        return self.num

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            other = RationalFn(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: RationalFn | Poly) -> RationalFn:
        if isinstance(other, Poly):
            other = RationalFn(other)
        return RationalFn(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    def __sub__(self, other: RationalFn | Poly) -> RationalFn:
        return self + (-other if isinstance(other, RationalFn) else RationalFn(-other))

    def __neg__(self) -> RationalFn:
        return RationalFn(-self.num, self.den)

    def __mul__(self, other: RationalFn | Poly | Fraction | int) -> RationalFn:
        if isinstance(other, (Fraction, int)):
            return RationalFn(self.num * other, self.den)
        if isinstance(other, Poly):
            other = RationalFn(other)
        return RationalFn(self.num * other.num, self.den * other.den)

    def __rmul__(self, other: Fraction | int) -> RationalFn:
        return self.__mul__(other)

    def __truediv__(self, other: RationalFn | Poly | Fraction | int) -> RationalFn:
        if isinstance(other, (Fraction, int)):
            if other == 0:
                raise ZeroDenominator("division by zero scalar")
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, Poly):
            other = RationalFn(other)
        if other.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def __call__(self, x0: Fraction | int | str) -> Fraction:
        x0 = rational(x0)
        d = self.den(x0)
        if d == 0:
            raise ZeroDenominator(f"denominator vanishes at x = {x0}")
        return self.num(x0) / d

    def scale_arg(self, lam: Fraction | int | str) -> RationalFn:
        """Substitute x -> lam * x."""
        return RationalFn(self.num.scale_arg(lam), self.den.scale_arg(lam))

    def __repr__(self) -> str:
        return f"RationalFn({self.num!r}, {self.den!r})"

    def pretty(self, var: str = "x") -> str:
        if self.is_polynomial():
            return self.num.pretty(var)
        return f"({self.num.pretty(var)}) / ({self.den.pretty(var)})"


def poly_to_json(p: Poly) -> list[str]:
    """Lowest-degree-first list of exact rational strings."""
    return [rational_str(c) for c in p.coeffs]


def poly_from_json(data: list[str]) -> Poly:
    return Poly([rational(c) for c in data])


def ratfn_to_json(f: RationalFn) -> dict[str, list[str]]:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def ratfn_from_json(data: dict[str, list[str]]) -> RationalFn:
    return RationalFn(poly_from_json(data["num"]), poly_from_json(data["den"]))
