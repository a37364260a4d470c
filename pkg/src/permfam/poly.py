"""Polynomials, Moebius transformations and reduced rational maps over GF(q^2).

Every map here acts on the projective line: a point is either a field
element (an int) or the sentinel :data:`INFINITY`.  Poles are values, not
errors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .field import GF, FieldError


class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Point = Union[int, _Infinity]


def is_infinity(P: Point) -> bool:
    return P is INFINITY


def point_pow(field: GF, P: Point, n: int) -> Point:
    """``P**n`` on P^1 for ``n >= 1``: infinity stays put, finite points use pow."""
    if n < 1:
        raise ValueError("point_pow needs n >= 1")
    if P is INFINITY:
        return INFINITY
    return field.pow(P, n)


def point_str(field: GF, P: Point) -> str:
    return "inf" if P is INFINITY else str(P)


class Poly:
    """Polynomial over GF(q^2) with little-endian coefficients.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, field: GF, c: int) -> Poly:
        return cls(field, (c,))

    @classmethod
    def monomial(cls, field: GF, n: int, c: int = 1) -> Poly:
        return cls(field, (0,) * n + (c,))

    @classmethod
    def linear(cls, field: GF, c: int) -> Poly:
        """``X + c``."""
        return cls(field, (c, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def __add__(self, other: Poly) -> Poly:
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(F, [F.add(x, y) for x, y in zip(a, b)] + list(a[len(b):]))

    def __neg__(self) -> Poly:
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, c: int) -> Poly:
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def shift(self, n: int) -> Poly:
        """Multiply by ``X**n``."""
        if not self.coeffs:
            return self
        return Poly(self.field, (0,) * n + self.coeffs)

    def __mul__(self, other) -> Poly:
        if isinstance(other, int):
            return self.scale(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: Poly):
        F = self.field
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.degree
        inv_lead = F.inv(other.lead)
        quot = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1 - dd, -1, -1):
            c = F.mul(rem[i + dd], inv_lead)
            quot[i] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[i + j] = F.sub(rem[i + j], F.mul(c, oc))
        return Poly(F, quot), Poly(F, rem[:dd])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.lead))

    def frob(self) -> Poly:
        """Raise every coefficient to the q-th power."""
        F = self.field
        return Poly(F, [F.frob(c) for c in self.coeffs])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (zero if both inputs are zero)."""
    a, b = a.monic(), b.monic()
    while b:
        a, b = b, (a % b).monic()
    return a


def reversal_num(B: Poly, n: int) -> Poly:
    """``X**n * B^(q)(1/X)``, i.e. ``sum b_i^q X^(n-i)``.

    Needs ``n >= deg B`` so the result is a polynomial.
    """
    if B.is_zero():
        raise ValueError("reversal of the zero polynomial")
    if n < B.degree:
        raise ValueError(f"n={n} is below deg B={B.degree}")
    F = B.field
    out = [0] * (n + 1)
    for i, c in enumerate(B.coeffs):
        out[n - i] = F.frob(c)
    return Poly(F, out)


def parse_poly(field: GF, text: str) -> Poly:
    """``"c0,c1,..."`` little-endian element list, e.g. ``"v,1"`` for X+v."""
    parts = [s for s in text.split(",") if s.strip()]
    return Poly(field, [field.parse_element(s) for s in parts])


@dataclass(frozen=True)
class Mobius:
    """Degree-one map ``(a X + b) / (c X + d)`` with ``a d != b c``."""

    field: GF
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if not is_degree_one(self.field, self.a, self.b, self.c, self.d):
            raise ValueError(f"({self.a}X+{self.b})/({self.c}X+{self.d}) is not degree one")

    @classmethod
    def identity(cls, field: GF) -> Mobius:
        return cls(field, 1, 0, 0, 1)

    @property
    def det(self) -> int:
        F = self.field
        return F.sub(F.mul(self.a, self.d), F.mul(self.b, self.c))

    def __call__(self, P: Point) -> Point:
        F = self.field
        if P is INFINITY:
            return INFINITY if self.c == 0 else F.div(self.a, self.c)
        den = F.add(F.mul(self.c, P), self.d)
        if den == 0:
            return INFINITY
        return F.div(F.add(F.mul(self.a, P), self.b), den)

    def compose(self, other: Mobius) -> Mobius:
        """``self o other`` (apply ``other`` first); a 2x2 matrix product."""
        F = self.field
        m = F.mul
        return Mobius(
            F,
            F.add(m(self.a, other.a), m(self.b, other.c)),
            F.add(m(self.a, other.b), m(self.b, other.d)),
            F.add(m(self.c, other.a), m(self.d, other.c)),
            F.add(m(self.c, other.b), m(self.d, other.d)),
        )

    def __matmul__(self, other: Mobius) -> Mobius:
        return self.compose(other)

    def inverse(self) -> Mobius:
        F = self.field
        return Mobius(F, self.d, F.neg(self.b), F.neg(self.c), self.a)

    def same_map(self, other: Mobius) -> bool:
        """Equality as maps, i.e. as matrices up to a nonzero scalar."""
        F = self.field
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        return all(
            F.mul(mine[i], theirs[j]) == F.mul(mine[j], theirs[i])
            for i in range(4) for j in range(i + 1, 4)
        )

    def to_rational(self) -> RationalMap:
        F = self.field
        return RationalMap.build(Poly(F, (self.b, self.a)), Poly(F, (self.d, self.c)))


def is_degree_one(field: GF, a: int, b: int, c: int, d: int) -> bool:
    """Whether ``(aX+b)/(cX+d)`` has degree one, i.e. ``ad != bc``."""
    if c == 0 and d == 0:
        raise ValueError("denominator cX+d is identically zero")
    return field.mul(a, d) != field.mul(b, c)


def parse_mobius(field: GF, text: str) -> Mobius:
    """``"a,b;c,d"``."""
    try:
        top, bottom = text.split(";")
        a, b = (field.parse_element(s) for s in top.split(","))
        c, d = (field.parse_element(s) for s in bottom.split(","))
    except ValueError as exc:
        if isinstance(exc, FieldError):
            raise
        raise FieldError(f"cannot parse Mobius map {text!r}; expected a,b;c,d") from exc
    return Mobius(field, a, b, c, d)


@dataclass(frozen=True, eq=False)
class RationalMap:
    """``num/den`` in lowest terms with ``den`` monic.

    Use :meth:`build`, which reduces; the constructor trusts its input.
    """

    num: Poly
    den: Poly

    @classmethod
    def build(cls, num: Poly, den: Poly) -> RationalMap:
        if den.is_zero():
            raise ZeroDivisionError("rational map with zero denominator")
        g = poly_gcd(num, den)
        num, den = num // g, den // g
        scale = den.field.inv(den.lead)
        return cls(num.scale(scale), den.scale(scale))

    @property
    def field(self) -> GF:
        return self.den.field

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree, 0)

    def is_constant(self) -> bool:
        return self.degree == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, P: Point) -> Point:
        F = self.field
        if P is INFINITY:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return INFINITY
            if dn < dd:
                return 0
            return F.div(self.num.lead, self.den.lead)
        d = self.den(P)
        if d == 0:
            return INFINITY
        return F.div(self.num(P), d)

    def compose_mobius_left(self, eta: Mobius) -> RationalMap:
        """``eta o self``."""
        N, D = self.num, self.den
        return RationalMap.build(N * eta.a + D * eta.b, N * eta.c + D * eta.d)

    def compose_mobius_right(self, rho: Mobius) -> RationalMap:
        """``self o rho``, by substituting and clearing ``(cX+d)**deg``."""
        F = self.field
        deg = self.degree
        top = Poly(F, (rho.b, rho.a))
        bottom = Poly(F, (rho.d, rho.c))
        top_pows = [Poly.const(F, 1)]
        bottom_pows = [Poly.const(F, 1)]
        for _ in range(deg):
            top_pows.append(top_pows[-1] * top)
            bottom_pows.append(bottom_pows[-1] * bottom)

        def substitute(P: Poly) -> Poly:
            acc = Poly(F)
            for i, c in enumerate(P.coeffs):
                if c:
                    acc = acc + (top_pows[i] * bottom_pows[deg - i]).scale(c)
            return acc

        return RationalMap.build(substitute(self.num), substitute(self.den))


def rat_build(num: Poly, den: Poly) -> RationalMap:
    return RationalMap.build(num, den)
