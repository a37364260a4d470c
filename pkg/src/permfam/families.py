"""The two generalized-Redei families f(X) = X^r B(X^(q-1)) over GF(q^2).

Family ``thm1``::

    B(X) = a (X+u)^n + b (X+v)^n,     u != v in mu_(q+1),  a, b != 0
    f permutes GF(q^2)  <=>  (b/a)^(q-1) != (v/u)^n  and  gcd(rn, q-1) = 1

Family ``thm2``::

    B(X) = a (X+v^(-q))^n + b (X+v)^n,   v not in mu_(q+1),  a, b != 0
    f permutes GF(q^2)  <=>  b v^n / a not in mu_(q+1)
                             and gcd(r, q-1) = 1 = gcd(n, q+1)

In both families r and n are positive with r = n (mod q+1).  Beyond the
criteria, this module builds the factorization g = eta o X^n o rho of the
induced map on mu_(q+1) and evaluates it by repeated squaring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .field import GF, FieldError, parse_field_spec
from .poly import INFINITY, Mobius, Point, Poly, RationalMap, is_degree_one, point_pow, reversal_num

FAMILIES = ("thm1", "thm2")

SPECIAL_CASES = ("FFLW1", "FFLW2", "PUW8", "PUW9", "WYDM35_ZR12", "WYDM33_ZR11")


class InvalidParams(ValueError):
    """Parameters that violate a family's hypotheses."""


class Degenerate(ValueError):
    """The induced map is constant, so no Moebius factorization exists."""


@dataclass(frozen=True)
class FamilyParams:
    field: GF = dc_field(repr=False)
    family: str
    r: int
    n: int
    v: int
    a: int
    b: int
    u: Optional[int] = None

    def __post_init__(self):
        F = self.field
        if self.family not in FAMILIES:
            raise InvalidParams(f"unknown family {self.family!r}")
        if self.r < 1 or self.n < 1:
            raise InvalidParams("r and n must be positive")
        if (self.r - self.n) % (F.q + 1):
            raise InvalidParams(f"r={self.r} and n={self.n} differ mod q+1={F.q + 1}")
        for name in ("a", "b", "v") + (("u",) if self.family == "thm1" else ()):
            x = getattr(self, name)
            if x is None or not 0 <= x < F.order:
                raise InvalidParams(f"{name}={x!r} is not an element of {F!r}")
        if self.a == 0 or self.b == 0:
            raise InvalidParams("a and b must be nonzero")
        if self.family == "thm1":
            if not (F.in_mu(self.u) and F.in_mu(self.v)):
                raise InvalidParams("thm1 needs u and v in mu_(q+1)")
            if self.u == self.v:
                raise InvalidParams("thm1 needs u != v")
        else:
            if self.u is not None:
                raise InvalidParams("thm2 takes no u")
            if self.v == 0 or F.in_mu(self.v):
                raise InvalidParams("thm2 needs v nonzero and outside mu_(q+1)")

    @property
    def m(self) -> int:
        """The shift with ``r = n + m (q+1)``."""
        return (self.r - self.n) // (self.field.q + 1)

    def with_(self, **changes) -> FamilyParams:
        values = dict(field=self.field, family=self.family, r=self.r, n=self.n,
                      v=self.v, a=self.a, b=self.b, u=self.u)
        values.update(changes)
        return FamilyParams(**values)

    def to_text(self) -> str:
        F = self.field
        parts = [f"family={self.family}", f"p={F.p}", f"k={F.k}", f"r={self.r}", f"n={self.n}"]
        if self.family == "thm1":
            parts.append(f"u={self.u}")
        parts += [f"v={self.v}", f"a={self.a}", f"b={self.b}"]
        return " ".join(parts)

    def to_dict(self) -> dict:
        F = self.field
        out = {"family": self.family, "field": F.spec, "r": self.r, "n": self.n}
        names = ("u", "v", "a", "b") if self.family == "thm1" else ("v", "a", "b")
        for name in names:
            x = getattr(self, name)
            out[name] = x
            out[name + "_pretty"] = F.pretty(x)
        return out

    @classmethod
    def from_text(cls, text: str, max_elems: Optional[int] = None) -> FamilyParams:
        """Parse ``"family=thm1 p=2 k=5 r=44 n=11 u=.. v=.. a=.. b=.."``."""
        kv = {}
        for token in text.split():
            if "=" not in token:
                raise InvalidParams(f"malformed token {token!r}")
            key, val = token.split("=", 1)
            kv[key] = val
        try:
            spec = f"{kv.pop('p')}^{kv.pop('k', '1')}"
            F = parse_field_spec(spec) if max_elems is None else parse_field_spec(spec, max_elems)
            family = kv.pop("family")
            r, n = int(kv.pop("r")), int(kv.pop("n"))
            elems = {name: F.parse_element(kv.pop(name)) for name in ("u", "v", "a", "b") if name in kv}
        except KeyError as exc:
            raise InvalidParams(f"missing field {exc.args[0]!r}") from exc
        if kv:
            raise InvalidParams(f"unexpected fields {sorted(kv)}")
        return cls(F, family, r, n, **elems)


# ---------------------------------------------------------------------------
# Polynomials of the families
# ---------------------------------------------------------------------------

def b_poly(params: FamilyParams) -> Poly:
    F = params.field
    n = params.n
    if params.family == "thm1":
        left = Poly.linear(F, params.u)
    else:
        left = Poly.linear(F, F.inv(F.frob(params.v)))
    right = Poly.linear(F, params.v)
    return (left**n).scale(params.a) + (right**n).scale(params.b)


def f_poly(params: FamilyParams) -> list[tuple[int, int]]:
    """Sparse ``X^r B(X^(q-1))`` as ``(exponent, coefficient)`` pairs."""
    return sparse_f(params.r, b_poly(params))


def sparse_f(r: int, B: Poly) -> list[tuple[int, int]]:
    q = B.field.q
    return [(r + i * (q - 1), c) for i, c in enumerate(B.coeffs) if c]


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------

def thm1_check(params: FamilyParams) -> bool:
    if params.family != "thm1":
        raise InvalidParams("thm1_check needs a thm1 parameter set")
    F, q = params.field, params.field.q
    lhs = F.pow(F.div(params.b, params.a), q - 1)
    rhs = F.pow(F.div(params.v, params.u), params.n)
    # gcd(rn, q-1) = 1 split in two to keep r*n small
    return lhs != rhs and math.gcd(params.r, q - 1) == 1 and math.gcd(params.n, q - 1) == 1


def thm2_check(params: FamilyParams) -> bool:
    if params.family != "thm2":
        raise InvalidParams("thm2_check needs a thm2 parameter set")
    F, q = params.field, params.field.q
    c = F.div(F.mul(params.b, F.pow(params.v, params.n)), params.a)
    return not F.in_mu(c) and math.gcd(params.r, q - 1) == 1 and math.gcd(params.n, q + 1) == 1


def criterion(params: FamilyParams) -> bool:
    """The permutation criterion of the parameter set's family."""
    if params.family == "thm1":
        return thm1_check(params)
    return thm2_check(params)


def nondegenerate(params: FamilyParams) -> bool:
    """The clause of the criterion that keeps the induced map nonconstant."""
    F = params.field
    if params.family == "thm1":
        return F.pow(F.div(params.b, params.a), F.q - 1) != F.pow(F.div(params.v, params.u), params.n)
    return not F.in_mu(F.div(F.mul(params.b, F.pow(params.v, params.n)), params.a))


# ---------------------------------------------------------------------------
# The induced maps on mu_(q+1)
# ---------------------------------------------------------------------------

def g0_eval(field: GF, r: int, B: Poly, x: int) -> int:
    """``x^r B(x)^(q-1)`` for ``x`` in mu_(q+1).

    Returns 0 exactly when ``x`` is a root of ``B``; every other value lies
    in mu_(q+1), so 0 is the root-in-mu signal.
    """
    if not field.in_mu(x):
        raise FieldError(f"{x} is not in mu_(q+1)")
    bx = B(x)
    if bx == 0:
        return 0
    return field.mul(field.pow(x, r % (field.q + 1)), field.pow(bx, field.q - 1))


def g_map(r: int, B: Poly) -> RationalMap:
    """Reduced ``X^r B^(q)(1/X) / B(X)``; any integer ``r`` is accepted."""
    if B.is_zero():
        raise ValueError("g_map of the zero polynomial")
    d = max(B.degree, 0)
    if r >= d:
        return RationalMap.build(reversal_num(B, r), B)
    return RationalMap.build(reversal_num(B, d), B.shift(d - r))


@dataclass(frozen=True)
class Decomposition:
    """``eta o X^n o rho``."""

    eta: Mobius
    n: int
    rho: Mobius

    def __call__(self, P: Point) -> Point:
        return eval_fast(self, P)


def eval_fast(d: Decomposition, P: Point) -> Point:
    """Evaluate ``eta(rho(P)^n)``; the power costs O(log n) multiplications."""
    return d.eta(point_pow(d.eta.field, d.rho(P), d.n))


def decompose(params: FamilyParams) -> Decomposition:
    """Factor ``g = X^n B^(q)(1/X)/B(X)`` as ``eta o X^n o rho``.

    Raises :class:`Degenerate` when either factor fails to be degree one,
    which is the case in which g is constant.
    """
    F, n = params.field, params.n
    a, b, v = params.a, params.b, params.v
    if params.family == "thm1":
        u = params.u
        coeffs = (F.mul(F.frob(a), F.pow(u, -n)), F.mul(F.frob(b), F.pow(v, -n)), a, b)
        rho_coeffs = (1, u, 1, v)
    else:
        coeffs = (F.mul(F.frob(a), F.pow(v, -n)), F.mul(F.frob(b), F.pow(v, F.q * n)), b, a)
        rho_coeffs = (1, v, 1, F.inv(F.frob(v)))
    if not is_degree_one(F, *coeffs) or not is_degree_one(F, *rho_coeffs):
        raise Degenerate(f"induced map is constant for {params.to_text()}")
    return Decomposition(Mobius(F, *coeffs), n, Mobius(F, *rho_coeffs))


def thm1_chart(params: FamilyParams) -> tuple[int, Mobius]:
    """The element ``w`` with ``w^(q-1) = u/v`` and the map ``(wX + v w^q)/(X + v)``.

    The map sends mu_(q+1) onto P^1(GF(q)) and equals ``w (X+u)/(X+v)``,
    which is how the thm1 factor ``rho`` reduces to a power map on P^1(GF(q)).
    """
    if params.family != "thm1":
        raise InvalidParams("thm1_chart needs a thm1 parameter set")
    F, u, v = params.field, params.u, params.v
    w = F.solve_w(F.div(u, v))
    return w, Mobius(F, w, F.mul(v, F.frob(w)), 1, v)


# ---------------------------------------------------------------------------
# Special cases from the literature
# ---------------------------------------------------------------------------

def _exponents(F: GF, n: int, m: Optional[int], r: Optional[int]) -> int:
    if r is not None and m is not None:
        raise InvalidParams("give r or m, not both")
    if r is None:
        r = n + (m or 0) * (F.q + 1)
    return r


def special_case(name: str, field: GF, n: int, *, m: Optional[int] = None, r: Optional[int] = None,
                 a: Optional[int] = None, b: Optional[int] = None, u: Optional[int] = None,
                 v: Optional[int] = None, sign: int = 1) -> FamilyParams:
    """Instantiate one of the literature's special cases.

    ======================  ======  ==============================================
    name                    family  constraints (free slots default as noted)
    ======================  ======  ==============================================
    ``FFLW1``               thm1    b = sign*a, v = -u  (a=1, u=1; q odd)
    ``FFLW2``               thm2    b = sign*a, v^(q+1) = -1  (a=1; q odd)
    ``PUW8``                thm1    a = b = 1, (u, v) = GF(4) \\ GF(2)  (p = 2)
    ``PUW9``                thm1    a = v, b = u, (u, v) = GF(4) \\ GF(2)  (p = 2)
    ``WYDM35_ZR12``         thm1    a = (-b)^n, u = v b^(q-1)  (b, v required)
    ``WYDM33_ZR11``         thm2    a = -1/v, b = 1/v^n  (v required)
    ======================  ======  ==============================================

    ``r`` defaults to ``n + m(q+1)`` with ``m = 0``.  Raises
    :class:`InvalidParams` when the constraints cannot hold in ``field``.
    """
    F = field
    r = _exponents(F, n, m, r)
    if sign not in (1, -1):
        raise InvalidParams("sign must be +1 or -1")

    def signed(x: int) -> int:
        return x if sign == 1 else F.neg(x)

    if name == "FFLW1":
        a = 1 if a is None else a
        u = 1 if u is None else u
        if F.p == 2:
            raise InvalidParams("FFLW1 needs q odd, since v = -u must differ from u")
        return FamilyParams(F, "thm1", r, n, u=u, v=F.neg(u), a=a, b=signed(a))
    if name == "FFLW2":
        a = 1 if a is None else a
        minus_one = F.neg(1)
        if v is None:
            v = F.solve_norm(minus_one)
        elif F.pow(v, F.q + 1) != minus_one:
            raise InvalidParams("FFLW2 needs v^(q+1) = -1")
        if F.p == 2:
            raise InvalidParams("FFLW2 needs q odd, since v^(q+1) = -1 = 1 puts v in mu_(q+1)")
        return FamilyParams(F, "thm2", r, n, v=v, a=a, b=signed(a))
    if name in ("PUW8", "PUW9"):
        if F.p != 2:
            raise InvalidParams(f"{name} needs even q")
        if F.k % 2 == 0:
            raise InvalidParams(f"{name} needs q = 2^k with k odd so that GF(4) \\ GF(2) lies in mu_(q+1)")
        u, v = F.f4_pair()
        if name == "PUW8":
            return FamilyParams(F, "thm1", r, n, u=u, v=v, a=1, b=1)
        return FamilyParams(F, "thm1", r, n, u=u, v=v, a=v, b=u)
    if name == "WYDM35_ZR12":
        if b is None or v is None:
            raise InvalidParams("WYDM35_ZR12 needs b and v")
        if b == 0 or F.in_subfield(b):
            raise InvalidParams("WYDM35_ZR12 needs b outside GF(q) so that u != v")
        u = F.mul(v, F.pow(b, F.q - 1))
        return FamilyParams(F, "thm1", r, n, u=u, v=v, a=F.pow(F.neg(b), n), b=b)
    if name == "WYDM33_ZR11":
        if v is None:
            raise InvalidParams("WYDM33_ZR11 needs v")
        if v == 0:
            raise InvalidParams("v must be nonzero")
        return FamilyParams(F, "thm2", r, n, v=v, a=F.neg(F.inv(v)), b=F.inv(F.pow(v, n)))
    raise InvalidParams(f"unknown special case {name!r}; expected one of {SPECIAL_CASES}")


def corrected_puw_criterion(name: str, r: int, n: int, q: int) -> bool:
    """The corrected PUW8/PUW9 conditions written without field arithmetic."""
    if name not in ("PUW8", "PUW9"):
        raise ValueError(f"no corrected criterion for {name!r}")
    base = math.gcd(r * n, q - 1) == 1
    if name == "PUW8":
        return base and n % 3 != 0
    return base and n % 3 != 2
