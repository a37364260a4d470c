"""Brute-force ground truth.

Everything here decides bijectivity by evaluating at every point and
looking for repeats.  None of it consults the closed-form criteria; the
``validate_lemma_*`` functions check one instance of each reduction step by
computing both sides independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .field import GF, FieldError
from .poly import INFINITY, Mobius, Point, Poly, RationalMap, reversal_num
from .families import g0_eval, g_map, sparse_f


@dataclass(frozen=True)
class PermVerdict:
    is_permutation: bool
    witness: Optional[tuple] = None

    def __post_init__(self):
        if self.is_permutation == (self.witness is not None):
            raise ValueError("a witness accompanies exactly the non-permutations")

    def __bool__(self) -> bool:
        return self.is_permutation


# ---------------------------------------------------------------------------
# GF(q^2)
# ---------------------------------------------------------------------------

def eval_sparse_all(field: GF, terms: Sequence[tuple[int, int]]) -> np.ndarray:
    """Values of ``sum c X^e`` at every element, indexed by encoding."""
    xs = np.arange(field.order, dtype=np.int64)
    acc = np.zeros(field.order, dtype=np.int64)
    for e, c in terms:
        if e < 0:
            raise ValueError("sparse polynomial with a negative exponent")
        acc = field.add_vec(acc, field.mul_vec(field.pow_vec(xs, e), c))
    return acc


def _first_collision(values: np.ndarray) -> tuple[int, int]:
    order = np.argsort(values, kind="stable")
    s = values[order]
    i = int(np.flatnonzero(s[1:] == s[:-1])[0])
    return int(order[i]), int(order[i + 1])


def permutes_fq2(field: GF, terms: Sequence[tuple[int, int]], max_elems: Optional[int] = None) -> PermVerdict:
    """Whether the sparse polynomial permutes GF(q^2), by marking a hit set."""
    if max_elems is not None and field.order > max_elems:
        raise FieldError(f"{field!r} exceeds the size bound {max_elems}")
    values = eval_sparse_all(field, terms)
    seen = np.zeros(field.order, dtype=bool)
    seen[values] = True
    if seen.all():
        return PermVerdict(True)
    return PermVerdict(False, _first_collision(values))


def permutes_fq2_sorted(field: GF, terms: Sequence[tuple[int, int]]) -> bool:
    """Second route: the sorted image must be exactly 0..q^2-1."""
    xs = range(field.order)
    image = sorted(field.sum(field.mul(c, field.pow(x, e)) for e, c in terms) for x in xs)
    return image == list(xs)


def permutes_fq2_batch(field: GF, exponents: Sequence[int], coeffs: np.ndarray) -> list[PermVerdict]:
    """Test many polynomials ``sum_j coeffs[i, j] X^exponents[j]`` at once."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    if coeffs.ndim != 2 or coeffs.shape[1] != len(exponents):
        raise ValueError("coefficient matrix does not match the exponent list")
    N = field.order
    xs = np.arange(N, dtype=np.int64)
    acc = np.zeros((coeffs.shape[0], N), dtype=np.int64)
    for j, e in enumerate(exponents):
        col = coeffs[:, j]
        if not col.any():
            continue
        powers = field.pow_vec(xs, e)
        acc = field.add_vec(acc, field.mul_vec(col[:, None], powers[None, :]))
    rows = acc.shape[0]
    hits = np.bincount((acc + np.arange(rows, dtype=np.int64)[:, None] * N).ravel(),
                       minlength=rows * N).reshape(rows, N)
    ok = (hits == 1).all(axis=1)
    verdicts = [PermVerdict(True)] * rows
    bad = np.flatnonzero(~ok)
    if bad.size:
        order = np.argsort(acc[bad], axis=1, kind="stable")
        s = np.take_along_axis(acc[bad], order, axis=1)
        first = (s[:, 1:] == s[:, :-1]).argmax(axis=1)
        idx = np.arange(bad.size)
        x1, x2 = order[idx, first].tolist(), order[idx, first + 1].tolist()
        for j, i in enumerate(bad.tolist()):
            verdicts[i] = PermVerdict(False, (x1[j], x2[j]))
    return verdicts


# ---------------------------------------------------------------------------
# mu_(q+1)
# ---------------------------------------------------------------------------

def permutes_mu(field: GF, fn: Callable[[int], Point]) -> PermVerdict:
    """Whether ``fn`` restricted to mu_(q+1) is a bijection onto mu_(q+1).

    A value outside mu_(q+1) (infinity included) fails with the witness
    ``(x, value)``; a repeat fails with ``(x1, x2)``.
    """
    seen: dict[int, int] = {}
    for x in field.mu:
        y = fn(x)
        if y is INFINITY or not field.in_mu(y):
            return PermVerdict(False, (x, y))
        if y in seen:
            return PermVerdict(False, (seen[y], x))
        seen[y] = x
    return PermVerdict(True)


def maps_onto(field: GF, fn: Callable[[int], Point], domain: Sequence[int], target: set) -> bool:
    """Whether ``fn`` maps ``domain`` bijectively onto ``target``."""
    image = [fn(x) for x in domain]
    return len(set(image)) == len(image) == len(target) and set(image) == target


# ---------------------------------------------------------------------------
# Lemma validators
# ---------------------------------------------------------------------------

def validate_lemma_old(field: GF, r: int, B: Poly) -> bool:
    """f = X^r B(X^(q-1)) permutes GF(q^2)  <=>  gcd(r, q-1) = 1 and g0 permutes mu."""
    if B.is_zero():
        raise ValueError("B must be nonzero")
    lhs = permutes_fq2(field, sparse_f(r, B)).is_permutation
    rhs = math.gcd(r, field.q - 1) == 1 and permutes_mu(field, lambda x: g0_eval(field, r, B, x)).is_permutation
    return lhs == rhs


def has_root_in_mu(field: GF, B: Poly) -> bool:
    return any(B(x) == 0 for x in field.mu)


def validate_lemma_lemx(field: GF, r: int, B: Poly) -> bool:
    """g0 permutes mu  <=>  B has no roots in mu and g permutes mu."""
    if B.is_zero():
        raise ValueError("B must be nonzero")
    lhs = permutes_mu(field, lambda x: g0_eval(field, r, B, x)).is_permutation
    rhs = not has_root_in_mu(field, B) and permutes_mu(field, g_map(r, B)).is_permutation
    return lhs == rhs


def validate_lemma_scr(field: GF, B: Poly, n: int) -> bool:
    """If deg g = n then B has no roots in mu and g(mu) lies in mu."""
    if B.is_zero():
        raise ValueError("B must be nonzero")
    g = RationalMap.build(reversal_num(B, n), B)
    if g.degree != n:
        return True
    if has_root_in_mu(field, B):
        return False
    return all(g(x) is not INFINITY and field.in_mu(g(x)) for x in field.mu)


def deg1mu_map(field: GF, alpha: int, beta: int) -> Mobius:
    """``(beta^q X + alpha^q) / (alpha X + beta)``."""
    return Mobius(field, field.frob(beta), field.frob(alpha), alpha, beta)


def validate_lemma_deg1mu(field: GF, alpha: int, beta: int) -> bool:
    """If alpha^(q+1) != beta^(q+1), the map above permutes mu."""
    q = field.q
    if field.pow(alpha, q + 1) == field.pow(beta, q + 1):
        return True
    return permutes_mu(field, deg1mu_map(field, alpha, beta)).is_permutation


def mu_chart(field: GF, alpha: int, beta: int) -> Mobius:
    """``(alpha X + beta alpha^q) / (X + beta)``."""
    return Mobius(field, alpha, field.mul(beta, field.frob(alpha)), 1, beta)


def projective_subfield(field: GF) -> set:
    """P^1(GF(q)) as a set of points."""
    return set(field.subfield) | {INFINITY}


def validate_lemma_mu(field: GF, alpha: int, beta: int) -> bool:
    """For alpha outside GF(q) and beta in mu, the chart maps mu onto P^1(GF(q))."""
    if field.in_subfield(alpha):
        raise FieldError("alpha must lie outside GF(q)")
    if not field.in_mu(beta):
        raise FieldError("beta must lie in mu_(q+1)")
    return maps_onto(field, mu_chart(field, alpha, beta), field.mu, projective_subfield(field))


def validate_lemma_deg(g: RationalMap, eta: Mobius, rho: Mobius) -> bool:
    """deg(eta o g o rho) == deg g."""
    if g.is_constant():
        raise ValueError("g must be nonconstant")
    return g.compose_mobius_right(rho).compose_mobius_left(eta).degree == g.degree
