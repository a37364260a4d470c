"""Arithmetic in GF(q^2), q = p^k, realized as one extension GF(p)[t]/(m(t)).

Elements are plain ints: the little-endian base-p encoding ``sum c_i p^i`` of
the residue representative of degree < 2k.  The encoding doubles as the
canonical total order used for every "smallest" choice below (modulus,
generator, solver outputs), so all outputs are reproducible.

GF(q) is never built separately; it is the fixed field of ``x -> x^q``.

Scalar arithmetic goes through exp/log/Zech tables built once per field.
The ``*_vec`` methods are the numpy counterparts used by the brute-force
oracle and the sweeps.
"""

from __future__ import annotations

import functools
import math
import re

import numpy as np

DEFAULT_MAX_ELEMS = 1 << 26

# Above this size the tables stay as numpy arrays instead of Python lists.
_LIST_TABLE_LIMIT = 1 << 22
# Odd-characteristic fields up to this size also get a full addition table.
_ADD_TABLE_LIMIT = 1 << 11


class FieldError(ValueError):
    """Bad field parameters, or an element outside the field's domain."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomials over GF(p): little-endian int lists, no trailing zeros.
# ---------------------------------------------------------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _fp_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _fp_mod(prod, m, p)


def _fp_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _fp_mod(list(a), m, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def is_irreducible(m: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``m`` over GF(p)."""
    d = len(m) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    frob_powers = {0: x}
    h = x
    for j in range(1, d + 1):
        h = _fp_powmod(h, p, m, p)
        frob_powers[j] = h
    # t^(p^d) == t
    if _trim([(c1 - c2) % p for c1, c2 in _zip_pad(frob_powers[d], x)]):
        return False
    for ell in prime_factors(d):
        diff = _trim([(c1 - c2) % p for c1, c2 in _zip_pad(frob_powers[d // ell], x)])
        g = _fp_gcd(m, diff, p)
        if len(g) != 1:
            return False
    return True


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))


def smallest_irreducible(p: int, degree: int) -> tuple[int, ...]:
    """Monic irreducible of the given degree with smallest base-p encoding."""
    for code in range(p**degree):
        low = [(code // p**i) % p for i in range(degree)]
        m = low + [1]
        if is_irreducible(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# The field
# ---------------------------------------------------------------------------

class GF:
    """The field GF(q^2) with q = p^k.

    Build instances through :func:`build_field`, which caches them; a GF is
    immutable after construction and safe to share.

    Attributes
    ----------
    p, k, q : int
        Characteristic, degree of GF(q) over GF(p), and q = p^k.
    order : int
        Number of elements, q^2.
    modulus : tuple of int
        Coefficients (little-endian, monic) of the defining polynomial.
    generator : int
        Smallest-encoding element of multiplicative order q^2 - 1.
    """

    def __init__(self, p: int, k: int, max_elems: int = DEFAULT_MAX_ELEMS):
        if not isinstance(p, int) or not is_prime(p):
            raise FieldError(f"characteristic {p!r} is not prime")
        if not isinstance(k, int) or k < 1:
            raise FieldError(f"extension degree {k!r} must be a positive integer")
        order = p ** (2 * k)
        if order > max_elems:
            raise FieldError(
                f"GF({p}^{2 * k}) has {order} elements, above the size bound {max_elems}"
            )
        self.p = p
        self.k = k
        self.q = p**k
        self.order = order
        self.dim = 2 * k
        self.modulus = smallest_irreducible(p, self.dim)
        self._mod_list = list(self.modulus)
        self._place = [p**i for i in range(self.dim)]
        self.generator = self._find_generator()
        self._build_tables()

    # -- construction helpers -------------------------------------------

    def digits(self, x: int) -> list[int]:
        """Coefficient vector (length 2k, little-endian) of element ``x``."""
        return [(x // w) % self.p for w in self._place]

    def from_digits(self, coeffs) -> int:
        if len(coeffs) > self.dim:
            coeffs = _fp_mod(list(coeffs), self._mod_list, self.p)
        return sum((c % self.p) * w for c, w in zip(coeffs, self._place))

    def _slow_mul(self, x: int, y: int) -> int:
        return self.from_digits(
            _fp_mulmod(_trim(self.digits(x)), _trim(self.digits(y)), self._mod_list, self.p)
        )

    def _slow_pow(self, x: int, e: int) -> int:
        return self.from_digits(_fp_powmod(_trim(self.digits(x)), e, self._mod_list, self.p))

    def _find_generator(self) -> int:
        n = self.order - 1
        cofactors = [n // ell for ell in prime_factors(n)]
        for c in range(1, self.order):
            if all(self._slow_pow(c, e) != 1 for e in cofactors) and self._slow_pow(c, n) == 1:
                return c
        raise AssertionError("field has no primitive element")  # pragma: no cover

    def _mul_matrix(self, c: int) -> np.ndarray:
        """Matrix of ``y -> c*y`` acting on digit row vectors."""
        rows = [self.digits(self._slow_mul(self.from_digits([0] * i + [1]), c))
                for i in range(self.dim)]
        return np.array(rows, dtype=np.int64)

    def _build_tables(self) -> None:
        n = self.order - 1
        p = self.p
        place = np.array(self._place, dtype=np.int64)
        # exp digits by doubling: exp[L:2L] = exp[0:L] * g^L
        digs = np.zeros((1, self.dim), dtype=np.int64)
        digs[0, 0] = 1
        step = self.generator
        while digs.shape[0] < n:
            block = (digs @ self._mul_matrix(step)) % p
            digs = np.vstack([digs, block])
            step = self._slow_mul(step, step)
        exp = (digs[:n] @ place).astype(np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if len(np.unique(exp)) != n:  # pragma: no cover
            raise AssertionError("generator does not generate the multiplicative group")
        plus_one = np.where(exp % p == p - 1, exp - (p - 1), exp + 1)
        zech = np.where(plus_one == 0, -1, log[plus_one])
        self.exp_table = np.concatenate([exp, exp])
        self.log_table = log
        self.zech_table = zech
        self.add_table = None
        if p != 2 and self.order <= _ADD_TABLE_LIMIT:
            xs = np.arange(self.order, dtype=np.int64)
            self.add_table = self._zech_add_vec(xs[:, None], xs[None, :]).astype(np.int32)
        if self.order <= _LIST_TABLE_LIMIT:
            self._exp = self.exp_table.tolist()
            self._log = log.tolist()
            self._zech = zech.tolist()
        else:
            self._exp, self._log, self._zech = self.exp_table, log, zech

    # -- identity ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.dim})"

    def __reduce__(self):
        return (build_field, (self.p, self.k))

    @property
    def spec(self) -> str:
        """Field spec string ``p^k`` naming GF(q)."""
        return f"{self.p}^{self.k}"

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    # -- scalar arithmetic ------------------------------------------------

    def add(self, x: int, y: int) -> int:
        if self.p == 2:
            return x ^ y
        if x == 0:
            return y
        if y == 0:
            return x
        lx = self._log[x]
        z = self._zech[(self._log[y] - lx) % (self.order - 1)]
        if z < 0:
            return 0
        return self._exp[lx + z]

    def neg(self, x: int) -> int:
        if self.p == 2 or x == 0:
            return x
        return self._exp[self._log[x] + (self.order - 1) // 2]

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self._exp[self._log[x] + self._log[y]]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("0 has no inverse in a field")
        lx = self._log[x]
        return self._exp[(self.order - 1 - lx) if lx else 0]

    def div(self, x: int, y: int) -> int:
        if y == 0:
            raise ZeroDivisionError("division by zero field element")
        if x == 0:
            return 0
        return self._exp[self._log[x] - self._log[y] + self.order - 1]

    def pow(self, x: int, e: int) -> int:
        """``x**e`` by square-and-multiply; ``0**0 == 1`` by convention."""
        if x == 0:
            if e < 0:
                raise ZeroDivisionError("0 raised to a negative power")
            return 1 if e == 0 else 0
        e %= self.order - 1
        result, base = 1, x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frob(self, x: int) -> int:
        """``x**q``, the generator of Gal(GF(q^2)/GF(q))."""
        if x == 0:
            return 0
        return self._exp[self._log[x] * self.q % (self.order - 1)]

    def log(self, x: int) -> int:
        if x == 0:
            raise FieldError("discrete log of 0 is undefined")
        return int(self._log[x])

    def gen_pow(self, j: int) -> int:
        return int(self._exp[j % (self.order - 1)])

    def sum(self, xs) -> int:
        acc = 0
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def from_int(self, c: int) -> int:
        """Image of the integer ``c`` in the prime field."""
        return c % self.p

    # -- subgroups and subfields -----------------------------------------

    def in_mu(self, x: int) -> bool:
        """Membership in the group of (q+1)-th roots of unity."""
        # x^(q+1) = 1  <=>  (q-1) | log x
        return x != 0 and self._log[x] % (self.q - 1) == 0

    @functools.cached_property
    def mu(self) -> tuple[int, ...]:
        """The q+1 roots of unity of order dividing q+1, sorted by encoding."""
        return tuple(sorted(self.gen_pow(j * (self.q - 1)) for j in range(self.q + 1)))

    def enum_mu(self) -> list[int]:
        return list(self.mu)

    def in_subfield(self, x: int) -> bool:
        """True iff ``x`` lies in GF(q)."""
        return x == 0 or self._log[x] % (self.q + 1) == 0

    @functools.cached_property
    def subfield(self) -> tuple[int, ...]:
        return tuple(x for x in self.elements() if self.in_subfield(x))

    def element_order(self, x: int) -> int:
        if x == 0:
            raise FieldError("0 has no multiplicative order")
        n = self.order - 1
        return n // math.gcd(n, self.log(x))

    def solve_w(self, c: int) -> int:
        """Smallest-encoding ``w`` with ``w**(q-1) == c``, for ``c`` in mu."""
        if not self.in_mu(c):
            raise FieldError(f"{c} is not a (q+1)-th root of unity")
        for w in self.nonzero():
            if self.pow(w, self.q - 1) == c:
                return w
        raise AssertionError("x -> x^(q-1) failed to reach mu")  # pragma: no cover

    def solve_norm(self, c: int) -> int:
        """Smallest-encoding ``v`` with ``v**(q+1) == c``, for nonzero ``c`` in GF(q)."""
        if c == 0 or not self.in_subfield(c):
            raise FieldError(f"{c} is not a nonzero element of GF(q)")
        for v in self.nonzero():
            if self.pow(v, self.q + 1) == c:
                return v
        raise AssertionError("norm map failed to reach GF(q)*")  # pragma: no cover

    def f4_pair(self) -> tuple[int, int]:
        """The two elements of GF(4) \\ GF(2), in encoding order (char 2 only)."""
        if self.p != 2:
            raise FieldError("GF(4) embeds only in characteristic 2")
        third = (self.order - 1) // 3
        return tuple(sorted((self.gen_pow(third), self.gen_pow(2 * third))))

    # -- text I/O -----------------------------------------------------------

    def parse_element(self, text: str) -> int:
        """Parse ``"0"``, a decimal encoding, or ``"g^j"`` (j may be negative)."""
        s = text.strip()
        m = re.fullmatch(r"g\^?(-?\d+)?", s)
        if m:
            j = int(m.group(1)) if m.group(1) is not None else 1
            return self.gen_pow(j)
        if re.fullmatch(r"\d+", s):
            x = int(s)
            if x >= self.order:
                raise FieldError(f"encoding {x} out of range for {self!r}")
            return x
        raise FieldError(f"cannot parse field element {text!r}")

    def pretty(self, x: int) -> str:
        """``"0"`` or ``"g^j"`` with 0 <= j < q^2-1."""
        return "0" if x == 0 else f"g^{self.log(x)}"

    def modulus_str(self) -> str:
        terms = []
        for i in range(self.dim, -1, -1):
            c = self.modulus[i]
            if not c:
                continue
            mono = "1" if i == 0 else ("t" if i == 1 else f"t^{i}")
            terms.append(mono if c == 1 and i else f"{c}" if i == 0 else f"{c}*{mono}")
        return " + ".join(terms)

    # -- vectorized arithmetic (numpy int64 arrays of encodings) ------------

    def mul_vec(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        out = self.exp_table[self.log_table[x] + self.log_table[y]]
        return np.where((x == 0) | (y == 0), 0, out)

    def add_vec(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.p == 2:
            return x ^ y
        if self.add_table is not None:
            return self.add_table[x, y].astype(np.int64)
        return self._zech_add_vec(x, y)

    def _zech_add_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        lx = self.log_table[x]
        z = self.zech_table[(self.log_table[y] - lx) % (self.order - 1)]
        out = np.where(z < 0, 0, self.exp_table[lx + np.maximum(z, 0)])
        out = np.where(x == 0, y, out)
        return np.where(y == 0, x, out)

    def pow_vec(self, x, e: int) -> np.ndarray:
        """Elementwise ``x**e`` for ``e >= 0``."""
        x = np.asarray(x, dtype=np.int64)
        if e < 0:
            raise ValueError("pow_vec takes a nonnegative exponent")
        if e == 0:
            return np.ones_like(x)
        le = self.log_table[x] * (e % (self.order - 1)) % (self.order - 1)
        return np.where(x == 0, 0, self.exp_table[le])


@functools.lru_cache(maxsize=None)
def _cached_field(p: int, k: int) -> GF:
    return GF(p, k, max_elems=1 << 62)


def build_field(p: int, k: int, max_elems: int = DEFAULT_MAX_ELEMS) -> GF:
    """Return the (cached) context for GF(q^2), q = p^k.

    The modulus is the smallest monic irreducible of degree 2k over GF(p)
    and the generator the smallest-encoding primitive element, so the
    result depends on ``(p, k)`` alone.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p!r} is not prime")
    if not isinstance(k, int) or k < 1:
        raise FieldError(f"extension degree {k!r} must be a positive integer")
    if p ** (2 * k) > max_elems:
        raise FieldError(
            f"GF({p}^{2 * k}) has {p ** (2 * k)} elements, above the size bound {max_elems}"
        )
    return _cached_field(p, k)


def parse_field_spec(text: str, max_elems: int = DEFAULT_MAX_ELEMS) -> GF:
    """Build the field for a spec string ``"p^k"`` (``"p"`` alone means k=1)."""
    m = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+))?\s*", text)
    if not m:
        raise FieldError(f"cannot parse field spec {text!r}; expected p^k")
    p = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else 1
    return build_field(p, k, max_elems)
