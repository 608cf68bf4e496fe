"""Finite fields GF(p^n) with exp/log tables.

An element sum_i c_i * alpha^i (c_i in GF(p), alpha the residue class of x
modulo the defining polynomial) is packed into the integer sum_i c_i * p**i.
Zero is 0, the multiplicative identity is 1, and all products/powers/inverses
reduce to index arithmetic mod p^n - 1 through the exp/log tables of alpha.

Defining polynomials are primitive by construction, so alpha generates the
full multiplicative group and the exp table enumerates every nonzero element.
The canonical polynomial for (p, n) is the lexicographically least primitive
one (on the coefficient tuple c_{n-1}, ..., c_1, c_0); a table of alternate
moduli can be loaded from a file, see `load_modulus_file`.

Size bounds: exp/log tables are built only for p^n <= 2^24; polynomial-level
operations (primitivity testing, canonical polynomial search) go up to 2^40.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .errors import (
    CompositeP,
    FactorizationFailure,
    NotASubfield,
    OddDegree,
    TooLarge,
)

SUPPORTED_PRIMES = (2, 3, 5, 7, 11, 13)
MAX_TABLE_ORDER = 2 ** 24   # exp/log tables kept in memory
MAX_POLY_ORDER = 2 ** 40    # polynomial arithmetic only

_TRIAL_LIMIT = 10 ** 6
_RHO_ITER_BUDGET = 10 ** 7

# Deterministic Miller-Rabin witness set, valid for all n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """One nontrivial factor of composite odd n (fixed-seed Brent rho)."""
    if n % 2 == 0:
        return 2
    # Deterministic parameter sweep keeps runs reproducible.
    for c in range(1, 64):
        x, y, d = 2, 2, 1
        steps = 0
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
            steps += 1
            if steps > _RHO_ITER_BUDGET:
                raise FactorizationFailure(f"rho budget exhausted for {n}")
        if d != n:
            return d
    raise FactorizationFailure(f"no rho parameter split {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization, trial division to 10^6 then Pollard rho."""
    out: dict[int, int] = {}
    for q in range(2, _TRIAL_LIMIT):
        if q * q > n:
            break
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


# ----------------------------------------------------------------------
# Polynomial arithmetic over GF(p), coefficient tuples c[0..deg] low-first
# ----------------------------------------------------------------------

def _poly_mulmod(a: tuple, b: tuple, mod_low: tuple, p: int) -> tuple:
    """(a*b) mod (x^n + mod poly), operands of degree < n."""
    n = len(mod_low)
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(2 * n - 2, n - 1, -1):
        ck = prod[k]
        if ck:
            prod[k] = 0
            for j, mj in enumerate(mod_low):
                prod[k - n + j] = (prod[k - n + j] - ck * mj) % p
    return tuple(prod[:n])


def _poly_powmod(base: tuple, e: int, mod_low: tuple, p: int) -> tuple:
    n = len(mod_low)
    result = tuple([1] + [0] * (n - 1))
    acc = base
    while e:
        if e & 1:
            result = _poly_mulmod(result, acc, mod_low, p)
        acc = _poly_mulmod(acc, acc, mod_low, p)
        e >>= 1
    return result


@dataclass(frozen=True)
class FieldSpec:
    """Defining data of GF(p^n): prime p, degree n, monic modulus.

    coeffs lists c_0, ..., c_{n-1} of the modulus x^n + c_{n-1} x^{n-1}
    + ... + c_1 x + c_0; the leading 1 is implied.
    """

    p: int
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise CompositeP(f"p={self.p} is not prime")
        if self.n < 1 or len(self.coeffs) != self.n:
            raise ValueError("coefficient list must have length n >= 1")
        if self.coeffs[0] % self.p == 0:
            raise ValueError("constant term c_0 must be nonzero")

    @property
    def order(self) -> int:
        return self.p ** self.n

    @property
    def period(self) -> int:
        return self.p ** self.n - 1


def is_primitive(p: int, n: int, coeffs) -> bool:
    """True iff x has multiplicative order p^n - 1 modulo the monic poly.

    Checks x^(p^n-1) = 1 and x^((p^n-1)/r) != 1 for every prime r | p^n-1.
    Complete: order p^n - 1 forces the modulus to be primitive (a reducible
    modulus caps the order of any unit strictly below p^n - 1).
    """
    if not is_prime(p):
        raise CompositeP(f"p={p} is not prime")
    if p ** n > MAX_POLY_ORDER:
        raise TooLarge(f"p^n={p ** n} exceeds the arithmetic bound 2^40")
    coeffs = tuple(c % p for c in coeffs)
    if len(coeffs) != n or coeffs[0] == 0:
        return False
    L = p ** n - 1
    x = tuple([0, 1] + [0] * (n - 2)) if n >= 2 else (coeffs[0],)
    if n == 1:
        # x = -c_0 in GF(p); primitive iff -c_0 generates GF(p)*.
        g = (-coeffs[0]) % p
        if g == 0:
            return False
        return all(pow(g, (p - 1) // r, p) != 1 for r in factorize(p - 1)) \
            if p > 2 else g == 1
    one = tuple([1] + [0] * (n - 1))
    if _poly_powmod(x, L, coeffs, p) != one:
        return False
    for r in factorize(L):
        if _poly_powmod(x, L // r, coeffs, p) == one:
            return False
    return True


def find_primitive_polynomial(p: int, n: int) -> FieldSpec:
    """Lexicographically least primitive polynomial of degree n over GF(p).

    The order is lexicographic on (c_{n-1}, ..., c_1, c_0); deterministic
    across runs, no external tables.
    """
    if not is_prime(p):
        raise CompositeP(f"p={p} is not prime")
    if p ** n > MAX_POLY_ORDER:
        raise TooLarge(f"p^n={p ** n} exceeds the arithmetic bound 2^40")
    for packed in range(p ** n):
        # packed encodes (c_{n-1}, ..., c_0) in lexicographic order
        digits = []
        v = packed
        for _ in range(n):
            digits.append(v % p)
            v //= p
        # digits[0] = c_0 (least significant in the lex run)
        coeffs = tuple(digits)
        if coeffs[0] == 0:
            continue
        if is_primitive(p, n, coeffs):
            return FieldSpec(p, n, coeffs)
    raise FactorizationFailure(f"no primitive polynomial found for ({p},{n})")


def load_modulus_file(path) -> dict[tuple[int, int], tuple[int, ...]]:
    """Parse an override table: lines of "p n c_0 c_1 ... c_{n-1}" in decimal."""
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#")[0].strip()
            if not line:
                continue
            parts = [int(tok) for tok in line.split()]
            if len(parts) < 3:
                raise ValueError(f"{path}:{lineno}: expected 'p n c_0 ... c_(n-1)'")
            p, n, coeffs = parts[0], parts[1], tuple(parts[2:])
            if len(coeffs) != n:
                raise ValueError(f"{path}:{lineno}: {n} coefficients expected")
            if not is_primitive(p, n, coeffs):
                raise ValueError(f"{path}:{lineno}: modulus is not primitive over GF({p})")
            table[(p, n)] = coeffs
    return table


@dataclass(frozen=True)
class UnitCircle:
    """The p^m + 1 solutions of x * x^(p^m) = 1 in GF(p^(2m))."""

    m: int
    elements: tuple[int, ...]


class FieldCtx:
    """Fully materialized GF(p^n): exp/log tables, trace table, Gram matrix.

    Immutable after construction; safe to share across workers.  Elements
    are packed ints (see module docstring).
    """

    def __init__(self, spec: FieldSpec):
        p, n = spec.p, spec.n
        order = spec.order
        if order > MAX_TABLE_ORDER:
            raise TooLarge(
                f"p^n={order} exceeds the table bound 2^24; "
                "use polynomial-level operations instead"
            )
        self.spec = spec
        self.p = p
        self.n = n
        self.order = order
        self.period = order - 1

        exp = np.zeros(self.period, dtype=np.int32)
        log = np.full(order, -1, dtype=np.int32)
        if p == 2:
            mp = sum(c << i for i, c in enumerate(spec.coeffs)) | (1 << n)
            hi = 1 << n
            v = 1
            for i in range(self.period):
                exp[i] = v
                log[v] = i
                v <<= 1
                if v & hi:
                    v ^= mp
        else:
            # x * poly with reduction by x^n = -(c_{n-1} x^{n-1} + ... + c_0)
            pn1 = p ** (n - 1)
            red = [(-c) % p for c in spec.coeffs]
            red_scaled = []
            for t in range(p):
                red_scaled.append(sum(((t * c) % p) * p ** i for i, c in enumerate(red)))
            v = 1
            for i in range(self.period):
                exp[i] = v
                log[v] = i
                top, low = divmod(v, pn1)
                v = self._digit_add_static(low * p, red_scaled[top], p, n)
        self._exp = exp
        self._log = log
        self._trace_basis = self._build_trace_basis()
        self._tr = self._build_trace_table()
        self._gram = self._build_gram()

    # -- raw tables ----------------------------------------------------

    @property
    def exp_table(self) -> np.ndarray:
        return self._exp

    @property
    def log_table(self) -> np.ndarray:
        return self._log

    @property
    def trace_table(self) -> np.ndarray:
        return self._tr

    @property
    def trace_gram(self) -> np.ndarray:
        """Symmetric n x n matrix G[i][j] = Tr(alpha^i * alpha^j) over GF(p)."""
        return self._gram

    # -- element arithmetic --------------------------------------------

    @staticmethod
    def _digit_add_static(a: int, b: int, p: int, n: int) -> int:
        out = 0
        mul = 1
        for _ in range(n):
            out += ((a + b) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self._digit_add_static(a, b, self.p, self.n)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        out = 0
        mul = 1
        p = self.p
        for _ in range(self.n):
            out += ((-a) % p) * mul
            a //= p
            mul *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(int(self._log[a]) + int(self._log[b])) % self.period])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self._exp[(-int(self._log[a])) % self.period])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        return int(self._exp[(int(self._log[a]) * e) % self.period])

    def element_from_log(self, i: int) -> int:
        return int(self._exp[i % self.period])

    def log_of(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no discrete log")
        return int(self._log[a])

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(p^k)."""
        if a == 0:
            return 0
        return int(self._exp[(int(self._log[a]) * pow(self.p, k, self.period)) % self.period])

    def conj_half(self, a: int) -> int:
        """a^(p^m) for n = 2m, the subfield conjugate used on the unit circle."""
        if self.n % 2:
            raise OddDegree("conjugate over GF(p^m) needs n = 2m")
        return self.frobenius(a, self.n // 2)

    # -- traces ----------------------------------------------------------

    def _build_trace_basis(self) -> list[int]:
        tb = []
        for i in range(self.n):
            acc = 0
            for k in range(self.n):
                acc = self.add(acc, self.frobenius(self.element_from_log(i), k))
            # acc lies in GF(p), i.e. packed value < p
            tb.append(acc % self.p)
        return tb

    def _build_trace_table(self) -> np.ndarray:
        arr = np.arange(self.order, dtype=np.int64)
        tr = np.zeros(self.order, dtype=np.int64)
        for i, t in enumerate(self._trace_basis):
            if t:
                tr += ((arr // self.p ** i) % self.p) * t
        return (tr % self.p).astype(np.int8)

    def _build_gram(self) -> np.ndarray:
        g = np.zeros((self.n, self.n), dtype=np.int64)
        for i in range(self.n):
            for j in range(self.n):
                g[i, j] = int(self._tr[self.element_from_log(i + j)])
        return g

    def trace(self, a: int) -> int:
        """Absolute trace Tr(a) = a + a^p + ... + a^(p^(n-1)) as an int in [0, p)."""
        return int(self._tr[a])

    def relative_trace(self, a: int, m: int) -> int:
        """Tr^n_m(a) = a + a^(p^m) + ... + a^(p^(n-m)), an element of GF(p^m)."""
        if m < 1 or self.n % m:
            raise NotASubfield(f"GF(p^{m}) is not a subfield of GF(p^{self.n})")
        acc = 0
        for k in range(self.n // m):
            acc = self.add(acc, self.frobenius(a, m * k))
        return acc

    def subfield_trace(self, z: int, m: int) -> int:
        """Absolute trace of GF(p^m) evaluated at an embedded subfield
        element z (z^(p^m) = z); composes with relative_trace to give the
        full trace."""
        if m < 1 or self.n % m:
            raise NotASubfield(f"GF(p^{m}) is not a subfield of GF(p^{self.n})")
        acc = 0
        for k in range(m):
            acc = self.add(acc, self.frobenius(z, k))
        return acc % self.p

    # -- subsets ----------------------------------------------------------

    def unit_circle(self) -> UnitCircle:
        """All x with x * x^(p^m) = 1 (n = 2m): the subgroup of order p^m + 1."""
        if self.n % 2:
            raise OddDegree("unit circle needs n = 2m")
        m = self.n // 2
        step = self.p ** m - 1
        elems = tuple(
            int(self._exp[(k * step) % self.period]) for k in range(self.p ** m + 1)
        )
        return UnitCircle(m=m, elements=elems)

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.n}), modulus={self.spec.coeffs})"


@lru_cache(maxsize=None)
def _canonical_spec(p: int, n: int) -> FieldSpec:
    return find_primitive_polynomial(p, n)


_CTX_CACHE: dict[tuple, FieldCtx] = {}
_CTX_CACHE_MAX_ORDER = 2 ** 16


def field_ctx(p: int, n: int, coeffs=None) -> FieldCtx:
    """FieldCtx for (p, n), canonical modulus unless coeffs is given.

    Small fields are cached; contexts above 2^16 elements are rebuilt on
    demand so long runs do not pin hundreds of MB.
    """
    key = (p, n, tuple(coeffs) if coeffs is not None else None)
    hit = _CTX_CACHE.get(key)
    if hit is not None:
        return hit
    spec = FieldSpec(p, n, tuple(coeffs)) if coeffs is not None else _canonical_spec(p, n)
    if coeffs is not None and not is_primitive(p, n, spec.coeffs):
        raise ValueError(f"modulus {coeffs} is not primitive over GF({p})")
    ctx = FieldCtx(spec)
    if ctx.order <= _CTX_CACHE_MAX_ORDER:
        _CTX_CACHE[key] = ctx
    return ctx
