"""Niho-exponent machinery over GF(p^(2m)).

A decimation d = s(p^m - 1) + 1 acts linearly over the subfield GF(p^m),
which reduces each Walsh value W_d(a) to a root count on the unit circle
U = {x : x * x^(p^m) = 1}:

    W_d(a) = (N(a) - 1) * p^m,

N(a) the number of roots in U of x^(2s-1) - a x^s - conj(a) x^(s-1) + 1.
Since |U| = p^m + 1 is tiny, per-point evaluation beats a full transform
when only Niho exponents are studied.

Also hosts fractional-decimation resolution d1/d2 mod p^n - 1 (modular
inverse by extended gcd), used by the cataloged fractional families.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import NotInvertible, OddDegree
from .gf import FieldCtx


def resolve_fraction(d1: int, d2: int, modulus: int) -> int:
    """d = d1 * d2^(-1) mod modulus, representative in [1, modulus-1]."""
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if gcd(d2, modulus) != 1:
        raise NotInvertible(f"gcd({d2}, {modulus}) != 1")
    d = (d1 % modulus) * pow(d2, -1, modulus) % modulus
    if d == 0:
        raise NotInvertible(f"{d1}/{d2} is 0 mod {modulus}")
    return d


@dataclass(frozen=True)
class NihoParams:
    """d = s(p^m - 1) + 1 over GF(p^(2m)); d depends on s only mod p^m + 1."""

    p: int
    m: int
    s: int

    @property
    def n(self) -> int:
        return 2 * self.m

    @property
    def d(self) -> int:
        modulus = self.p ** self.n - 1
        return (self.s * (self.p ** self.m - 1) + 1) % modulus


def niho_decimation(p: int, m: int, s: int) -> int:
    return NihoParams(p, m, s).d


def count_unit_roots(ctx: FieldCtx, s: int, a: int) -> int:
    """Roots in U of x^(2s-1) - a x^s - conj(a) x^(s-1) + 1, exact count.

    Exponents are evaluated in the discrete-log domain; |U| = p^m + 1
    evaluations of four monomials each.
    """
    if ctx.n % 2:
        raise OddDegree("Niho machinery needs n = 2m")
    L = ctx.period
    abar = ctx.conj_half(a)
    na = ctx.neg(a)
    nabar = ctx.neg(abar)
    e1, e2, e3 = (2 * s - 1) % L, s % L, (s - 1) % L
    count = 0
    for x in ctx.unit_circle().elements:
        lx = ctx.log_of(x)
        term = ctx.element_from_log(lx * e1 % L)
        term = ctx.add(term, ctx.mul(na, ctx.element_from_log(lx * e2 % L)))
        term = ctx.add(term, ctx.mul(nabar, ctx.element_from_log(lx * e3 % L)))
        term = ctx.add(term, 1)
        if term == 0:
            count += 1
    return count


def unit_root_histogram(ctx: FieldCtx, s: int) -> dict[int, int]:
    """{N(a): occurrences} over nonzero a."""
    hist: dict[int, int] = {}
    for tau in range(ctx.period):
        c = count_unit_roots(ctx, s, ctx.element_from_log(tau))
        hist[c] = hist.get(c, 0) + 1
    return dict(sorted(hist.items()))


def niho_value_set(ctx: FieldCtx, s: int) -> set[int]:
    """{(N(a) - 1) * p^m : a != 0} computed exactly from the root counts."""
    if ctx.n % 2:
        raise OddDegree("Niho machinery needs n = 2m")
    pm = ctx.p ** (ctx.n // 2)
    return {(na - 1) * pm for na in unit_root_histogram(ctx, s)}


def walsh_identity_report(ctx: FieldCtx, s: int) -> dict:
    """Compare (N(a)-1) p^m with the transform value W_d(a) at every a != 0.

    Works for non-invertible d too (the transform is defined for any
    exponent).  Returns per-a equality plus the histogram.
    """
    from .spectra import walsh_fast

    if ctx.n % 2:
        raise OddDegree("Niho machinery needs n = 2m")
    m = ctx.n // 2
    pm = ctx.p ** m
    d = niho_decimation(ctx.p, m, s)
    wt = walsh_fast(ctx, d, require_invertible=False)
    mismatches = []
    hist: dict[int, int] = {}
    for tau in range(ctx.period):
        na = count_unit_roots(ctx, s, ctx.element_from_log(tau))
        hist[na] = hist.get(na, 0) + 1
        lhs = wt.value_at_log(tau)
        if lhs != (na - 1) * pm:
            mismatches.append(tau)
    return {
        "p": ctx.p,
        "m": m,
        "s": s,
        "d": d,
        "holds": not mismatches,
        "mismatch_shifts": mismatches[:16],
        "histogram": dict(sorted(hist.items())),
        "value_set": sorted((na - 1) * pm for na in hist),
    }
