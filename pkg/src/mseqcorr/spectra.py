"""Crosscorrelation and Walsh spectra, exact, by naive sum and fast transform.

The Walsh transform of f(x) = Tr(x^d) is computed as a length-p^n transform
over the additive group (Z_p)^n with p-point butterflies acting on Z[w]
coordinates; no floating point anywhere.  The crosscorrelation spectrum of
the decimation pair is the multiset {W(a) - 1 : a != 0}; the a = 0 slot of
the transform corresponds to no shift and is excluded.

The naive path sums w^(s_{t+tau} - s_{dt}) per shift directly (organized as
exact integer correlations of residue indicators) and is the oracle the
transform is tested against.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .cyclo import CycInt
from .errors import Budget, MemoryBudget, NotCoprime
from .gf import MAX_TABLE_ORDER, FieldCtx
from . import lfsr

NAIVE_MAX_ORDER = 2 ** 14   # the O(p^2n) oracle stays at desk scale
MOMENT_CHECK_MAX_ORDER = 2 ** 16


# ----------------------------------------------------------------------
# Spectrum container
# ----------------------------------------------------------------------

@dataclass
class SpectrumTable:
    """Multiset {crosscorrelation value -> occurrence count} over all shifts."""

    p: int
    n: int
    d: int
    entries: dict = field(default_factory=dict)   # CycInt -> int
    method: str = "fast"

    def total(self) -> int:
        return sum(self.entries.values())

    def num_values(self) -> int:
        return len(self.entries)

    def values(self) -> set:
        return set(self.entries)

    def value_count_sum(self) -> CycInt:
        """sum value * count, exact in Z[w]; equals 1 for true spectra."""
        acc = CycInt.zero(self.p)
        for v, c in self.entries.items():
            acc = acc + v * c
        return acc

    def sorted_entries(self) -> list:
        return sorted(self.entries.items(), key=lambda kv: kv[0].sort_key())

    def same_entries(self, other: "SpectrumTable") -> bool:
        return self.p == other.p and self.entries == other.entries

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "d": self.d,
            "method": self.method,
            "entries": [
                {"value": v.to_json(), "count": c} for v, c in self.sorted_entries()
            ],
        }

    def diff(self, other: "SpectrumTable") -> str:
        lines = []
        keys = set(self.entries) | set(other.entries)
        for k in sorted(keys, key=lambda v: v.sort_key()):
            a, b = self.entries.get(k, 0), other.entries.get(k, 0)
            if a != b:
                lines.append(f"value {k!r}: {a} vs {b}")
        return "; ".join(lines) or "identical"


def _as_cyc(p: int, v) -> CycInt:
    return v if isinstance(v, CycInt) else CycInt.from_int(p, v)


def make_spectrum(p: int, n: int, d: int, pairs, method: str) -> SpectrumTable:
    entries: dict = {}
    for v, c in pairs:
        if c:
            key = _as_cyc(p, v)
            entries[key] = entries.get(key, 0) + int(c)
    return SpectrumTable(p=p, n=n, d=d, entries=entries, method=method)


# ----------------------------------------------------------------------
# Fast transform
# ----------------------------------------------------------------------

def _omega_mult_matrices(p: int) -> list[np.ndarray]:
    """mats[t] = matrix of multiplication by w^t on basis coordinates."""
    mats = []
    for t in range(p):
        m = np.zeros((p - 1, p - 1), dtype=np.int64)
        for b in range(p - 1):
            e = (t + b) % p
            if e < p - 1:
                m[e, b] = 1
            else:
                m[:, b] = -1
        mats.append(m)
    return mats


def _wht_inplace_2(a: np.ndarray) -> None:
    """Binary Walsh-Hadamard butterfly, kernel (-1)^<u,x>."""
    size = a.shape[0]
    h = 1
    while h < size:
        v = a.reshape(-1, 2, h)
        x = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        np.subtract(x, v[:, 1, :], out=v[:, 1, :])
        h *= 2


def _transform_p(a: np.ndarray, p: int, n: int) -> np.ndarray:
    """Transform with kernel w^(-<u,x>) over (Z_p)^n; a has shape (p^n, p-1)."""
    mats = _omega_mult_matrices(p)
    for stage in range(n):
        inner = p ** stage
        v = a.reshape(-1, p, inner, p - 1)
        out = np.zeros_like(v)
        for j in range(p):
            for k in range(p):
                m = mats[(-j * k) % p]
                out[:, j] += v[:, k] @ m.T
        a = out.reshape(a.shape)
    return a


def _gram_index_map(ctx: FieldCtx, packed: np.ndarray) -> np.ndarray:
    """u(a) = G . digits(a) mod p, packed; satisfies Tr(a x) = <u(a), digits(x)>."""
    p, n = ctx.p, ctx.n
    G = ctx.trace_gram
    packed = packed.astype(np.int64)
    if p == 2:
        colmask = [
            sum((int(G[j, i]) & 1) << j for j in range(n)) for i in range(n)
        ]
        u = np.zeros_like(packed)
        for i in range(n):
            if colmask[i]:
                u ^= ((packed >> i) & 1) * colmask[i]
        return u
    digs = [(packed // p ** i) % p for i in range(n)]
    u = np.zeros_like(packed)
    for j in range(n):
        acc = np.zeros_like(packed)
        for i in range(n):
            gji = int(G[j, i]) % p
            if gji:
                acc += gji * digs[i]
        u += (acc % p) * p ** j
    return u


class WalshTable:
    """Exact Walsh transform values of f(x) = Tr(x^d) over GF(p^n).

    Values are indexed two ways: by the transform's group index (internal)
    and by discrete log of the evaluation point a = alpha^tau, plus the
    a = 0 slot.  For p = 2 values are machine integers; otherwise rows of
    Z[w] coordinates.
    """

    def __init__(self, ctx: FieldCtx, d: int, by_u: np.ndarray):
        self.ctx = ctx
        self.p = ctx.p
        self.n = ctx.n
        self.d = d
        self._by_u = by_u
        self._by_log = None

    def _log_view(self) -> np.ndarray:
        if self._by_log is None:
            u_idx = _gram_index_map(self.ctx, self.ctx.exp_table)
            self._by_log = self._by_u[u_idx]
        return self._by_log

    def _wrap(self, row) -> CycInt:
        if self.p == 2:
            return CycInt(2, (int(row),))
        return CycInt(self.p, tuple(int(c) for c in row))

    def value_at_log(self, tau: int) -> CycInt:
        """W(alpha^tau)."""
        return self._wrap(self._log_view()[tau % self.ctx.period])

    def zero_value(self) -> CycInt:
        """W(0); vanishes whenever gcd(d, p^n-1) = 1."""
        return self._wrap(self._by_u[0])

    def int_values_by_log(self) -> np.ndarray:
        """Per-shift values as an integer array (p = 2 only)."""
        if self.p != 2:
            raise ValueError("integer view only for p = 2")
        return self._log_view()

    def unique_values(self, include_zero_point: bool = True):
        """(CycInt value, count) pairs over a in F (or F* if excluded)."""
        data = self._by_u if include_zero_point else self._by_u[1:]
        if self.p == 2:
            vals, counts = np.unique(data, return_counts=True)
            return [(CycInt(2, (int(v),)), int(c)) for v, c in zip(vals, counts)]
        vals, counts = np.unique(data, axis=0, return_counts=True)
        return [
            (CycInt(self.p, tuple(int(x) for x in row)), int(c))
            for row, c in zip(vals, counts)
        ]

    def power_moment(self, l: int):
        """P^(l) = sum over all a (a = 0 included) of W(a)^l, exact."""
        if l == 0:
            return self.ctx.order
        acc = CycInt.zero(self.p)
        for v, c in self.unique_values(include_zero_point=True):
            acc = acc + v ** l * c
        return acc.as_integer() if acc.is_rational else acc

    def spectrum(self) -> SpectrumTable:
        """Crosscorrelation spectrum {W(a) - 1 : a != 0} as a counted multiset."""
        pairs = [(v - 1, c) for v, c in self.unique_values(include_zero_point=False)]
        return make_spectrum(self.p, self.n, self.d, pairs, method="fast")


def walsh_fast(ctx: FieldCtx, d: int, require_invertible: bool = True) -> WalshTable:
    """Walsh transform table of Tr(x^d) via the group transform.

    d need not be coprime to p^n - 1 (the transform is defined for any
    exponent); pass require_invertible=False to allow that, e.g. for
    unit-circle identity checks on non-invertible Niho exponents.
    """
    L = ctx.period
    if require_invertible and gcd(d, L) != 1:
        raise NotCoprime(f"gcd({d}, {L}) != 1")
    if ctx.order > MAX_TABLE_ORDER:
        raise MemoryBudget(f"p^n={ctx.order} beyond the full-spectrum grid")
    idx = (np.arange(L, dtype=np.int64) * (d % L)) % L
    xd = ctx.exp_table[idx].astype(np.int64)
    f_nonzero = ctx.trace_table[xd]
    xs = ctx.exp_table.astype(np.int64)
    if ctx.p == 2:
        g = np.ones(ctx.order, dtype=np.int32)
        g[xs] = 1 - 2 * f_nonzero.astype(np.int32)
        _wht_inplace_2(g)
        return WalshTable(ctx, d, g)
    g = np.zeros((ctx.order, ctx.p - 1), dtype=np.int64)
    g[0, 0] = 1
    f = f_nonzero.astype(np.int64)
    for j in range(ctx.p - 1):
        g[xs[f == j], j] = 1
    g[xs[f == ctx.p - 1], :] = -1
    g = _transform_p(g, ctx.p, ctx.n)
    return WalshTable(ctx, d, g)


# ----------------------------------------------------------------------
# Naive oracle
# ----------------------------------------------------------------------

def crosscorr_naive(ctx: FieldCtx, d: int, tau: int) -> CycInt:
    """Direct O(p^n) sum of w^(s_{t+tau} - s_{dt}); the reference oracle."""
    L = ctx.period
    if gcd(d, L) != 1:
        raise NotCoprime(f"gcd({d}, {L}) != 1")
    tr = ctx.trace_table
    exp = ctx.exp_table
    p = ctx.p
    counts = [0] * p
    for t in range(L):
        r = (int(tr[exp[(t + tau) % L]]) - int(tr[exp[(d * t) % L]])) % p
        counts[r] += 1
    return CycInt.from_counts(p, counts)


def spectrum_naive(ctx: FieldCtx, d: int) -> SpectrumTable:
    """Full spectrum by the tau-sums, organized as exact integer correlations.

    Still O(p^(2n)); permitted only on small fields.
    """
    L = ctx.period
    if gcd(d, L) != 1:
        raise NotCoprime(f"gcd({d}, {L}) != 1")
    if ctx.order > NAIVE_MAX_ORDER:
        raise Budget(f"naive spectrum limited to p^n <= {NAIVE_MAX_ORDER}")
    p = ctx.p
    seq = lfsr.generate_trace(ctx)
    s = seq.as_array()
    sd = s[(np.arange(L, dtype=np.int64) * (d % L)) % L]
    if p == 2:
        u = 1 - 2 * s
        v = 1 - 2 * sd
        circ = np.correlate(np.concatenate([u, u[:-1]]), v, mode="valid")
        vals, counts = np.unique(circ, return_counts=True)
        pairs = [(int(v_), int(c)) for v_, c in zip(vals, counts)]
        return make_spectrum(p, ctx.n, d, pairs, method="naive")
    per_residue = np.zeros((p, L), dtype=np.int64)
    ind_s = [(s == i).astype(np.int64) for i in range(p)]
    ind_d = [(sd == j).astype(np.int64) for j in range(p)]
    for i in range(p):
        si2 = np.concatenate([ind_s[i], ind_s[i][:-1]])
        for j in range(p):
            c = np.correlate(si2, ind_d[j], mode="valid")
            per_residue[(i - j) % p] += c
    column_keys: dict = {}
    for tau in range(L):
        key = tuple(int(per_residue[r, tau]) for r in range(p))
        column_keys[key] = column_keys.get(key, 0) + 1
    pairs = [(CycInt.from_counts(p, k), c) for k, c in column_keys.items()]
    return make_spectrum(p, ctx.n, d, pairs, method="naive")


def spectrum(ctx: FieldCtx, d: int, method: str = "fast") -> SpectrumTable:
    """Crosscorrelation spectrum of the d-decimation pair over GF(p^n)."""
    if method == "fast":
        return walsh_fast(ctx, d).spectrum()
    if method == "naive":
        return spectrum_naive(ctx, d)
    raise ValueError(f"unknown method {method!r}")


# ----------------------------------------------------------------------
# Moments and solution counts
# ----------------------------------------------------------------------

def moment(table: SpectrumTable, l: int):
    """l-th power moment of the Walsh transform, from a spectrum table.

    Sums W(a)^l = (C + 1)^l over all a including a = 0 (which contributes
    only to l = 0 since W(0) = 0 for invertible d).
    """
    if l == 0:
        return table.p ** table.n
    acc = CycInt.zero(table.p)
    for v, c in table.entries.items():
        acc = acc + (v + 1) ** l * c
    return acc.as_integer() if acc.is_rational else acc


def _pow_d_table(ctx: FieldCtx, d: int) -> np.ndarray:
    L = ctx.period
    out = np.zeros(ctx.order, dtype=np.int64)
    idx = (np.arange(L, dtype=np.int64) * (d % L)) % L
    out[ctx.exp_table.astype(np.int64)] = ctx.exp_table[idx]
    return out


def _add_table(ctx: FieldCtx) -> np.ndarray:
    """Full addition table (packed x packed), small odd-p fields only."""
    if ctx.order > 2 ** 12:
        raise Budget("addition table limited to p^n <= 4096")
    q = ctx.order
    tbl = np.zeros((q, q), dtype=np.int32)
    for a in range(q):
        tbl[a] = [ctx.add(a, b) for b in range(q)]
    return tbl


def solution_count_N(ctx: FieldCtx, d: int, l: int) -> int:
    """Brute-force count of (x_1..x_l) with sum x_i = 0 and sum x_i^d = 0."""
    if l not in (1, 2, 3, 4):
        raise ValueError("l must be in 1..4")
    if ctx.order ** (l - 1) > 2 ** 32:
        raise Budget(f"p^(n(l-1)) = {ctx.order ** (l - 1)} exceeds 2^32")
    q = ctx.order
    powd = _pow_d_table(ctx, d)
    if l == 1:
        return 1  # only x = 0 (0^d = 0)
    xs = np.arange(q, dtype=np.int64)
    if ctx.p == 2:
        if l == 2:
            # x2 = x1; x1^d ^ x1^d = 0 always
            return q
        if l == 3:
            count = 0
            for x1 in range(q):
                x3 = x1 ^ xs
                tot = powd[x1] ^ powd[xs] ^ powd[x3]
                count += int(np.count_nonzero(tot == 0))
            return count
        count = 0
        for x1 in range(q):
            pref = powd[x1] ^ powd[xs]
            x12 = x1 ^ xs
            for i2 in range(q):
                x4 = x12[i2] ^ xs
                tot = pref[i2] ^ powd[xs] ^ powd[x4]
                count += int(np.count_nonzero(tot == 0))
        return count
    add = _add_table(ctx)
    neg = np.array([ctx.neg(a) for a in range(q)], dtype=np.int64)
    if l == 2:
        x2 = neg[xs]
        return int(np.count_nonzero(add[powd[xs], powd[x2]] == 0))
    if l == 3:
        count = 0
        for x1 in range(q):
            x3 = neg[add[x1, xs]]
            tot = add[add[powd[x1], powd[xs]], powd[x3]]
            count += int(np.count_nonzero(tot == 0))
        return count
    count = 0
    for x1 in range(q):
        s1 = add[x1, xs]
        p1 = add[powd[x1], powd[xs]]
        for i2 in range(q):
            x4 = neg[add[s1[i2], xs]]
            tot = add[add[p1[i2], powd[xs]], powd[x4]]
            count += int(np.count_nonzero(tot == 0))
    return count


def b_l_count(ctx: FieldCtx, d: int, l: int) -> int:
    """Count nonzero (x_1..x_{l-1}) with sum x_i = -1 and sum x_i^d = -1."""
    if l not in (3, 4):
        raise ValueError("l must be 3 or 4")
    if ctx.order ** (l - 2) > 2 ** 32:
        raise Budget("enumeration exceeds 2^32")
    q = ctx.order
    powd = _pow_d_table(ctx, d)
    minus1 = ctx.neg(1)
    count = 0
    if l == 3:
        for x1 in range(1, q):
            x2 = ctx.sub(minus1, x1)
            if x2 == 0:
                continue
            if ctx.add(int(powd[x1]), int(powd[x2])) == minus1:
                count += 1
        return count
    for x1 in range(1, q):
        for x2 in range(1, q):
            x3 = ctx.sub(ctx.sub(minus1, x1), x2)
            if x3 == 0:
                continue
            s = ctx.add(ctx.add(int(powd[x1]), int(powd[x2])), int(powd[x3]))
            if s == minus1:
                count += 1
    return count


@dataclass
class MomentReport:
    """Exact verdicts for the first/second moment identities and b_3 form."""

    p: int
    n: int
    d: int
    sum_c: CycInt
    sum_c_ok: bool
    autocorr_t0: object
    autocorr_t0_ok: bool
    shifted: list
    shifted_ok: bool
    third_moment: object
    b3: int
    third_moment_ok: bool

    def all_pass(self) -> bool:
        return self.sum_c_ok and self.autocorr_t0_ok and self.shifted_ok and self.third_moment_ok

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "d": self.d,
            "sum_values": self.sum_c.to_json(),
            "sum_values_ok": self.sum_c_ok,
            "second_moment_t0_ok": self.autocorr_t0_ok,
            "second_moment_shifted": [[t, ok] for t, ok in self.shifted],
            "second_moment_shifted_ok": self.shifted_ok,
            "third_moment_vs_b3_ok": self.third_moment_ok,
            "b3": self.b3,
        }


def _c_values_by_shift(ctx: FieldCtx, d: int) -> list[CycInt]:
    wt = walsh_fast(ctx, d)
    if ctx.p == 2:
        vals = wt.int_values_by_log()
        return [CycInt(2, (int(v) - 1,)) for v in vals]
    view = wt._log_view()
    out = []
    for row in view:
        coords = list(int(c) for c in row)
        coords[0] -= 1
        out.append(CycInt(ctx.p, coords))
    return out


def moment_identity_check(ctx: FieldCtx, d: int, seed: int = 2024) -> MomentReport:
    """Check sum C = 1, the shifted second moments, and the l = 3 moment
    against the brute-force pair count b_3 (all exact)."""
    if ctx.order > MOMENT_CHECK_MAX_ORDER:
        raise Budget("moment identity check is grid-bounded")
    L = ctx.period
    q = ctx.order
    cvals = _c_values_by_shift(ctx, d)

    total = CycInt.zero(ctx.p)
    for v in cvals:
        total = total + v
    sum_ok = total == 1

    t0 = CycInt.zero(ctx.p)
    for v in cvals:
        t0 = t0 + v * v
    t0_ok = t0 == q * q - q - 1

    rng = random.Random(seed)
    shifted = []
    for t in sorted(rng.sample(range(1, L), min(3, L - 1))):
        acc = CycInt.zero(ctx.p)
        for tau in range(L):
            acc = acc + cvals[(tau - t) % L] * cvals[tau]
        shifted.append((t, acc == -q - 1))
    shifted_ok = all(ok for _, ok in shifted)

    third = CycInt.zero(ctx.p)
    for v in cvals:
        third = third + v * v * v
    b3 = b_l_count(ctx, d, 3)
    third_ok = third == -((q - 1) ** 2) + 2 + b3 * q * q

    return MomentReport(
        p=ctx.p, n=ctx.n, d=d,
        sum_c=total, sum_c_ok=sum_ok,
        autocorr_t0=t0, autocorr_t0_ok=t0_ok,
        shifted=shifted, shifted_ok=shifted_ok,
        third_moment=third, b3=b3, third_moment_ok=third_ok,
    )
