"""Exhaustive decimation classification and finite conjecture checks.

Coprime nondegenerate decimations are partitioned into equivalence classes
closed under d -> d * p^j and d -> d^(-1) (all members share one spectrum);
one Walsh transform per class representative covers the whole coprime range.
Spectra can be persisted to a JSON-lines cache keyed by (p, n, modulus,
class representative) so repeated runs are incremental.

A conjecture check that FAILS is a reportable finding (recorded in the
returned report), never a crash.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from .cyclo import CycInt, cycint_from_json
from .errors import Budget
from . import families
from .gf import FieldCtx, field_ctx
from .spectra import SpectrumTable, spectrum

CLASSIFY_MAX_ORDER = 2 ** 24


@dataclass
class DecimationClass:
    """One equivalence class of decimations with its shared spectrum."""

    rep: int
    members: tuple[int, ...]
    spectrum: SpectrumTable

    @property
    def value_count(self) -> int:
        return self.spectrum.num_values()


def degenerate_set(p: int, n: int) -> set[int]:
    L = p ** n - 1
    return {pow(p, j, L) for j in range(n)}


def class_partition(p: int, n: int) -> list[tuple[int, tuple[int, ...]]]:
    """Partition of nondegenerate coprime d under d ~ d p^j ~ d^(-1) p^j.

    Returns (representative, sorted members) pairs ordered by representative;
    the representative is the least member of the merged coset pair.
    """
    L = p ** n - 1
    degen = degenerate_set(p, n)
    seen: set[int] = set()
    out = []
    for d in range(2, L):
        if d in seen or d in degen or gcd(d, L) != 1:
            continue
        dinv = pow(d, -1, L)
        members = set()
        for base in (d, dinv):
            x = base
            for _ in range(n):
                members.add(x)
                x = x * p % L
        seen |= members
        out.append((min(members), tuple(sorted(members))))
    out.sort(key=lambda t: t[0])
    return out


class SpectrumCache:
    """JSON-lines spectrum store, one file per (p, n) under a directory."""

    def __init__(self, directory: str):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, p: int, n: int) -> str:
        return os.path.join(self.directory, f"spectra_p{p}_n{n}.jsonl")

    def load(self, p: int, n: int, modulus: tuple) -> dict[int, SpectrumTable]:
        path = self._path(p, n)
        out: dict[int, SpectrumTable] = {}
        if not os.path.exists(path):
            return out
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if tuple(rec["modulus"]) != tuple(modulus):
                    continue
                entries = {
                    cycint_from_json(e["value"], p): e["count"]
                    for e in rec["entries"]
                }
                out[rec["d"]] = SpectrumTable(
                    p=p, n=n, d=rec["d"], entries=entries, method=rec["method"])
        return out

    def append(self, p: int, n: int, modulus: tuple, tables) -> None:
        with open(self._path(p, n), "a") as fh:
            for t in tables:
                rec = {
                    "p": p, "n": n, "modulus": list(modulus), "d": t.d,
                    "method": t.method,
                    "entries": [
                        {"value": v.to_json(), "count": c}
                        for v, c in t.sorted_entries()
                    ],
                }
                fh.write(json.dumps(rec, sort_keys=True) + "\n")


def canonical_classes(p: int, n: int, cache: SpectrumCache | None = None,
                      threads: int = 1,
                      ctx: FieldCtx | None = None) -> list[DecimationClass]:
    """All nondegenerate coprime classes with one computed spectrum each."""
    if p ** n > CLASSIFY_MAX_ORDER:
        raise Budget(f"classification bounded to p^n <= {CLASSIFY_MAX_ORDER}")
    ctx = ctx or field_ctx(p, n)
    parts = class_partition(p, n)
    cached: dict[int, SpectrumTable] = {}
    if cache is not None:
        cached = cache.load(p, n, ctx.spec.coeffs)

    todo = [rep for rep, _ in parts if rep not in cached]

    def compute(rep: int) -> SpectrumTable:
        return spectrum(ctx, rep, method="fast")

    fresh: dict[int, SpectrumTable] = {}
    if threads > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for rep, table in zip(todo, pool.map(compute, todo)):
                fresh[rep] = table
    else:
        for rep in todo:
            fresh[rep] = compute(rep)
    if cache is not None and fresh:
        cache.append(p, n, ctx.spec.coeffs,
                     [fresh[r] for r in sorted(fresh)])

    out = []
    for rep, members in parts:
        table = cached.get(rep) or fresh[rep]
        out.append(DecimationClass(rep=rep, members=members, spectrum=table))
    return out


def classify_by_value_count(p: int, n: int, **kw) -> dict[int, list[DecimationClass]]:
    """Bucket canonical classes by spectrum cardinality."""
    buckets: dict[int, list[DecimationClass]] = {}
    for cls in canonical_classes(p, n, **kw):
        buckets.setdefault(cls.value_count, []).append(cls)
    return {t: buckets[t] for t in sorted(buckets)}


# ----------------------------------------------------------------------
# Conjecture evidence
# ----------------------------------------------------------------------

@dataclass
class MinusOneReport:
    """Evidence that -1 occurs in every qualifying spectrum at (p, n)."""

    p: int
    n: int
    holds: bool
    checked_classes: int
    counterexamples: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "check": "minus-one", "p": self.p, "n": self.n,
            "holds": self.holds, "checked_classes": self.checked_classes,
            "counterexamples": self.counterexamples,
        }


def check_minus_one(p: int, n: int, **kw) -> MinusOneReport:
    """For every coprime d with d = 1 mod p-1: some a != 0 has W_d(a) = 0.

    Degenerate d hold trivially (-1 at every nonzero shift); the qualifying
    set is closed under the class moves, so one check per class suffices.
    """
    minus_one = CycInt.from_int(p, -1)
    counter = []
    checked = 0
    for cls in canonical_classes(p, n, **kw):
        if (cls.rep - 1) % (p - 1):
            continue
        checked += 1
        if minus_one not in cls.spectrum.entries:
            counter.append(cls.rep)
    return MinusOneReport(p=p, n=n, holds=not counter,
                          checked_classes=checked, counterexamples=counter)


@dataclass
class CompletenessReport:
    """Exhaustive three-valued classes vs the catalog's predictions."""

    p: int
    n: int
    exact_match: bool
    found_reps: list[int]
    predicted_reps: list[int]
    unexplained: list[int]
    missing: list[int]

    def to_dict(self) -> dict:
        return {
            "check": "three-valued-completeness", "p": self.p, "n": self.n,
            "exact_match": self.exact_match,
            "found": self.found_reps, "predicted": self.predicted_reps,
            "unexplained": self.unexplained, "missing": self.missing,
        }


def _class_rep_of(d: int, p: int, n: int) -> int:
    L = p ** n - 1
    members = set()
    for base in (d % L, pow(d, -1, L)):
        x = base
        for _ in range(n):
            members.add(x)
            x = x * p % L
    return min(members)


def three_valued_completeness(p: int, n: int, **kw) -> CompletenessReport:
    """Compare the exhaustive t = 3 bucket with catalog-predicted classes."""
    buckets = classify_by_value_count(p, n, **kw)
    found = sorted(cls.rep for cls in buckets.get(3, []))
    predicted = sorted({
        _class_rep_of(d, p, n) for d in families.three_valued_decimations(p, n)
    })
    unexplained = sorted(set(found) - set(predicted))
    missing = sorted(set(predicted) - set(found))
    return CompletenessReport(
        p=p, n=n, exact_match=not unexplained and not missing,
        found_reps=found, predicted_reps=predicted,
        unexplained=unexplained, missing=missing)
