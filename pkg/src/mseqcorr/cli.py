"""Command-line entry point.

Subcommands: field, seq, spectrum, moments, verify, niho, expsum,
code-weights, classify, conjecture.  JSON is the canonical output format
(sorted keys, deterministic bytes regardless of worker count); CSV is a
lossy value,count projection of spectra.

Exit codes: 0 success, 1 computation-level finding (verification mismatch
or conjecture counterexample), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import gcd

from . import codes, expsums, families, lfsr, niho, search, spectra
from .errors import MseqCorrError
from .gf import field_ctx, load_modulus_file


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _parse_decimation(text: str, modulus: int) -> int:
    if "/" in text:
        num, den = text.split("/", 1)
        d = niho.resolve_fraction(int(num), int(den), modulus)
    else:
        d = int(text) % modulus
    if gcd(d, modulus) != 1:
        raise UsageError(f"decimation {text} is not coprime to {modulus}")
    return d


def _ctx_for(args):
    coeffs = None
    if getattr(args, "modulus_file", None):
        table = load_modulus_file(args.modulus_file)
        coeffs = table.get((args.p, args.n))
    return field_ctx(args.p, args.n, coeffs)


def _parse_params(text: str) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        k, _, v = item.partition("=")
        if not _:
            raise UsageError(f"bad --params item {item!r}; expected key=value")
        out[k.strip()] = int(v)
    return out


# ----------------------------------------------------------------------
# Subcommand handlers
# ----------------------------------------------------------------------

def _cmd_field(args) -> int:
    ctx = _ctx_for(args)
    _emit({
        "p": ctx.p, "n": ctx.n, "order": ctx.order, "period": ctx.period,
        "modulus_coeffs": list(ctx.spec.coeffs), "primitive": True,
    })
    return 0


def _cmd_seq(args) -> int:
    ctx = _ctx_for(args)
    seq = lfsr.generate_trace(ctx)
    if args.d:
        seq = lfsr.decimate(seq, _parse_decimation(args.d, ctx.period))
    if args.format == "raw":
        target = args.out_file
        if target:
            with open(target, "wb") as fh:
                fh.write(seq.symbols)
        else:
            sys.stdout.buffer.write(seq.symbols)
        return 0
    if ctx.p <= 9:
        line = "".join(str(s) for s in seq.symbols)
    else:
        line = " ".join(str(s) for s in seq.symbols)
    if args.out_file:
        with open(args.out_file, "w") as fh:
            fh.write(line + "\n")
    else:
        print(line)
    return 0


def _cmd_spectrum(args) -> int:
    ctx = _ctx_for(args)
    d = _parse_decimation(args.d, ctx.period)
    table = spectra.spectrum(ctx, d, method=args.method)
    if args.out == "csv":
        print("value,count")
        for v, c in table.sorted_entries():
            vtxt = v.as_integer() if v.is_rational else "\"" + str(list(v.coords)) + "\""
            print(f"{vtxt},{c}")
    else:
        _emit(table.to_json_dict())
    return 0


def _cmd_moments(args) -> int:
    ctx = _ctx_for(args)
    d = _parse_decimation(args.d, ctx.period)
    report = spectra.moment_identity_check(ctx, d)
    table = spectra.spectrum(ctx, d)
    moments = {}
    for l in range(5):
        m = spectra.moment(table, l)
        moments[str(l)] = m if isinstance(m, int) else m.to_json()
    out = report.to_dict()
    out["power_moments"] = moments
    _emit(out)
    return 0 if report.all_pass() else 1


def _cmd_verify(args) -> int:
    params = _parse_params(args.params)
    if args.family == "all":
        jobs = []
        for fam in families.catalog():
            for inst in fam.instances(args.p, args.n):
                jobs.append((fam.id, inst))
    else:
        fam = families.get_family(args.family)
        insts = [params] if params else fam.instances(args.p, args.n)
        if not insts:
            raise UsageError(
                f"family {args.family} has no admissible instance at "
                f"(p={args.p}, n={args.n}); pass --params")
        jobs = [(fam.id, inst) for inst in insts]
    ctx = _ctx_for(args)
    verdicts = []
    spectra_cache: dict[int, spectra.SpectrumTable] = {}
    for fid, inst in jobs:
        fam = families.get_family(fid)
        d = fam.decimation(args.p, args.n, inst)
        if d not in spectra_cache:
            spectra_cache[d] = spectra.spectrum(ctx, d)
        verdicts.append(families.verify_family(fid, args.p, args.n, inst,
                                               spectra_cache[d]))
    _emit([v.to_dict() for v in verdicts])
    return 0 if all(v.passed for v in verdicts) else 1


def _cmd_niho(args) -> int:
    ctx = field_ctx(args.p, 2 * args.m)
    out = {
        "p": args.p, "m": args.m, "s": args.s,
        "d": niho.niho_decimation(args.p, args.m, args.s),
        "histogram": {str(k): v for k, v in niho.unit_root_histogram(ctx, args.s).items()},
        "value_set": sorted(niho.niho_value_set(ctx, args.s)),
    }
    if args.check_identity:
        rep = niho.walsh_identity_report(ctx, args.s)
        out["identity_holds"] = rep["holds"]
    _emit(out)
    return 0 if out.get("identity_holds", True) else 1


def _cmd_expsum(args) -> int:
    if args.kind == "kloosterman":
        ctx = field_ctx(args.p, args.m)
        a = 0 if args.a_zero else ctx.element_from_log(args.a_log)
        v = expsums.kloosterman(ctx, a)
        _emit({"kind": "kloosterman", "p": args.p, "m": args.m,
               "a_log": None if args.a_zero else args.a_log,
               "value": v if isinstance(v, int) else v.to_json()})
    elif args.kind in ("cubic", "g"):
        ctx = field_ctx(2, args.n)
        b = 0 if args.b_zero else ctx.element_from_log(args.b_log)
        a = 0 if args.a_zero else ctx.element_from_log(args.a_log)
        fn = expsums.cubic_sum if args.kind == "cubic" else expsums.g_sum
        _emit({"kind": args.kind, "n": args.n, "value": fn(ctx, b, a)})
    elif args.kind == "r":
        _emit({"kind": "r", "m": args.m,
               "value": expsums.kloosterman_weighted_sum(args.m)})
    elif args.kind == "op6":
        rep = expsums.conjectured_sum_identities(args.n, args.k)
        _emit({"kind": "op6", **rep})
        return 0 if rep["both_equal"] else 1
    return 0


def _cmd_code_weights(args) -> int:
    ctx = _ctx_for(args)
    d = _parse_decimation(args.d, ctx.period)
    dist = codes.weight_distribution_via_walsh(ctx, d)
    _emit(dist.to_json_dict())
    return 0


def _cmd_classify(args) -> int:
    cache = search.SpectrumCache(args.cache_dir) if args.cache_dir else None
    ns = range(2, args.max_n + 1) if args.max_n else [args.n]
    out = []
    for n in ns:
        if args.p ** n > search.CLASSIFY_MAX_ORDER:
            break
        buckets = search.classify_by_value_count(
            args.p, n, cache=cache, threads=args.threads)
        out.append({
            "p": args.p, "n": n,
            "buckets": {
                str(t): [
                    {"rep": c.rep, "members": len(c.members),
                     "values": [v.to_json() for v, _ in c.spectrum.sorted_entries()]}
                    for c in lst
                ] for t, lst in buckets.items()
            },
        })
    _emit(out)
    return 0


def _cmd_conjecture(args) -> int:
    cache = search.SpectrumCache(args.cache_dir) if args.cache_dir else None
    findings = 0
    out = []
    if args.check == "op6":
        rep = expsums.conjectured_sum_identities(args.n, args.k)
        out.append({"check": "op6", **rep})
        findings += 0 if rep["both_equal"] else 1
    else:
        ns = range(2, args.max_n + 1) if args.max_n else [args.n]
        for n in ns:
            if args.p ** n > search.CLASSIFY_MAX_ORDER:
                break
            if args.check == "minus-one":
                rep = search.check_minus_one(args.p, n, cache=cache,
                                             threads=args.threads)
                out.append(rep.to_dict())
                findings += 0 if rep.holds else 1
            elif args.check == "three-valued":
                rep = search.three_valued_completeness(
                    args.p, n, cache=cache, threads=args.threads)
                out.append(rep.to_dict())
                findings += 0 if rep.exact_match else 1
    _emit(out)
    return 0 if not findings else 1


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def _add_field_args(sp, with_d=False):
    sp.add_argument("--p", type=int, required=True, help="prime characteristic")
    sp.add_argument("--n", type=int, required=True, help="extension degree")
    sp.add_argument("--modulus-file", help="override table of defining polynomials")
    if with_d:
        sp.add_argument("--d", required=True,
                        help="decimation, integer or fraction d1/d2 mod p^n-1")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mseqcorr",
        description="Exact crosscorrelation and Walsh spectra of p-ary "
                    "m-sequence decimation pairs",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("field", help="canonical field data for (p, n)")
    _add_field_args(sp)
    sp.set_defaults(fn=_cmd_field)

    sp = sub.add_parser("seq", help="emit one period of the m-sequence")
    _add_field_args(sp)
    sp.add_argument("--d", default="", help="optional decimation to apply")
    sp.add_argument("--format", choices=("digits", "raw"), default="digits")
    sp.add_argument("--out-file", default="")
    sp.set_defaults(fn=_cmd_seq)

    sp = sub.add_parser("spectrum", help="crosscorrelation spectrum of a decimation")
    _add_field_args(sp, with_d=True)
    sp.add_argument("--method", choices=("fast", "naive"), default="fast")
    sp.add_argument("--out", choices=("json", "csv"), default="json")
    sp.add_argument("--threads", type=int, default=1,
                    help="worker budget; the transform itself is vectorized "
                         "and deterministic for any value")
    sp.set_defaults(fn=_cmd_spectrum)

    sp = sub.add_parser("moments", help="power-moment identity report")
    _add_field_args(sp, with_d=True)
    sp.set_defaults(fn=_cmd_moments)

    sp = sub.add_parser("verify", help="check predicted family distributions")
    sp.add_argument("--family", required=True, help="family id or 'all'")
    _add_field_args(sp)
    sp.add_argument("--params", default="", help="comma list k=v of family parameters")
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("niho", help="unit-circle root counts for d = s(p^m-1)+1")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--check-identity", action="store_true")
    sp.set_defaults(fn=_cmd_niho)

    sp = sub.add_parser("expsum", help="auxiliary exponential sums")
    sp.add_argument("--kind", required=True,
                    choices=("kloosterman", "cubic", "g", "r", "op6"))
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--a-log", type=int, default=0)
    sp.add_argument("--b-log", type=int, default=0)
    sp.add_argument("--a-zero", action="store_true")
    sp.add_argument("--b-zero", action="store_true")
    sp.set_defaults(fn=_cmd_expsum)

    sp = sub.add_parser("code-weights", help="weight distribution of the two-nonzero code")
    _add_field_args(sp, with_d=True)
    sp.set_defaults(fn=_cmd_code_weights)

    default_cache = os.environ.get("MSEQCORR_CACHE_DIR", "")

    sp = sub.add_parser("classify", help="exhaustive classification by value count")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--max-n", type=int, default=0)
    sp.add_argument("--cache-dir", default=default_cache)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(fn=_cmd_classify)

    sp = sub.add_parser("conjecture", help="finite evidence checks")
    sp.add_argument("--check", required=True,
                    choices=("minus-one", "three-valued", "op6"))
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--max-n", type=int, default=0)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--cache-dir", default=default_cache)
    sp.add_argument("--threads", type=int, default=1)
    sp.set_defaults(fn=_cmd_conjecture)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        if args.command in ("spectrum", "moments", "field", "seq",
                            "code-weights", "verify") and args.n < 1:
            raise UsageError("n must be >= 1")
        if args.command == "classify" and not (args.n or args.max_n):
            raise UsageError("pass --n or --max-n")
        if args.command == "conjecture" and args.check != "op6" \
                and not (args.n or args.max_n):
            raise UsageError("pass --n or --max-n")
        return args.fn(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except MseqCorrError as e:
        print(f"usage error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
