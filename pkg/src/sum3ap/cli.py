"""Command-line front end.

Every command prints one envelope ``{command, inputs, result, timing_ms}``
(JSON by default, or key/value TSV) with integers as decimal strings.
``scan`` streams TSV rows instead.

Exit codes: 0 ok, 2 failed precondition, 3 over a size cap, 64 usage,
70 internal contradiction.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
import warnings
from fractions import Fraction

from . import __version__
from .arith import FACTOR_CAP, crt_combine
from .chowla import (
    build_N,
    extract_witness,
    hurwitz_value_for,
    hurwitz_witness,
    lower_bound_report,
)
from .classnum import FORMS_CAP, gauss_relation_check, hurwitz_twelve, reduced_forms
from .congsolve import solve_binary_form, solve_mod_m
from .errors import InternalContradiction, PreconditionViolation, TooLarge
from .reduction import PIPELINE_MODULUS_CAP, reduce_full
from .repcount import (
    BUCKET_CAP,
    BUCKET_MODULUS_CAP,
    CAM_CAP,
    R3_CAP,
    R3_SIEVE_CAP,
    R4_CAP,
    SUM_STREAM_CAP,
    c_am,
    legendre_is_sum3,
    r3_along_progression,
    r3_bruteforce,
    r3_exact,
    r3_sieved,
    r4_bruteforce,
    r4_buckets,
    r4_buckets_sparse,
    r4_jacobi,
    sigma_star,
    sphere_main_term,
    sum_r3_upto,
)

EXIT_OK, EXIT_PRECONDITION, EXIT_TOO_LARGE, EXIT_USAGE, EXIT_INTERNAL = 0, 2, 3, 64, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return _jsonable(obj.item())
    return str(obj)


def _flatten(prefix, obj, out):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list):
        out.append((prefix, ",".join("" if v is None else str(v) for v in obj)))
    else:
        out.append((prefix, "" if obj is None else str(obj)))
    return out


def _emit(args, result, t0, stream):
    env = _jsonable(
        {
            "command": args.command,
            "inputs": {k: v for k, v in vars(args).items() if k not in ("command", "func")},
            "result": result,
            "timing_ms": int((time.perf_counter() - t0) * 1000),
        }
    )
    if args.format == "tsv":
        for key, val in _flatten("", env, []):
            stream.write(f"{key}\t{val}\n")
    else:
        stream.write(json.dumps(env, ensure_ascii=False) + "\n")


def _need(cond, msg):
    if not cond:
        raise PreconditionViolation(msg)


def _check_factor_cap(args, n):
    if n > args.factor_cap:
        raise TooLarge(f"{n} exceeds the factoring cap {args.factor_cap}")


# -- command bodies ------------------------------------------------------------


def cmd_r3(args):
    if args.method == "brute":
        return r3_bruteforce(args.n, args.r3_cap)
    if args.method == "sieve":
        return r3_sieved(args.n, args.sieve_cap)
    return r3_exact(args.n, args.r3_cap, args.sieve_cap)


def cmd_r4(args):
    if args.method == "brute":
        return r4_bruteforce(args.n, args.r4_cap)
    _need(args.n >= 1, "n must be >= 1 for the divisor formula")
    _check_factor_cap(args, args.n)
    return r4_jacobi(args.n)


def cmd_sigma_star(args):
    _check_factor_cap(args, args.n)
    return sigma_star(args.n)


def cmd_legendre(args):
    return legendre_is_sum3(args.n)


def cmd_cam(args):
    return c_am(args.a % args.m if args.m >= 1 else args.a, args.m, args.cam_cap)


def cmd_hurwitz(args):
    h = hurwitz_twelve(args.N, args.forms_cap)
    return {"twelve_h": h.twelve_h, "H": h.H}


def cmd_forms(args):
    forms = reduced_forms(args.N, args.forms_cap)
    return {"count": len(forms), "forms": [[f.A, f.B, f.C] for f in forms]}


def cmd_gauss_check(args):
    reports = [gauss_relation_check(n, args.r3_cap) for n in range(args.n, (args.upto or args.n) + 1)]
    bad = [r for r in reports if not r.ok]
    rows = [
        {"n": r.n, "case": r.case, "r3": r.r3, "rhs": r.rhs, "ok": r.ok}
        for r in (reports if len(reports) == 1 else bad)
    ]
    if len(reports) == 1:
        return rows[0]
    return {"checked": len(reports), "failures": len(bad), "failed": rows}


def cmd_reduce(args):
    c = reduce_full(args.a, args.m, args.modulus_cap)
    return {
        "a_prime": c.a_prime,
        "d_scale": c.d_scale,
        "t": c.t,
        "M": c.M,
        "case_tag": c.case_tag,
        "advisory": c.advisory,
    }


def cmd_solve_y(args):
    sol = solve_mod_m(args.x, args.a, args.m)
    return {"y": list(sol.y.residues()), "Q": sol.Q, "y_centered": list(sol.centered())}


def cmd_binary_form(args):
    u, v = solve_binary_form(args.a1, args.b1, args.d, args.p, args.e)
    return {"u": u, "v": v}


def cmd_build_n(args):
    N1, d_inv, N = build_N(args.a_prime, args.M, args.z)
    return {"N1": N1, "d_inv": d_inv, "N": N}


def cmd_buckets(args):
    if args.m <= BUCKET_MODULUS_CAP:
        table = r4_buckets(args.N, args.m, args.bucket_cap)
    else:
        table = r4_buckets_sparse(args.N, args.m, args.bucket_cap)
    top = sorted(table.entries.items(), key=lambda kv: (-kv[1], kv[0].coords))[: args.top]
    return {
        "total": table.total,
        "classes": len(table.entries),
        "top": [{"x": list(k.residues()), "count": c} for k, c in top],
    }


def _pipeline_opts(args):
    return dict(
        modulus_cap=args.modulus_cap,
        bucket_cap=args.bucket_cap,
        r3_cap=args.r3_cap,
        sieve_cap=args.sieve_cap,
    )


def cmd_chowla(args):
    w = extract_witness(
        args.a, args.m, args.z,
        skip_reduction=args.skip_reduction,
        verify_exact=args.verify_exact,
        **_pipeline_opts(args),
    )
    out = w.to_record()
    if args.report:
        out["report"] = lower_bound_report(w)
    return out


def cmd_hurwitz_witness(args):
    w, h_bound = hurwitz_witness(args.a, args.m, args.z, verify_exact=args.verify_exact, **_pipeline_opts(args))
    out = w.to_record()
    out["h_bound"] = h_bound
    out["h_kind"] = "H(n)" if w.n_final % 8 == 3 else "H(4n)"
    if args.class_number:
        out["h_value"] = hurwitz_value_for(w.n_final)
    return out


def scan_rows(a: int, m: int, max_n: int, cap: int = SUM_STREAM_CAP):
    """Yield (n, r3(n), r3(n)/sqrt(n), is_record) for n ≡ a (mod m), 1 <= n <= max_n."""
    _need(m >= 1, f"modulus must be >= 1, got {m}")
    counts = r3_along_progression(max_n, a, m, cap)
    start = a % m
    best = -1.0
    for i, r in enumerate(counts.tolist()):
        n = start + i * m
        if n == 0:
            continue
        ratio = r / math.sqrt(n)
        record = ratio > best
        if record:
            best = ratio
        yield n, r, ratio, record


def run_scan(args, stream):
    stream.write("n\tr3\tr3_over_sqrt_n\trecord\n")
    for n, r, ratio, rec in scan_rows(args.a, args.m, args.max_n, args.sum_cap):
        if rec or not args.records_only:
            stream.write(f"{n}\t{r}\t{ratio:.6f}\t{int(rec)}\n")


def cmd_sum_check(args):
    ap = None if args.m is None else (args.a or 0, args.m)
    _need(args.m is None or args.m >= 1, "modulus must be >= 1")
    total = sum_r3_upto(args.x, ap, streaming=True, stream_cap=args.sum_cap)
    main = sphere_main_term(args.x, ap)
    return {
        "sum": total,
        "main_term": main,
        "relative_error": abs(total - main) / main if main else None,
    }


def cmd_crt(args):
    pairs = []
    for item in args.pairs:
        try:
            r, mod = (int(v) for v in item.split(":"))
        except ValueError:
            raise UsageError(f"expected r:mod, got {item!r}") from None
        pairs.append((r, mod))
    R, M = crt_combine(pairs)
    return {"R": R, "M": M}


# -- parser --------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads; results do not depend on it")
    p.add_argument("--factor-cap", type=int, default=FACTOR_CAP)
    p.add_argument("--r3-cap", type=int, default=R3_CAP, help="largest n for brute-force r3")
    p.add_argument("--sieve-cap", type=int, default=R3_SIEVE_CAP, help="largest n for the r3 sieve")
    p.add_argument("--r4-cap", type=int, default=R4_CAP)
    p.add_argument("--cam-cap", type=int, default=CAM_CAP)
    p.add_argument("--forms-cap", type=int, default=FORMS_CAP)
    p.add_argument("--bucket-cap", type=int, default=BUCKET_CAP)
    p.add_argument("--modulus-cap", type=int, default=PIPELINE_MODULUS_CAP)
    p.add_argument("--sum-cap", type=int, default=SUM_STREAM_CAP)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="sum3ap", description="Sums of three squares in progressions.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("r3", cmd_r3, "number of representations as three squares")
    sp.add_argument("n", type=int)
    sp.add_argument("--method", choices=("exact", "brute", "sieve"), default="exact")

    sp = add("r4", cmd_r4, "number of representations as four squares")
    sp.add_argument("n", type=int)
    sp.add_argument("--method", choices=("jacobi", "brute"), default="jacobi")

    add("sigma-star", cmd_sigma_star, "sum of divisors not divisible by 4").add_argument("n", type=int)
    add("legendre", cmd_legendre, "is n a sum of three squares").add_argument("n", type=int)

    sp = add("cam", cmd_cam, "solutions of x1^2+x2^2+x3^2 ≡ a (mod m)")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)

    add("hurwitz", cmd_hurwitz, "Hurwitz class number H(N)").add_argument("N", type=int)
    add("forms", cmd_forms, "reduced forms of discriminant -N").add_argument("N", type=int)

    sp = add("gauss-check", cmd_gauss_check, "check r3 against class numbers")
    sp.add_argument("n", type=int)
    sp.add_argument("--upto", type=int, default=None, help="check every n in [n, upto]")

    sp = add("reduce", cmd_reduce, "square-free shift and enlarged modulus")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = add("solve-y", cmd_solve_y, "y with y·y ≡ 1, x·y ≡ 0 (mod m)")
    sp.add_argument("--x", type=int, nargs=4, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)

    sp = add("binary-form", cmd_binary_form, "a1 u^2 + b1 v^2 ≡ d (mod p^e)")
    for flag in ("--a1", "--b1", "--d", "--p", "--e"):
        sp.add_argument(flag, type=int, required=True)

    sp = add("build-n", cmd_build_n, "N ≡ a' (mod M) from a primorial")
    sp.add_argument("--a-prime", type=int, required=True)
    sp.add_argument("--M", type=int, required=True)
    sp.add_argument("--z", type=int, default=7)

    sp = add("buckets", cmd_buckets, "four-square representations of N by class mod m")
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--top", type=int, default=10)

    for name, func, help_ in (
        ("chowla", cmd_chowla, "certified witness n ≡ a (mod m) with large r3(n)"),
        ("hurwitz-witness", cmd_hurwitz_witness, "witness with a class-number lower bound"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("--a", type=int, required=True)
        sp.add_argument("--m", type=int, required=True)
        sp.add_argument("--z", type=int, default=7)
        sp.add_argument("--verify-exact", action="store_true")
        if name == "chowla":
            sp.add_argument("--skip-reduction", action="store_true")
            sp.add_argument("--report", action="store_true")
        else:
            sp.add_argument("--class-number", action="store_true", help="also compute the H value")

    sp = add("scan", None, "stream r3(n) along a progression as TSV")
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--records-only", action="store_true")

    sp = add("sum-check", cmd_sum_check, "lattice-point count against the ball volume")
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--a", type=int, default=None)
    sp.add_argument("--m", type=int, default=None)

    sp = add("crt", cmd_crt, "combine residues r:mod with coprime moduli")
    sp.add_argument("pairs", nargs="+")
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_USAGE
    if args.threads < 1:
        stderr.write("usage error: --threads must be >= 1\n")
        return EXIT_USAGE
    t0 = time.perf_counter()
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            if args.command == "scan":
                run_scan(args, stdout)
            else:
                _emit(args, args.func(args), t0, stdout)
        for w in caught:
            stderr.write(f"advisory: {w.message}\n")
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except PreconditionViolation as exc:
        stderr.write(f"precondition violated ({type(exc).__name__}): {exc}\n")
        return EXIT_PRECONDITION
    except TooLarge as exc:
        stderr.write(f"too large: {exc}\n")
        return EXIT_TOO_LARGE
    except InternalContradiction as exc:
        stderr.write(f"internal contradiction: {exc}\n")
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
