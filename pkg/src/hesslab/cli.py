"""Command surface: analyze one Hessenberg function, sweep-verify the
theorem-level invariants over all functions of a given size, or run the
Kahler-package checks on the moment-graph model.

Reports are canonical JSON (sorted keys, compact separators, trailing
newline) so a fixed seed and version produce identical bytes; CSV and a
human table mode render the same data.  Exit codes: 0 success, 2 usage
error, 3 any theorem violation.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import itertools
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial

from . import __version__
from .dotchar import (
    dot_action_multiplicities,
    multiplicities_json,
    regular_betti,
)
from .errors import CostGuardError, HesslabError, TheoremViolation
from .gkm import GRAPH_MAX_N, RING_MAX_N, build_gkm, kahler_report, morse_betti
from .hessenberg import (
    enumerate_hessenberg,
    hessenberg_str,
    is_indecomposable,
    parse_hessenberg,
)
from .linalg import det_exact
from .partitions import conjugate, dominance_leq
from .springer import DEFAULT_SEED, generic_jordan_type

VERIFY_MAX_N = 7
VERIFY_FORCE_MAX_N = 8
DEFAULT_GKM_MAX_N = 4
CACHE_ENV = "HESSLAB_CACHE"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _sanitize(obj):
    """Make a report JSON-safe: fractions to 'p/q' strings, tuples to lists."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def _pstr(lam) -> str:
    return ",".join(str(p) for p in lam)


def _jstr(J) -> str:
    return ",".join(str(j) for j in sorted(J))


def _parse_h(text: str):
    try:
        return parse_hessenberg(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_J(text: str):
    text = text.strip()
    if not text:
        return ()
    try:
        J = tuple(sorted(set(int(p) for p in text.split(","))))
    except ValueError:
        raise argparse.ArgumentTypeError(f"J must be comma-separated integers, got {text!r}")
    if any(j < 1 for j in J):
        raise argparse.ArgumentTypeError(f"J entries must be >= 1, got {text!r}")
    return J


def _parse_lambda(text: str):
    try:
        lam = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"lambda must be comma-separated integers, got {text!r}")
    return lam


def all_parabolic_subsets(n: int):
    """All subsets of the simple reflections 1..n-1, shortlex order."""
    out = [()]
    for size in range(1, n):
        out.extend(itertools.combinations(range(1, n), size))
    return out


# --- cache -----------------------------------------------------------------

def _cache_dir(args) -> str | None:
    if args.cache_dir:
        return args.cache_dir
    return os.environ.get(CACHE_ENV) or None


def _cache_path(cache_dir: str, key: dict) -> str:
    digest = hashlib.sha256(canonical_json(key).encode()).hexdigest()
    return os.path.join(cache_dir, f"{digest}.json")


def cache_fetch(cache_dir: str | None, key: dict):
    if not cache_dir:
        return None
    path = _cache_path(cache_dir, key)
    if not os.path.exists(path):
        return None
    with open(path, encoding="utf-8") as fh:
        stored = json.load(fh)
    if stored.get("key") != json.loads(canonical_json(key)):
        return None
    return stored["payload"]


def cache_store(cache_dir: str | None, key: dict, payload) -> None:
    if not cache_dir:
        return
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(cache_dir, key)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(canonical_json({"key": key, "payload": payload}))
    os.replace(tmp, path)


def _key(module: str, h, seed: int, J=None) -> dict:
    return {
        "module": module,
        "n": len(h),
        "h": hessenberg_str(h),
        "J": None if J is None else _jstr(J),
        "seed": seed,
        "version": __version__,
    }


def _parse_compact_key(key: str):
    # single digits only; n <= 9 everywhere the cache is used
    return tuple(int(ch) for ch in key)


# --- analyze ----------------------------------------------------------------

def _mult_payload(h, seed: int, cache_dir, force: bool) -> dict:
    key = _key("dotchar", h, seed)
    payload = cache_fetch(cache_dir, key)
    if payload is None:
        payload = multiplicities_json(dot_action_multiplicities(h, force))
        cache_store(cache_dir, key, payload)
    return payload


def _lambda_h_payload(h, seed: int, cache_dir) -> str:
    key = _key("springer", h, seed)
    payload = cache_fetch(cache_dir, key)
    if payload is None:
        payload = {"lambda_H": _pstr(generic_jordan_type(h, seed=seed))}
        cache_store(cache_dir, key, payload)
    return payload["lambda_H"]


def _is_palindromic(row: list[int]) -> bool:
    return row == row[::-1]


def analyze_report(h, *, seed: int, J=None, use_gkm: bool = False, cache_dir=None, force: bool = False) -> dict:
    """Assemble the full analysis of one Hessenberg function.

    The violations list collects every irreducible appearing with nonzero
    total multiplicity whose conjugate is not dominated by lambda_H; a
    correct convention leaves it empty.
    """
    n = len(h)
    mult = _mult_payload(h, seed, cache_dir, force)
    lambda_h = _lambda_h_payload(h, seed, cache_dir)
    lam_H = tuple(int(p) for p in lambda_h.split(","))

    violations = []
    allowed = []
    for key_str in sorted(mult["mult"], reverse=True):
        lam = _parse_compact_key(key_str)
        row = mult["mult"][key_str]
        if dominance_leq(conjugate(lam), lam_H):
            allowed.append(_pstr(lam))
        elif any(row):
            violations.append(
                {
                    "type": "support",
                    "h": hessenberg_str(h),
                    "lambda": _pstr(lam),
                    "lambda_H": lambda_h,
                    "total_multiplicity": sum(row),
                }
            )

    J_list = [J] if J is not None else all_parabolic_subsets(n)
    regular = {}
    for Jset in J_list:
        row = regular_betti(h, Jset)
        regular[_jstr(Jset)] = {"betti": row, "palindromic": _is_palindromic(row)}
        if not _is_palindromic(row):
            violations.append(
                {"type": "palindromic", "h": hessenberg_str(h), "J": _jstr(Jset), "betti": row}
            )

    report = {
        "command": "analyze",
        "version": __version__,
        "seed": seed,
        "n": n,
        "h": hessenberg_str(h),
        "l": mult["l"],
        "betti": mult["betti"],
        "mult": mult["mult"],
        "lambda_H": lambda_h,
        "allowed": allowed,
        "regular": regular,
        "violations": violations,
    }

    if use_gkm:
        key = _key("gkm-morse", h, seed)
        payload = cache_fetch(cache_dir, key)
        if payload is None:
            payload = {"morse_betti": morse_betti(build_gkm(h, seed=seed))}
            cache_store(cache_dir, key, payload)
        agrees = payload["morse_betti"] == mult["betti"]
        report["gkm"] = {"morse_betti": payload["morse_betti"], "agrees": agrees}
        if not agrees:
            violations.append(
                {
                    "type": "gkm-betti",
                    "h": hessenberg_str(h),
                    "morse": payload["morse_betti"],
                    "character": mult["betti"],
                }
            )
    return report


# --- verify -----------------------------------------------------------------

def _verify_one(h, *, seed: int, gkm_max_n: int, control: bool) -> dict:
    """Per-function worker for the sweep; must stay picklable for --jobs."""
    from .springer import support_violations

    n = len(h)
    out: dict = {"h": hessenberg_str(h), "violations": []}
    for witness in support_violations(h, drop_conjugate=control, seed=seed):
        out["violations"].append(
            {
                "type": "support",
                "h": hessenberg_str(h),
                "lambda": _pstr(witness["lam"]),
                "tested": _pstr(witness["tested"]),
                "lambda_H": _pstr(witness["lambda_H"]),
                "total_multiplicity": witness["total_multiplicity"],
            }
        )
    for J in all_parabolic_subsets(n):
        row = regular_betti(h, J)
        if not _is_palindromic(row):
            out["violations"].append(
                {"type": "palindromic", "h": hessenberg_str(h), "J": _jstr(J), "betti": row}
            )
    if is_indecomposable(h):
        row = regular_betti(h, ())
        if row[0] != 1 or row[-1] != 1:
            out["violations"].append(
                {"type": "boundary", "h": hessenberg_str(h), "betti": row}
            )
    if n <= gkm_max_n:
        morse = morse_betti(build_gkm(h, seed=seed))
        character = regular_betti(h, ())
        if morse != character:
            out["violations"].append(
                {
                    "type": "gkm-betti",
                    "h": hessenberg_str(h),
                    "morse": morse,
                    "character": character,
                }
            )
        out["gkm_checked"] = True
    else:
        out["gkm_checked"] = False
    return out


def verify_report(
    n: int,
    *,
    seed: int,
    indecomposable_only: bool = False,
    gkm_max_n: int = DEFAULT_GKM_MAX_N,
    jobs: int = 1,
    control: bool = False,
) -> dict:
    functions = enumerate_hessenberg(n, indecomposable_only)
    worker = partial(_verify_one, seed=seed, gkm_max_n=min(gkm_max_n, GRAPH_MAX_N), control=control)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, functions))
    else:
        results = [worker(h) for h in functions]
    # deterministic fold: enumerate_hessenberg is lex-sorted and map preserves order
    violations = [v for res in results for v in res["violations"]]
    report = {
        "command": "verify",
        "version": __version__,
        "seed": seed,
        "n": n,
        "indecomposable_only": indecomposable_only,
        "gkm_max_n": min(gkm_max_n, GRAPH_MAX_N),
        "functions": len(functions),
        "gkm_checked": sum(1 for res in results if res["gkm_checked"]),
        "violations": violations,
        "convention_control": control,
    }
    if control:
        report["control_expected_violation_found"] = any(
            v["type"] == "support" for v in violations
        )
    return report


# --- kahler -----------------------------------------------------------------

def kahler_cli_report(h, J, lam, *, seed: int, cache_dir=None) -> dict:
    key = _key("gkm-kahler", h, seed, J)
    if lam is not None:
        key["lambda"] = _pstr(lam)
    payload = cache_fetch(cache_dir, key)
    if payload is None:
        g = build_gkm(h, seed=seed)
        payload = kahler_report(g, J, lam)
        # pairing determinants for the audit trail
        for k_str, entry in payload["poincare"].items():
            if entry["nondegenerate"]:
                from .gkm import poincare_pairing

                entry["det"] = str(det_exact(poincare_pairing(g, int(k_str), J)))
        payload = _sanitize(payload)
        cache_store(cache_dir, key, payload)
    report = dict(payload)
    report.update(
        {
            "command": "kahler",
            "version": __version__,
            "seed": seed,
            "n": len(h),
            "h": hessenberg_str(h),
            "J": _jstr(J),
            "lambda": ",".join(str(x) for x in payload["lambda"]),
        }
    )
    return report


# --- rendering ---------------------------------------------------------------

def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(_sanitize(report))
    if fmt == "csv":
        return _render_csv(report)
    return _render_table(report)


def _render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cmd = report["command"]
    if cmd == "analyze":
        writer.writerow(["row"] + [f"q{k}" for k in range(report["l"] + 1)])
        writer.writerow(["betti"] + report["betti"])
        for key in sorted(report["mult"], reverse=True):
            writer.writerow([key] + report["mult"][key])
        for J, entry in sorted(report["regular"].items()):
            writer.writerow([f"J={J}"] + entry["betti"])
    elif cmd == "verify":
        writer.writerow(["n", "functions", "violations", "gkm_checked"])
        writer.writerow(
            [report["n"], report["functions"], len(report["violations"]), report["gkm_checked"]]
        )
        for v in report["violations"]:
            writer.writerow([v["type"], v.get("h", ""), json.dumps(v, sort_keys=True)])
    else:
        writer.writerow(["degree", "pairing_rank", "pairing_size", "hl_rank", "hl_dim", "hr_definite"])
        for k_str in sorted(report["poincare"], key=int):
            pairing = report["poincare"][k_str]
            hl = report["hard_lefschetz"].get(k_str, {})
            hr = report["hodge_riemann"].get(k_str, {})
            writer.writerow(
                [
                    k_str,
                    pairing.get("rank"),
                    pairing.get("size"),
                    hl.get("rank"),
                    hl.get("dim"),
                    hr.get("definite", ""),
                ]
            )
        writer.writerow(["verdicts", json.dumps(report["verdicts"], sort_keys=True)])
    return buf.getvalue()


def _render_table(report: dict) -> str:
    lines = []
    cmd = report["command"]
    if cmd == "analyze":
        lines.append(f"h = {report['h']}   n = {report['n']}   l = {report['l']}")
        lines.append(f"lambda_H = {report['lambda_H']}")
        lines.append(f"betti    = {report['betti']}")
        lines.append("multiplicities:")
        for key in sorted(report["mult"], reverse=True):
            lines.append(f"  {key:>10}  {report['mult'][key]}")
        lines.append("regular Betti by J:")
        for J, entry in sorted(report["regular"].items()):
            tag = "palindromic" if entry["palindromic"] else "NOT PALINDROMIC"
            lines.append(f"  J=({J})  {entry['betti']}  {tag}")
        if "gkm" in report:
            lines.append(f"gkm morse betti = {report['gkm']['morse_betti']}  agrees = {report['gkm']['agrees']}")
        lines.append(f"violations: {len(report['violations'])}")
    elif cmd == "verify":
        lines.append(
            f"n = {report['n']}   functions = {report['functions']}   "
            f"violations = {len(report['violations'])}   gkm checked = {report['gkm_checked']}"
        )
        for v in report["violations"]:
            lines.append(f"  VIOLATION {json.dumps(v, sort_keys=True)}")
        if report.get("convention_control"):
            lines.append(
                f"control run: expected violation found = {report['control_expected_violation_found']}"
            )
    else:
        lines.append(f"h = {report['h']}   J = ({report['J']})   lambda = {report.get('lambda', 'default')}")
        lines.append(f"invariant betti = {report['invariant_betti']}")
        for k_str in sorted(report["poincare"], key=int):
            pairing = report["poincare"][k_str]
            lines.append(
                f"  degree {k_str}: pairing rank {pairing['rank']}/{pairing['size']}"
                + (f" det {pairing['det']}" if "det" in pairing else "")
            )
        for k_str in sorted(report["hard_lefschetz"], key=int):
            hl = report["hard_lefschetz"][k_str]
            lines.append(
                f"  HL from degree {k_str}: omega^{hl['power']} rank {hl['rank']}/{hl['dim']}"
            )
        for k_str in sorted(report["hodge_riemann"], key=int):
            hr = report["hodge_riemann"][k_str]
            lines.append(
                f"  HR at degree {k_str}: dim {hr['dim_primitive']} sign {hr['sign']} "
                f"signature {tuple(hr['signature'])} definite {hr['definite']}"
            )
        lines.append(f"verdicts: {json.dumps(report['verdicts'], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- entry point --------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hesslab",
        description="Exact graded characters, Betti numbers, and Kahler-package checks "
        "for regular Hessenberg spaces in type A.",
    )
    parser.add_argument("--version", action="version", version=f"hesslab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", default=None, help="write the report to this file")
    common.add_argument("--format", choices=["json", "csv", "table"], default="json")
    common.add_argument("--cache-dir", default=None, help=f"cache directory (or ${CACHE_ENV})")
    common.add_argument("--force", action="store_true", help="override cost guards")
    common.add_argument("--timing", action="store_true", help="include wall-clock timing")

    p_an = sub.add_parser("analyze", parents=[common], help="full report for one Hessenberg function")
    p_an.add_argument("--h", required=True, type=_parse_h, metavar="H", dest="h")
    p_an.add_argument("--J", type=_parse_J, default=None, help='simple reflections, e.g. "1,2" (default: all subsets)')
    p_an.add_argument("--gkm", action="store_true", help="cross-check Betti numbers on the moment graph")

    p_ve = sub.add_parser("verify", parents=[common], help="sweep all Hessenberg functions of size n")
    p_ve.add_argument("--n", required=True, type=int)
    p_ve.add_argument("--indecomposable", action="store_true")
    p_ve.add_argument("--gkm-max-n", type=int, default=DEFAULT_GKM_MAX_N)
    p_ve.add_argument("--jobs", type=int, default=1)
    p_ve.add_argument(
        "--convention-control",
        action="store_true",
        help="drop the conjugation in the support criterion; must report a violation",
    )

    p_ka = sub.add_parser("kahler", parents=[common], help="duality / Lefschetz / signed-form checks")
    p_ka.add_argument("--h", required=True, type=_parse_h, metavar="H", dest="h")
    p_ka.add_argument("--J", type=_parse_J, default=())
    p_ka.add_argument("--lambda", type=_parse_lambda, default=None, dest="lam")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    cache_dir = _cache_dir(args)
    try:
        if args.command == "analyze":
            if args.J is not None and any(j > len(args.h) - 1 for j in args.J):
                parser.error(f"J entries must be <= n-1 = {len(args.h) - 1}")
            report = analyze_report(
                args.h,
                seed=args.seed,
                J=args.J,
                use_gkm=args.gkm,
                cache_dir=cache_dir,
                force=args.force,
            )
            failed = bool(report["violations"])
        elif args.command == "verify":
            limit = VERIFY_FORCE_MAX_N if args.force else VERIFY_MAX_N
            if not 2 <= args.n <= limit:
                parser.error(f"need 2 <= n <= {limit} (got n = {args.n})")
            report = verify_report(
                args.n,
                seed=args.seed,
                indecomposable_only=args.indecomposable,
                gkm_max_n=args.gkm_max_n,
                jobs=max(1, args.jobs),
                control=args.convention_control,
            )
            if args.convention_control:
                failed = not report["control_expected_violation_found"]
            else:
                failed = bool(report["violations"])
        else:
            if len(args.h) > RING_MAX_N:
                parser.error(f"kahler checks support n <= {RING_MAX_N}")
            if any(j > len(args.h) - 1 for j in args.J):
                parser.error(f"J entries must be <= n-1 = {len(args.h) - 1}")
            if args.lam is not None:
                if len(args.lam) != len(args.h):
                    parser.error(f"lambda must have n = {len(args.h)} entries")
                if any(a <= b for a, b in zip(args.lam, args.lam[1:])):
                    parser.error(f"lambda must be strictly decreasing, got {args.lam}")
            report = kahler_cli_report(args.h, args.J, args.lam, seed=args.seed, cache_dir=cache_dir)
            failed = not report["verdicts"]["all"]
    except TheoremViolation as exc:
        witness = {"error": "theorem-violation", "detail": str(exc), "witness": _sanitize(exc.witness)}
        sys.stdout.write(canonical_json(witness))
        return 3
    except CostGuardError as exc:
        print(f"hesslab: {exc}", file=sys.stderr)
        return 2
    except HesslabError as exc:
        print(f"hesslab: {exc}", file=sys.stderr)
        return 1

    if args.timing:
        report["timing"] = {"seconds": round(time.monotonic() - started, 3)}
    _emit(render(report, args.format), args.out)
    return 3 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
