"""Command-line front end: ``wittkit <command> [flags]``.

Every command emits one JSON record (or CSV rows for sweeps) and exits 0
only when all of its internal checks pass.  Failed checks are listed under
``"failures"`` in the record and echoed to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import cyclicbar, divisor, kgroups
from .arith import as_prime, prime_to_p

JSON_SAFE = 2**53
SWEEP_KINDS = ("length", "crosscheck", "map", "bar")


class UsageError(ValueError):
    pass


def json_safe(obj):
    """Integers beyond 2^53 become decimal strings; containers are walked."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(int(obj)) if abs(obj) > JSON_SAFE else int(obj)
    if isinstance(obj, dict):
        return {str(k): json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(v) for v in obj]
    return obj


def _group(G) -> dict:
    return G.to_dict()


def _finish(record: dict, checks: dict[str, bool]) -> dict:
    record["checks"] = checks
    record["failures"] = sorted(k for k, ok in checks.items() if not ok)
    return record


# --- commands ---------------------------------------------------------------------


def cmd_kgroup(p: int, m: int, q: int) -> dict:
    if m < 1:
        raise UsageError("-m must be >= 1")
    G = kgroups.relative_k(p, m, q)
    i = kgroups._odd_degree(q)
    expected = 0 if i is None else (m - 1) * (i + 1)
    checks = {
        "length_identity": G.length == expected,
        "smith_form_agrees": G.isomorphic(kgroups.relative_k_snf(p, m, q)),
    }
    return _finish({"p": p, "m": m, "q": q, "group": _group(G), "text": str(G)}, checks)


def cmd_map(p: int, m: int, n: int, q: int) -> dict:
    if not m > n >= 1:
        raise UsageError("need m > n >= 1")
    desc = kgroups.transfer_map(p, m, n, q)
    ker, coker = kgroups.ker_coker(desc)
    zero = kgroups.is_zero_map(p, m, n, q)
    i = kgroups._odd_degree(q)
    checks = {"ker_coker_lengths": ker.length - coker.length == (0 if i is None else (m - n) * (i + 1))}
    record = {
        "p": p,
        "m": m,
        "n": n,
        "q": q,
        "group": _group(desc.hom.src),
        "target": _group(desc.hom.tgt),
        "map": {"factors": desc.to_dict()["factors"]},
        "ker": _group(ker),
        "coker": _group(coker),
        "zero": zero,
    }
    if i is not None:
        kills = divisor.kills_module(p, m, n, i)
        record["kills_module"] = kills
        checks["kills_implies_zero"] = zero or not kills
        checks["descends"] = kgroups.middle_map_kills_V(p, m, n, i)
    return _finish(record, checks)


def cmd_thresholds(p: int, n: int, m: int | None = None) -> dict:
    if n <= 1:
        raise UsageError("thresholds need n > 1")
    record: dict = {"p": p, "n": n}
    checks: dict[str, bool] = {}
    if m is None:
        t = kgroups.m0(p, n)
        record["m0"] = {"value": t.value, **t.certificate}
        checks["m0_certificate"] = all(
            divisor.kills_module(p, mm, n, i) for mm in range(t.value, t.value + 6) for i in range(1, 21)
        )
        return _finish(record, checks)
    if m <= n:
        raise UsageError("need m > n")
    record["m"] = m
    t = kgroups.i0(p, m, n)
    record["i0"] = {"value": t.value, **t.certificate}
    checks["i0_holds_after"] = all(divisor.kills_module(p, m, n, i) for i in range(t.value, t.value + 11))
    checks["i0_fails_before"] = t.value == 0 or not divisor.kills_module(p, m, n, t.value - 1)
    checks["i0_lower_bound"] = t.value >= (p - 1) // m
    q = kgroups.q0(p, m, n)
    record["q0"] = {"value": q.value, **q.certificate}
    checks["q0_zero_after"] = all(kgroups.is_zero_map(p, m, n, qq) for qq in range(q.value, q.value + 21))
    checks["q0_minimal"] = q.value < 3 or not kgroups.is_zero_map(p, m, n, q.value - 2)
    return _finish(record, checks)


def cmd_divisor(p: int, m: int, n: int, i: int) -> dict:
    if not m > n >= 1 or i < 0:
        raise UsageError("need m > n >= 1 and i >= 0")
    alpha = divisor.alpha_divisor(p, m, n, i)
    W = divisor.div_witt(n * (i + 1), p)
    record = {
        "p": p,
        "m": m,
        "n": n,
        "i": i,
        "alpha": alpha.to_dict(),
        "div_witt": W.to_dict(),
        "geq": divisor.geq(alpha, W),
        "kills_module": divisor.kills_module(p, m, n, i),
    }
    checks = {"effective": alpha.is_effective(), "div_witt_degree": W.degree() == n * (i + 1)}
    return _finish(record, checks)


def cmd_bar(m: int, i: int, n: int | None = None) -> dict:
    if m < 2 or i < 1:
        raise UsageError("need m >= 2 and i >= 1")
    record = cyclicbar.bar_record(m, i)
    checks = {"match": record["match"]}
    if n is not None:
        f = cyclicbar.induced_map(m, n, i)
        record["induced"] = {
            "n": n,
            "homology": [
                {"deg": k, "matrix": M, "source": f.source_moduli[k], "target": f.target_moduli[k]}
                for k, M in sorted(f.homology_matrices.items())
                if f.source_moduli[k] or f.target_moduli[k]
            ],
        }
    return _finish(record, checks)


# --- sweeps -----------------------------------------------------------------------


def _sweep_cell(kind: str, cell: tuple) -> list[dict]:
    if kind == "length":
        p, m, i = cell
        G = kgroups.relative_k(p, m, 2 * i + 1)
        ok = G.length == (m - 1) * (i + 1)
        return [{"p": p, "m": m, "i": i, "q": 2 * i + 1, "length": G.length, "exponents": " ".join(map(str, G.invariants())), "ok": ok}]
    if kind == "crosscheck":
        p, m, n, i = cell
        rows = []
        for j in prime_to_p(p, m * (i + 1)):
            v = kgroups.valuation_cross_check(p, m, n, i, j)
            rows.append({"p": p, "m": m, "n": n, "i": i, "j": j, "v1": v[0], "v2": v[1], "v3": v[2], "ok": v[0] == v[1] == v[2]})
        return rows
    if kind == "map":
        p, m, n, i = cell
        zero = kgroups.is_zero_map(p, m, n, 2 * i + 1)
        kills = divisor.kills_module(p, m, n, i)
        return [{"p": p, "m": m, "n": n, "i": i, "q": 2 * i + 1, "zero": zero, "kills_module": kills, "ok": zero or not kills}]
    if kind == "bar":
        m, i = cell
        r = cyclicbar.bar_record(m, i)
        return [{"m": m, "i": i, "homology": json.dumps(r["homology"]), "ok": r["match"]}]
    raise UsageError(f"unknown sweep kind {kind}")


def _cells(kind: str, ps, ms, ns, is_) -> list[tuple]:
    if kind == "length":
        return [(p, m, i) for p in ps for m in ms for i in is_ if m >= 1]
    if kind == "bar":
        return [(m, i) for m in ms for i in is_ if m >= 2 and i >= 1]
    return [(p, m, n, i) for p in ps for m in ms for n in ns for i in is_ if m > n >= 1]


def cmd_sweep(kind: str, ps, ms, ns, is_, jobs: int = 1) -> list[dict]:
    cells = _cells(kind, ps, ms, ns, is_)
    if not cells:
        raise UsageError("sweep range is empty")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_sweep_cell, [kind] * len(cells), cells))
    else:
        chunks = [_sweep_cell(kind, c) for c in cells]
    rows = [r for chunk in chunks for r in chunk]
    keys = [k for k in ("p", "m", "n", "i", "j") if rows and k in rows[0]]
    return sorted(rows, key=lambda r: tuple(r[k] for k in keys))


# --- selftest ---------------------------------------------------------------------


def cmd_selftest() -> dict:
    checks = {
        "relative_k(2,4,1)": kgroups.relative_k(2, 4, 1).invariants() == (2, 1),
        "relative_k(2,2,3)": kgroups.relative_k(2, 2, 3).invariants() == (1, 1),
        "k1_oracle(2,4)": kgroups.k1_units_oracle(2, 4).invariants() == (2, 1),
        "valuation(2,3,1,2,1,4)": kgroups.valuation_cross_check(2, 3, 1, 2, 1, 4) == (2, 2, 2),
        "alpha(2,3,1,2)": divisor.alpha_divisor(2, 3, 1, 2).ord(1) == 2,
        "bar(2,2)": cyclicbar.bar_record(2, 2)["match"],
        "bar(3,2)": cyclicbar.bar_record(3, 2)["match"],
        "kills(7,3,2,1) false": not divisor.kills_module(7, 3, 2, 1),
    }
    for p in (2, 3):
        for n in range(2, 6):
            checks[f"k1_oracle({p},{n})"] = kgroups.relative_k(p, n, 1).isomorphic(kgroups.k1_units_oracle(p, n))
    return _finish({"command": "selftest"}, checks)


# --- argument handling ---------------------------------------------------------------


def parse_range(text: str) -> list[int]:
    """'2,3', '1-10' or a mix such as '2,5-7'."""
    out: set[int] = set()
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        if sep and lo:
            a, b = int(lo), int(hi)
            if b < a:
                raise UsageError(f"empty range {part}")
            out.update(range(a, b + 1))
        else:
            out.add(int(part))
    if not out:
        raise UsageError("empty range")
    return sorted(out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wittkit", description="Witt vectors, relative K-groups of F_p[x]/(x^m) and cyclic bar homology")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", type=Path, default=None, help="output file (default: stdout, or $WITTKIT_OUT/<command>.<format>)")
    sub = parser.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kgroup", parents=[common], help="K_q(F_p[x]/(x^m), (x))")
    k.add_argument("-p", type=int, required=True)
    k.add_argument("-m", type=int, required=True)
    k.add_argument("-q", type=int, required=True)

    mp = sub.add_parser("map", parents=[common], help="the map induced by F_p[x]/(x^m) -> F_p[x]/(x^n)")
    for flag in ("-p", "-m", "-n", "-q"):
        mp.add_argument(flag, type=int, required=True)

    t = sub.add_parser("thresholds", parents=[common], help="i0 and q0 (with -m) or m0 (without)")
    t.add_argument("-p", type=int, required=True)
    t.add_argument("-n", type=int, required=True)
    t.add_argument("-m", type=int, default=None)

    d = sub.add_parser("divisor", parents=[common], help="alpha divisor against div W_{n(i+1)}")
    for flag in ("-p", "-m", "-n", "-i"):
        d.add_argument(flag, type=int, required=True)

    b = sub.add_parser("bar", parents=[common], help="homology of the weight-i cyclic bar construction of Π_m")
    b.add_argument("-m", type=int, required=True)
    b.add_argument("-i", type=int, required=True)
    b.add_argument("-n", type=int, default=None, help="also compute the map induced by Π_m -> Π_n")

    s = sub.add_parser("sweep", parents=[common], help="grid evaluation")
    s.add_argument("kind", choices=SWEEP_KINDS)
    s.add_argument("-p", default="2,3")
    s.add_argument("-m", default="1-6")
    s.add_argument("-n", default="1-5")
    s.add_argument("-i", default="0-4")
    s.add_argument("--jobs", type=int, default=1)

    st = sub.add_parser("selftest", parents=[common], help="quick known-value checks")
    st.add_argument("--umax", type=int, default=None, help=argparse.SUPPRESS)

    for sp in (k, mp, t, d):
        sp.add_argument("--umax", type=int, default=None, help="reject inputs needing stabilization beyond p^umax")
    return parser


def _render(payload, fmt: str) -> str:
    if fmt == "json":
        if isinstance(payload, list):
            return "".join(json.dumps(json_safe(r), sort_keys=True) + "\n" for r in payload)
        return json.dumps(json_safe(payload), sort_keys=True, ensure_ascii=False, indent=2) + "\n"
    rows = payload if isinstance(payload, list) else [_flatten(payload)]
    buf = io.StringIO()
    fields = list(rows[0]) if rows else []
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: json_safe(v) for k, v in r.items()})
    return buf.getvalue()


def _flatten(record: dict) -> dict:
    return {k: (json.dumps(json_safe(v), sort_keys=True) if isinstance(v, (dict, list)) else v) for k, v in record.items()}


def _check_umax(args) -> None:
    umax = getattr(args, "umax", None)
    if umax is None:
        return
    p = as_prime(args.p)
    m = max(x for x in (getattr(args, "m", None), getattr(args, "n", None), 1) if x is not None)
    i = getattr(args, "i", None)
    if i is None:
        q = getattr(args, "q", None)
        i = max(0, (q - 1) // 2) if q is not None else 0
    if p**umax <= m * (i + 1):
        raise UsageError(f"p^umax = {p**umax} does not exceed m(i+1) = {m * (i + 1)}")


def run(args) -> tuple[object, list[str]]:
    _check_umax(args)
    c = args.command
    if c == "kgroup":
        rec = cmd_kgroup(as_prime(args.p), args.m, args.q)
    elif c == "map":
        rec = cmd_map(as_prime(args.p), args.m, args.n, args.q)
    elif c == "thresholds":
        rec = cmd_thresholds(as_prime(args.p), args.n, args.m)
    elif c == "divisor":
        rec = cmd_divisor(as_prime(args.p), args.m, args.n, args.i)
    elif c == "bar":
        rec = cmd_bar(args.m, args.i, args.n)
    elif c == "sweep":
        ps = [as_prime(p) for p in parse_range(args.p)]
        rows = cmd_sweep(args.kind, ps, parse_range(args.m), parse_range(args.n), parse_range(args.i), args.jobs)
        failures = [json.dumps(json_safe(r), sort_keys=True) for r in rows if not r["ok"]]
        return rows, failures
    else:
        rec = cmd_selftest()
    return rec, rec["failures"]


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, failures = run(args)
    except (UsageError, ValueError) as exc:
        print(f"wittkit: error: {exc}", file=sys.stderr)
        return 2
    text = _render(payload, args.format)
    out = args.out
    if out is None and os.environ.get("WITTKIT_OUT"):
        out = Path(os.environ["WITTKIT_OUT"]) / f"{args.command}.{args.format}"
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
    if failures:
        print(json.dumps({"failures": failures}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
