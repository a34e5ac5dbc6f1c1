"""
Command-line interface.

    bruhat-poincare poincare 4231 --hvec 12,2,-1,-2
    bruhat-poincare retraction 1324 4231 --search
    bruhat-poincare verify --s4
    bruhat-poincare tables --out golden/

Exit status: 0 success, 1 usage or input error, 2 when a mathematical
hypothesis fails on the input (no retraction sequence, etc.).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bruhat_graph import edge_set
from .errors import HypothesisViolated, NonGenericHeight, SizeGuardError
from .invariants import edge_set_checks, interval_pairs, polytope_checks
from .permutations import MAX_INTERVAL_N, Permutation, all_permutations, bruhat_leq, interval
from .poincare import a_polynomial
from .polytope import (
    LatticePolytope, bip_polytope, convex_hull, load_polytope, moment_vertex, polytope_to_json,
)
from .retraction import (
    default_height, h_retraction, poincare_from_retraction, search_retraction,
    sequence_to_json, smooth_step_certificate,
)

SCHEMA = "bruhat-poincare.report/1"
HULL_MAX_N = 6
TABLE_HVEC = (12, 2, -1, -2)
EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2


def _parse_hvec(text: str | None, n: int) -> tuple[int, ...]:
    if text is None:
        return default_height(n)
    vec = tuple(int(x) for x in text.split(","))
    if len(vec) != n:
        raise ValueError(f"--hvec needs {n} entries, got {len(vec)}")
    return vec


def _report(command: str, inputs: dict, results: dict, verification: list | None = None) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "inputs": inputs,
        "results": results,
        "verification": verification or [],
    }


def poincare_table(w: Permutation, a) -> list[dict]:
    """Rows (u, mu(u), h(mu(u)), a_w(u)) ordered by height."""
    rows = []
    for u in interval(Permutation.identity(w.n), w):
        mu = moment_vertex(u)
        rows.append({
            "u": str(u),
            "mu": list(mu),
            "h": sum(x * y for x, y in zip(a, mu)),
            "a": len(edge_set(u, w).plus),
        })
    rows.sort(key=lambda r: (r["h"], r["u"]))
    return rows


def cmd_poincare(args) -> tuple[dict, int]:
    w = Permutation.parse(args.w)
    max_n = args.max_n or MAX_INTERVAL_N
    a = _parse_hvec(args.hvec, w.n)
    if any(x <= y for x, y in zip(a, a[1:])):
        raise ValueError("--hvec must be strictly decreasing")
    A = a_polynomial(w, max_n=max_n)
    results = {
        "A": A.coeffs_list(),
        "A_str": str(A),
        "poincare": A.stretch(2).coeffs_list(),
        "poincare_str": str(A.stretch(2)),
        "table": poincare_table(w, a),
    }
    return _report("poincare", {"w": str(w), "hvec": list(a)}, results), EXIT_OK


def _label(P: LatticePolytope, vi: int) -> str:
    return str(Permutation(P.vertices[vi]).inverse())


def cmd_retraction(args) -> tuple[dict, int]:
    v, w = Permutation.parse(args.v), Permutation.parse(args.w)
    if not bruhat_leq(v, w):
        raise ValueError(f"{v} is not below {w} in Bruhat order")
    max_n = args.max_n or HULL_MAX_N
    P = bip_polytope(v, w, max_ambient=max_n)
    a = _parse_hvec(args.hvec, w.n)
    inputs = {"v": str(v), "w": str(w), "hvec": list(a), "search": bool(args.search)}
    if args.search:
        rs = search_retraction(P)
        if rs is None:
            results = {"exists": False, "message": "no retraction sequence exists",
                       "nvertices": len(P.vertices)}
            return _report("retraction", inputs, results), EXIT_HYPOTHESIS
    else:
        try:
            rs = h_retraction(P, a)
        except HypothesisViolated as exc:
            results = {"exists": None, "message": f"hypothesis violated: {exc}"}
            return _report("retraction", inputs, results), EXIT_HYPOTHESIS
    seq = sequence_to_json(P, rs, a)
    for step, s in zip(seq["steps"], rs.steps):
        step["u"] = _label(P, s.chosen_vertex)
    poly = poincare_from_retraction(rs)
    results = {
        "exists": True,
        "sequence": seq,
        "poincare": poly.coeffs_list(),
        "poincare_str": str(poly),
        "smooth_steps": smooth_step_certificate(P, rs),
    }
    return _report("retraction", inputs, results), EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    max_n = args.max_n or HULL_MAX_N
    if args.polytope:
        P = load_polytope(args.polytope, max_ambient=max_n)
        inputs = {"polytope": Path(args.polytope).name}
        checks = [{"name": "Euler relation", "passed": P.euler_ok()}]
        results = {"fvector": list(P.fvector), "dim": P.dim}
        rs = None
        if args.hvec:
            a = _parse_hvec(args.hvec, P.ambient_dim)
            inputs["hvec"] = list(a)
            try:
                rs = h_retraction(P, a)
            except (HypothesisViolated, NonGenericHeight) as exc:
                results["h_retraction"] = f"failed: {exc}"
        if rs is None:
            rs = search_retraction(P)
        results["retraction_found"] = rs is not None
        if rs is not None:
            results["sequence"] = sequence_to_json(P, rs)
            results["poincare"] = poincare_from_retraction(rs).coeffs_list()
            results["poincare_str"] = str(poincare_from_retraction(rs))
        checks.append({"name": "retraction sequence exists", "passed": rs is not None})
        ok = all(c["passed"] for c in checks)
        code = EXIT_OK if ok else EXIT_HYPOTHESIS
        return _report("verify", inputs, results, checks), code

    if args.s4:
        ws = all_permutations(4)
        inputs = {"scope": "S4"}
    elif args.w:
        ws = [Permutation.parse(args.w)]
        inputs = {"scope": "w", "w": args.w}
    else:
        raise ValueError("verify needs one of --s4, --w, --polytope")
    checks = edge_set_checks(interval_pairs(ws)) + polytope_checks(ws, max_n=max_n)
    verification = [c.to_json() for c in checks]
    ok = all(c.passed for c in checks)
    results = {"all_passed": ok, "instances": len(ws)}
    return _report("verify", inputs, results, verification), EXIT_OK if ok else EXIT_HYPOTHESIS


PYRAMID = [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, 0, -1), (0, 0, 1)]
PYRAMID_HVEC = (-2, -1, 3)


def golden_tables() -> dict[str, dict]:
    """Machine-readable versions of the worked retraction tables."""
    out = {}
    P = convex_hull(PYRAMID)
    rs = h_retraction(P, PYRAMID_HVEC)
    out["pyramid"] = {"hvec": list(PYRAMID_HVEC), "polytope": polytope_to_json(P),
                      "sequence": sequence_to_json(P, rs, PYRAMID_HVEC)}
    for word in ("4231", "3412"):
        w = Permutation.parse(word)
        e = Permutation.identity(4)
        Q = bip_polytope(e, w)
        rs = h_retraction(Q, TABLE_HVEC)
        seq = sequence_to_json(Q, rs, TABLE_HVEC)
        for step, s in zip(seq["steps"], rs.steps):
            step["u"] = _label(Q, s.chosen_vertex)
        out[f"Q_id_{word}"] = {
            "w": word,
            "hvec": list(TABLE_HVEC),
            "table": poincare_table(w, TABLE_HVEC),
            "sequence": seq,
        }
    return out


def cmd_tables(args) -> tuple[dict, int]:
    tables = golden_tables()
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, data in tables.items():
            (outdir / f"{name}.json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
        return _report("tables", {"out": str(outdir)}, {"written": sorted(tables)}), EXIT_OK
    return _report("tables", {}, tables), EXIT_OK


def _text(report: dict) -> str:
    res = report["results"]
    lines = [f"[{report['command']}] " + " ".join(f"{k}={v}" for k, v in report["inputs"].items())]
    if "table" in res:
        lines.append(f"{'u':>8}  {'mu(u)':>14}  {'h':>5}  a_w(u)")
        for r in res["table"]:
            lines.append(f"{r['u']:>8}  {str(tuple(r['mu'])):>14}  {r['h']:>5}  {r['a']}")
        lines.append(f"A_w(t) = {res['A_str']}")
    if "sequence" in res:
        for k, s in enumerate(res["sequence"]["steps"], start=1):
            label = f" u={s['u']}" if "u" in s else ""
            h = f" h={s['h']}" if "h" in s else ""
            lines.append(f"{k:>3}. vertex {tuple(s['vertex'])}{label}{h} dim={s['step_dim']}")
    if "message" in res:
        lines.append(res["message"])
    if "poincare_str" in res:
        lines.append(f"P(t) = {res['poincare_str']}")
    for c in report["verification"]:
        mark = "PASS" if c["passed"] else "FAIL"
        extra = f" ({c['checked']} checked)" if "checked" in c else ""
        lines.append(f"{mark}  {c['name']}{extra}")
        for ex in c.get("counterexamples", []):
            lines.append(f"      counterexample: {ex}")
    if "written" in res:
        lines.append("wrote " + ", ".join(res["written"]))
    return "\n".join(lines) + "\n"


def _csv(report: dict) -> str:
    res = report["results"]
    buf = io.StringIO()
    if "table" in res:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["u", "mu", "h", "a_w"])
        for r in res["table"]:
            writer.writerow([r["u"], " ".join(map(str, r["mu"])), r["h"], r["a"]])
    elif "sequence" in res:
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["step", "vertex", "u", "h", "dim"])
        for k, s in enumerate(res["sequence"]["steps"], start=1):
            writer.writerow([k, " ".join(map(str, s["vertex"])), s.get("u", ""), s.get("h", ""), s["step_dim"]])
    else:
        raise ValueError("csv output only covers per-vertex tables")
    return buf.getvalue()


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return _csv(report)
    return _text(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bruhat-poincare", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--max-n", type=int, default=None,
                        help="size guard (default 6 for hull-backed commands, 8 otherwise)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poincare", parents=[common], help="A_w(t), P(Y_w, t) and the per-vertex table")
    p.add_argument("w")
    p.add_argument("--hvec", help="comma-separated strictly decreasing height vector")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("retraction", parents=[common], help="retraction sequence of Q_{v^-1, w^-1}")
    p.add_argument("v")
    p.add_argument("w")
    p.add_argument("--hvec", help="comma-separated height vector")
    p.add_argument("--search", action="store_true", help="exhaustive search instead of the height construction")
    p.set_defaults(func=cmd_retraction)

    p = sub.add_parser("verify", parents=[common], help="run the cross-check suites")
    scope = p.add_mutually_exclusive_group(required=True)
    scope.add_argument("--s4", action="store_true")
    scope.add_argument("--w")
    scope.add_argument("--polytope")
    p.add_argument("--hvec")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", parents=[common], help="regenerate the worked tables as JSON")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report, code = args.func(args)
        report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
        text = render(report, args.format)
    except HypothesisViolated as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (ValueError, SizeGuardError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    # for "tables", --out is the golden directory and the summary goes to stdout
    if args.out and args.command != "tables":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
