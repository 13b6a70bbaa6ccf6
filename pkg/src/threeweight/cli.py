"""Command line front end: construct, extend, analyze, designs, selftest, report, weil.

Every command writes its outputs plus a ``<stem>.<command>.manifest.json`` into
``--out``; reruns with the same arguments reproduce identical files.
The exit status is 0 only when every check the command ran passed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, charsums, pipeline
from .codes import CodeError
from .constructions import ConstructionError, build_d_rho, etw_gate, extend_code, quadric_two_weight
from .field import FieldError
from .io import (FileFormatError, distribution_csv, read_code, rows_to_csv, rows_to_markdown,
                 write_code, write_json, write_text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _u_list(text: str) -> Optional[list[int]]:
    return None if text == "all-coprime" else _int_list(text)


def _hex(text: str) -> int:
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex polynomial mask: {text!r}")


class Run:
    """Output directory, format and manifest bookkeeping for one command."""

    def __init__(self, args, stem: str, params: dict):
        self.out = Path(args.out)
        self.fmt = args.format
        self.stem = stem
        self.params = params
        self.outputs: list[str] = []
        self.fields: list[dict] = []
        self.modulus = args.modulus

    def note_fields(self, provenance: dict) -> None:
        """Record every field context mentioned in a (nested) provenance record."""
        if not isinstance(provenance, dict):
            return
        if "field" in provenance and provenance["field"] not in self.fields:
            self.fields.append(provenance["field"])
        self.note_fields(provenance.get("of"))

    def path(self, suffix: str) -> Path:
        p = self.out / f"{self.stem}{suffix}"
        self.outputs.append(p.name)
        return p

    def table(self, kind: str, title: str, rows: list, columns: list, doc: Optional[dict] = None,
              lines: Sequence[str] = ()) -> Path:
        if self.fmt == "json":
            body = dict(doc or {})
            body.setdefault("rows", rows)
            return write_json(self.path(f".{kind}.json"), body)
        if self.fmt == "csv":
            return write_text(self.path(f".{kind}.csv"), rows_to_csv(rows, columns))
        text = f"# {title}\n\n" + "".join(f"{line}\n\n" for line in lines)
        return write_text(self.path(f".{kind}.md"), text + rows_to_markdown(rows, columns))

    def finish(self, command: str, ok: bool) -> int:
        manifest = {
            "artifact_version": __version__, "command": command, "parameters": self.params,
            "modulus_override": None if self.modulus is None else f"{self.modulus:x}",
            "fields": self.fields, "outputs": sorted(self.outputs), "ok": ok,
        }
        write_json(self.out / f"{self.stem}.{command}.manifest.json", manifest)
        return 0 if ok else 1


def _mark(v) -> str:
    return "✓" if v is True else "✗" if v is False else ""


# -- commands --------------------------------------------------------------------------


def _report_rows(rep) -> list:
    rows = [{"kind": "prediction", "tag": i.tag, "name": i.name,
             "predicted": _fmt(i.predicted), "observed": _fmt(i.observed), "ok": i.match}
            for i in rep.items]
    rows += [{"kind": "check", "tag": "", "name": n, "predicted": "", "observed": _fmt(d), "ok": ok}
             for n, ok, d in rep.checks]
    return rows


def _fmt(v) -> str:
    if isinstance(v, (set, frozenset)):
        return "{" + ", ".join(map(str, sorted(v))) + "}"
    if isinstance(v, dict):
        return ", ".join(f"{k}:{c}" for k, c in sorted(v.items()))
    return str(v)


def cmd_construct(args) -> int:
    if args.family == "d-rho":
        stem = f"drho-m{args.m}-u{args.u}-rho{args.rho}"
        run = Run(args, stem, {"family": "d-rho", "m": args.m, "u": args.u, "rho": args.rho})
        ctx = pipeline.field_for(args.m, args.modulus)
        if args.modulus is not None and ctx.modulus != args.modulus:
            raise FieldError(f"--modulus has degree {args.modulus.bit_length() - 1}, need {args.m}")
        rep = build_d_rho(ctx, args.u, args.rho)
    else:
        stem = f"quadric-{args.variant}-k{args.k}"
        run = Run(args, stem, {"family": "quadric", "k": args.k, "variant": args.variant})
        rep = quadric_two_weight(args.k, args.variant, args.modulus)
    code = rep.code
    run.note_fields(code.provenance)
    write_code(run.path(".code.json"), code)
    status = "out of closed-form regime" if not rep.regime else ("all-match" if rep.ok else "MISMATCH")
    if args.family == "quadric":
        status = "two-weight gate predicate holds" if rep.ok else "construction-failed"
    rows = _report_rows(rep)
    run.table("construct", f"Construction {stem}: [{code.n},{code.k}]", rows,
              ["kind", "tag", "name", "predicted", "observed", "ok"],
              doc={"report": rep.to_json(), "status": status, "rows": rows},
              lines=[f"status: {status}", rep.note] if rep.note else [f"status: {status}"])
    print(f"{stem}: [{code.n},{code.k}] {status}")
    return run.finish("construct", rep.ok)


def _stem_of(path: str) -> str:
    name = Path(path).name
    for suffix in (".code.json", ".json"):
        if name.endswith(suffix):
            return name[: -len(suffix)]
    return name


def cmd_extend(args) -> int:
    code = read_code(args.input)
    run = Run(args, _stem_of(args.input) + "-ext", {"input": args.input, "gate": not args.no_gate})
    run.note_fields(code.provenance)
    ok = True
    rows = []
    if args.no_gate:
        ext = extend_code(code)
    else:
        gate = etw_gate(code)
        rows = [{"check": n, "ok": o, "detail": str(d)} for n, o, d in gate.checks]
        ok = gate.ok
        ext = gate.extended if gate.extended is not None else extend_code(code)
    write_code(run.path(".code.json"), ext)
    run.table("gate", f"Extension of [{code.n},{code.k}] to [{ext.n},{ext.k}]", rows,
              ["check", "ok", "detail"], doc={"ok": ok, "rows": rows})
    print(f"[{code.n},{code.k}] -> [{ext.n},{ext.k}] gate {'pass' if ok else 'FAIL'}")
    return run.finish("extend", ok)


def cmd_analyze(args) -> int:
    code = read_code(args.input)
    run = Run(args, _stem_of(args.input), {"input": args.input})
    run.note_fields(code.provenance)
    res = pipeline.analyze(code)
    write_text(run.path(".dist.csv"), distribution_csv(code.weight_distribution()))
    prof = res["three_weight_profile"]
    lines = [
        f"[n, k, d] = [{res['n']}, {res['k']}, {res['d']}]",
        f"P(z) = {res['enumerator']}",
        f"P⊥(z) = {res['dual_enumerator']}  (route: {res['dual_route']})",
        f"projective: {res['projective']}, d⊥ = {res['d_perp']}, A_n = {res['A_n']}, "
        f"palindromic: {res['palindromic']}",
        f"Pless moments: {'pass' if res['pless']['ok'] else 'FAIL ' + str(res['pless']['failed'])}",
        "three-weight profile: " + ("hypotheses fail: " + prof["failed_hypothesis"]
                                    if not prof["applicable"]
                                    else "pass" if prof["ok"] else "FAIL " + prof["first_mismatch"]),
    ]
    run.table("analysis", f"Analysis of [{code.n},{code.k}]", res["table"],
              ["weight", "count", "dual_count"], doc=res, lines=lines)
    for line in lines:
        print(line)
    ok = res["pless"]["ok"] and (prof["ok"] or not prof["applicable"])
    return run.finish("analyze", ok)


def cmd_designs(args) -> int:
    code = read_code(args.input)
    stem = _stem_of(args.input)
    run = Run(args, stem, {"input": args.input, "t": args.t, "weights": args.weights,
                           "dual": args.dual})
    run.note_fields(code.provenance)
    if args.dual == "all":
        dual_rs = list(range(2, code.n // 2))
    elif args.dual:
        dual_rs = _int_list(args.dual)
    else:
        dual_rs = []
    rows, designs = pipeline.design_table(code, args.t, args.weights, dual_rs)
    for name, design in designs.items():
        write_json(run.path(f".{name}.json"), design.to_json())
    ok = all(r["match"] is not False for r in rows)
    shown = [dict(r, match=_mark(r["match"])) for r in rows] if run.fmt == "md" else rows
    run.table("designs", f"Support designs of [{code.n},{code.k}], t={args.t}", shown,
              ["side", "weight", "blocks", "lambda_observed", "lambda_predicted", "match", "status",
               "witness"], doc={"ok": ok, "rows": rows})
    for r in rows:
        print(f"{r['side']:4} w={r['weight']:<5} blocks={r['blocks']:<8} "
              f"lambda={r['lambda_observed']!s:<6} predicted={r['lambda_predicted']:<6} {r['status']}")
    return run.finish("designs", ok)


def cmd_selftest(args) -> int:
    scope = args.scope
    ms = args.m or {"field": [2, 3, 4, 5, 6, 7, 8], "weil": [3, 5, 7, 9],
                    "paper-tables": [5, 7]}[scope]
    run = Run(args, f"selftest-{scope}", {"scope": scope, "m": ms, "u": args.u,
                                           "inject_fault": args.inject_fault})
    if scope == "field":
        checks = pipeline.field_checks(ms, args.modulus, args.inject_fault)
    elif scope == "weil":
        checks = pipeline.weil_checks(ms, args.u, args.modulus, args.inject_fault)
        if args.sweep_csv:
            rows = []
            for m in ms:
                ctx = pipeline.field_for(m, args.modulus)
                for u in (args.u or charsums.coprime_exponents(m)):
                    rows.extend(charsums.weil_sweep(ctx, u, "lines"))
            write_text(run.path(".sweep.csv"), rows_to_csv(rows, SWEEP_COLUMNS))
    else:
        checks = pipeline.table_checks(ms, args.u, args.modulus, args.inject_fault)
    rows = [c.row() for c in checks]
    ok = all(c.ok for c in checks)
    run.table("results", f"Self-test: {scope}", rows, ["check", "result", "detail"],
              doc={"ok": ok, "rows": rows})
    for c in checks:
        print(f"{'PASS' if c.ok else 'FAIL'}  {c.name}  {c.detail}")
    print(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed")
    return run.finish("selftest", ok)


SWEEP_COLUMNS = ["m", "u", "e", "a", "b", "direct", "prediction", "agrees"]


def cmd_weil(args) -> int:
    run = Run(args, f"weil-m{args.m}-u{args.u}", {"m": args.m, "u": args.u, "grid": args.grid})
    ctx = pipeline.field_for(args.m, args.modulus)
    run.fields.append(ctx.to_json())
    if args.grid == "full" and args.m > 10:
        raise ValueError("full (a, b) grid is limited to m <= 10")
    rows = list(charsums.weil_sweep(ctx, args.u, args.grid))
    write_text(run.path(".csv"), rows_to_csv(rows, SWEEP_COLUMNS))
    bad = [r for r in rows if r["agrees"] == "false"]
    print(f"{len(rows)} sums, {len(bad)} disagreements with the closed forms")
    return run.finish("weil", not bad)


def cmd_report(args) -> int:
    ms = args.m or [5, 7, 9]
    run = Run(args, "report-m" + "-".join(map(str, ms)), {"m": ms, "u": args.u})
    code_rows, design_rows = pipeline.family_rows(ms, args.u, args.modulus)
    ok = all(r["matches"] for r in code_rows) and all(r["match"] for r in design_rows)
    code_cols = ["m", "u", "rho", "family", "n", "k", "d", "enumerator", "matches"]
    design_cols = ["m", "u", "rho", "design", "blocks", "lambda_observed", "lambda_predicted", "match"]
    if run.fmt == "json":
        write_json(run.path(".json"), {"ok": ok, "codes": code_rows, "designs": design_rows})
    elif run.fmt == "csv":
        write_text(run.path(".codes.csv"), rows_to_csv(code_rows, code_cols))
        write_text(run.path(".designs.csv"), rows_to_csv(design_rows, design_cols))
    else:
        text = ("# Three-weight codes from defining sets\n\n" + rows_to_markdown(code_rows, code_cols)
                + "\n# Support 2-designs\n\n"
                + rows_to_markdown([dict(r, match=_mark(r["match"])) for r in design_rows], design_cols))
        write_text(run.path(".md"), text)
    for r in code_rows:
        print(f"m={r['m']} u={r['u']} rho={r['rho']}: [{r['n']},{r['k']},{r['d']}] {r['enumerator']}")
    return run.finish("report", ok)


# -- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=argparse.SUPPRESS, help="output directory")
    common.add_argument("--format", choices=["json", "csv", "md"], default=argparse.SUPPRESS)
    common.add_argument("--modulus", type=_hex, default=argparse.SUPPRESS,
                        help="hex mask of the field modulus (applies to fields of its degree)")

    p = argparse.ArgumentParser(prog="threeweight", description=__doc__.splitlines()[0])
    p.add_argument("--out", default="out")
    p.add_argument("--format", choices=["json", "csv", "md"], default="json")
    p.add_argument("--modulus", type=_hex, default=None)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a code and check its parameters")
    csub = c.add_subparsers(dest="family", required=True)
    d = csub.add_parser("d-rho", parents=[common])
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--u", type=int, default=1)
    d.add_argument("--rho", type=int, choices=[0, 1], required=True)
    q = csub.add_parser("quadric", parents=[common])
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--variant", choices=["elliptic", "hyperbolic"], required=True)
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("extend", parents=[common], help="extend a two-weight code by the all-ones word")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--no-gate", action="store_true", help="skip the two-weight gate checks")
    e.set_defaults(func=cmd_extend)

    a = sub.add_parser("analyze", parents=[common], help="weight distributions and consistency checks")
    a.add_argument("--in", dest="input", required=True)
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("designs", parents=[common], help="extract and verify support designs")
    g.add_argument("--in", dest="input", required=True)
    g.add_argument("--t", type=int, default=2)
    g.add_argument("--weights", type=_int_list, default=None, help="comma-separated code weights")
    g.add_argument("--dual", default="", help="dual half-weights r (comma list) or 'all'")
    g.set_defaults(func=cmd_designs)

    s = sub.add_parser("selftest", parents=[common], help="exhaustive invariant suites")
    s.add_argument("scope", choices=["field", "weil", "paper-tables"])
    s.add_argument("--m", type=_int_list, default=None)
    s.add_argument("--u", type=_u_list, default=None, help="comma list or 'all-coprime'")
    s.add_argument("--inject-fault", action="store_true", help="corrupt the trace to test the harness")
    s.add_argument("--sweep-csv", action="store_true", help="also write the Weil sweep CSV")
    s.set_defaults(func=cmd_selftest)

    r = sub.add_parser("report", parents=[common], help="tables for the defining-set families")
    r.add_argument("--m", type=_int_list, default=None)
    r.add_argument("--u", type=_u_list, default=None)
    r.set_defaults(func=cmd_report)

    w = sub.add_parser("weil", parents=[common], help="Weil sum sweep as CSV")
    w.add_argument("--m", type=int, required=True)
    w.add_argument("--u", type=int, default=1)
    w.add_argument("--grid", choices=["lines", "full"], default="lines")
    w.set_defaults(func=cmd_weil)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FieldError, CodeError, ConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
