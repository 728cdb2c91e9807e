"""Command-line reports.  Every subcommand prints a deterministic text report (or JSON
with ``--json``) and exits nonzero when any of its checks fails."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

SCHEMA_VERSION = 1


@dataclass
class Check:
    name: str
    ok: bool
    witness: str = ""


@dataclass
class Report:
    command: str
    payload: dict[str, Any]
    lines: list[str] = field(default_factory=list)
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str, ok: bool, witness: Any = "") -> None:
        self.checks.append(Check(name, bool(ok), "" if ok else str(witness)))

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "payload": self.payload,
            "checks": [{"name": c.name, "ok": c.ok, "witness": c.witness} for c in self.checks],
            "ok": self.ok,
        }

    def render_text(self) -> str:
        out = list(self.lines)
        for c in self.checks:
            tag = "PASS" if c.ok else "FAIL"
            out.append(f"[{tag}] {c.name}" + (f": {c.witness}" if c.witness else ""))
        return "\n".join(out)

    def render_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)


def _cyc(text: str):
    from .cyclotomic import CycNum

    return CycNum.parse(text)


def _fraction(text: str) -> Fraction:
    return Fraction(text)


# --- subcommands ---------------------------------------------------------------


def cmd_endoscopy_table(args) -> Report:
    from .chevalley import REFERENCE_TABLE, TableMismatchError, enumerate_elliptic, render_table, root_equation_table

    rep = Report("endoscopy-table", {})
    try:
        rows = root_equation_table(check=False)
    except TableMismatchError as exc:
        rep.check("theta-orbits match restriction fibers", False, exc)
        return rep
    rep.payload["table"] = [
        {"g2_root": r.g2_root, "orbit": r.orbit, "condition": r.condition, "long": r.long} for r in rows
    ]
    rep.lines.append(render_table(rows))
    for row, ref in zip(rows, REFERENCE_TABLE):
        rep.check(f"row {ref[0]}: {ref[2]}", row.as_tuple() == ref, f"computed {row.as_tuple()}")
    report = enumerate_elliptic(args.max_order)
    rep.payload["classification"] = report.to_dict()
    rep.lines.append("")
    rep.lines.append(f"semisimple classes over roots of unity of order <= {args.max_order}:")
    for c in report.classes:
        rep.lines.append(f"  s({c.u}, {c.t}): dim {c.dim}, type {c.type.value} ({c.type.algebra_name})")
    expected = [(14, "G2", "1", "1"), (8, "A2", "z3", "1"), (6, "A1xA1", "1", "-1")]
    got = [(c.dim, c.type.value, str(c.u), str(c.t)) for c in report.classes]
    rep.check("three elliptic classes G2, A2, A1xA1", got == expected, got)
    return rep


def cmd_classify(args) -> Report:
    from .chevalley import fixed_subalgebra, twisted_element

    u, t = _cyc(args.u), _cyc(args.t)
    sub = fixed_subalgebra(twisted_element(u, t))
    kind = sub.cartan_type
    name = kind.algebra_name
    line = f"dim {sub.dim}, type {kind.value}" + (f" ({name})" if name else "")
    rep = Report("classify", {"u": str(u), "t": str(t), "dim": sub.dim, "type": kind.value,
                              "killing_rank": sub.killing_rank}, [line])
    rep.check("fixed space closed under bracket", sub.is_bracket_closed())
    return rep


def cmd_levis(args) -> Report:
    from .rootsys import theta_stable_levis

    levis = theta_stable_levis()
    rep = Report("levis", {"levis": []})
    for lv in levis:
        subset = "{" + ", ".join(f"α{i}" for i in sorted(lv.simple_subset)) + "}"
        rep.payload["levis"].append(
            {"simple_subset": sorted(lv.simple_subset), "description": lv.description,
             "elliptic_endoscopic": lv.elliptic_endoscopic, "identified_with": lv.identified_with}
        )
        extra = f"; elliptic endoscopic {lv.elliptic_endoscopic} = {lv.identified_with}" if lv.elliptic_endoscopic else ""
        rep.lines.append(f"{subset}: {lv.description}{extra}")
    rep.check("four theta-stable subsets", len(levis) == 4, len(levis))
    return rep


def cmd_branching(args) -> Report:
    from .repring import A2_ADJOINT, branching_report, exterior_power, irr_char, tensor

    rows = branching_report()
    rep = Report("branching", {"rows": rows})
    for r in rows:
        dec = " + ".join(f"{m}*V({w})" if m > 1 else f"V({w})" for w, m in r["decomposition"].items())
        rep.lines.append(f"{r['input']} = {dec}   dims {'+'.join(map(str, r['dims']))} = {r['dim']}")
        rep.check(r["input"], r["ok"], r["decomposition"])
    ad = irr_char("A2", A2_ADJOINT)
    lhs, rhs = tensor(ad, ad), ad + exterior_power(ad, 3)
    rep.check("Ad (x) Ad = Ad + wedge^3 Ad as characters (64 = 8 + 56)", lhs == rhs and lhs.dim == 64, lhs)
    return rep


def cmd_compalg_check(args) -> Report:
    from .compalg import compalg_reports, symmetric_law_check

    reports = compalg_reports(args.samples, args.seed)
    rep = Report("compalg-check", {"samples": args.samples, "seed": args.seed, "laws": [r.to_dict() for r in reports]})
    for r in reports:
        rep.lines.append(f"{r.law}: {r.samples - r.failures}/{r.samples}")
        rep.check(r.law, r.ok, r.witness)
    control = symmetric_law_check("octonion", min(args.samples, 20), args.seed)
    rep.lines.append(f"control, {control.law}: {control.failures}/{control.samples} failures")
    rep.check("ordinary octonion product violates the symmetric law", control.failures > 0)
    return rep


def cmd_satake_fibers(args) -> Report:
    from .satake import FiberViolation, fiber_check, mu_grid, random_rational_classes

    if args.random is not None:
        domain = random_rational_classes(args.random, args.seed)
        label = f"{args.random} random rational classes, seed {args.seed}"
    else:
        order = int(args.grid.removeprefix("mu"))
        domain = mu_grid(order)
        label = f"all classes with entries in mu_{order}"
    rep = Report("satake-fibers", {"domain": label})
    try:
        fr = fiber_check(domain)
    except FiberViolation as exc:
        rep.check("adjoint fibers are {[s], [s]^-1}", False, exc)
        return rep
    rep.payload.update(fr.to_dict())
    rep.lines.append(f"{label}: {fr.classes} PGL3 classes, {fr.collisions} colliding pairs, "
                     f"{fr.inverse} inverse, {fr.equal} equal, {len(fr.violations)} violations")
    rep.check("adjoint fibers are {[s], [s]^-1}", fr.ok, fr.violations[:1])
    return rep


def cmd_eta(args) -> Report:
    from .satake import eta_map

    vals = [_cyc(x) for x in (args.u, args.t1, args.t2, args.t3)]
    d = eta_map(*vals)
    det = d[0] * d[1] * d[2]
    rep = Report("eta", {"input": [str(v) for v in vals], "diag": [str(x) for x in d]},
                 [f"diag({', '.join(str(x) for x in d)})"])
    rep.check("det = 1", det == 1, det)
    return rep


def cmd_ramanujan(args) -> Report:
    from .satake import ramanujan_bounds

    single, total = ramanujan_bounds(args.n, args.delta)
    rep = Report("ramanujan", {"n": args.n, "delta": None if args.delta is None else str(args.delta),
                               "single": str(single), "sum": str(total)},
                 [f"single: {single}, sum: {total}"])
    rep.check("bounds are exact rationals", isinstance(single, Fraction) and isinstance(total, Fraction))
    return rep


def cmd_heisweil(args) -> Report:
    from .heisweil import (
        EXPECTED_SHAPES,
        LEVEL_NAMES,
        ad_decomposition,
        char_table,
        check_orthogonality,
        level_group,
        line_orbits,
    )

    level = args.level
    g = level_group(level)
    table = char_table(level)
    shape = ad_decomposition(level, check=False)
    orbits = line_orbits(level)
    rep = Report("heisweil", {
        "level": level, "group": LEVEL_NAMES[level], "order": g.order, "classes": len(g.classes),
        "degrees": [c.degree for c in table], "shape": list(shape.dims),
        "line_orbits": [len(o) for o in orbits],
    })
    rep.lines.append(f"group: {LEVEL_NAMES[level]}, order {g.order}, {len(g.classes)} classes")
    rep.lines.append("irreducible degrees: " + " ".join(str(c.degree) for c in table))
    rep.lines.append(f"shape: {shape}")
    rep.lines.append("line orbits: " + " ".join(str(len(o)) for o in orbits))
    rep.check("sum of squared degrees = |G|", sum(c.degree ** 2 for c in table) == g.order)
    rep.check("orthogonality relations", check_orthogonality(table))
    rep.check(f"shape {'+'.join(map(str, EXPECTED_SHAPES[level]))}", shape.dims == EXPECTED_SHAPES[level], shape)
    return rep


COMMANDS: dict[str, Callable] = {
    "endoscopy-table": cmd_endoscopy_table,
    "classify": cmd_classify,
    "levis": cmd_levis,
    "branching": cmd_branching,
    "compalg-check": cmd_compalg_check,
    "satake-fibers": cmd_satake_fibers,
    "eta": cmd_eta,
    "ramanujan": cmd_ramanujan,
    "heisweil": cmd_heisweil,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triality", description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("endoscopy-table", help="root-equation table and elliptic classification")
    p.add_argument("--max-order", type=int, default=12)
    p = sub.add_parser("classify", help="fixed subalgebra of s(u,t)·theta")
    p.add_argument("--u", required=True, help="cyclotomic number, e.g. z3, -1, 2/3, z12^5")
    p.add_argument("--t", required=True)
    sub.add_parser("levis", help="theta-stable Levi subgroups")
    sub.add_parser("branching", help="representation-ring identities and branching to PGL3")
    p = sub.add_parser("compalg-check", help="composition and symmetric laws on random exact samples")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("satake-fibers", help="fibers of the adjoint transfer")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--grid", default="mu8", help="mu<k>: all triples of k-th roots of unity")
    group.add_argument("--random", type=int, help="number of random rational classes")
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("eta", help="the torus map eta")
    for name in ("--u", "--t1", "--t2", "--t3"):
        p.add_argument(name, default="1")
    p = sub.add_parser("ramanujan", help="exponent bounds from a bound on Ad")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--delta", type=_fraction, default=None, help="rational p/q")
    p = sub.add_parser("heisweil", help="Heisenberg-Weil decomposition at a chain level")
    p.add_argument("--level", choices=["h", "mu2", "c4", "q8"], required=True)
    return parser


def run(argv: list[str] | None = None) -> Report:
    args = build_parser().parse_args(argv)
    return COMMANDS[args.command](args)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = COMMANDS[args.command](args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render_json() if args.json else report.render_text())
    return 0 if report.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
