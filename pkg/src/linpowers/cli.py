"""Command-line front end.

Exit codes: 0 success, 2 mathematical refutation (a check came out false,
a resolution is not linear), 3 resource cap hit, 4 bad input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import betti_oracle, families, graphs, monomials, rees
from .errors import (ConsistencyError, HeldOutMismatch, LinPowersError, NotLinearShape,
                     ResourceCapExceeded, SingularSystem)

EXIT_OK, EXIT_REFUTED, EXIT_CAP, EXIT_INPUT = 0, 2, 3, 4


class InputError(Exception):
    pass


class Refuted(Exception):
    """Carries a report to print before exiting with code 2."""

    def __init__(self, report):
        super().__init__("refuted")
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    ideal: monomials.MonomialIdeal | None = None
    name: str = ""
    family: families.FamilySpec | None = None
    as_json: bool = False
    exact: bool = False
    cap: int | None = None


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_ideal(path: str) -> monomials.MonomialIdeal:
    text = _read(path)
    if path.endswith(".json"):
        return monomials.ideal_from_json(text)
    return monomials.parse_ideal_text(text)


def load_graph(path: str) -> graphs.SimpleGraph:
    text = _read(path)
    if path.endswith(".json"):
        return graphs.graph_from_json(text)
    return graphs.parse_edge_list(text)


def parse_bidegree(text: str) -> rees.BiDegree:
    nums = re.findall(r"\d+", text)
    if len(nums) != 2:
        raise InputError(f"bidegree must look like 'a,b', got {text!r}")
    return rees.BiDegree(int(nums[0]), int(nums[1]))


def parse_degree_set(text: str) -> list[rees.BiDegree]:
    pairs = re.findall(r"(\d+)\s*,\s*(\d+)", text)
    if not pairs:
        raise InputError(f"cannot parse degree set {text!r}")
    return [rees.BiDegree(int(a), int(b)) for a, b in pairs]


def parse_krange(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+)(?:\.\.|-)(\d+)", text.strip())
    if not m or int(m.group(1)) < 1 or int(m.group(2)) < int(m.group(1)):
        raise InputError(f"k range must look like '1..4', got {text!r}")
    return list(range(int(m.group(1)), int(m.group(2)) + 1))


def _config(args) -> RunConfig:
    cfg = RunConfig(as_json=args.json, exact=getattr(args, "verify_exact", False),
                    cap=getattr(args, "cap", None))
    if cfg.cap is not None and cfg.cap <= 0:
        raise InputError("caps must be positive")
    sources = [s for s in ("ideal", "family", "graph") if getattr(args, s, None)]
    if len(sources) > 1:
        raise InputError("give exactly one of --ideal, --family, --graph")
    if getattr(args, "ideal", None):
        cfg.ideal, cfg.name = load_ideal(args.ideal), Path(args.ideal).name
    elif getattr(args, "family", None):
        cfg.family = families.parse_family(args.family)
        cfg.ideal, cfg.name = cfg.family.ideal(), str(cfg.family)
    elif getattr(args, "graph", None):
        cfg.ideal, cfg.name = graphs.edge_ideal(load_graph(args.graph)), Path(args.graph).name
    return cfg


def _need_ideal(cfg: RunConfig) -> monomials.MonomialIdeal:
    if cfg.ideal is None:
        raise InputError("no input: give --ideal, --family or --graph")
    return cfg.ideal


def emit(report: dict, as_json: bool, out=None) -> None:
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(report, sort_keys=True) + "\n")
        return
    for key in sorted(report):
        val = report[key]
        if isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            out.write(f"{key}:\n")
            for row in val:
                out.write(f"  {row if isinstance(row, dict) else ' '.join(map(str, row))}\n")
        else:
            out.write(f"{key}: {val}\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


RANK_NOTE = ("ranks mod 2147483659 and 4294967291 stand in for characteristic 0; "
             "--verify-exact redoes them over Q and fails if anything changes")


def _koszul(I, cfg: RunConfig):
    table = betti_oracle.koszul_betti(I, betti_oracle.linearity_jmax(I), cap=cfg.cap)
    if cfg.exact:
        again = betti_oracle.koszul_betti(I, betti_oracle.linearity_jmax(I), exact=True,
                                          cap=cfg.cap)
        if again.entries != table.entries:
            raise ConsistencyError("exact ranks changed the Betti table")
    return table


def cmd_betti(args) -> dict:
    cfg = _config(args)
    base = _need_ideal(cfg)
    k = args.k
    if k < 1:
        raise InputError("k must be positive")
    report = {"ideal": cfg.name, "k": k, "mode": args.mode}
    if args.mode == "family":
        if cfg.family is None:
            raise InputError("family mode needs --family")
        report["betti"] = list(families.family_betti(cfg.family, k).as_tuple())
        notes = families.family_notes(cfg.family)
        if notes:
            report["notes"] = notes
        return report
    I = monomials.power(base, k)
    D = monomials.is_equigenerated(I)
    if args.mode == "koszul":
        table = _koszul(I, cfg)
        report["betti"] = list(table.totals().as_tuple())
        report["table"] = table.rows()
        report["linear"] = D is not None and table.is_linear(D)
        report["ranks"] = RANK_NOTE
        if not report["linear"]:
            report["nonlinear_entries"] = [list(e) for e in table.nonlinear_entries(D or 0)]
        return report
    if D is None:
        raise InputError("oracle mode needs an equigenerated ideal; use --mode koszul")
    try:
        report["betti"] = list(betti_oracle.kpoly_betti(I).as_tuple())
    except NotLinearShape as exc:
        report["linear"] = False
        report["diagnostic"] = f"Hilbert numerator is not of linear shape: {exc}"
        raise Refuted(report) from None
    if cfg.family is not None:
        notes = families.family_notes(cfg.family)
        if notes:
            report["notes"] = notes
    return report


def cmd_betti_poly(args) -> dict:
    cfg = _config(args)
    if cfg.family is None:
        raise InputError("betti-poly needs --family")
    spec = cfg.family
    idx = [args.i] if args.i else list(range(1, spec.n + 1))
    if any(not 1 <= i <= spec.n for i in idx):
        raise InputError(f"i must lie in 1..{spec.n}")
    if args.krange:
        ks = parse_krange(args.krange)
        polys = [betti_oracle.betti_fit(spec.power, i, ks) for i in idx]
        source = f"fit k={ks[0]}..{ks[-1]}, checked at k={ks[-1] + 1}"
    else:
        polys = [families.family_betti_poly(spec, i) for i in idx]
        source = ("closed form" if families.has_closed_form(spec)
                  else f"fit k=1..{spec.n}, checked at k={spec.n + 1}")
    report = {"family": str(spec), "source": source,
              "polynomials": {f"beta_{i}": str(p) for i, p in zip(idx, polys)}}
    notes = families.family_notes(spec)
    if notes:
        report["notes"] = notes
    return report


def cmd_rees(args) -> dict:
    cfg = _config(args)
    I = _need_ideal(cfg)
    bound = parse_bidegree(args.bound) if args.bound else rees.default_bound(I)
    report = rees.minimal_generator_degrees(I, bound, cfg.cap, name=cfg.name)
    checks = [parse_degree_set(args.check)] if args.check else [list(rees.QUADRATIC)]
    results = [rees.check_report(report, c) for c in checks]
    out = report.to_dict(I)
    out["note"] = f"generators listed up to bidegree {bound} only"
    if not all(results):
        raise Refuted(out)
    return out


def cmd_check(args) -> dict:
    cfg = _config(args)
    I = _need_ideal(cfg)
    pred = args.predicate
    report: dict = {"ideal": cfg.name, "predicate": pred}
    if pred == "polymatroidal":
        bad = monomials.polymatroidal_violation(I)
        report["result"] = bad is None
        if bad is not None:
            report["violation"] = _violation(bad)
    elif pred == "sep":
        bad = monomials.sep_violation(I)
        report["result"] = bad is None
        if bad is not None:
            report["violation"] = _violation(bad)
    elif pred == "linear":
        D = monomials.is_equigenerated(I)
        table = _koszul(I, cfg)
        report["result"] = D is not None and table.is_linear(D)
        report["ranks"] = RANK_NOTE
        if not report["result"]:
            report["nonlinear_entries"] = [list(e) for e in table.nonlinear_entries(D or 0)]
    elif pred.startswith("linear-powers:"):
        K = _int_suffix(pred)
        report["result"], report["ranks"] = True, RANK_NOTE
        for k in range(1, K + 1):
            P = monomials.power(I, k)
            D = monomials.is_equigenerated(P)
            if D is None or not _koszul(P, cfg).is_linear(D):
                report["result"], report["first_failure_k"] = False, k
                break
    elif pred == "fiber-type" or pred.startswith("fiber-type:"):
        bound = parse_bidegree(pred.split(":", 1)[1]) if ":" in pred else rees.default_bound(I)
        res = rees.fiber_type_check(I, bound, cfg.cap)
        report["result"], report["bound"] = res.passed, bound.as_list()
        if not res.passed:
            report["failure_degree"] = res.failure_degree.as_list()
    else:
        raise InputError(f"unknown predicate {pred!r}")
    if not report["result"]:
        raise Refuted(report)
    return report


def _int_suffix(pred: str) -> int:
    try:
        K = int(pred.split(":", 1)[1])
    except ValueError:
        raise InputError(f"bad predicate {pred!r}") from None
    if K < 1:
        raise InputError("K must be positive")
    return K


def _violation(bad) -> dict:
    if bad == ("degree",):
        return {"reason": "generators of different degrees"}
    u, v, i = bad
    return {"u": monomials.format_monomial(u), "v": monomials.format_monomial(v),
            "i": i + 1}


def cmd_graph(args) -> dict:
    sub = args.sub
    if sub == "ferrers":
        if args.rows:
            try:
                B = graphs.ferrers_graph(int(r) for r in args.rows.split(","))
            except ValueError as exc:
                raise InputError(str(exc)) from None
        elif args.input:
            B = graphs.parse_bipartite(_read(args.input))
        else:
            raise InputError("ferrers needs an input file or --rows")
        relabel = graphs.ferrers_relabeling(B)
        report = {"command": "ferrers", "left": B.n, "right": B.m, "result": relabel is not None}
        if relabel is not None:
            report["left_order"] = [i + 1 for i in relabel[0]]
            report["right_order"] = [j + 1 for j in relabel[1]]
        else:
            raise Refuted(report)
        report["ideal"] = [monomials.format_monomial(g) for g in graphs.bipartite_edge_ideal(B).exps]
        return report
    if not args.input:
        raise InputError(f"{sub} needs a graph file")
    G = load_graph(args.input)
    report: dict = {"command": sub, "nverts": G.nverts}
    if sub == "complement":
        report["edges"] = [[a + 1, b + 1] for a, b in graphs.complement(G).sorted_edges()]
    elif sub == "chordal":
        res = graphs.is_chordal(G)
        report["result"] = res.chordal
        if res.chordal:
            report["peo"] = [v + 1 for v in res.peo]
        else:
            report["chordless_cycle"] = [v + 1 for v in res.cycle]
            raise Refuted(report)
    elif sub == "edge-ideal":
        I = graphs.edge_ideal(G)
        report["generators"] = [monomials.format_monomial(g) for g in I.exps]
        report["froberg_linear"] = graphs.froberg_linear(G)
    return report


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _sources(p, family=True):
    p.add_argument("--ideal", help="ideal file (text, or .json)")
    if family:
        p.add_argument("--family", help="e.g. squarefree:n=4,d=2 or transversal:n=5,s=3")
    p.add_argument("--graph", help="edge list of a graph; uses its edge ideal")


def _common(p):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cap", type=int, help="resource cap (basis elements per piece)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="linpowers", description="Betti numbers of powers of monomial "
                 "ideals and generator degrees of their Rees ideals.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("betti", help="Betti numbers of S/I^k")
    _sources(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--mode", choices=["oracle", "koszul", "family"], default="oracle")
    p.add_argument("--verify-exact", action="store_true", help="redo ranks over Q")
    _common(p)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("betti-poly", help="Betti numbers as polynomials in k")
    p.add_argument("--family", required=True)
    p.add_argument("--i", type=int)
    p.add_argument("--krange", help="fit on this range instead of the closed form, e.g. 1..4")
    _common(p)
    p.set_defaults(func=cmd_betti_poly)

    p = sub.add_parser("rees", help="minimal generator degrees of the Rees ideal")
    _sources(p)
    p.add_argument("--bound", help="bidegree box a,b (default 2D,4)")
    p.add_argument("--check", help="degree set, e.g. '(0,2),(1,1)' (the default)")
    _common(p)
    p.set_defaults(func=cmd_rees)

    p = sub.add_parser("check", help="test a property of an ideal")
    p.add_argument("predicate",
                   help="polymatroidal | sep | linear | linear-powers:K | fiber-type[:a,b]")
    _sources(p)
    p.add_argument("--verify-exact", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("graph", help="graph utilities")
    p.add_argument("sub", choices=["complement", "chordal", "ferrers", "edge-ideal"])
    p.add_argument("input", nargs="?", help="edge list (text or .json)")
    p.add_argument("--rows", help="ferrers: row lengths, e.g. 3,1")
    _common(p)
    p.set_defaults(func=cmd_graph)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except Refuted as r:
        emit(r.report, args.json)
        return EXIT_REFUTED
    except ResourceCapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except HeldOutMismatch as exc:
        print(f"fit not validated: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    except (InputError, ValueError, SingularSystem) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LinPowersError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    emit(report, args.json)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
