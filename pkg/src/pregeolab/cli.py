"""Command-line interface.

Every run is fully determined by its argument vector and input files;
the worker count flag changes scheduling only, never output bytes.

Exit codes: 0 success, 1 failure/counterexample where the subcommand
defines one (always for `verify`, under --strict elsewhere), 2 usage or
input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import axioms, closure, geometry, instances, relcalc, verify
from .axioms import AxiomId, Goal
from .instances import Instance
from .lattice import GroundSet, format_mask, parse_mask

#: relation id -> help text; opp(<id>) wraps any of them
RELATION_IDS = {
    "int": "sets intersect inside the base",
    "a": "closures over the base meet exactly in the closed base",
    "cl": "relative dimension does not drop against the base",
    "aM": "monotonisation of `a` over closure-bounded extensions",
    "am": "naive monotonisation of `a` over plain extensions",
    "ac": "closure extension of `a`",
    "amc": "closure extension of the naive monotonisation of `a`",
    "sup": "one side's maximum stays below the base's maximum",
    "st": "graph independence: no meeting and no cross edges off the base",
    "div": "order independence: intervals meeting one side meet the base",
    "div-strict": "like div, but degenerate one-point intervals ignored",
}


class UsageError(Exception):
    pass


def load_instance(spec: str) -> Instance:
    cat = instances.catalog()
    if spec in cat:
        return cat[spec]
    path = Path(spec)
    if not path.exists():
        raise UsageError(
            f"--instance: {spec!r} is neither a catalog name nor a file"
        )
    try:
        return instances.parse_instance(path.read_text(), name=path.stem)
    except (instances.InstanceFormatError, closure.LawViolation) as exc:
        raise UsageError(f"--instance: {spec}: {exc}") from exc


def instance_operator(inst: Instance) -> closure.ClosureOperator:
    """The operator used for closure-dependent axioms; identity when the
    instance has no closure structure of its own."""
    if inst.op is not None:
        return inst.op
    return closure.trivial_closure(inst.ground)


def resolve_relation(inst: Instance, rel_id: str) -> relcalc.TernaryRelation:
    rid = rel_id.strip()
    if rid.startswith("opp(") and rid.endswith(")"):
        return relcalc.opposite(resolve_relation(inst, rid[4:-1]))
    if rid == "int":
        return relcalc.rel_intersection(inst.ground)
    if rid == "a":
        if inst.op is not None:
            return relcalc.rel_a(inst.op)
        if inst.graph is not None:
            return instances.rel_a_graph(inst.graph)
        return relcalc.rel_a(instance_operator(inst))
    if rid == "cl":
        if inst.pg is None:
            raise UsageError(f"--relation: cl needs a pregeometry, got {inst.kind}")
        return relcalc.rel_cl(inst.pg)
    if rid in ("aM", "am", "ac", "amc"):
        if inst.op is None:
            raise UsageError(
                f"--relation: {rid} needs a closure instance, got {inst.kind}"
            )
        base = relcalc.rel_a(inst.op)
        if rid == "aM":
            return relcalc.monotonise_M(base, inst.op)
        if rid == "am":
            return relcalc.monotonise_m(base)
        if rid == "ac":
            return relcalc.closure_extend_c(base, inst.op)
        return relcalc.closure_extend_c(relcalc.monotonise_m(base), inst.op)
    if rid == "sup":
        return relcalc.rel_sup(inst.ground)
    if rid in ("div", "div-strict"):
        if inst.config is None:
            raise UsageError(f"--relation: {rid} needs an order instance")
        return instances.rel_div(inst.config, include_degenerate=rid == "div")
    if rid == "st":
        if inst.graph is None:
            raise UsageError("--relation: st needs a graph instance")
        return instances.rel_st(inst.graph)
    raise UsageError(f"--relation: unknown relation id {rid!r}")


def _parse_set(inst: Instance, flag: str, text: str) -> int:
    try:
        return parse_mask(text, inst.ground.size)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


# ---------------------------------------------------------------------------
# Subcommands


def cmd_check(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    relation = resolve_relation(inst, args.relation)
    op = instance_operator(inst)
    if args.all:
        reports = axioms.check_all(relation, op)
    else:
        if args.axiom is None:
            raise UsageError("--axiom: required unless --all is given")
        try:
            ax = AxiomId.parse(args.axiom)
        except ValueError as exc:
            raise UsageError(f"--axiom: {exc}") from exc
        reports = [axioms.check_axiom(relation, ax, op)]
    for rep in reports:
        print(rep.result_line())
    failed = any(rep.status == "fail" for rep in reports)
    return 1 if failed and args.strict else 0


def cmd_compare(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    ids = [part.strip() for part in args.relations.split(",")]
    if len(ids) != 2:
        raise UsageError("--relations: need exactly two ids, comma separated")
    r1 = resolve_relation(inst, ids[0])
    r2 = resolve_relation(inst, ids[1])
    cmp = axioms.compare(r1, r2)
    line = f"COMPARE {ids[0]} {ids[1]} {cmp.verdict}"
    if cmp.witness is not None:
        line += " witness=" + ";".join(format_mask(m) for m in cmp.witness)
    print(line)
    return 1 if cmp.verdict != "equal" and args.strict else 0


def _require_pg(inst: Instance) -> closure.Pregeometry:
    if inst.pg is None:
        raise UsageError(f"--instance: {inst.name} is not a pregeometry")
    return inst.pg


def cmd_dim(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    pg = _require_pg(inst)
    subset = _parse_set(inst, "--set", args.set)
    over = _parse_set(inst, "--over", args.over)
    res = geometry.basis_of(pg, subset, over)
    print(f"dim={res.value} basis={format_mask(res.basis)}")
    return 0


def cmd_basis(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    pg = _require_pg(inst)
    subset = _parse_set(inst, "--set", args.set)
    over = _parse_set(inst, "--over", args.over)
    res = geometry.basis_of(pg, subset, over)
    print(f"basis={format_mask(res.basis)}")
    return 0


def cmd_modular(args: argparse.Namespace) -> int:
    inst = load_instance(args.instance)
    pg = _require_pg(inst)
    verdict = geometry.check_modular(pg)
    print(verdict.describe())
    return 1 if args.strict and not verdict.modular else 0


def _parse_goal(text: str) -> Goal:
    premises = []
    target = None
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        negated = part.startswith("!")
        try:
            ax = AxiomId.parse(part[1:] if negated else part)
        except ValueError as exc:
            raise UsageError(f"--goal: {exc}") from exc
        if negated:
            if target is not None:
                raise UsageError("--goal: exactly one negated target allowed")
            target = ax
        else:
            premises.append(ax)
    if target is None:
        raise UsageError("--goal: need one negated axiom, e.g. 'SYM,!MON-R'")
    return Goal(tuple(premises), target)


def _catalog_candidates(
    rel_id: str, kind: Optional[str], max_n: int
) -> list[axioms.Candidate]:
    out = []
    for inst in instances.catalog().values():
        if inst.ground.size > max_n:
            continue
        if kind and inst.kind != kind:
            continue
        try:
            relation = resolve_relation(inst, rel_id)
        except UsageError:
            continue
        out.append((inst.name, relation, instance_operator(inst)))
    return out


def cmd_search(args: argparse.Namespace) -> int:
    if args.goal == "exchange-fail":
        for inst in instances.catalog().values():
            if inst.op is None or inst.ground.size > args.max_n:
                continue
            if args.kind and inst.kind != args.kind:
                continue
            found = closure.has_exchange(inst.op)
            if isinstance(found, closure.ExchangeFailure):
                wit = (found.set_mask, 1 << found.a, 1 << found.b)
                print(
                    f"FOUND {inst.name} witness="
                    + ";".join(format_mask(m) for m in wit)
                )
                return 1 if args.strict else 0
        print("EXHAUSTED")
        return 0
    goal = _parse_goal(args.goal)
    if args.space == "catalog":
        candidates = _catalog_candidates(args.relation, args.kind, args.max_n)
    else:  # all relations on a 1-element ground set
        ground = GroundSet(1)
        ident = closure.trivial_closure(ground)
        candidates = [
            (r.name, r, ident) for r in axioms.enumerate_all_relations(ground)
        ]
    hit = axioms.search_counterexample(goal, candidates)
    if hit is None:
        print("EXHAUSTED")
        return 0
    print(
        f"FOUND {hit.instance} witness="
        + ";".join(format_mask(m) for m in hit.witness)
    )
    return 1 if args.strict else 0


def cmd_verify(args: argparse.Namespace) -> int:
    if args.list:
        for suite, desc in verify.SUITES.items():
            print(f"{suite}: {desc}")
        return 0
    if args.suite == "all":
        suite_ids = list(verify.SUITES)
    else:
        suite_ids = [s.strip() for s in args.suite.split(",")]
    names = args.instances.split(",") if args.instances else None
    try:
        results = verify.run_suites(suite_ids, names, workers=args.workers)
    except verify.UnknownSuite as exc:
        raise UsageError(f"--suite: {exc}") from exc
    sys.stdout.write(verify.render_summary(results))
    if args.report:
        Path(args.report).write_text(verify.render_report(results))
    return 0 if all(r.passed for r in results) else 1


def cmd_list(args: argparse.Namespace) -> int:
    del args
    print("instances:")
    for inst in instances.catalog().values():
        print(f"  {inst.name:<10} {inst.kind:<12} n={inst.ground.size:<3}"
              f" {inst.description}")
    print("relations:")
    for rid, desc in RELATION_IDS.items():
        print(f"  {rid:<10} {desc}")
    print("  opp(<id>)  the same relation with the two sides swapped")
    print("axioms:")
    print("  " + " ".join(ax.value for ax in AxiomId))
    print("suites:")
    for suite, desc in verify.SUITES.items():
        print(f"  {suite:<16} {desc}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pregeolab",
        description="finite closure operators, pregeometries and"
        " independence relations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance(p: argparse.ArgumentParser) -> None:
        p.add_argument("--instance", required=True,
                       help="catalog name or instance file path")

    p = sub.add_parser("check", help="check axioms on a relation")
    add_instance(p)
    p.add_argument("--relation", required=True)
    p.add_argument("--axiom")
    p.add_argument("--all", action="store_true", help="check every axiom")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("compare", help="compare two relations as tables")
    add_instance(p)
    p.add_argument("--relations", required=True, help="two ids, e.g. cl,a")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("dim", help="relative dimension and greedy basis")
    add_instance(p)
    p.add_argument("--set", required=True)
    p.add_argument("--over", default="{}")
    p.set_defaults(fn=cmd_dim)

    p = sub.add_parser("basis", help="greedy basis of a set over a base")
    add_instance(p)
    p.add_argument("--set", required=True)
    p.add_argument("--over", default="{}")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("modular", help="five-condition modularity verdict")
    add_instance(p)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(fn=cmd_modular)

    p = sub.add_parser("search", help="first counterexample in a search space")
    p.add_argument("--goal", required=True,
                   help="axiom list with one negated target, e.g."
                   " 'SYM,!MON-R', or 'exchange-fail'")
    p.add_argument("--relation", default="a",
                   help="relation id evaluated on each candidate instance")
    p.add_argument("--space", choices=("catalog", "enum1"), default="catalog")
    p.add_argument("--kind", choices=("pregeometry", "closure", "graph", "order"))
    p.add_argument("--max-n", type=int, default=6, dest="max_n")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", help="comma list or 'all'")
    p.add_argument("--instances", help="comma list of catalog names")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--report", help="write RESULT lines to this file")
    p.add_argument("--list", action="store_true",
                   help="print the suite binding table and exit")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("list", help="show catalog, relations, axioms, suites")
    p.set_defaults(fn=cmd_list)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (closure.LawViolation, instances.InstanceFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
