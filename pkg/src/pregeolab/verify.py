"""Named verification suites: each suite runs one exhaustive machine check
across the built-in catalog and reports pass/fail per constituent check.

Reports contain only RESULT lines (no timing), so a suite report is byte
identical across runs and worker counts.  Workers only parallelise the
evaluation of independent checks; results are always emitted in the
deterministic construction order.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Iterable, Optional, Sequence

from .axioms import AxiomId, Comparison, check_axiom, compare
from .closure import ClosureOperator, Pregeometry, trivial_closure
from .geometry import brute_dim_oracle, check_modular, dim, dim_table
from .instances import (
    Graph,
    Instance,
    catalog,
    free_amalgam,
    isomorphic_over_base,
    rel_div,
    rel_st,
)
from .lattice import GroundSet, format_mask
from .relcalc import (
    TernaryRelation,
    closure_extend_c,
    monotonise_M,
    monotonise_m,
    random_relation,
    rel_a,
    rel_cl,
    rel_intersection,
)


class UnknownSuite(ValueError):
    pass


@dataclass(frozen=True)
class CheckResult:
    subject: str  # e.g. "u34:cl" or "graphs5:st"
    check: str  # axiom id or check keyword like "eq:cl"
    status: str  # pass | fail | vacuous
    witness: Optional[tuple[int, ...]] = None
    cells: int = 0  # tuples scanned to produce this result (not reported)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def result_line(self) -> str:
        parts = [f"RESULT {self.subject} {self.check} {self.status}"]
        if self.witness is not None:
            parts.append("witness=" + ";".join(format_mask(m) for m in self.witness))
        return " ".join(parts)


@dataclass
class SuiteResult:
    suite: str
    checks: list[CheckResult]
    triples_scanned: int = 0
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def result_lines(self) -> list[str]:
        status = "pass" if self.passed else "fail"
        lines = [f"SUITE {self.suite} {status}"]
        lines.extend(c.result_line() for c in self.checks)
        return lines


#: suite id -> one-line description (shown by the list command)
SUITES: dict[str, str] = {
    "pregeom-axioms": "dimension independence on pregeometries satisfies the"
    " full axiom list",
    "aM-eq-cl": "monotonised closure-intersection independence equals"
    " dimension independence on pregeometries",
    "aM-eq-am": "both monotonisation variants of closure-intersection"
    " independence agree on pregeometries",
    "mon-preserve": "monotonisation output always satisfies right base"
    " monotonicity",
    "c-preserve": "closure extension output always satisfies right closure"
    " and right normality",
    "mc-to-M": "closure-extended naive monotonisation implies full"
    " monotonisation, with equality under right closure",
    "modularity-5way": "the five modularity conditions agree on every"
    " pregeometry",
    "dim-laws": "relative dimension matches the brute-force oracle and obeys"
    " additivity, base antitonicity and submodularity",
    "rg-st": "edge-respecting independence on graphs satisfies its axiom"
    " list and free amalgamation is unique over the base",
    "dlo-div": "interval independence on linear orders satisfies its axiom"
    " list but fails right transitivity",
}

# Axiom lists per suite (FIN and LOC are always reported as vacuous).
PREGEOM_AXIOMS = (
    AxiomId.FIN, AxiomId.EX, AxiomId.SYM, AxiomId.LOC,
    AxiomId.NOR_L, AxiomId.NOR_R, AxiomId.MON_L, AxiomId.MON_R,
    AxiomId.BMON_L, AxiomId.BMON_R, AxiomId.TRA_L, AxiomId.TRA_R,
    AxiomId.AREF, AxiomId.CLO_L, AxiomId.CLO_R, AxiomId.SCLO,
)
ST_AXIOMS = PREGEOM_AXIOMS + (AxiomId.FREE,)
DIV_AXIOMS = (
    AxiomId.FIN, AxiomId.EX, AxiomId.LOC,
    AxiomId.NOR_L, AxiomId.NOR_R, AxiomId.MON_L, AxiomId.MON_R,
    AxiomId.BMON_R, AxiomId.TRA_L, AxiomId.AREF,
)

# Catalog pregeometries known to violate the modular law.
NONMODULAR = frozenset({"u34", "u36"})

TABLE_SUITE_MAX = 6  # table-equality suites
STACK_SUITE_MAX = 5  # transformer-stack suites


def _selected(kind_ok: Callable[[Instance], bool],
              names: Optional[Sequence[str]]) -> list[Instance]:
    cat = catalog()
    if names is not None:
        missing = [n for n in names if n not in cat]
        if missing:
            raise UnknownSuite(f"unknown instances: {', '.join(missing)}")
        pool = [cat[n] for n in names]
    else:
        pool = list(cat.values())
    return [inst for inst in pool if kind_ok(inst)]


def _pregeometries(names: Optional[Sequence[str]], max_size: int) -> list[Instance]:
    return _selected(
        lambda i: i.pg is not None and i.ground.size <= max_size, names
    )


def _axiom_checks(
    subject: str,
    relation: TernaryRelation,
    op: Optional[ClosureOperator],
    axiom_ids: Sequence[AxiomId],
) -> list[CheckResult]:
    cells = relation.ground.subset_count ** 3
    out = []
    for ax in axiom_ids:
        rep = check_axiom(relation, ax, op)
        out.append(CheckResult(subject, ax.value, rep.status, rep.witness,
                               cells))
    return out


def _cmp_check(subject: str, check: str, cmp: Comparison,
               accept: tuple[str, ...], cells: int = 0) -> CheckResult:
    status = "pass" if cmp.verdict in accept else "fail"
    return CheckResult(subject, check, status,
                       cmp.witness if status == "fail" else None, cells)


def _catalog_relations(max_size: int) -> list[tuple[str, TernaryRelation, ClosureOperator]]:
    """Every built-in relation paired with the operator used by transformers.

    Graph and order instances carry the identity operator.
    """
    out = []
    for inst in catalog().values():
        if inst.ground.size > max_size:
            continue
        if inst.op is not None:
            out.append((inst.name, rel_intersection(inst.ground), inst.op))
            out.append((inst.name, rel_a(inst.op), inst.op))
            if inst.pg is not None:
                out.append((inst.name, rel_cl(inst.pg), inst.op))
        elif inst.graph is not None:
            ident = trivial_closure(inst.ground)
            out.append((inst.name, rel_st(inst.graph), ident))
        elif inst.config is not None:
            ident = trivial_closure(inst.ground)
            out.append((inst.name, rel_div(inst.config), ident))
    return out


# ---------------------------------------------------------------------------
# Suite bodies.  Each returns (units, triples) where units are thunks
# producing lists of CheckResult; thunks are independent and order-stable.

Unit = Callable[[], list[CheckResult]]


def _suite_pregeom_axioms(names) -> list[Unit]:
    units = []
    for inst in _pregeometries(names, TABLE_SUITE_MAX):
        pg = inst.pg
        assert pg is not None
        units.append(
            lambda inst=inst, pg=pg: _axiom_checks(
                f"{inst.name}:cl", rel_cl(pg), pg.op, PREGEOM_AXIOMS
            )
        )
    return units


def _suite_am_eq_cl(names) -> list[Unit]:
    units = []
    for inst in _pregeometries(names, TABLE_SUITE_MAX):
        pg = inst.pg
        assert pg is not None

        def unit(inst=inst, pg=pg) -> list[CheckResult]:
            lhs = monotonise_M(rel_a(pg.op), pg.op)
            return [_cmp_check(f"{inst.name}:aM", "eq:cl",
                               compare(lhs, rel_cl(pg)), ("equal",),
                               pg.ground.subset_count ** 3)]

        units.append(unit)
    return units


def _suite_am_eq_am(names) -> list[Unit]:
    units = []
    for inst in _pregeometries(names, TABLE_SUITE_MAX):
        pg = inst.pg
        assert pg is not None

        def unit(inst=inst, pg=pg) -> list[CheckResult]:
            lhs = monotonise_M(rel_a(pg.op), pg.op)
            rhs = monotonise_m(rel_a(pg.op))
            return [_cmp_check(f"{inst.name}:aM", "eq:am",
                               compare(lhs, rhs), ("equal",),
                               pg.ground.subset_count ** 3)]

        units.append(unit)
    return units


RANDOM_RELATION_COUNT = 100
RANDOM_RELATION_SIZE = 4


def _suite_mon_preserve(names) -> list[Unit]:
    units = []
    for label, base, op in _catalog_relations(STACK_SUITE_MAX):

        def unit(label=label, base=base, op=op) -> list[CheckResult]:
            out = []
            for r in (monotonise_M(base, op), monotonise_m(base)):
                rep = check_axiom(r, AxiomId.BMON_R)
                out.append(CheckResult(f"{label}:{r.name}", "BMON-R",
                                       rep.status, rep.witness,
                                       cells=r.ground.subset_count ** 3))
            return out

        units.append(unit)
    if names is None:
        ground = GroundSet(RANDOM_RELATION_SIZE)
        ident = trivial_closure(ground)
        for seed in range(RANDOM_RELATION_COUNT):

            def unit(seed=seed) -> list[CheckResult]:
                base = random_relation(ground, seed)
                out = []
                for r in (monotonise_M(base, ident), monotonise_m(base)):
                    rep = check_axiom(r, AxiomId.BMON_R)
                    out.append(CheckResult(f"rand:{r.name}", "BMON-R",
                                           rep.status, rep.witness,
                                           cells=r.ground.subset_count ** 3))
                return out

            units.append(unit)
    return units


def _suite_c_preserve(names) -> list[Unit]:
    units = []
    for inst in _selected(
        lambda i: i.op is not None and i.ground.size <= STACK_SUITE_MAX, names
    ):
        op = inst.op
        assert op is not None
        bases = [rel_intersection(inst.ground), rel_a(op),
                 random_relation(inst.ground, 0)]

        def unit(inst=inst, op=op, bases=bases) -> list[CheckResult]:
            out = []
            for base in bases:
                r = closure_extend_c(base, op)
                for ax in (AxiomId.CLO_R, AxiomId.NOR_R):
                    rep = check_axiom(r, ax, op)
                    out.append(CheckResult(f"{inst.name}:{r.name}", ax.value,
                                           rep.status, rep.witness,
                                           cells=r.ground.subset_count ** 3))
            return out

        units.append(unit)
    return units


def _suite_mc_to_m(names) -> list[Unit]:
    units = []
    for label, base, op in _catalog_relations(STACK_SUITE_MAX):

        def unit(label=label, base=base, op=op) -> list[CheckResult]:
            subject = f"{label}:{base.name}"
            nor = check_axiom(base, AxiomId.NOR_R).status == "pass"
            mon = check_axiom(base, AxiomId.MON_R).status == "pass"
            cells = base.ground.subset_count ** 3
            if not (nor and mon):
                return [CheckResult(subject, "mc-to-M", "vacuous",
                                    cells=cells)]
            lhs = closure_extend_c(monotonise_m(base), op)
            rhs = monotonise_M(base, op)
            clo = check_axiom(base, AxiomId.CLO_R, op).status == "pass"
            accept = ("equal",) if clo else ("equal", "implies")
            check = "mc-eq-M" if clo else "mc-to-M"
            return [_cmp_check(subject, check, compare(lhs, rhs), accept,
                               cells)]

        units.append(unit)
    return units


def _suite_modularity(names) -> list[Unit]:
    units = []
    for inst in _selected(lambda i: i.pg is not None, names):
        pg = inst.pg
        assert pg is not None

        def unit(inst=inst, pg=pg) -> list[CheckResult]:
            verdict = check_modular(pg)
            cells = pg.ground.subset_count ** 2
            out = [CheckResult(f"{inst.name}:modularity", "agree",
                               "pass" if verdict.agree else "fail",
                               cells=cells)]
            expected = inst.name not in NONMODULAR
            ok = verdict.modular == expected
            out.append(CheckResult(
                f"{inst.name}:modularity",
                "modular" if expected else "nonmodular",
                "pass" if ok else "fail",
                None if ok else verdict.witnesses.get(5),
                cells=cells,
            ))
            return out

        units.append(unit)
    return units


def _suite_dim_laws(names) -> list[Unit]:
    units = []
    for inst in _pregeometries(names, TABLE_SUITE_MAX):
        pg = inst.pg
        assert pg is not None
        units.append(lambda inst=inst, pg=pg: _dim_law_checks(inst.name, pg))
    return units


def _dim_law_checks(name: str, pg: Pregeometry) -> list[CheckResult]:
    count = pg.ground.subset_count
    dims = dim_table(pg)
    subject = f"{name}:dim"
    out = []

    oracle_bad = next(
        ((a, b) for a in range(count) for b in range(count)
         if dims[a][b] != brute_dim_oracle(pg, a, b)),
        None,
    )
    out.append(CheckResult(subject, "oracle",
                           "pass" if oracle_bad is None else "fail", oracle_bad,
                           cells=count ** 2))

    if pg.ground.size > STACK_SUITE_MAX:
        return out

    add_bad = next(
        ((a, b) for a in range(count) for b in range(count)
         if dims[a | b][0] != dims[a][b] + dims[b][0]),
        None,
    )
    out.append(CheckResult(subject, "additivity",
                           "pass" if add_bad is None else "fail", add_bad,
                           cells=count ** 2))

    anti_bad = None
    for a in range(count):
        for b in range(count):
            for d in range(count):
                if b & ~d == 0 and dims[a][b] < dims[a][d]:
                    anti_bad = (a, b, d)
                    break
            if anti_bad:
                break
        if anti_bad:
            break
    out.append(CheckResult(subject, "base-antitone",
                           "pass" if anti_bad is None else "fail", anti_bad,
                           cells=count ** 3))

    closed = pg.op.closed_masks()
    sub_bad = next(
        ((a, b) for a in closed for b in closed
         if dims[a | b][0] + dims[a & b][0] > dims[a][0] + dims[b][0]),
        None,
    )
    out.append(CheckResult(subject, "submodular-closed",
                           "pass" if sub_bad is None else "fail", sub_bad,
                           cells=len(closed) ** 2))
    return out


GRAPH_SUITE_VERTICES = 5


def _all_graphs(size: int) -> Iterable[Graph]:
    """All labeled graphs on `size` vertices, ascending by edge code."""
    slots = list(combinations(range(size), 2))
    for code in range(1 << len(slots)):
        pairs = [slots[k] for k in range(len(slots)) if code >> k & 1]
        yield Graph.build(size, pairs)


def _suite_rg_st(names) -> list[Unit]:
    del names  # quantifies over all labeled graphs, not the catalog

    def axiom_unit(ax: AxiomId) -> Unit:
        def unit() -> list[CheckResult]:
            ident = trivial_closure(GroundSet(GRAPH_SUITE_VERTICES))
            cube = ident.ground.subset_count ** 3
            scanned = 0
            for idx, g in enumerate(_all_graphs(GRAPH_SUITE_VERTICES)):
                rep = check_axiom(rel_st(g), ax, ident)
                scanned += cube
                if rep.status == "fail":
                    return [CheckResult(f"graphs5#{idx}:st", ax.value,
                                        "fail", rep.witness, cells=scanned)]
            return [CheckResult("graphs5:st", ax.value,
                                "vacuous" if ax in (AxiomId.FIN, AxiomId.LOC)
                                else "pass", cells=scanned)]

        return unit

    units: list[Unit] = [axiom_unit(ax) for ax in ST_AXIOMS]
    units.append(_amalgam_unit)
    return units


def _amalgam_unit() -> list[CheckResult]:
    """Free amalgamation sanity across small graph pairs.

    For every pair of graphs agreeing on a shared base, the amalgam must
    satisfy the edge-respecting independence on its defining triple, and
    relabelling the free vertices of either part must not change the
    amalgam's isomorphism type over the base.
    """
    for base_size in (1, 2, 3):
        for n1 in range(base_size + 1, 5):
            for n2 in range(n1, 5):
                if n1 + n2 - base_size > 6:
                    continue
                fail = _amalgam_scan(base_size, n1, n2)
                if fail is not None:
                    return [fail]
    return [CheckResult("amalgam", "unique-over-base", "pass"),
            CheckResult("amalgam", "st-on-parts", "pass")]


def _graphs_fixing_base(size: int, base_graph: Graph) -> list[Graph]:
    slots = [
        (u, v)
        for u, v in combinations(range(size), 2)
        if v >= base_graph.size
    ]
    fixed = [tuple(sorted(e)) for e in base_graph.edges]
    out = []
    for code in range(1 << len(slots)):
        pairs = fixed + [slots[k] for k in range(len(slots)) if code >> k & 1]
        out.append(Graph.build(size, pairs))
    return out


def _relabel_free(g: Graph, base_size: int, perm: Sequence[int]) -> Graph:
    mapping = list(range(base_size)) + list(perm)
    pairs = [
        tuple(sorted((mapping[u], mapping[v])))
        for u, v in (sorted(e) for e in g.edges)
    ]
    return Graph.build(g.size, pairs)


def _amalgam_scan(base_size: int, n1: int, n2: int) -> Optional[CheckResult]:
    base_vertices = list(range(base_size))
    for base_code in range(1 << (base_size * (base_size - 1) // 2)):
        slots = list(combinations(range(base_size), 2))
        base_graph = Graph.build(
            base_size,
            [slots[k] for k in range(len(slots)) if base_code >> k & 1],
        )
        lefts = _graphs_fixing_base(n1, base_graph)
        rights = _graphs_fixing_base(n2, base_graph)
        for g1 in lefts:
            for g2 in rights:
                h = free_amalgam(g1, g2, base_vertices)
                part1 = (1 << n1) - 1 & ~((1 << base_size) - 1)
                part2_mask = ((1 << h.size) - 1) & ~((1 << n1) - 1)
                base_mask = (1 << base_size) - 1
                if not rel_st(h).holds(part1, part2_mask, base_mask):
                    return CheckResult(
                        f"amalgam:{base_size}/{n1}/{n2}", "st-on-parts",
                        "fail", (part1, part2_mask, base_mask),
                    )
                for perm in permutations(range(base_size, n1)):
                    g1p = _relabel_free(g1, base_size, perm)
                    hp = free_amalgam(g1p, g2, base_vertices)
                    if not isomorphic_over_base(h, hp, base_vertices):
                        return CheckResult(
                            f"amalgam:{base_size}/{n1}/{n2}",
                            "unique-over-base", "fail", None,
                        )
                for perm in permutations(range(base_size, n2)):
                    g2p = _relabel_free(g2, base_size, perm)
                    hp = free_amalgam(g1, g2p, base_vertices)
                    if not isomorphic_over_base(h, hp, base_vertices):
                        return CheckResult(
                            f"amalgam:{base_size}/{n1}/{n2}",
                            "unique-over-base", "fail", None,
                        )
    return None


DLO_SUITE_MAX = 6


def _suite_dlo_div(names) -> list[Unit]:
    from fractions import Fraction

    from .instances import OrderedConfig

    units = []
    for n in range(1, DLO_SUITE_MAX + 1):
        config = OrderedConfig(tuple(Fraction(i) for i in range(n)))

        def unit(n=n, config=config) -> list[CheckResult]:
            ident = trivial_closure(config.ground)
            out = _axiom_checks(f"dlo{n}:div", rel_div(config), ident, DIV_AXIOMS)
            if n == 4:
                rep = check_axiom(rel_div(config), AxiomId.TRA_R)
                status = "pass" if rep.status == "fail" else "fail"
                out.append(CheckResult(f"dlo{n}:div", "TRA-R-fails", status,
                                       rep.witness,
                                       cells=config.ground.subset_count ** 4))
            return out

        units.append(unit)
    return units


_SUITE_BODIES: dict[str, Callable[[Optional[Sequence[str]]], list[Unit]]] = {
    "pregeom-axioms": _suite_pregeom_axioms,
    "aM-eq-cl": _suite_am_eq_cl,
    "aM-eq-am": _suite_am_eq_am,
    "mon-preserve": _suite_mon_preserve,
    "c-preserve": _suite_c_preserve,
    "mc-to-M": _suite_mc_to_m,
    "modularity-5way": _suite_modularity,
    "dim-laws": _suite_dim_laws,
    "rg-st": _suite_rg_st,
    "dlo-div": _suite_dlo_div,
}


def run_suite(
    suite_id: str,
    instances: Optional[Sequence[str]] = None,
    workers: int = 1,
) -> SuiteResult:
    """Run one suite; `instances` restricts to named catalog entries."""
    if suite_id not in _SUITE_BODIES:
        raise UnknownSuite(f"unknown suite: {suite_id}")
    start = time.perf_counter()
    units = _SUITE_BODIES[suite_id](instances)
    if workers > 1 and len(units) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda u: u(), units))
    else:
        chunks = [u() for u in units]
    checks = [c for chunk in chunks for c in chunk]
    triples = sum(c.cells for c in checks)
    return SuiteResult(suite_id, checks, triples, time.perf_counter() - start)


def run_suites(
    suite_ids: Sequence[str],
    instances: Optional[Sequence[str]] = None,
    workers: int = 1,
) -> list[SuiteResult]:
    return [run_suite(s, instances, workers) for s in suite_ids]


def render_report(results: Sequence[SuiteResult]) -> str:
    lines = []
    for res in results:
        lines.extend(res.result_lines())
    return "\n".join(lines) + "\n"


def render_summary(results: Sequence[SuiteResult]) -> str:
    width = max(len(r.suite) for r in results)
    lines = []
    for res in results:
        status = "pass" if res.passed else "FAIL"
        lines.append(
            f"{res.suite:<{width}}  {status}  checks={len(res.checks)}"
            f" failures={len(res.failures())}"
        )
    return "\n".join(lines) + "\n"
