"""The axiom catalogue as executable predicates, exhaustive checking,
relation comparison, and counterexample search.

Every axiom is checked by a full quantifier scan over subset tuples.
Scan order is fixed: variables in statement order (A first, then the
base C, then B, then D where present), each ascending by mask, so the
reported witness is the lexicographically least violating tuple and is
identical across runs, platforms and worker counts.

Witness tuple layout per axiom:
    EX                  (A, C)
    SYM, NOR-*, CLO-*, SCLO        (A, C, B)
    AREF                ({a}, C)
    MON-*, BMON-*, TRA-*, TRA-STRONG, BMON-STRONG, FREE    (A, C, B, D)
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .closure import ClosureOperator
from .lattice import GroundSet, format_mask
from .relcalc import CapExceeded, TernaryRelation, from_table, materialize

# Unconstrained four-variable scans build a dense 2^(4n) array.
DENSE_4VAR_MAX_SIZE = 6


class MissingClosure(Exception):
    """The axiom needs an ambient closure operator and none was given."""


class AxiomId(enum.Enum):
    FIN = "FIN"
    EX = "EX"
    SYM = "SYM"
    LOC = "LOC"
    NOR_L = "NOR-L"
    NOR_R = "NOR-R"
    MON_L = "MON-L"
    MON_R = "MON-R"
    BMON_L = "BMON-L"
    BMON_R = "BMON-R"
    TRA_L = "TRA-L"
    TRA_R = "TRA-R"
    TRA_STRONG = "TRA-STRONG"
    BMON_STRONG = "BMON-STRONG"
    AREF = "AREF"
    CLO_L = "CLO-L"
    CLO_R = "CLO-R"
    SCLO = "SCLO"
    FREE = "FREE"

    @property
    def needs_closure(self) -> bool:
        return self in (AxiomId.AREF, AxiomId.CLO_L, AxiomId.CLO_R, AxiomId.SCLO)

    @classmethod
    def parse(cls, text: str) -> "AxiomId":
        key = text.strip().upper()
        for ax in cls:
            if ax.value == key:
                return ax
        raise ValueError(f"unknown axiom id: {text!r}")


#: Stable order used by check_all and suite reports.
AXIOM_ORDER: tuple[AxiomId, ...] = tuple(AxiomId)

_VACUOUS_NOTES = {
    AxiomId.FIN: "every subset of a finite ground set is finite",
    AxiomId.LOC: "holds with cardinal bound n+1 on a finite ground set",
}


@dataclass(frozen=True)
class AxiomReport:
    axiom: AxiomId
    relation: str
    status: str  # pass | fail | vacuous
    witness: Optional[tuple[int, ...]]
    note: str = ""
    elapsed: float = 0.0

    def result_line(self) -> str:
        """Machine-readable line: RESULT <relation> <axiom> <status> [witness=...]."""
        parts = [f"RESULT {self.relation} {self.axiom.value} {self.status}"]
        if self.witness is not None:
            parts.append(
                "witness=" + ";".join(format_mask(m) for m in self.witness)
            )
        return " ".join(parts)


def _first_true(violations: np.ndarray) -> Optional[tuple[int, ...]]:
    if not violations.any():
        return None
    flat = int(np.argmax(violations))
    return tuple(int(v) for v in np.unravel_index(flat, violations.shape))


def _scan_3var(r: TernaryRelation, body) -> Optional[tuple[int, ...]]:
    """Dense scan in (A, C, B) order; body(c) returns the (A, B) violation slice."""
    count = r.ground.subset_count
    viol = np.empty((count, count, count), dtype=bool)
    for c in range(count):
        viol[:, c, :] = body(c)
    return _first_true(viol)


def _scan_4var(r: TernaryRelation, body) -> Optional[tuple[int, ...]]:
    """Dense scan in (A, C, B, D) order; body(c) returns the (A, B, D) slice."""
    if r.ground.size > DENSE_4VAR_MAX_SIZE:
        raise CapExceeded(
            f"four-variable scan needs ground size <= {DENSE_4VAR_MAX_SIZE}, "
            f"got {r.ground.size}"
        )
    count = r.ground.subset_count
    viol = np.empty((count, count, count, count), dtype=bool)
    for c in range(count):
        viol[:, c] = body(c)
    return _first_true(viol)


def _scan_chain(t: np.ndarray, chain_body) -> Optional[tuple[int, ...]]:
    """Sparse scan for axioms constrained by C <= B <= D.

    chain_body(c, b, d) returns the boolean violation vector over A.
    Keeps the lexicographically least (A, C, B, D) across all chains, so
    it agrees with the dense scan while staying feasible for size 7..8.
    """
    count = t.shape[0]
    full = count - 1
    best: Optional[tuple[int, int, int, int]] = None
    for c in range(count):
        rest = full & ~c
        b_extra = rest
        while True:
            b = c | b_extra
            d_free = full & ~b
            d_extra = d_free
            while True:
                d = b | d_extra
                vec = chain_body(c, b, d)
                if vec.any():
                    a = int(np.argmax(vec))
                    cand = (a, c, b, d)
                    if best is None or cand < best:
                        best = cand
                if d_extra == 0:
                    break
                d_extra = (d_extra - 1) & d_free
            if b_extra == 0:
                break
            b_extra = (b_extra - 1) & rest
    return best


def _require_op(ax: AxiomId, op: Optional[ClosureOperator]) -> ClosureOperator:
    if op is None:
        raise MissingClosure(f"axiom {ax.value} needs a closure operator")
    return op


def _find_violation(
    r: TernaryRelation, ax: AxiomId, op: Optional[ClosureOperator]
) -> Optional[tuple[int, ...]]:
    t3 = materialize(r).table
    count = r.ground.subset_count
    masks = np.arange(count)
    dense4 = r.ground.size <= DENSE_4VAR_MAX_SIZE
    if dense4:
        orm = masks[:, None] | masks[None, :]
        subm = (masks[:, None] & ~masks[None, :]) == 0

    if ax is AxiomId.EX:
        return _first_true(~t3[:, masks, masks])

    if ax is AxiomId.SYM:
        return _scan_3var(r, lambda c: t3[:, :, c] & ~t3[:, :, c].T)

    if ax is AxiomId.NOR_R:
        return _scan_3var(r, lambda c: t3[:, :, c] & ~t3[:, masks | c, c])

    if ax is AxiomId.NOR_L:
        return _scan_3var(r, lambda c: t3[:, :, c] & ~t3[masks | c, :, c])

    if ax in (AxiomId.CLO_R, AxiomId.CLO_L, AxiomId.SCLO, AxiomId.AREF):
        cl = np.array(_require_op(ax, op).table)
        if ax is AxiomId.CLO_R:
            return _scan_3var(r, lambda c: t3[:, :, c] & ~t3[:, cl, c])
        if ax is AxiomId.CLO_L:
            return _scan_3var(r, lambda c: t3[:, :, c] & ~t3[cl, :, c])
        if ax is AxiomId.SCLO:

            def sclo_body(c: int) -> np.ndarray:
                closed = cl[masks | c]
                rhs = t3[closed[:, None], closed[None, :], cl[c]]
                return t3[:, :, c] ^ rhs

            return _scan_3var(r, sclo_body)
        # AREF: scan singletons a, then bases C.
        for a in range(r.ground.size):
            bit = 1 << a
            for c in range(count):
                if t3[bit, bit, c] and not cl[c] >> a & 1:
                    return (bit, c)
        return None

    if ax is AxiomId.MON_R:

        def mon_r_body(c: int) -> np.ndarray:
            t = t3[:, :, c]
            return t[:, orm] & ~t[:, :, None]

        return _scan_4var(r, mon_r_body)

    if ax is AxiomId.MON_L:

        def mon_l_body(c: int) -> np.ndarray:
            t = t3[:, :, c]
            return t[orm].transpose(0, 2, 1) & ~t[:, :, None]

        return _scan_4var(r, mon_l_body)

    if ax is AxiomId.BMON_R:
        if dense4:
            # viol[A,C,B,D] = C<=B<=D and r(A, D, C) and not r(A, D, B)
            z = t3.transpose(0, 2, 1)  # z[a, b, d] = r(a, d, b)

            def bmon_r_body(c: int) -> np.ndarray:
                cond = subm[c][:, None] & subm
                return cond[None] & t3[:, :, c][:, None, :] & ~z

            return _scan_4var(r, bmon_r_body)
        return _scan_chain(t3, lambda c, b, d: t3[:, d, c] & ~t3[:, d, b])

    if ax is AxiomId.BMON_L:
        if dense4:
            x = t3.transpose(1, 2, 0)  # x[a, b, d] = r(d, a, b)

            def bmon_l_body(c: int) -> np.ndarray:
                cond = subm[c][:, None] & subm
                return cond[None] & t3[:, :, c].T[:, None, :] & ~x

            return _scan_4var(r, bmon_l_body)
        return _scan_chain(t3, lambda c, b, d: t3[d, :, c] & ~t3[d, :, b])

    if ax is AxiomId.TRA_R:
        if dense4:
            z = t3.transpose(0, 2, 1)

            def tra_r_body(c: int) -> np.ndarray:
                t = t3[:, :, c]
                cond = subm[c][:, None] & subm
                return cond[None] & t[:, :, None] & z & ~t[:, None, :]

            return _scan_4var(r, tra_r_body)
        return _scan_chain(
            t3, lambda c, b, d: t3[:, b, c] & t3[:, d, b] & ~t3[:, d, c]
        )

    if ax is AxiomId.TRA_L:
        if dense4:
            x = t3.transpose(1, 2, 0)

            def tra_l_body(c: int) -> np.ndarray:
                t = t3[:, :, c].T  # t[a, y] = r(y, a, c)
                cond = subm[c][:, None] & subm
                return cond[None] & t[:, :, None] & x & ~t[:, None, :]

            return _scan_4var(r, tra_l_body)
        return _scan_chain(
            t3, lambda c, b, d: t3[b, :, c] & t3[d, :, b] & ~t3[d, :, c]
        )

    if ax is AxiomId.TRA_STRONG:

        def tra_s_body(c: int) -> np.ndarray:
            t = t3[:, :, c]
            prem2 = t3[:, :, masks | c].transpose(0, 2, 1)
            return t[:, :, None] & prem2 & ~t[:, orm]

        return _scan_4var(r, tra_s_body)

    if ax is AxiomId.BMON_STRONG:

        def bmon_s_body(c: int) -> np.ndarray:
            t = t3[:, :, c]
            return t[:, orm] & ~t3[:, :, masks | c]

        return _scan_4var(r, bmon_s_body)

    if ax is AxiomId.FREE:

        def free_body(c: int) -> np.ndarray:
            t = t3[:, :, c]
            covers = subm[c & orm]  # [a, b, d]: C & (A|B) <= D
            inside = subm[:, c][None, None, :]  # D <= C
            return t[:, :, None] & covers & inside & ~t3

        return _scan_4var(r, free_body)

    raise ValueError(f"axiom {ax} has no scan")  # pragma: no cover


def check_axiom(
    r: TernaryRelation, ax: AxiomId, op: Optional[ClosureOperator] = None
) -> AxiomReport:
    """Exhaustively check one axiom; first violation in scan order is reported."""
    start = time.perf_counter()
    if ax in (AxiomId.FIN, AxiomId.LOC):
        return AxiomReport(
            ax, r.name, "vacuous", None, _VACUOUS_NOTES[ax],
            time.perf_counter() - start,
        )
    if ax.needs_closure:
        _require_op(ax, op)
    witness = _find_violation(r, ax, op)
    status = "pass" if witness is None else "fail"
    return AxiomReport(ax, r.name, status, witness, "", time.perf_counter() - start)


def check_all(
    r: TernaryRelation,
    op: Optional[ClosureOperator] = None,
    axiom_ids: Optional[Sequence[AxiomId]] = None,
) -> list[AxiomReport]:
    """One report per applicable axiom, in stable catalogue order."""
    selected = list(axiom_ids) if axiom_ids is not None else list(AXIOM_ORDER)
    reports = []
    for ax in selected:
        if ax.needs_closure and op is None:
            continue
        reports.append(check_axiom(r, ax, op))
    return reports


def evaluate_axiom_body(
    r: TernaryRelation,
    ax: AxiomId,
    witness: Sequence[int],
    op: Optional[ClosureOperator] = None,
) -> bool:
    """Re-evaluate the quantifier-free body of an axiom on one tuple.

    Returns True when the tuple satisfies the implication (i.e. is NOT a
    violation).  Used for witness soundness checks.
    """
    i = lambda k: int(witness[k])  # noqa: E731

    def sub(x: int, y: int) -> bool:
        return x & ~y == 0

    if ax is AxiomId.EX:
        return r.holds(i(0), i(1), i(1))
    if ax is AxiomId.SYM:
        return not r.holds(i(0), i(2), i(1)) or r.holds(i(2), i(0), i(1))
    if ax is AxiomId.NOR_R:
        return not r.holds(i(0), i(2), i(1)) or r.holds(i(0), i(2) | i(1), i(1))
    if ax is AxiomId.NOR_L:
        return not r.holds(i(0), i(2), i(1)) or r.holds(i(0) | i(1), i(2), i(1))
    if ax is AxiomId.AREF:
        cl = _require_op(ax, op).table
        a = i(0).bit_length() - 1
        return not r.holds(i(0), i(0), i(1)) or bool(cl[i(1)] >> a & 1)
    if ax is AxiomId.CLO_R:
        cl = _require_op(ax, op).table
        return not r.holds(i(0), i(2), i(1)) or r.holds(i(0), cl[i(2)], i(1))
    if ax is AxiomId.CLO_L:
        cl = _require_op(ax, op).table
        return not r.holds(i(0), i(2), i(1)) or r.holds(cl[i(0)], i(2), i(1))
    if ax is AxiomId.SCLO:
        cl = _require_op(ax, op).table
        a, c, b = i(0), i(1), i(2)
        return r.holds(a, b, c) == r.holds(cl[a | c], cl[b | c], cl[c])
    a, c, b, d = i(0), i(1), i(2), i(3)
    if ax is AxiomId.MON_R:
        return not r.holds(a, b | d, c) or r.holds(a, b, c)
    if ax is AxiomId.MON_L:
        return not r.holds(a | d, b, c) or r.holds(a, b, c)
    if ax is AxiomId.BMON_R:
        in_chain = sub(c, b) and sub(b, d)
        return not (in_chain and r.holds(a, d, c)) or r.holds(a, d, b)
    if ax is AxiomId.BMON_L:
        in_chain = sub(c, b) and sub(b, d)
        return not (in_chain and r.holds(d, a, c)) or r.holds(d, a, b)
    if ax is AxiomId.TRA_R:
        in_chain = sub(c, b) and sub(b, d)
        prem = in_chain and r.holds(a, b, c) and r.holds(a, d, b)
        return not prem or r.holds(a, d, c)
    if ax is AxiomId.TRA_L:
        in_chain = sub(c, b) and sub(b, d)
        prem = in_chain and r.holds(b, a, c) and r.holds(d, a, b)
        return not prem or r.holds(d, a, c)
    if ax is AxiomId.TRA_STRONG:
        prem = r.holds(a, b, c) and r.holds(a, d, b | c)
        return not prem or r.holds(a, b | d, c)
    if ax is AxiomId.BMON_STRONG:
        return not r.holds(a, b | d, c) or r.holds(a, b, c | d)
    if ax is AxiomId.FREE:
        prem = r.holds(a, b, c) and sub(c & (a | b), d) and sub(d, c)
        return not prem or r.holds(a, b, d)
    raise ValueError(f"axiom {ax} has no body")  # pragma: no cover


# ---------------------------------------------------------------------------
# Relation comparison


@dataclass(frozen=True)
class Comparison:
    verdict: str  # equal | implies | implied | incomparable
    witness: Optional[tuple[int, int, int]]  # least differing (A, B, C)


def compare(r1: TernaryRelation, r2: TernaryRelation) -> Comparison:
    """Table-level comparison; "implies" means r1 is stronger (r1 <= r2)."""
    if r1.ground != r2.ground:
        raise ValueError("relations live on different ground sets")
    t1 = materialize(r1).table
    t2 = materialize(r2).table
    diff = t1 != t2
    witness = _first_true(diff)
    if witness is None:
        return Comparison("equal", None)
    forward = not (t1 & ~t2).any()
    backward = not (t2 & ~t1).any()
    verdict = "implies" if forward else ("implied" if backward else "incomparable")
    return Comparison(verdict, witness)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# Counterexample search


@dataclass(frozen=True)
class Goal:
    """Find a relation passing all premise axioms and failing the target."""

    premises: tuple[AxiomId, ...]
    target: AxiomId


@dataclass(frozen=True)
class SearchHit:
    instance: str
    witness: tuple[int, ...]


Candidate = tuple[str, TernaryRelation, Optional[ClosureOperator]]


def search_counterexample(
    goal: Goal, candidates: Iterable[Candidate]
) -> Optional[SearchHit]:
    """Deterministic scan; first candidate meeting the goal wins."""
    for name, relation, op in candidates:
        if any(
            check_axiom(relation, p, op).status == "fail" for p in goal.premises
        ):
            continue
        report = check_axiom(relation, goal.target, op)
        if report.status == "fail":
            assert report.witness is not None
            return SearchHit(name, report.witness)
    return None


def enumerate_all_relations(ground: GroundSet) -> Iterable[TernaryRelation]:
    """All relations on the ground set, by ascending truth-table code.

    Only feasible for ground size 1 (256 relations); larger sizes are
    rejected.
    """
    count = ground.subset_count
    cells = count**3
    if cells > 8:
        raise CapExceeded(
            f"relation enumeration needs 2^{cells} tables; only size <= 1 supported"
        )
    for code in range(1 << cells):
        bits = [(code >> k) & 1 for k in range(cells)]
        table = np.array(bits, dtype=bool).reshape((count, count, count))
        yield from_table(ground, f"rel{code}", table)
