"""Ternary relations over subset triples and the relation transformers.

A relation carries two evaluation routes: a scalar predicate on masks
(the definitional route) and an optional vectorized builder that fills
the full 2^(3n) truth table with numpy.  The two routes are independent
implementations and are cross-checked in the test suite; all heavy
scanning (axiom checks, table comparisons) runs on the materialized
table.

Transformer stacks materialize their base relation once: the inner
for-all loop of a monotonisation over an unmaterialized base would be
quadratic-exponential.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .closure import ClosureOperator, MaskLike, Pregeometry, as_mask
from .geometry import dim_table
from .lattice import GroundSet

# Default budget: 2^24 truth-table cells, i.e. ground size up to 8.
DEFAULT_TABLE_CAP_BITS = 1 << 24


class CapExceeded(Exception):
    """Materialization would exceed the configured memory budget."""


@dataclass
class TernaryRelation:
    """A predicate over (A, B, C) subset triples; C is the base set."""

    ground: GroundSet
    name: str
    fn: Callable[[int, int, int], bool]
    builder: Optional[Callable[[], np.ndarray]] = None
    table: Optional[np.ndarray] = field(default=None, repr=False)

    def holds(self, a: MaskLike, b: MaskLike, c: MaskLike) -> bool:
        am, bm, cm = as_mask(a), as_mask(b), as_mask(c)
        if self.table is not None:
            return bool(self.table[am, bm, cm])
        return bool(self.fn(am, bm, cm))

    __call__ = holds


def materialize(
    r: TernaryRelation, cap_bits: int = DEFAULT_TABLE_CAP_BITS
) -> TernaryRelation:
    """Fill the truth table exhaustively; evaluation becomes a lookup."""
    if r.table is not None:
        return r
    count = r.ground.subset_count
    if count**3 > cap_bits:
        raise CapExceeded(
            f"truth table needs {count ** 3} cells, cap is {cap_bits}"
        )
    if r.builder is not None:
        table = r.builder()
    else:
        table = np.empty((count, count, count), dtype=bool)
        fn = r.fn
        for a in range(count):
            for b in range(count):
                row = table[a, b]
                for c in range(count):
                    row[c] = fn(a, b, c)
    return TernaryRelation(r.ground, r.name, r.fn, r.builder, table)


def from_table(ground: GroundSet, name: str, table: np.ndarray) -> TernaryRelation:
    """Wrap an explicit truth table (used for enumerated/random relations)."""
    count = ground.subset_count
    if table.shape != (count, count, count):
        raise ValueError("table shape does not match the ground set")
    t = table.astype(bool)
    return TernaryRelation(ground, name, lambda a, b, c: bool(t[a, b, c]), None, t)


def random_relation(ground: GroundSet, seed: int) -> TernaryRelation:
    rng = np.random.default_rng(seed)
    count = ground.subset_count
    table = rng.random((count, count, count)) < 0.5
    return from_table(ground, f"rand{seed}", table)


def always_true(ground: GroundSet) -> TernaryRelation:
    count = ground.subset_count
    return from_table(
        ground, "true", np.ones((count, count, count), dtype=bool)
    )


# ---------------------------------------------------------------------------
# Built-in relations


def rel_intersection(ground: GroundSet) -> TernaryRelation:
    """(A, B, C) |-> A & B <= C."""

    def fn(a: int, b: int, c: int) -> bool:
        return a & b & ~c == 0

    def build() -> np.ndarray:
        count = ground.subset_count
        masks = np.arange(count)
        meet = masks[:, None] & masks[None, :]
        table = np.empty((count, count, count), dtype=bool)
        for c in range(count):
            table[:, :, c] = meet & ~c == 0
        return table

    return TernaryRelation(ground, "int", fn, build)


def rel_a(op: ClosureOperator) -> TernaryRelation:
    """(A, B, C) |-> cl(A+C) & cl(B+C) == cl(C)."""
    cl = op.table

    def fn(a: int, b: int, c: int) -> bool:
        return cl[a | c] & cl[b | c] == cl[c]

    def build() -> np.ndarray:
        count = op.ground.subset_count
        masks = np.arange(count)
        cl_arr = np.array(cl)
        table = np.empty((count, count, count), dtype=bool)
        for c in range(count):
            u = cl_arr[masks | c]
            table[:, :, c] = (u[:, None] & u[None, :]) == cl[c]
        return table

    return TernaryRelation(op.ground, "a", fn, build)


def rel_cl(pg: Pregeometry) -> TernaryRelation:
    """(A, B, C) |-> dim(A/B+C) == dim(A/C).

    On a finite ground set the finite-subset quantifier in the definition
    collapses to A itself; the collapse is verified as a test property.
    """
    dims = dim_table(pg)

    def fn(a: int, b: int, c: int) -> bool:
        return dims[a][b | c] == dims[a][c]

    def build() -> np.ndarray:
        count = pg.ground.subset_count
        masks = np.arange(count)
        d = np.array(dims)
        table = np.empty((count, count, count), dtype=bool)
        for c in range(count):
            table[:, :, c] = d[:, masks | c] == d[:, c][:, None]
        return table

    return TernaryRelation(pg.ground, "cl", fn, build)


# ---------------------------------------------------------------------------
# Transformers


def _suffix(base: TernaryRelation, suffix: str) -> str:
    name = base.name
    if name == "a" or name.startswith(("a", "int", "st", "div", "rand", "true")):
        return name + suffix
    return f"({name}){suffix}"


def monotonise_M(r: TernaryRelation, op: ClosureOperator) -> TernaryRelation:
    """Force right base monotonicity with respect to op:
    (A, B, C) |-> r(A, B, X) for all X with C <= X <= cl(B+C)."""
    if op.ground != r.ground:
        raise ValueError("relation and operator live on different ground sets")
    cl = op.table

    def fn(a: int, b: int, c: int) -> bool:
        free = cl[b | c] & ~c
        sub = free
        while True:
            if not r.holds(a, b, c | sub):
                return False
            if sub == 0:
                return True
            sub = (sub - 1) & free

    def build() -> np.ndarray:
        base = materialize(r).table
        count = r.ground.subset_count
        table = np.empty((count, count, count), dtype=bool)
        for c in range(count):
            for b in range(count):
                free = cl[b | c] & ~c
                xs = []
                sub = free
                while True:
                    xs.append(c | sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & free
                table[:, b, c] = base[:, b, xs].all(axis=1)
        return table

    return TernaryRelation(r.ground, _suffix(r, "M"), fn, build)


def monotonise_m(r: TernaryRelation) -> TernaryRelation:
    """Naive monotonisation: X ranges over C <= X <= B+C."""
    from .closure import trivial_closure

    out = monotonise_M(r, trivial_closure(r.ground))
    out.name = _suffix(r, "m")
    return out


def closure_extend_c(r: TernaryRelation, op: ClosureOperator) -> TernaryRelation:
    """Force right closure: (A, B, C) |-> r(A, cl(B+C), C)."""
    if op.ground != r.ground:
        raise ValueError("relation and operator live on different ground sets")
    cl = op.table

    def fn(a: int, b: int, c: int) -> bool:
        return r.holds(a, cl[b | c], c)

    def build() -> np.ndarray:
        base = materialize(r).table
        count = r.ground.subset_count
        masks = np.arange(count)
        cl_arr = np.array(cl)
        table = np.empty((count, count, count), dtype=bool)
        for c in range(count):
            table[:, :, c] = base[:, cl_arr[masks | c], c]
        return table

    return TernaryRelation(r.ground, _suffix(r, "c"), fn, build)


def opposite(r: TernaryRelation) -> TernaryRelation:
    """Swap the two sides: (A, B, C) |-> r(B, A, C)."""

    def fn(a: int, b: int, c: int) -> bool:
        return r.holds(b, a, c)

    def build() -> np.ndarray:
        return materialize(r).table.transpose(1, 0, 2).copy()

    return TernaryRelation(r.ground, f"opp({r.name})", fn, build)


def rel_sup(ground: GroundSet) -> TernaryRelation:
    """(A, B, C) |-> max A <= max C or max B <= max C, with max {} = -inf.

    Closed-form description of the closure-meeting relation under the
    initial-segment operator; the agreement is verified in tests.
    """

    def top(mask: int) -> int:
        return mask.bit_length()  # order-preserving stand-in for max

    def fn(a: int, b: int, c: int) -> bool:
        return top(a) <= top(c) or top(b) <= top(c)

    def build() -> np.ndarray:
        tops = np.array([m.bit_length() for m in ground.masks()])
        table = np.empty((ground.subset_count,) * 3, dtype=bool)
        for c in range(ground.subset_count):
            tc = tops[c]
            table[:, :, c] = (tops[:, None] <= tc) | (tops[None, :] <= tc)
        return table

    return TernaryRelation(ground, "sup", fn, build)
