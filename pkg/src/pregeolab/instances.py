"""Concrete instances: closure operators, graphs with their stationary
independence relation, linear orders with the dividing relation, and a
line-oriented instance file format.

Element conventions:
  * linear instances: elements are column indices into the vector list
  * graph instances: vertices 0..n-1, edges unordered pairs
  * order instances: element i carries the i-th point of a strictly
    increasing rational sequence
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from .closure import ClosureOperator, Pregeometry, from_table as operator_from_table, trivial_closure
from .lattice import GroundSet, elements_of, mask_of, parse_mask
from .relcalc import TernaryRelation, rel_intersection


# ---------------------------------------------------------------------------
# Closure operator constructors


def gebert_closure(size: int) -> ClosureOperator:
    """Initial-segment closure: cl(A) = {0, ..., max A}, cl(empty) = empty.

    A closure operator that is not a pregeometry; its nonempty
    independent sets are exactly the singletons, so sets of two or more
    elements have no basis inside their own closure.
    """
    if size < 1:
        raise ValueError("initial-segment closure needs at least one element")
    ground = GroundSet(size)
    table = [0] + [
        (1 << m.bit_length()) - 1 for m in range(1, ground.subset_count)
    ]
    return operator_from_table(ground, table)


def uniform_pregeometry(rank: int, size: int) -> Pregeometry:
    """Sets with fewer than `rank` elements are closed; the rest span everything."""
    if not 0 <= rank <= size:
        raise ValueError("need 0 <= rank <= size")
    ground = GroundSet(size)
    table = [
        m if bin(m).count("1") < rank else ground.full_mask
        for m in range(ground.subset_count)
    ]
    return Pregeometry(operator_from_table(ground, table))


def linear_pregeometry(vectors: Sequence[Sequence[int]], modulus: int) -> Pregeometry:
    """Span closure on a list of column vectors over GF(modulus).

    cl(A) = { i : vectors[i] lies in the span of {vectors[j] : j in A} }.
    Supported moduli: 2 and 3.
    """
    if modulus not in (2, 3):
        raise ValueError("only GF(2) and GF(3) are supported")
    cols = np.array([list(v) for v in vectors], dtype=np.int64).T % modulus
    if cols.ndim != 2 or cols.shape[1] == 0:
        raise ValueError("need at least one vector")
    dim, n = cols.shape
    ground = GroundSet(n)
    # enumerate all span members per subset via rank comparison
    table = []
    for m in range(ground.subset_count):
        base = cols[:, elements_of(m)]
        r0 = _gf_rank(base, modulus)
        closed = m
        for j in range(n):
            if closed >> j & 1:
                continue
            aug = np.concatenate([base, cols[:, j : j + 1]], axis=1)
            if _gf_rank(aug, modulus) == r0:
                closed |= 1 << j
        table.append(closed)
    return Pregeometry(operator_from_table(ground, table))


def _gf_rank(matrix: np.ndarray, modulus: int) -> int:
    """Row reduction rank over GF(p), tiny sizes only."""
    m = matrix.copy() % modulus
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r, c] % modulus), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        inv = pow(int(m[rank, c]), modulus - 2, modulus)
        m[rank] = m[rank] * inv % modulus
        for r in range(rows):
            if r != rank and m[r, c]:
                m[r] = (m[r] - m[r, c] * m[rank]) % modulus
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Graphs


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..size-1."""

    size: int
    edges: frozenset[frozenset[int]]

    @classmethod
    def build(cls, size: int, pairs: Sequence[tuple[int, int]]) -> "Graph":
        edges = set()
        for u, v in pairs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < size and 0 <= v < size):
                raise ValueError(f"edge {u}-{v} out of range")
            edges.add(frozenset((u, v)))
        return cls(size, frozenset(edges))

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edges

    def adjacency_masks(self) -> list[int]:
        adj = [0] * self.size
        for e in self.edges:
            u, v = sorted(e)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.size)

    def degree_sequence(self) -> tuple[int, ...]:
        adj = self.adjacency_masks()
        return tuple(sorted(bin(a).count("1") for a in adj))


def rel_st(graph: Graph) -> TernaryRelation:
    """Stationary independence on a graph.

    A is independent from B over C when A and B meet inside C and every
    edge between A and B has an endpoint in C (no new connections appear
    when A and B are put together over C).
    """
    ground = graph.ground
    adj = graph.adjacency_masks()
    count = ground.subset_count

    def fn(a: int, b: int, c: int) -> bool:
        if a & b & ~c:
            return False
        for u in elements_of(a & ~c):
            if adj[u] & b & ~c:
                return False
        return True

    def builder() -> np.ndarray:
        masks = np.arange(count)
        table = np.empty((count, count, count), dtype=bool)
        for c in range(count):
            # cross[a] = neighbourhood of A\C as a mask
            cross = np.zeros(count, dtype=np.int64)
            for u in range(graph.size):
                in_a = ((masks & ~c) >> u & 1).astype(bool)
                cross[in_a] |= adj[u]
            meet_ok = (masks[:, None] & masks[None, :] & ~c) == 0
            edge_ok = (cross[:, None] & (masks & ~c)[None, :]) == 0
            table[:, :, c] = meet_ok & edge_ok
        return table

    return TernaryRelation(ground, "st", fn, builder=builder)


def rel_a_graph(graph: Graph) -> TernaryRelation:
    """The closure-based relation on a graph's trivial pregeometry.

    With trivial closure it reduces to "A and B meet inside C".
    """
    base = rel_intersection(graph.ground)
    return TernaryRelation(graph.ground, "a", base.fn, builder=base.builder)


class BaseMismatch(Exception):
    """The two graphs disagree on their shared base part."""


def free_amalgam(g1: Graph, g2: Graph, base: Sequence[int]) -> Graph:
    """Glue g1 and g2 along a common base, adding no new edges.

    `base` lists the vertices of the base inside g1; inside g2 the base
    occupies vertices 0..len(base)-1 in the same order, and both graphs
    must induce the same edges on it.  Non-base vertices of g2 are
    relabelled to fresh vertices after g1.
    """
    k = len(base)
    if sorted(set(base)) != sorted(base):
        raise ValueError("base vertices must be distinct")
    if any(not 0 <= v < g1.size for v in base):
        raise ValueError("base vertex out of range in first graph")
    if k > g2.size:
        raise ValueError("base larger than second graph")
    for i in range(k):
        for j in range(i + 1, k):
            if g1.has_edge(base[i], base[j]) != g2.has_edge(i, j):
                raise BaseMismatch(
                    f"edge {base[i]}-{base[j]} disagrees between the parts"
                )
    relabel = {i: base[i] for i in range(k)}
    nxt = g1.size
    for v in range(k, g2.size):
        relabel[v] = nxt
        nxt += 1
    pairs = [tuple(sorted(e)) for e in g1.edges]
    for e in g2.edges:
        u, v = sorted(e)
        ru, rv = relabel[u], relabel[v]
        if ru in base and rv in base:
            continue
        pairs.append((min(ru, rv), max(ru, rv)))
    return Graph.build(nxt, pairs)


def isomorphic_over_base(g1: Graph, g2: Graph, base: Sequence[int]) -> bool:
    """True when some isomorphism g1 -> g2 fixes every base vertex.

    Brute force over permutations of the non-base vertices; intended for
    the small amalgamation checks only (at most ~6 free vertices).
    """
    if g1.size != g2.size:
        return False
    fixed = set(base)
    free = [v for v in range(g1.size) if v not in fixed]
    if g1.degree_sequence() != g2.degree_sequence():
        return False
    for perm in permutations(free):
        mapping = {v: v for v in fixed}
        mapping.update(zip(free, perm))
        if all(
            g2.has_edge(mapping[u], mapping[v]) == g1.has_edge(u, v)
            for u in range(g1.size)
            for v in range(u + 1, g1.size)
        ):
            return True
    return False


# ---------------------------------------------------------------------------
# Linear orders and dividing


@dataclass(frozen=True)
class OrderedConfig:
    """Finite set of rational points on a dense linear order without ends."""

    points: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError("points must be strictly increasing")

    @property
    def ground(self) -> GroundSet:
        return GroundSet(len(self.points))


def rel_div(config: OrderedConfig, include_degenerate: bool = True) -> TernaryRelation:
    """Dividing independence on a dense linear order.

    A is independent from B over C when every closed interval with
    endpoints in B (including degenerate one-point intervals, unless
    disabled) that meets A also meets C.  Because the points are stored
    in increasing order, the interval spanned by points i <= j contains
    exactly the points i..j.
    """
    ground = config.ground
    n = len(config.points)
    name = "div" if include_degenerate else "div-strict"
    spans = [
        (i, j, ((1 << (j + 1)) - 1) & ~((1 << i) - 1))
        for i in range(n)
        for j in range(i if include_degenerate else i + 1, n)
    ]

    def fn(a: int, b: int, c: int) -> bool:
        for i, j, span in spans:
            if b >> i & 1 and b >> j & 1 and a & span and not c & span:
                return False
        return True

    def builder() -> np.ndarray:
        count = ground.subset_count
        masks = np.arange(count)
        table = np.ones((count, count, count), dtype=bool)
        for i, j, span in spans:
            b_has = ((masks >> i & 1) & (masks >> j & 1)).astype(bool)
            a_meets = (masks & span) != 0
            c_misses = (masks & span) == 0
            table &= ~(a_meets[:, None, None] & b_has[None, :, None]
                       & c_misses[None, None, :])
        return table

    return TernaryRelation(ground, name, fn, builder=builder)


# ---------------------------------------------------------------------------
# Catalogue and file format


GF2_LINE = ((1, 0), (0, 1), (1, 1))
GF3_LINE = ((1, 0), (0, 1), (1, 1), (1, 2))
GF2_PLANE = tuple(
    (x, y, z)
    for x in (0, 1)
    for y in (0, 1)
    for z in (0, 1)
    if (x, y, z) != (0, 0, 0)
)


@dataclass(frozen=True)
class Instance:
    name: str
    kind: str  # closure | pregeometry | graph | order
    description: str
    op: Optional[ClosureOperator] = None
    pg: Optional[Pregeometry] = field(default=None, compare=False)
    graph: Optional[Graph] = None
    config: Optional[OrderedConfig] = None

    @property
    def ground(self) -> GroundSet:
        for obj in (self.op, self.graph, self.config):
            if obj is not None:
                return obj.ground
        assert self.pg is not None
        return self.pg.ground


def _pg_instance(name: str, pg: Pregeometry, desc: str) -> Instance:
    return Instance(name, "pregeometry", desc, op=pg.op, pg=pg)


def _path_graph(n: int) -> Graph:
    return Graph.build(n, [(i, i + 1) for i in range(n - 1)])


def _dlo(n: int) -> OrderedConfig:
    return OrderedConfig(tuple(Fraction(i) for i in range(n)))


def catalog() -> dict[str, Instance]:
    """The built-in instance library, keyed by short name."""
    items = [
        _pg_instance("trivial3", Pregeometry(trivial_closure(GroundSet(3))),
                     "trivial closure on 3 elements"),
        _pg_instance("trivial4", Pregeometry(trivial_closure(GroundSet(4))),
                     "trivial closure on 4 elements"),
        _pg_instance("trivial5", Pregeometry(trivial_closure(GroundSet(5))),
                     "trivial closure on 5 elements"),
        Instance("gebert4", "closure",
                 "initial-segment closure on 4 elements",
                 op=gebert_closure(4)),
        Instance("gebert8", "closure",
                 "initial-segment closure on 8 elements",
                 op=gebert_closure(8)),
        _pg_instance("u23", uniform_pregeometry(2, 3),
                     "uniform rank 2 on 3 elements"),
        _pg_instance("u34", uniform_pregeometry(3, 4),
                     "uniform rank 3 on 4 elements"),
        _pg_instance("u36", uniform_pregeometry(3, 6),
                     "uniform rank 3 on 6 elements"),
        _pg_instance("gf2-3", linear_pregeometry(GF2_LINE, 2),
                     "all nonzero vectors of GF(2)^2"),
        _pg_instance("gf3-4", linear_pregeometry(GF3_LINE, 3),
                     "one vector per line of GF(3)^2"),
        _pg_instance("gf2-7", linear_pregeometry(GF2_PLANE, 2),
                     "all nonzero vectors of GF(2)^3"),
    ]
    graphs = {
        "path3": _path_graph(3),
        "path4": _path_graph(4),
        "triangle3": Graph.build(3, [(0, 1), (1, 2), (0, 2)]),
        "star4": Graph.build(4, [(0, 1), (0, 2), (0, 3)]),
        "empty4": Graph.build(4, []),
    }
    for name, g in graphs.items():
        items.append(Instance(name, "graph", f"graph on {g.size} vertices "
                              f"with {len(g.edges)} edges", graph=g))
    for n in (4, 5, 6):
        items.append(Instance(f"dlo{n}", "order",
                              f"{n} rational points in increasing order",
                              config=_dlo(n)))
    return {inst.name: inst for inst in items}


class InstanceFormatError(ValueError):
    """Malformed instance file."""


_KNOWN_KEYS = {"type", "size", "rank", "field", "vectors", "edges", "points"}


def parse_instance(text: str, name: str = "file") -> Instance:
    """Parse the line-oriented instance format.

    Lines are `key = value`; `#` starts a comment.  The `type` key picks
    the constructor; `cl {..} = {..}` lines define explicit tables.
    """
    fields: dict[str, str] = {}
    cl_lines: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InstanceFormatError(f"line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key.startswith("cl "):
            cl_lines.append((lineno, key[3:], value))
            continue
        if key not in _KNOWN_KEYS:
            raise InstanceFormatError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise InstanceFormatError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value
    kind = fields.get("type")
    if kind is None:
        raise InstanceFormatError("missing required key 'type'")
    if cl_lines and kind != "table":
        raise InstanceFormatError("cl lines only allowed for type = table")
    try:
        return _build_instance(kind, fields, cl_lines, name)
    except InstanceFormatError:
        raise
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc


def _int_field(fields: dict[str, str], key: str) -> int:
    if key not in fields:
        raise InstanceFormatError(f"missing required key {key!r}")
    try:
        return int(fields[key])
    except ValueError:
        raise InstanceFormatError(f"key {key!r} must be an integer") from None


def _build_instance(
    kind: str, fields: dict[str, str], cl_lines: list[tuple[int, str, str]],
    name: str
) -> Instance:
    if kind == "trivial":
        size = _int_field(fields, "size")
        pg = Pregeometry(trivial_closure(GroundSet(size)))
        return _pg_instance(name, pg, f"trivial closure on {size} elements")
    if kind == "gebert":
        size = _int_field(fields, "size")
        return Instance(name, "closure",
                        f"initial-segment closure on {size} elements",
                        op=gebert_closure(size))
    if kind == "uniform":
        size = _int_field(fields, "size")
        rank = _int_field(fields, "rank")
        return _pg_instance(name, uniform_pregeometry(rank, size),
                            f"uniform rank {rank} on {size} elements")
    if kind == "linear":
        fld = fields.get("field", "gf2")
        if fld not in ("gf2", "gf3"):
            raise InstanceFormatError(f"unknown field {fld!r}")
        modulus = 2 if fld == "gf2" else 3
        if "vectors" not in fields:
            raise InstanceFormatError("linear instance needs 'vectors'")
        vectors = []
        for chunk in fields["vectors"].split():
            vectors.append(tuple(int(ch) for ch in chunk))
        if len({len(v) for v in vectors}) > 1:
            raise InstanceFormatError("vectors must share a dimension")
        return _pg_instance(name, linear_pregeometry(vectors, modulus),
                            f"{len(vectors)} vectors over {fld}")
    if kind == "table":
        size = _int_field(fields, "size")
        ground = GroundSet(size)
        mapping: dict[int, int] = {}
        for lineno, key_text, value_text in cl_lines:
            try:
                arg = parse_mask(key_text, size)
                val = parse_mask(value_text, size)
            except ValueError as exc:
                raise InstanceFormatError(f"line {lineno}: {exc}") from exc
            if arg in mapping:
                raise InstanceFormatError(f"line {lineno}: duplicate cl line")
            mapping[arg] = val
        op = operator_from_table(ground, mapping)
        return Instance(name, "closure", f"explicit table on {size} elements",
                        op=op)
    if kind == "graph":
        size = _int_field(fields, "size")
        pairs = []
        for chunk in fields.get("edges", "").replace(",", " ").split():
            u, _, v = chunk.partition("-")
            try:
                pairs.append((int(u), int(v)))
            except ValueError:
                raise InstanceFormatError(f"bad edge {chunk!r}") from None
        g = Graph.build(size, pairs)
        return Instance(name, "graph",
                        f"graph on {size} vertices with {len(g.edges)} edges",
                        graph=g)
    if kind == "order":
        if "points" not in fields:
            raise InstanceFormatError("order instance needs 'points'")
        pts = tuple(Fraction(p) for p in fields["points"].split())
        return Instance(name, "order", f"{len(pts)} rational points",
                        config=OrderedConfig(pts))
    raise InstanceFormatError(f"unknown instance type {kind!r}")


def render_instance(inst: Instance) -> str:
    """Serialise an instance back to the file format (tables as cl lines)."""
    if inst.kind == "graph":
        assert inst.graph is not None
        edges = " ".join(
            f"{u}-{v}" for u, v in sorted(tuple(sorted(e)) for e in inst.graph.edges)
        )
        lines = [f"type = graph", f"size = {inst.graph.size}"]
        if edges:
            lines.append(f"edges = {edges}")
        return "\n".join(lines) + "\n"
    if inst.kind == "order":
        assert inst.config is not None
        pts = " ".join(str(p) for p in inst.config.points)
        return f"type = order\npoints = {pts}\n"
    assert inst.op is not None
    lines = [f"type = table", f"size = {inst.op.ground.size}"]
    from .lattice import format_mask

    for m, cm in enumerate(inst.op.table):
        lines.append(f"cl {format_mask(m)} = {format_mask(cm)}")
    return "\n".join(lines) + "\n"
