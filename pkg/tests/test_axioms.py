from itertools import product

import pytest

from pregeolab.axioms import (
    AXIOM_ORDER,
    AxiomId,
    Goal,
    MissingClosure,
    check_all,
    check_axiom,
    compare,
    enumerate_all_relations,
    evaluate_axiom_body,
    search_counterexample,
)
from pregeolab.closure import trivial_closure
from pregeolab.instances import catalog, gebert_closure, rel_st, uniform_pregeometry
from pregeolab.lattice import GroundSet
from pregeolab.relcalc import (
    CapExceeded,
    always_true,
    random_relation,
    rel_a,
    rel_cl,
    rel_intersection,
)


@pytest.fixture(scope="module")
def u34():
    return uniform_pregeometry(3, 4)


def test_axiom_id_parse():
    assert AxiomId.parse("bmon-r") is AxiomId.BMON_R
    assert AxiomId.parse("SCLO") is AxiomId.SCLO
    with pytest.raises(ValueError):
        AxiomId.parse("nope")


def test_intersection_passes_bmon_r():
    rep = check_axiom(rel_intersection(GroundSet(4)), AxiomId.BMON_R)
    assert rep.status == "pass" and rep.witness is None


def test_u34_a_fails_bmon_r_with_frozen_witness(u34):
    rep = check_axiom(rel_a(u34.op), AxiomId.BMON_R)
    assert rep.status == "fail"
    # (A, C, B, D) = ({0,1}, {}, {2}, {2,3})
    assert rep.witness == (0b0011, 0, 0b0100, 0b1100)
    assert not evaluate_axiom_body(rel_a(u34.op), AxiomId.BMON_R, rep.witness)


def test_u34_cl_passes_sym(u34):
    assert check_axiom(rel_cl(u34), AxiomId.SYM).status == "pass"


def test_fin_and_loc_are_vacuous_with_note():
    r = rel_intersection(GroundSet(3))
    for ax in (AxiomId.FIN, AxiomId.LOC):
        rep = check_axiom(r, ax)
        assert rep.status == "vacuous"
        assert rep.note
        assert rep.result_line().endswith("vacuous")


def test_missing_closure():
    r = rel_intersection(GroundSet(2))
    with pytest.raises(MissingClosure):
        check_axiom(r, AxiomId.AREF)


def test_always_true_fails_aref():
    g = GroundSet(3)
    rep = check_axiom(always_true(g), AxiomId.AREF, trivial_closure(g))
    assert rep.status == "fail"
    assert rep.witness == (0b001, 0)  # a = 0 over the empty base


def test_check_all_order_and_skip():
    g = GroundSet(2)
    r = rel_intersection(g)
    no_op = check_all(r)
    assert all(not rep.axiom.needs_closure for rep in no_op)
    with_op = check_all(r, trivial_closure(g))
    assert [rep.axiom for rep in with_op] == list(AXIOM_ORDER)


def _scalar_least_witness(r, ax, op=None):
    """Brute quantifier scan via the scalar axiom body only."""
    count = r.ground.subset_count
    arity3 = ax in (AxiomId.SYM, AxiomId.NOR_L, AxiomId.NOR_R, AxiomId.CLO_L,
                    AxiomId.CLO_R, AxiomId.SCLO)
    if ax is AxiomId.EX:
        for a, c in product(range(count), repeat=2):
            if not evaluate_axiom_body(r, ax, (a, c)):
                return (a, c)
        return None
    if ax is AxiomId.AREF:
        for a in range(r.ground.size):
            for c in range(count):
                if not evaluate_axiom_body(r, ax, (1 << a, c), op):
                    return (1 << a, c)
        return None
    arity = 3 if arity3 else 4
    for tup in product(range(count), repeat=arity):
        if not evaluate_axiom_body(r, ax, tup, op):
            return tup
    return None


@pytest.mark.parametrize(
    "axiom",
    [AxiomId.SYM, AxiomId.NOR_R, AxiomId.MON_L, AxiomId.BMON_R, AxiomId.TRA_R,
     AxiomId.BMON_STRONG, AxiomId.TRA_STRONG, AxiomId.FREE, AxiomId.SCLO,
     AxiomId.AREF, AxiomId.EX],
)
def test_witness_minimality_against_scalar_rescan(axiom):
    g = GroundSet(2)
    op = trivial_closure(g)
    for seed in range(8):
        r = random_relation(g, seed)
        rep = check_axiom(r, axiom, op)
        expected = _scalar_least_witness(r, axiom, op)
        if expected is None:
            assert rep.status == "pass"
        else:
            assert rep.status == "fail"
            assert rep.witness == expected, (axiom, seed)


def test_sparse_chain_scan_matches_dense():
    """The constrained-axiom fallback used above the dense cap must agree
    with the dense scan, witness included."""
    import pregeolab.axioms as ax_mod

    g = GroundSet(3)
    for seed in range(6):
        r = random_relation(g, seed + 100)
        for axiom in (AxiomId.BMON_R, AxiomId.BMON_L, AxiomId.TRA_R,
                      AxiomId.TRA_L):
            dense = check_axiom(r, axiom).witness
            old = ax_mod.DENSE_4VAR_MAX_SIZE
            ax_mod.DENSE_4VAR_MAX_SIZE = 0
            try:
                sparse = check_axiom(r, axiom).witness
            finally:
                ax_mod.DENSE_4VAR_MAX_SIZE = old
            assert dense == sparse, (axiom, seed)


def test_unconstrained_axiom_cap():
    r = rel_intersection(GroundSet(7))
    with pytest.raises(CapExceeded):
        check_axiom(r, AxiomId.MON_R)
    # the chain-constrained alternative still works at the same size
    assert check_axiom(r, AxiomId.BMON_R).status == "pass"


def test_derived_axiom_theorems_on_catalog():
    """Right NOR + MON + TRA force the strong transitivity form, and
    right NOR + MON + BMON force the strong base-monotonicity form."""
    checked = 0
    for inst in catalog().values():
        if inst.op is None or inst.ground.size > 5:
            continue
        for r in (rel_intersection(inst.ground), rel_a(inst.op)):
            passes = {
                ax: check_axiom(r, ax).status == "pass"
                for ax in (AxiomId.NOR_R, AxiomId.MON_R, AxiomId.TRA_R,
                           AxiomId.BMON_R)
            }
            if passes[AxiomId.NOR_R] and passes[AxiomId.MON_R]:
                if passes[AxiomId.TRA_R]:
                    assert check_axiom(r, AxiomId.TRA_STRONG).status == "pass"
                    checked += 1
                if passes[AxiomId.BMON_R]:
                    assert check_axiom(r, AxiomId.BMON_STRONG).status == "pass"
                    checked += 1
    assert checked > 5


def test_rel_a_always_aref_and_sclo():
    for inst in catalog().values():
        if inst.op is None or inst.ground.size > 5:
            continue
        r = rel_a(inst.op)
        assert check_axiom(r, AxiomId.AREF, inst.op).status == "pass"
        assert check_axiom(r, AxiomId.SCLO, inst.op).status == "pass"


def test_compare_examples(u34):
    cmp = compare(rel_cl(u34), rel_a(u34.op))
    assert cmp.verdict == "implies"
    assert cmp.witness == (0b0011, 0b1100, 0)  # least differing (A, B, C)
    assert compare(rel_a(u34.op), rel_cl(u34)).verdict == "implied"
    assert compare(rel_cl(u34), rel_cl(u34)).verdict == "equal"
    with pytest.raises(ValueError):
        compare(rel_cl(u34), rel_intersection(GroundSet(3)))


def test_compare_incomparable():
    g = GroundSet(2)
    cmp = compare(random_relation(g, 1), random_relation(g, 2))
    assert cmp.verdict == "incomparable"
    assert cmp.witness is not None


def test_search_finds_u34_for_bmon_r_failure():
    candidates = [
        (inst.name, rel_a(inst.op), inst.op)
        for inst in catalog().values()
        if inst.pg is not None and inst.ground.size <= 6
    ]
    hit = search_counterexample(Goal((), AxiomId.BMON_R), candidates)
    assert hit is not None
    assert hit.instance == "u34"
    assert hit.witness == (0b0011, 0, 0b0100, 0b1100)


def test_search_exhausted():
    g = GroundSet(2)
    candidates = [("int", rel_intersection(g), trivial_closure(g))]
    assert search_counterexample(Goal((), AxiomId.SYM), candidates) is None


def test_search_over_enumerated_relations():
    g = GroundSet(1)
    ident = trivial_closure(g)
    candidates = ((r.name, r, ident) for r in enumerate_all_relations(g))
    hit = search_counterexample(Goal((AxiomId.SYM,), AxiomId.MON_R), candidates)
    assert hit is not None
    assert hit.instance == "rel20"


def test_enumerate_relations_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_all_relations(GroundSet(2)))


def test_result_line_grammar(u34):
    rep = check_axiom(rel_a(u34.op), AxiomId.BMON_R)
    assert rep.result_line() == (
        "RESULT a BMON-R fail witness={0,1};{};{2};{2,3}"
    )
    ok = check_axiom(rel_a(u34.op), AxiomId.SYM)
    assert ok.result_line() == "RESULT a SYM pass"


def test_rel_st_free_axiom_spotcheck():
    from pregeolab.instances import Graph

    g = Graph.build(4, [(0, 3)])
    rep = check_axiom(rel_st(g), AxiomId.FREE)
    assert rep.status == "pass"
