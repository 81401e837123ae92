"""The executable model: enumeration, casts, precision, and its laws at
smoke scale (the exhaustive suites live in acceptance)."""

import pytest

from grip.model import (ERR, STAR, UNK, Bounds, BoundOverflow, CBool, CBox,
                        CCum, CEmpty, CErrU, CList, CNat, CPi, CProp, CSigma,
                        CUniv, CUnkU, Fam, Model, const_fam)


@pytest.fixture(scope="module")
def m():
    return Model(Bounds())


def test_enumerate_bool(m):
    assert set(m.el(CBool())) == {ERR, UNK, ("bool", True), ("bool", False)}


def test_enumerate_empty(m):
    assert set(m.el(CEmpty())) == {ERR, UNK}


def test_enumerate_list_counts(m):
    small = Model(Bounds(nat_bound=1, list_len=1))
    vals = small.el(CList(CNat()))
    # err, ?, nil, cons v nil for v among {err, ?, 0, 1}: direct count
    elems = small.el(CNat(), Bounds(nat_bound=1, list_len=1).shallower())
    assert len(vals) == 2 + 1 + len(elems)


def test_enumerate_function_tables(m):
    c = CPi(CBool(), const_fam(CBool()))
    vals = m.el(c)
    assert len(vals) == 4 ** 4
    with pytest.raises(BoundOverflow):
        Model(Bounds(fn_table_bound=2)).el(c)


def test_model_cast_examples(m):
    assert m.cast(CNat(), CNat(), ("nat", 3)) == ("nat", 3)
    pi = CPi(CBool(), const_fam(CBool()))
    assert m.cast(CNat(), pi, ("nat", 3)) == m.err_of(pi)
    assert m.cast(pi, CUnkU(0), m.el(pi)[0]) == ERR
    assert m.cast(CNat(), CUnkU(0), ("nat", 2)) == ("u", "nat", ("nat", 2))
    assert m.cast(CNat(), CUnkU(0), ERR) == ERR  # errors stay minimal
    assert m.cast(CBox(), CBox(), ("box",)) == ERR  # eager box failure
    assert m.cast(CUnkU(0), CNat(), ("u", "nat", ("nat", 2))) == ("nat", 2)


def test_model_prec_examples(m):
    assert m.prec(CNat(), ERR, ("nat", 5))
    assert not m.prec(CBool(), ("bool", True), ("bool", False))
    assert m.prec(CBox(), ("box",), ERR)  # degenerate order
    assert m.prec(CNat(), ("nat", 2), UNK)
    assert not m.prec(CNat(), UNK, ("nat", 2))


def test_model_hprec_examples(m):
    assert m.hprec(CNat(), CNat(), ("nat", 3), ("nat", 3))
    assert m.hprec(CNat(), CUnkU(0), ("nat", 3), UNK)
    assert not m.hprec(CBool(), CNat(), ("bool", True), ("nat", 0))


def test_tprec_examples(m):
    assert m.tprec(CNat(), CUnkU(0))
    assert not m.tprec(CPi(CNat(), const_fam(CNat())), CUnkU(0))
    assert m.tprec(CCum(CPi(CNat(), const_fam(CNat()))), CUnkU(1))
    assert m.tprec(CUniv(), CUnkU(1))
    assert not m.tprec(CBox(), CUnkU(0))  # no germ for boxed propositions
    assert m.tprec(CList(CNat()), CList(CUnkU(0)))
    assert m.tprec(CErrU(0), CNat())
    assert not m.tprec(CUnkU(0), CNat())


def test_partial_preorders_smoke(m):
    for c in [CBool(), CList(CBool()), CUnkU(0), CUniv(), CCum(CProp())]:
        rep = m.check_partial_preorder(c)
        assert rep.ok, (c, rep.violations[:3])


def test_ep_pairs_smoke(m):
    for a, b in [(CNat(), CUnkU(0)), (CList(CNat()), CList(CUnkU(0))),
                 (CErrU(0), CNat()), (CProp(), CUnkU(0)),
                 (CCum(CNat()), CUnkU(1))]:
        rep = m.check_ep_pair(a, b)
        assert rep.ok, (a, b, rep.violations[:3])


def test_ep_pair_precondition(m):
    rep = m.check_ep_pair(CPi(CNat(), const_fam(CNat())), CUnkU(0))
    assert not rep.precondition_ok


def test_unknown_is_greatest_selfprecise(m):
    for c in [CNat(), CBool(), CList(CNat()), CUnkU(0)]:
        for v in m.el(c):
            if m.sp(c, v):
                assert m.prec(c, v, UNK if not isinstance(c, CUnkU) else UNK)


def test_indexed_partial_preorder_bullets(m):
    fam = Fam(table=((("bool", True), CUnit := CBool()),
                     (("bool", False), CNat()),
                     (ERR, CErrU(0)), (UNK, CUnkU(0))))
    dom = CBool()
    vals = m.el(dom)
    sp_vals = [a for a in vals if m.sp(dom, a)]
    # bullet 1: each fibre over a self-precise index is a partial preorder
    for a in sp_vals:
        rep = m.check_partial_preorder(fam.apply(a))
        assert rep.ok
    # bullet 2: related indices induce embedding-projection pairs
    for a in vals:
        for a2 in vals:
            if m.prec(dom, a, a2):
                rep = m.check_ep_pair(fam.apply(a), fam.apply(a2))
                assert rep.ok, (a, a2, rep.violations[:3])
    # bullet 3: identity casts are equiprecise on self-precise fibres
    for a in sp_vals:
        c = fam.apply(a)
        for b in m.el(c):
            if m.sp(c, b):
                up = m.cast(c, c, b)
                assert m.prec(c, up, b) and m.prec(c, b, up)
    # bullet 4: casts along a chain compose
    for a0 in vals:
        for a1 in vals:
            if not m.prec(dom, a0, a1):
                continue
            for a2 in vals:
                if not m.prec(dom, a1, a2):
                    continue
                c0, c1, c2 = fam.apply(a0), fam.apply(a1), fam.apply(a2)
                for b in m.el(c0):
                    if not m.sp(c0, b):
                        continue
                    two = m.cast(c1, c2, m.cast(c0, c1, b))
                    one = m.cast(c0, c2, b)
                    assert m.prec(c2, two, one) and m.prec(c2, one, two)


def test_beck_chevalley_failure(m):
    rep = m.check_beck_chevalley_failure()
    assert rep["direct_at_true"] == ("nat", 5)
    assert rep["meet_at_true"] == ERR
    assert rep["meet_below_direct"] and not rep["direct_below_meet"]
    assert not rep["equiprecise"]


def test_kernel_model_agreement_smoke(m):
    from grip.agreement import run_agreement
    small = Model(Bounds(nat_bound=1, list_len=1, depth=1))
    rep = run_agreement(small, samples=100)
    assert not rep["disagreements"], rep["disagreements"][:5]
    assert rep["checked"] > 100
