"""Ground precision deciders: verdicts, witnesses, order laws, and agreement
with the model on first-order codes."""

import random

import pytest

from grip import model as M
from grip import syntax as S
from grip.precision import DecideError
from grip.surface import parse_term as P


def replay(decider, checker, res, prop_src):
    assert res.holds, (res.verdict, res.path)
    checker.check((), res.witness, P(prop_src))


# the type-precision verdict table of the informal overview
TYPE_TABLE = [
    ("Nat", "?[Type 0]", 0, "holds"),
    ("iota (Nat -> Nat)", "?[Type 1]", 1, "holds"),
    ("iota (?[Type 0] -> ?[Type 0])", "?[Type 1]", 1, "holds"),
    ("Type 0", "?[Type 1]", 1, "holds"),
    ("Nat -> Nat", "?[Type 0]", 0, "fails"),
    ("?[Type 0] -> ?[Type 0]", "?[Type 0]", 0, "fails"),
]


@pytest.mark.parametrize("a,b,lvl,verdict", TYPE_TABLE,
                         ids=[f"{a}<={b}" for a, b, _, _ in TYPE_TABLE])
def test_type_precision_table(decider, checker, a, b, lvl, verdict):
    res = decider.decide_type_prec(P(a), P(b), lvl)
    assert res.verdict == verdict
    if res.holds:
        checker.check((), res.witness, S.TyPrec(lvl, P(a), P(b)))


def test_list_congruence(decider, checker):
    res = decider.decide_type_prec(P("List Nat"), P("List ?[Type 0]"), 0)
    replay(decider, checker, res, "List Nat <=[0] List ?[Type 0]")


def test_box_unk_bound_fails(decider):
    res = decider.decide_type_prec(P("Box Bot"), P("?[Type 0]"), 0)
    assert res.fails and "Box" in res.path


def test_term_precision_examples(decider, checker):
    res = decider.decide_term_prec(P("err[Nat]"), P("3"), P("Nat"), P("Nat"))
    replay(decider, checker, res, "err[Nat] : Nat <= 3 : Nat")
    res = decider.decide_term_prec(P("3"), P("?[Nat]"), P("Nat"), P("Nat"))
    replay(decider, checker, res, "3 : Nat <= ?[Nat] : Nat")
    res = decider.decide_term_prec(P("true"), P("false"), P("Bool"),
                                   P("Bool"))
    assert res.fails
    res = decider.decide_term_prec(P("cons[Nat] 1 nil[Nat]"),
                                   P("cons[Nat] ?[Nat] nil[Nat]"),
                                   P("List Nat"), P("List Nat"))
    replay(decider, checker, res,
           "(cons[Nat] 1 nil[Nat]) : List Nat "
           "<= (cons[Nat] ?[Nat] nil[Nat]) : List Nat")


def test_heterogeneous_nil(decider, checker):
    res = decider.decide_term_prec(P("nil[Nat]"), P("nil[?[Type 0]]"),
                                   P("List Nat"), P("List ?[Type 0]"))
    replay(decider, checker, res,
           "nil[Nat] : List Nat <= nil[?[Type 0]] : List ?[Type 0]")


def test_universe_decomposition(decider, checker):
    res = decider.decide_term_prec(P("Nat"), P("?[Type 0]"), P("Type 0"),
                                   P("Type 0"))
    replay(decider, checker, res, "Nat : Type 0 <= ?[Type 0] : Type 0")
    res = decider.decide_term_prec(P("Nat -> Nat"), P("Nat -> Nat"),
                                   P("Type 0"), P("Type 0"))
    assert res.fails  # products are not below the unknown type as terms


def test_unknown_type_inhabitants(decider, checker):
    res = decider.decide_term_prec(P("cast Nat ?[Type 0] 2"),
                                   P("cast Nat ?[Type 0] 2"),
                                   P("?[Type 0]"), P("?[Type 0]"))
    replay(decider, checker, res,
           "(cast Nat ?[Type 0] 2) : ?[Type 0] "
           "<= (cast Nat ?[Type 0] 2) : ?[Type 0]")
    res = decider.decide_term_prec(P("cast Nat ?[Type 0] err[Nat]"),
                                   P("cast Nat ?[Type 0] 3"),
                                   P("?[Type 0]"), P("?[Type 0]"))
    replay(decider, checker, res,
           "(cast Nat ?[Type 0] err[Nat]) : ?[Type 0] "
           "<= (cast Nat ?[Type 0] 3) : ?[Type 0]")
    res = decider.decide_term_prec(P("cast Nat ?[Type 0] 2"),
                                   P("cast Bool ?[Type 0] true"),
                                   P("?[Type 0]"), P("?[Type 0]"))
    assert res.fails


def test_function_precision_is_bounded(decider):
    res = decider.decide_term_prec(P("fun (b:Bool) => 1"),
                                   P("fun (b:Bool) => ?[Nat]"),
                                   P("Bool -> Nat"), P("Bool -> Nat"))
    assert res.verdict == "unknown" and res.checked > 0
    res = decider.decide_term_prec(P("fun (b:Bool) => 1"),
                                   P("fun (b:Bool) => 2"),
                                   P("Bool -> Nat"), P("Bool -> Nat"))
    assert res.fails


def test_dependent_family_enumeration(decider):
    # the if-then-else family from the meets example, as a type
    src = ("Pi (b:Bool) -> catch_bool (fun (k:Bool) => Type 0) Nat Bool "
           "err[Type 0] ?[Type 0] b")
    res = decider.decide_type_prec(P(src), P(src), 0)
    assert res.verdict == "unknown" and res.checked > 0


def test_ill_typed_inputs_rejected(decider):
    with pytest.raises(DecideError):
        decider.decide_type_prec(P("Nat"), P("?[Type 1]"), 1)
    with pytest.raises(DecideError):
        decider.decide_term_prec(P("0"), P("true"), P("Nat"), P("iota Bool"))


def test_quasi_reflexivity_and_transitivity(decider):
    types = ["Nat", "Bool", "List Nat", "List ?[Type 0]", "?[Type 0]",
             "err[Type 0]", "Unit"]
    holds = {}
    for a in types:
        for b in types:
            holds[(a, b)] = decider.decide_type_prec(P(a), P(b), 0).holds
    for (a, b), h in holds.items():
        if h:
            assert holds[(a, a)], a
            assert holds[(b, b)], b
    for a in types:
        for b in types:
            for c in types:
                if holds[(a, b)] and holds[(b, c)]:
                    assert holds[(a, c)], (a, b, c)


def test_err_min_unk_max_per_type(decider):
    for ty, vals in [("Nat", ["0", "2"]), ("Bool", ["true", "false"]),
                     ("List Nat", ["nil[Nat]", "cons[Nat] 1 nil[Nat]"]),
                     ("Unit", ["tt"])]:
        for v in vals:
            assert decider.decide_term_prec(
                P(f"err[{ty}]"), P(v), P(ty), P(ty)).holds
            assert decider.decide_term_prec(
                P(v), P(f"?[{ty}]"), P(ty), P(ty)).holds


def test_decider_oracle_agreement_first_order(decider, model):
    codes = [M.CNat(), M.CBool(), M.CUnit(), M.CEmpty(),
             M.CList(M.CNat()), M.CList(M.CBool()),
             M.CSigma(M.CBool(), M.const_fam(M.CNat())), M.CUnkU(0)]
    small = M.Model(M.Bounds(nat_bound=2, list_len=1, depth=1))
    checked = 0
    for c in codes:
        ty = M.encode_code(c)
        vals = small.el(c)
        for v in vals:
            for w in vals:
                tv, tw = M.encode_val(c, v), M.encode_val(c, w)
                from grip.reduction import normalize
                dv = M.decode_val(c, normalize(tv), small)
                dw = M.decode_val(c, normalize(tw), small)
                want = small.prec(c, dv, dw)
                res = decider.decide_term_prec(tv, tw, ty, ty)
                assert res.verdict in ("holds", "fails"), (c, v, w, res.path)
                assert res.holds == want, (c, v, w, res.verdict, want)
                checked += 1
    assert checked > 400
