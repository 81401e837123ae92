"""Typing and conversion: one positive and one negative case per rule."""

import pytest

from grip import syntax as S
from grip.prelude import instances, prelude, prelude_source
from grip.surface import parse, parse_term as P, print_term
from grip.typecheck import Checker, TypeCheckError, check_file


@pytest.fixture(scope="module")
def ck():
    return Checker()


def infer(ck, src):
    return ck.infer((), P(src))


def rejects(ck, src, kind=None, ty=None):
    with pytest.raises(TypeCheckError) as e:
        if ty is None:
            ck.infer((), P(src))
        else:
            ck.check((), P(src), P(ty))
    if kind:
        assert e.value.kind == kind
    return e.value


# --- impure layer rules: positive / negative pairs ---------------------------

def test_univ(ck):
    assert infer(ck, "Type 0") == S.Sort(1)
    rejects(ck, "Type 4")  # the level bound is enforced


def test_var(ck):
    ctx = (("x", S.Nat()),)
    assert ck.infer(ctx, S.Var(0)) == S.Nat()
    with pytest.raises(TypeCheckError) as e:
        ck.infer(ctx, S.Var(1))
    assert e.value.kind == "UnboundVariable"


def test_prod(ck):
    assert infer(ck, "Pi (x:Nat) -> Nat") == S.Sort(0)
    assert infer(ck, "Nat -> Type 0") == S.Sort(1)
    rejects(ck, "Pi (x:Nat) -> Bot", "SortMismatch")  # use forall


def test_abs_app(ck):
    assert infer(ck, "fun (x:Nat) => x") == P("Nat -> Nat")
    assert infer(ck, "(fun (x:Nat) => x) 3") == S.Nat()
    rejects(ck, "0 1", "NotAFunction")


def test_list_rules(ck):
    assert infer(ck, "List Nat") == S.Sort(0)
    assert infer(ck, "nil[Nat]") == P("List Nat")
    assert infer(ck, "cons[Nat] 1 nil[Nat]") == P("List Nat")
    rejects(ck, "cons[Nat] true nil[Nat]", "ConversionFailure")


def test_list_catch(ck):
    t = ("catch_list[Nat] (fun (l:List Nat) => Nat) 0 "
         "(fun (a:Nat) (l:List Nat) (ih:Nat) => S ih) err[Nat] ?[Nat] "
         "nil[Nat]")
    assert ck.whnf(infer(ck, t)) == S.Nat()
    bad = ("catch_list[Nat] (fun (l:List Nat) => Nat) true "
           "(fun (a:Nat) (l:List Nat) (ih:Nat) => S ih) err[Nat] ?[Nat] "
           "nil[Nat]")
    rejects(ck, bad, "ConversionFailure")


def test_unk_err(ck):
    assert infer(ck, "?[Type 0]") == S.Sort(0)
    assert infer(ck, "err[Nat]") == S.Nat()
    ck.check((), P("err[Nat]"), P("Nat"))
    # no unknown/error proofs of propositions
    rejects(ck, "?[Bot]", "SortMismatch")
    rejects(ck, "err[0 : Nat <= 0 : Nat]", "SortMismatch")


def test_cast(ck):
    assert infer(ck, "cast Nat Bool 0") == S.Bool()
    rejects(ck, "cast Nat (iota Bool) 0", "CastLevelMismatch")


def test_cum_coe(ck):
    assert infer(ck, "iota Nat") == S.Sort(1)
    assert infer(ck, "up 0") == P("iota Nat")
    assert ck.whnf(infer(ck, "down (up 0)")) == S.Nat()
    rejects(ck, "down 0", "SortMismatch")


def test_conv_rule(ck):
    ck.check((), P("(fun (x:Type 0) => x) Nat"), P("Type 0"))
    assert ck.infer((), P("(fun (x:Type 0) => nil[x]) Nat")) == P("List Nat")


# --- pure layer ----------------------------------------------------------------

def test_prop_wf(ck):
    assert infer(ck, "Prop") == S.Sort(0)
    assert infer(ck, "Bot") == S.PROP


def test_bot_elim(ck):
    ctx = (("p", S.Bot()),)
    assert ck.infer(ctx, P("exfalso x Nat") if False else
                    S.ExFalso(S.Var(0), S.Nat())) == S.Nat()
    rejects(ck, "exfalso 0 Nat", "ConversionFailure")


def test_forall(ck):
    assert infer(ck, "forall (x:Nat), x : Nat <= x : Nat") == S.PROP
    assert infer(ck, "forall (P:Prop) (w:P), P") == S.PROP
    rejects(ck, "forall (x:Nat), Nat", "SortMismatch")


def test_prop_irrelevance(ck):
    p1 = P("@congZero")
    p2 = P("sndP (pairP @congTrue @congZero)")
    assert ck.convertible((), p1, p2, P("0 : Nat <= 0 : Nat"))


def test_eta(ck):
    ctx = (("f", P("Nat -> Nat")),)
    assert ck.convertible(ctx, S.Lam(S.Nat(), S.App(S.Var(1), S.Var(0))),
                          S.Var(0), P("Nat -> Nat"))


def test_coe_retr_sect_conversion(ck):
    ck.check((), P("down (up 0)"), P("Nat"))
    assert ck.convertible((), P("down (up 0)"), P("0"), S.Nat())


def test_box_rules(ck):
    assert infer(ck, "Box Bot") == S.Sort(0)
    assert infer(ck, "box[0 : Nat <= 0 : Nat] @congZero") == \
        P("Box (0 : Nat <= 0 : Nat)")
    rejects(ck, "box[Nat] 0", "SortMismatch")
    t = ("catch_box[0 : Nat <= 0 : Nat] "
         "(fun (b:Box (0 : Nat <= 0 : Nat)) => Nat) "
         "(fun (p:0 : Nat <= 0 : Nat) => 1) err[Nat] ?[Nat] "
         "(box[0 : Nat <= 0 : Nat] @congZero)")
    assert ck.whnf(infer(ck, t)) == S.Nat()


def test_prec_wf(ck):
    assert infer(ck, "Nat <=[0] ?[Type 0]") == S.PROP
    assert infer(ck, "err[Nat] : Nat <= 3 : Nat") == S.PROP
    rejects(ck, "Nat <=[1] ?[Type 1]", "PrecLevelMismatch")
    rejects(ck, "0 : Nat <= (up 0) : iota Nat", "PrecLevelMismatch")


def test_catch_prop_motive(ck):
    t = ("catch_natP (fun (k:Nat) => k : Nat <= k : Nat) @congZero "
         "(fun (k:Nat) (ih: k : Nat <= k : Nat) => ih) "
         "(@reflErr Nat (@lrefl Nat ?[Type 0] @boundNat)) "
         "(@reflUnk Nat (@lrefl Nat ?[Type 0] @boundNat)) 2")
    assert ck.is_prop_type((), infer(ck, t))
    bad = ("catch_nat (fun (k:Nat) => k : Nat <= k : Nat) @congZero "
           "(fun (k:Nat) (ih: k : Nat <= k : Nat) => ih) "
           "(@reflErr Nat (@lrefl Nat ?[Type 0] @boundNat)) "
           "(@reflUnk Nat (@lrefl Nat ?[Type 0] @boundNat)) 2")
    rejects(ck, bad)  # the impure recursor cannot target Prop


def test_purity_grammar_audit():
    # no former constructs an unknown/err proof: the only ways to build
    # terms of a proposition are the pure ones
    from grip import syntax
    unkerr_formers = [syntax.Unk, syntax.Err]
    for cls in unkerr_formers:
        assert list(f for f, _ in syntax.subterm_spec(cls(S.Nat()))) == ["ty"]


def test_agreement_check_of_inferred_type(ck):
    for src in ["fun (x:Nat) => x", "cons[Nat] 1 nil[Nat]",
                "cast Nat ?[Type 0] 3", "@errMin"]:
        t = P(src)
        ck.check((), t, ck.infer((), t))


# --- files --------------------------------------------------------------------

def test_check_file_corpus(corpus, ck):
    for name in ["arith", "paper_examples", "mult", "gripup", "narrow",
                 "sized", "prelude"]:
        src = parse((corpus / f"{name}.grip").read_text())
        judgments, errors = check_file(src, checker=ck)
        assert not errors, (name, [(n, str(e)) for n, e in errors])
        assert len(judgments) == len(src.decls)


def test_prelude_file_matches_generated(corpus):
    assert (corpus / "prelude.grip").read_text() == prelude_source()


def test_prelude_context_well_formed(ck):
    for name, ty in prelude():
        s = ck.sort_of((), ty)
        assert s.is_prop, name


def test_check_file_reports_errors(ck):
    src = parse("def good : Nat := 3. def bad : Nat := true.")
    judgments, errors = check_file(src, checker=ck)
    assert len(judgments) == 1 and len(errors) == 1
    assert errors[0][0] == "bad"
