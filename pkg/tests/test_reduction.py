"""Reduction: one golden single-step test per named rule, plus strategy
properties exercised at smoke scale (the full suites live in acceptance)."""

import random

import pytest

from grip import syntax as S
from grip.generators import gen_term, gen_type
from grip.reduction import (FuelExhausted, HeadTag, Stepped, Stuck,
                            contract_at, head, normalize, redexes, step,
                            trace, whnf)
from grip.surface import parse_term as P


def _rule(src):
    r = step(P(src))
    assert isinstance(r, Stepped), f"no step for {src}"
    return r.rule, r.term


# One instance per named rule of the core reduction figures (25) and of the
# precision case-analysis figure (10): 35 golden steps.
CORE_RULES = [
    ("Pi-Beta", "(fun (x:Nat) => 0) err[Nat]", "0"),
    ("Catch-nil",
     "catch_list[Nat] (fun (l:List Nat) => Nat) 0 "
     "(fun (a:Nat) (l:List Nat) (ih:Nat) => S ih) err[Nat] ?[Nat] nil[Nat]",
     "0"),
    ("Catch-cons",
     "catch_list[Nat] (fun (l:List Nat) => Nat) 0 "
     "(fun (a:Nat) (l:List Nat) (ih:Nat) => S ih) err[Nat] ?[Nat] "
     "(cons[Nat] 1 nil[Nat])", None),
    ("Pi-Unk", "?[Nat -> Nat]", "fun (x:Nat) => ?[Nat]"),
    ("Pi-Err", "err[Nat -> Nat]", "fun (x:Nat) => err[Nat]"),
    ("Cum-Unk", "?[iota Nat]", "up ?[Nat]"),
    ("Cum-Err", "err[iota Nat]", "up err[Nat]"),
    ("Catch-Unk",
     "catch_list[Nat] (fun (l:List Nat) => Nat) 0 "
     "(fun (a:Nat) (l:List Nat) (ih:Nat) => S ih) err[Nat] ?[Nat] "
     "?[List Nat]", "?[Nat]"),
    ("Catch-Err",
     "catch_list[Nat] (fun (l:List Nat) => Nat) 0 "
     "(fun (a:Nat) (l:List Nat) (ih:Nat) => S ih) err[Nat] ?[Nat] "
     "err[List Nat]", "err[Nat]"),
    ("List-Cast-Unk", "cast (List Nat) (List Bool) ?[List Nat]",
     "?[List Bool]"),
    ("List-Cast-Err", "cast (List Nat) (List Bool) err[List Nat]",
     "err[List Bool]"),
    ("Down-Unk", "cast ?[Type 0] Nat ?[?[Type 0]]", "?[Nat]"),
    ("Down-Err", "cast ?[Type 0] Nat err[?[Type 0]]", "err[Nat]"),
    ("Pi-Pi", "cast (Nat -> Nat) (Bool -> Bool) (fun (x:Nat) => x)", None),
    ("Cum-Cum", "cast (iota Nat) (iota Bool) (up 0)",
     "up (cast Nat Bool 0)"),
    ("Univ-Univ", "cast (Type 0) (Type 0) Nat", "Nat"),
    ("List-List-Nil", "cast (List Nat) (List Bool) nil[Nat]", "nil[Bool]"),
    ("List-List-Cons", "cast (List Nat) (List Bool) (cons[Nat] 0 nil[Nat])",
     "cons[Bool] (cast Nat Bool 0) (cast (List Nat) (List Bool) nil[Nat])"),
    ("Head-Err", "cast Bool Nat true", "err[Nat]"),
    ("Dom-Err", "cast err[Type 0] Nat ?[err[Type 0]]", "err[Nat]"),
    ("Cod-Err", "cast Nat err[Type 0] 0", "err[err[Type 0]]"),
    ("Cast-Pi-Err", "cast (Nat -> Nat) ?[Type 0] (fun (x:Nat) => x)",
     "err[?[Type 0]]"),
    ("Up-Down", "cast ?[Type 0] Nat (cast Nat ?[Type 0] 0)",
     "cast Nat Nat 0"),
    ("List-Dec", "cast (List Nat) ?[Type 0] nil[Nat]",
     "cast (List ?[Type 0]) ?[Type 0] "
     "(cast (List Nat) (List ?[Type 0]) nil[Nat])"),
    ("Box-Box", "cast (Box Bot) (Box Bot) ?[Box Bot]", "err[Box Bot]"),
]

PRECISION_RULES = [
    ("Cum-Cong-Ty", "iota Nat <=[1] iota Bool", "Nat <=[0] Bool"),
    ("List-Cong-Ty", "List Nat <=[0] List Bool", "Nat <=[0] Bool"),
    ("Pi-Cong", "(Nat -> Nat) <=[0] (Nat -> Bool)", None),
    ("Univ-Prec-Def", "Nat : Type 0 <= Bool : Type 0",
     "(Nat <=[0] Bool) /\\ (Bool <=[0] ?[Type 0])"),
    ("Pi-Prec-Def",
     "(fun (x:Nat) => x) : (Nat -> Nat) <= (fun (x:Nat) => x) : (Nat -> Nat)",
     None),
    ("Cum-Prec-Def", "(up 0) : iota Nat <= (up 1) : iota Nat",
     "(down (up 0)) : Nat <= (down (up 1)) : Nat"),
    ("List-Prec-Cons",
     "(cons[Nat] 0 nil[Nat]) : List Nat <= (cons[Nat] 1 nil[Nat]) : List Nat",
     "(0 : Nat <= 1 : Nat) /\\ (nil[Nat] : List Nat <= nil[Nat] : List Nat)"),
    ("NoConf-Nil-Cons",
     "nil[Nat] : List Nat <= (cons[Nat] 0 nil[Nat]) : List Nat", "Bot"),
    ("NoConf-Cons-Nil",
     "(cons[Nat] 0 nil[Nat]) : List Nat <= nil[Nat] : List Nat", "Bot"),
    ("Box-Cong", "Box Bot <=[0] Box (0 : Nat <= 0 : Nat)",
     "Bot : Prop <= (0 : Nat <= 0 : Nat) : Prop"),
]


@pytest.mark.parametrize("rule,src,expect",
                         CORE_RULES + PRECISION_RULES,
                         ids=[r for r, _, _ in CORE_RULES + PRECISION_RULES])
def test_golden_rule(rule, src, expect):
    got_rule, got = _rule(src)
    assert got_rule == rule
    if expect is not None:
        assert got == P(expect)


def test_exactly_35_named_rules_covered():
    assert len(CORE_RULES) + len(PRECISION_RULES) == 35


EXTENSION_RULES = [
    ("CatchNat-zero", "catch_nat (fun (n:Nat) => Nat) 5 "
     "(fun (n:Nat) (ih:Nat) => ih) err[Nat] ?[Nat] 0", "5"),
    ("CatchNat-succ", "catch_nat (fun (n:Nat) => Nat) 5 "
     "(fun (n:Nat) (ih:Nat) => ih) err[Nat] ?[Nat] 1", None),
    ("CatchBool-true", "catch_bool (fun (b:Bool) => Nat) 1 2 err[Nat] "
     "?[Nat] true", "1"),
    ("CatchUnit-tt", "catch_unit (fun (u:Unit) => Nat) 7 err[Nat] ?[Nat] tt",
     "7"),
    ("CatchEmpty-Err", "catch_empty (fun (e:Empty) => Nat) err[Nat] ?[Nat] "
     "err[Empty]", "err[Nat]"),
    ("CatchSigma-pair",
     "catch_sigma[Sig (x:Nat) Bool] (fun (p:Sig (x:Nat) Bool) => Nat) "
     "(fun (a:Nat) (b:Bool) => a) err[Nat] ?[Nat] "
     "(pair[Sig (x:Nat) Bool] 3 true)", None),
    ("CatchBox-box", "catch_box[Bot] (fun (b:Box Bot) => Nat) "
     "(fun (p:Bot) => 0) err[Nat] ?[Nat] (box[Bot] ?[Box Bot])", None),
    ("Nat-Nat-succ", "cast Nat Nat 1", "S (cast Nat Nat 0)"),
    ("Bool-Bool-true", "cast Bool Bool true", "true"),
    ("Sigma-Dec", "cast (Sig (x:Nat) Bool) ?[Type 0] ?[Sig (x:Nat) Bool]",
     None),
    ("Cast-Box-Err", "cast (Box Bot) ?[Type 0] err[Box Bot]",
     "err[?[Type 0]]"),
    ("Cast-Prop-Err", "cast Prop ?[Type 0] Bot", "err[?[Type 0]]"),
    ("Prop-Prop", "cast Prop Prop Bot", "Bot"),
    ("Coe-Retr", "down (up 0)", "0"),
    ("Coe-Sect", "up (down ?[iota Nat])", None),
    ("Nat-Prec-Succ", "1 : Nat <= 2 : Nat", "0 : Nat <= 1 : Nat"),
    ("NoConf-Zero-Succ", "0 : Nat <= 1 : Nat", "Bot"),
    ("NoConf-True-False", "true : Bool <= false : Bool", "Bot"),
    ("Sigma-Prec-Pair",
     "(pair[Sig (x:Nat) Bool] 0 true) : Sig (x:Nat) Bool "
     "<= (pair[Sig (x:Nat) Bool] 0 true) : Sig (x:Nat) Bool", None),
    ("AndP-Fst", "fstP (pairP @congZero @congTrue)", "@congZero"),
]


@pytest.mark.parametrize("rule,src,expect", EXTENSION_RULES,
                         ids=[r for r, _, _ in EXTENSION_RULES])
def test_extension_rule(rule, src, expect):
    got_rule, got = _rule(src)
    assert got_rule == rule
    if expect is not None:
        assert got == P(expect)


def test_head_tags():
    assert head(P("Nat -> Nat")) == HeadTag.PI
    assert head(P("iota Nat")) == HeadTag.CUM
    assert head(S.App(S.Var(0), S.Zero())) is None
    assert head(P("?[Type 0]")) is None


def test_whnf_examples():
    assert whnf(P("err[Nat -> Nat]")) == P("fun (x:Nat) => err[Nat]")
    assert whnf(P("?[iota Nat]")) == P("up ?[Nat]")
    assert whnf(S.Zero()) == S.Zero()


def test_step_determinism():
    t = P("(fun (x:Nat) => x) ((fun (y:Nat) => y) 0)")
    r1, r2 = step(t), step(t)
    assert r1 == r2


def test_trace_examples():
    tr = trace(P("cast Bool Nat true"))
    assert [e[0] for e in tr.entries] == ["Head-Err"]
    assert trace(S.Zero()).entries == ()
    tr = trace(P("cast (List Nat) ?[Type 0] (cons[Nat] 1 nil[Nat])"), 100)
    assert tr.entries[0][0] == "List-Dec"


def test_trace_entries_chain():
    tr = trace(P("(fun (x:Nat) => S x) ((fun (y:Nat) => y) 1)"), 100)
    for (_, _, after), (_, before, _) in zip(tr.entries, tr.entries[1:]):
        assert after == before


def test_fuel_exhaustion_is_distinct():
    t = P("(fun (x:Nat) => x) ((fun (y:Nat) => y) 0)")
    with pytest.raises(FuelExhausted):
        normalize(t, 1)


def test_stuck_classification():
    assert step(S.App(S.Var(0), S.Zero())) == Stuck("neutral")
    assert step(S.Zero()) == Stuck("normal-form")


def test_random_strategy_matches_leftmost_smoke():
    rng = random.Random(3)
    for _ in range(100):
        ty = gen_type(rng, 0, 2)
        t = gen_term(rng, ty, 3)
        want = normalize(t, 100000)
        cur = t
        for _ in range(100000):
            rs = redexes(cur)
            if not rs:
                break
            rs.sort(key=len)
            pick = rs[-1] if rng.random() < 0.7 else rng.choice(rs)
            cur = contract_at(cur, pick)
        assert cur == want
