"""Reduction: single-step, weak-head and deep normalization with rule tracing.

The strategy is leftmost-outermost under the congruence grammar; every root
redex is handled by exactly one case of head_step, which records the rule
name that fired.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from .syntax import (
    All, AndP, App, Bool, Bot, BoxIntro, BoxP, Cast, CatchBool, CatchBoolP,
    CatchBox, CatchEmpty, CatchEmptyP, CatchList, CatchListP, CatchNat,
    CatchNatP, CatchSigma, CatchSigmaP, CatchUnit, CatchUnitP, Cons, Const,
    CoeDown, CoeUp, Cum, Empty, Err, ExFalso, FalseT, FstP, Lam, List, Nat,
    Nil, Pair, PairP, Pi, Sigma, SndP, Sort, Succ, Term, TmPrec, Tt, TrueT,
    TyPrec, Unit, Unk, Var, Zero, apps, iter_subterms, list_germ, map_subterms,
    shift, sig_germ, subst, subterm_spec, unk_ty,
)

DEFAULT_FUEL = 100_000


class FuelExhausted(Exception):
    """The step budget ran out; on well-typed input this signals a bug."""


class HeadTag(enum.Enum):
    UNIV = "Univ"
    PROP = "Prop"
    PI = "Pi"
    LIST = "List"
    NAT = "Nat"
    BOOL = "Bool"
    UNIT = "Unit"
    EMPTY = "Empty"
    SIGMA = "Sigma"
    BOX = "Box"
    CUM = "Cum"


def head(t: Term) -> Optional[HeadTag]:
    """Head constructor of a weak-head-normal type; None otherwise."""
    if isinstance(t, Sort):
        return HeadTag.PROP if t.is_prop else HeadTag.UNIV
    if isinstance(t, Pi):
        return HeadTag.PI
    if isinstance(t, List):
        return HeadTag.LIST
    if isinstance(t, Nat):
        return HeadTag.NAT
    if isinstance(t, Bool):
        return HeadTag.BOOL
    if isinstance(t, Unit):
        return HeadTag.UNIT
    if isinstance(t, Empty):
        return HeadTag.EMPTY
    if isinstance(t, Sigma):
        return HeadTag.SIGMA
    if isinstance(t, BoxP):
        return HeadTag.BOX
    if isinstance(t, Cum):
        return HeadTag.CUM
    return None


def is_whnf_type(t: Term) -> bool:
    return head(t) is not None


def _is_unk_univ(t: Term) -> Optional[int]:
    """Level i when t is ?_□ᵢ, else None."""
    if isinstance(t, Unk) and isinstance(t.ty, Sort) and not t.ty.is_prop:
        return t.ty.level
    return None


def _is_err_univ(t: Term) -> Optional[int]:
    if isinstance(t, Err) and isinstance(t.ty, Sort) and not t.ty.is_prop:
        return t.ty.level
    return None


def is_germ_form(t: Term, i: int) -> bool:
    """Canonical cast sources into ?_□ᵢ: the germs of each head."""
    if isinstance(t, (Nat, Bool, Unit, Empty)):
        return True
    if isinstance(t, Sort):
        return (not t.is_prop) and t.level == i - 1
    if isinstance(t, Cum):
        return True
    if isinstance(t, List):
        return _is_unk_univ(t.elem) == i
    if isinstance(t, Sigma):
        return _is_unk_univ(t.fst) == i and _is_unk_univ(t.snd) == i
    return False


def _whnf_or_exc(t: Term, i: int, err_too: bool = False) -> bool:
    """T ∈ Whnf_□ extended with ?_□ᵢ (and err_□ᵢ when err_too)."""
    if is_whnf_type(t):
        return True
    if _is_unk_univ(t) == i:
        return True
    return err_too and _is_err_univ(t) == i


# --- root redexes ------------------------------------------------------------

_CATCH_RULES = {
    CatchList: (List, "Catch"),
    CatchListP: (List, "CatchP"),
}


def _catch_list(t, prefix):
    s = t.scrut
    if isinstance(s, Nil):
        return t.on_nil, f"{prefix}-nil"
    if isinstance(s, Cons):
        rec = type(t)(t.elem, t.motive, t.on_nil, t.on_cons, t.on_err,
                      t.on_unk, s.tail)
        return apps(t.on_cons, s.head, s.tail, rec), f"{prefix}-cons"
    if isinstance(s, Err) and isinstance(s.ty, List):
        return t.on_err, f"{prefix}-Err"
    if isinstance(s, Unk) and isinstance(s.ty, List):
        return t.on_unk, f"{prefix}-Unk"
    return None


def _catch_nat(t, prefix):
    s = t.scrut
    if isinstance(s, Zero):
        return t.on_zero, f"{prefix}-zero"
    if isinstance(s, Succ):
        rec = type(t)(t.motive, t.on_zero, t.on_succ, t.on_err, t.on_unk,
                      s.pred)
        return apps(t.on_succ, s.pred, rec), f"{prefix}-succ"
    if isinstance(s, Err) and isinstance(s.ty, Nat):
        return t.on_err, f"{prefix}-Err"
    if isinstance(s, Unk) and isinstance(s.ty, Nat):
        return t.on_unk, f"{prefix}-Unk"
    return None


def _catch_bool(t, prefix):
    s = t.scrut
    if isinstance(s, TrueT):
        return t.on_true, f"{prefix}-true"
    if isinstance(s, FalseT):
        return t.on_false, f"{prefix}-false"
    if isinstance(s, Err) and isinstance(s.ty, Bool):
        return t.on_err, f"{prefix}-Err"
    if isinstance(s, Unk) and isinstance(s.ty, Bool):
        return t.on_unk, f"{prefix}-Unk"
    return None


def _catch_unit(t, prefix):
    s = t.scrut
    if isinstance(s, Tt):
        return t.on_tt, f"{prefix}-tt"
    if isinstance(s, Err) and isinstance(s.ty, Unit):
        return t.on_err, f"{prefix}-Err"
    if isinstance(s, Unk) and isinstance(s.ty, Unit):
        return t.on_unk, f"{prefix}-Unk"
    return None


def _catch_empty(t, prefix):
    s = t.scrut
    if isinstance(s, Err) and isinstance(s.ty, Empty):
        return t.on_err, f"{prefix}-Err"
    if isinstance(s, Unk) and isinstance(s.ty, Empty):
        return t.on_unk, f"{prefix}-Unk"
    return None


def _catch_sigma(t, prefix):
    s = t.scrut
    if isinstance(s, Pair):
        return apps(t.on_pair, s.fst, s.snd), f"{prefix}-pair"
    if isinstance(s, Err) and isinstance(s.ty, Sigma):
        return t.on_err, f"{prefix}-Err"
    if isinstance(s, Unk) and isinstance(s.ty, Sigma):
        return t.on_unk, f"{prefix}-Unk"
    return None


def _cast_step(t: Cast):
    s, tgt, b = t.src, t.tgt, t.body
    i_err_src = _is_err_univ(s)
    if i_err_src is not None and _whnf_or_exc(tgt, i_err_src, err_too=True):
        return Err(tgt), "Dom-Err"
    i_err_tgt = _is_err_univ(tgt)
    if i_err_tgt is not None and (is_whnf_type(s) or _is_unk_univ(s) == i_err_tgt):
        return Err(tgt), "Cod-Err"

    i_unk_src = _is_unk_univ(s)
    if i_unk_src is not None:
        i = i_unk_src
        if isinstance(b, Unk) and b.ty == unk_ty(i) and _whnf_or_exc(tgt, i):
            return Unk(tgt), "Down-Unk"
        if isinstance(b, Err) and b.ty == unk_ty(i) and _whnf_or_exc(tgt, i):
            return Err(tgt), "Down-Err"
        if (isinstance(b, Cast) and _is_unk_univ(b.tgt) == i
                and is_germ_form(b.src, i) and _whnf_or_exc(tgt, i)):
            return Cast(b.src, tgt, b.body), "Up-Down"
        return None

    i_unk_tgt = _is_unk_univ(tgt)
    if i_unk_tgt is not None:
        i = i_unk_tgt
        if isinstance(s, Pi):
            return Err(tgt), "Cast-Pi-Err"
        if isinstance(s, BoxP):
            return Err(tgt), "Cast-Box-Err"
        if isinstance(s, Sort) and s.is_prop:
            return Err(tgt), "Cast-Prop-Err"
        if isinstance(s, List) and not is_germ_form(s, i):
            germ = list_germ(i)
            return Cast(germ, tgt, Cast(s, germ, b)), "List-Dec"
        if isinstance(s, Sigma) and not is_germ_form(s, i):
            germ = sig_germ(i)
            return Cast(germ, tgt, Cast(s, germ, b)), "Sigma-Dec"
        return None  # germ sources are canonical forms of ?_□

    if not (is_whnf_type(s) and is_whnf_type(tgt)):
        return None
    hs, ht = head(s), head(tgt)
    if hs != ht:
        return Err(tgt), "Head-Err"

    if hs is HeadTag.UNIV:
        if s.level == tgt.level:
            return b, "Univ-Univ"
        return None
    if hs is HeadTag.PROP:
        return b, "Prop-Prop"
    if hs is HeadTag.PI:
        a1, b1 = s.dom, s.cod
        a2, b2 = tgt.dom, tgt.cod
        castarg = Cast(shift(a2), shift(a1), Var(0))
        b1sub = subst(shift(b1, 1, 1), 0, castarg)
        body = Cast(b1sub, b2, App(shift(b), castarg))
        return Lam(a2, body, hint=tgt.hint), "Pi-Pi"
    if hs is HeadTag.CUM:
        if isinstance(b, CoeUp):
            return CoeUp(Cast(s.ty, tgt.ty, b.body)), "Cum-Cum"
        return None
    if hs is HeadTag.BOX:
        return Err(tgt), "Box-Box"
    if hs is HeadTag.LIST:
        a_tgt = tgt.elem
        if isinstance(b, Nil):
            return Nil(a_tgt), "List-List-Nil"
        if isinstance(b, Cons):
            return (Cons(a_tgt, Cast(b.elem, a_tgt, b.head),
                         Cast(List(b.elem), List(a_tgt), b.tail)),
                    "List-List-Cons")
        if isinstance(b, Unk) and isinstance(b.ty, List):
            return Unk(tgt), "List-Cast-Unk"
        if isinstance(b, Err) and isinstance(b.ty, List):
            return Err(tgt), "List-Cast-Err"
        return None
    if hs is HeadTag.NAT:
        if isinstance(b, Zero):
            return Zero(), "Nat-Nat-zero"
        if isinstance(b, Succ):
            return Succ(Cast(Nat(), Nat(), b.pred)), "Nat-Nat-succ"
        if isinstance(b, Unk) and isinstance(b.ty, Nat):
            return Unk(tgt), "Nat-Cast-Unk"
        if isinstance(b, Err) and isinstance(b.ty, Nat):
            return Err(tgt), "Nat-Cast-Err"
        return None
    if hs is HeadTag.BOOL:
        if isinstance(b, TrueT):
            return TrueT(), "Bool-Bool-true"
        if isinstance(b, FalseT):
            return FalseT(), "Bool-Bool-false"
        if isinstance(b, Unk) and isinstance(b.ty, Bool):
            return Unk(tgt), "Bool-Cast-Unk"
        if isinstance(b, Err) and isinstance(b.ty, Bool):
            return Err(tgt), "Bool-Cast-Err"
        return None
    if hs is HeadTag.UNIT:
        if isinstance(b, Tt):
            return Tt(), "Unit-Unit-tt"
        if isinstance(b, Unk) and isinstance(b.ty, Unit):
            return Unk(tgt), "Unit-Cast-Unk"
        if isinstance(b, Err) and isinstance(b.ty, Unit):
            return Err(tgt), "Unit-Cast-Err"
        return None
    if hs is HeadTag.EMPTY:
        if isinstance(b, Unk) and isinstance(b.ty, Empty):
            return Unk(tgt), "Empty-Cast-Unk"
        if isinstance(b, Err) and isinstance(b.ty, Empty):
            return Err(tgt), "Empty-Cast-Err"
        return None
    if hs is HeadTag.SIGMA:
        ta, tb = tgt.fst, tgt.snd
        if isinstance(b, Pair):
            pa = b.fst_ty if b.fst_ty is not None else s.fst
            pb = b.snd_ty if b.snd_ty is not None else s.snd
            fst2 = Cast(pa, ta, b.fst)
            snd_src = subst(pb, 0, b.fst)
            snd_tgt = subst(tb, 0, fst2)
            return (Pair(ta, tb, fst2, Cast(snd_src, snd_tgt, b.snd)),
                    "Sigma-Sigma-pair")
        if isinstance(b, Unk) and isinstance(b.ty, Sigma):
            return Unk(tgt), "Sigma-Cast-Unk"
        if isinstance(b, Err) and isinstance(b.ty, Sigma):
            return Err(tgt), "Sigma-Cast-Err"
        return None
    return None


def _and3(c1: Term, c2: Term, c3: Term) -> Term:
    return AndP(c1, AndP(c2, c3))


def _pi_cong_prop(level: int, a, b, a2, b2) -> Term:
    """RHS of the product congruence on types: domain prec and three
    family conditions (each under binders a0, a1, w)."""
    dom = TyPrec(level, a, a2)

    def fam(dom_l, dom_r, het, cod_l, cod_r):
        # ∀ x0:dom_l, x1:dom_r, (x0 ⊑ x1) → cod_l[x0] ⊑ cod_r[x1]
        prem = TmPrec(shift(dom_l, 0, 2), shift(dom_r, 0, 2), Var(1), Var(0))
        concl = TyPrec(level,
                       subst(shift(cod_l, 1, 3), 0, Var(2)),
                       subst(shift(cod_r, 1, 3), 0, Var(1)))
        return All(dom_l, All(shift(dom_l) if not het else shift(dom_r),
                              All(prem, concl)))

    mono_l = fam(a, a, False, b, b)
    mono_r = fam(a2, a2, False, b2, b2)
    het = fam(a, a2, True, b, b2)
    return AndP(dom, _and3(mono_l, mono_r, het))


def _pi_prec_prop(a, b, a2, b2, f, g) -> Term:
    """RHS of term precision at product types: both functions monotone and
    pointwise related."""
    def fam(dom_l, dom_r, het, cod_l, cod_r, fn_l, fn_r):
        prem = TmPrec(shift(dom_l, 0, 2), shift(dom_r, 0, 2), Var(1), Var(0))
        tl = subst(shift(cod_l, 1, 3), 0, Var(2))
        tr = subst(shift(cod_r, 1, 3), 0, Var(1))
        concl = TmPrec(tl, tr,
                       App(shift(fn_l, 0, 3), Var(2)),
                       App(shift(fn_r, 0, 3), Var(1)))
        return All(dom_l, All(shift(dom_l) if not het else shift(dom_r),
                              All(prem, concl)))

    mono_f = fam(a, a, False, b, b, f, f)
    mono_g = fam(a2, a2, False, b2, b2, g, g)
    het = fam(a, a2, True, b, b2, f, g)
    return _and3(mono_f, mono_g, het)


def _typrec_step(t: TyPrec):
    a, b = t.lhs, t.rhs
    if isinstance(a, Cum) and isinstance(b, Cum) and t.level >= 1:
        return TyPrec(t.level - 1, a.ty, b.ty), "Cum-Cong-Ty"
    if isinstance(a, List) and isinstance(b, List):
        return TyPrec(t.level, a.elem, b.elem), "List-Cong-Ty"
    if isinstance(a, Pi) and isinstance(b, Pi):
        return _pi_cong_prop(t.level, a.dom, a.cod, b.dom, b.cod), "Pi-Cong"
    if isinstance(a, Sigma) and isinstance(b, Sigma):
        return _pi_cong_prop(t.level, a.fst, a.snd, b.fst, b.snd), "Sigma-Cong"
    if isinstance(a, BoxP) and isinstance(b, BoxP):
        return TmPrec(Sort(None), Sort(None), a.prop, b.prop), "Box-Cong"
    return None


def _tmprec_step(t: TmPrec):
    ta, tb = t.lhs_ty, t.rhs_ty
    if isinstance(ta, Cum) and isinstance(tb, Cum):
        return (TmPrec(ta.ty, tb.ty, CoeDown(t.lhs), CoeDown(t.rhs)),
                "Cum-Prec-Def")
    if isinstance(ta, Pi) and isinstance(tb, Pi):
        return (_pi_prec_prop(ta.dom, ta.cod, tb.dom, tb.cod, t.lhs, t.rhs),
                "Pi-Prec-Def")
    if (isinstance(ta, Sort) and isinstance(tb, Sort)
            and not ta.is_prop and ta == tb):
        i = ta.level
        return (AndP(TyPrec(i, t.lhs, t.rhs), TyPrec(i, t.rhs, unk_ty(i))),
                "Univ-Prec-Def")
    if isinstance(ta, List) and isinstance(tb, List):
        l, r = t.lhs, t.rhs
        if isinstance(l, Cons) and isinstance(r, Cons):
            return (AndP(TmPrec(ta.elem, tb.elem, l.head, r.head),
                         TmPrec(ta, tb, l.tail, r.tail)),
                    "List-Prec-Cons")
        if isinstance(l, Nil) and isinstance(r, Cons):
            return Bot(), "NoConf-Nil-Cons"
        if isinstance(l, Cons) and isinstance(r, Nil):
            return Bot(), "NoConf-Cons-Nil"
        return None
    if isinstance(ta, Nat) and isinstance(tb, Nat):
        l, r = t.lhs, t.rhs
        if isinstance(l, Succ) and isinstance(r, Succ):
            return TmPrec(Nat(), Nat(), l.pred, r.pred), "Nat-Prec-Succ"
        if isinstance(l, Zero) and isinstance(r, Succ):
            return Bot(), "NoConf-Zero-Succ"
        if isinstance(l, Succ) and isinstance(r, Zero):
            return Bot(), "NoConf-Succ-Zero"
        return None
    if isinstance(ta, Bool) and isinstance(tb, Bool):
        l, r = t.lhs, t.rhs
        if isinstance(l, TrueT) and isinstance(r, FalseT):
            return Bot(), "NoConf-True-False"
        if isinstance(l, FalseT) and isinstance(r, TrueT):
            return Bot(), "NoConf-False-True"
        return None
    if isinstance(ta, Sigma) and isinstance(tb, Sigma):
        l, r = t.lhs, t.rhs
        if isinstance(l, Pair) and isinstance(r, Pair):
            return (AndP(TmPrec(ta.fst, tb.fst, l.fst, r.fst),
                         TmPrec(subst(ta.snd, 0, l.fst),
                                subst(tb.snd, 0, r.fst), l.snd, r.snd)),
                    "Sigma-Prec-Pair")
        return None
    return None


def head_step(t: Term):
    """The root redex of t, as (reduct, rule name), or None."""
    if isinstance(t, App) and isinstance(t.fn, Lam):
        return subst(t.fn.body, 0, t.arg), "Pi-Beta"
    if isinstance(t, Unk):
        if isinstance(t.ty, Pi):
            return Lam(t.ty.dom, Unk(t.ty.cod), hint=t.ty.hint), "Pi-Unk"
        if isinstance(t.ty, Cum):
            return CoeUp(Unk(t.ty.ty)), "Cum-Unk"
        return None
    if isinstance(t, Err):
        if isinstance(t.ty, Pi):
            return Lam(t.ty.dom, Err(t.ty.cod), hint=t.ty.hint), "Pi-Err"
        if isinstance(t.ty, Cum):
            return CoeUp(Err(t.ty.ty)), "Cum-Err"
        return None
    if isinstance(t, Cast):
        return _cast_step(t)
    if isinstance(t, CatchList):
        return _catch_list(t, "Catch")
    if isinstance(t, CatchListP):
        return _catch_list(t, "CatchP")
    if isinstance(t, CatchNat):
        return _catch_nat(t, "CatchNat")
    if isinstance(t, CatchNatP):
        return _catch_nat(t, "CatchNatP")
    if isinstance(t, CatchBool):
        return _catch_bool(t, "CatchBool")
    if isinstance(t, CatchBoolP):
        return _catch_bool(t, "CatchBoolP")
    if isinstance(t, CatchUnit):
        return _catch_unit(t, "CatchUnit")
    if isinstance(t, CatchUnitP):
        return _catch_unit(t, "CatchUnitP")
    if isinstance(t, CatchEmpty):
        return _catch_empty(t, "CatchEmpty")
    if isinstance(t, CatchEmptyP):
        return _catch_empty(t, "CatchEmptyP")
    if isinstance(t, CatchSigma):
        return _catch_sigma(t, "CatchSigma")
    if isinstance(t, CatchSigmaP):
        return _catch_sigma(t, "CatchSigmaP")
    if isinstance(t, CatchBox):
        s = t.scrut
        if isinstance(s, BoxIntro):
            return App(t.on_box, s.prf), "CatchBox-box"
        if isinstance(s, Err) and isinstance(s.ty, BoxP):
            return t.on_err, "CatchBox-Err"
        if isinstance(s, Unk) and isinstance(s.ty, BoxP):
            return t.on_unk, "CatchBox-Unk"
        return None
    if isinstance(t, CoeDown) and isinstance(t.body, CoeUp):
        return t.body.body, "Coe-Retr"
    if isinstance(t, CoeUp) and isinstance(t.body, CoeDown):
        return t.body.body, "Coe-Sect"
    if isinstance(t, FstP) and isinstance(t.pair, PairP):
        return t.pair.fst, "AndP-Fst"
    if isinstance(t, SndP) and isinstance(t.pair, PairP):
        return t.pair.snd, "AndP-Snd"
    if isinstance(t, TyPrec):
        return _typrec_step(t)
    if isinstance(t, TmPrec):
        return _tmprec_step(t)
    return None


# --- single global step (leftmost-outermost) ---------------------------------

@dataclass(frozen=True)
class Stepped:
    term: Term
    rule: str


@dataclass(frozen=True)
class Stuck:
    reason: str  # "neutral" | "normal-form"


StepResult = Union[Stepped, Stuck]


def _blocked_by_var(t: Term) -> bool:
    if isinstance(t, Var):
        return True
    if isinstance(t, App):
        return _blocked_by_var(t.fn)
    if isinstance(t, (CatchList, CatchListP, CatchNat, CatchNatP, CatchBool,
                      CatchBoolP, CatchUnit, CatchUnitP, CatchEmpty,
                      CatchEmptyP, CatchSigma, CatchSigmaP, CatchBox)):
        return _blocked_by_var(t.scrut)
    if isinstance(t, Cast):
        return (_blocked_by_var(t.src) or _blocked_by_var(t.tgt)
                or _blocked_by_var(t.body))
    if isinstance(t, (CoeDown, CoeUp)):
        return _blocked_by_var(t.body)
    if isinstance(t, (FstP, SndP)):
        return _blocked_by_var(t.pair)
    if isinstance(t, (Unk, Err)):
        return _blocked_by_var(t.ty)
    if isinstance(t, TyPrec):
        return _blocked_by_var(t.lhs) or _blocked_by_var(t.rhs)
    if isinstance(t, TmPrec):
        return _blocked_by_var(t.lhs_ty) or _blocked_by_var(t.rhs_ty)
    if isinstance(t, ExFalso):
        return True  # no closed proof of ⊥ exists; treat as neutral
    if isinstance(t, Const):
        return True  # opaque
    return False


def step(t: Term) -> StepResult:
    r = head_step(t)
    if r is not None:
        return Stepped(*r)
    for name, depth in subterm_spec(t):
        old = getattr(t, name)
        if old is None:
            continue
        if isinstance(old, tuple):
            for k, el in enumerate(old):
                r = step(el)
                if isinstance(r, Stepped):
                    new = old[:k] + (r.term,) + old[k + 1:]
                    return Stepped(_replace_field(t, name, new), r.rule)
        else:
            r = step(old)
            if isinstance(r, Stepped):
                return Stepped(_replace_field(t, name, r.term), r.rule)
    reason = "neutral" if _blocked_by_var(t) else "normal-form"
    return Stuck(reason)


def _replace_field(t: Term, name: str, value) -> Term:
    from dataclasses import replace
    return replace(t, **{name: value})


# --- weak-head normalization --------------------------------------------------

class Fuel:
    __slots__ = ("n",)

    def __init__(self, n: int):
        self.n = n

    def consume(self):
        self.n -= 1
        if self.n < 0:
            raise FuelExhausted("reduction step budget exhausted")


_VALUE_HEADS = (HeadTag.CUM, HeadTag.LIST, HeadTag.NAT, HeadTag.BOOL,
                HeadTag.UNIT, HeadTag.EMPTY, HeadTag.SIGMA)


def _whnf(t: Term, fuel: Fuel) -> Term:
    while True:
        r = head_step(t)
        if r is not None:
            fuel.consume()
            t = r[0]
            continue
        if isinstance(t, App):
            fn = _whnf(t.fn, fuel)
            if fn is not t.fn:
                t = App(fn, t.arg)
                continue
            return t
        if isinstance(t, (Unk, Err)):
            ty = _whnf(t.ty, fuel)
            if ty is not t.ty:
                t = type(t)(ty)
                continue
            return t
        if isinstance(t, (CoeDown, CoeUp)):
            body = _whnf(t.body, fuel)
            if body is not t.body:
                t = type(t)(body)
                continue
            return t
        if isinstance(t, (FstP, SndP)):
            p = _whnf(t.pair, fuel)
            if p is not t.pair:
                t = type(t)(p)
                continue
            return t
        if isinstance(t, (CatchList, CatchListP, CatchNat, CatchNatP,
                          CatchBool, CatchBoolP, CatchUnit, CatchUnitP,
                          CatchEmpty, CatchEmptyP, CatchSigma, CatchSigmaP,
                          CatchBox)):
            s = _whnf(t.scrut, fuel)
            if s is not t.scrut:
                t = _replace_field(t, "scrut", s)
                continue
            return t
        if isinstance(t, Cast):
            src = _whnf(t.src, fuel)
            tgt = _whnf(t.tgt, fuel)
            if src is not t.src or tgt is not t.tgt:
                t = Cast(src, tgt, t.body)
                continue
            need_body = (_is_unk_univ(src) is not None
                         or (is_whnf_type(src) and is_whnf_type(tgt)
                             and head(src) == head(tgt)
                             and head(src) in _VALUE_HEADS))
            if need_body:
                body = _whnf(t.body, fuel)
                if body is not t.body:
                    t = Cast(src, tgt, body)
                    continue
            return t
        if isinstance(t, TyPrec):
            lhs = _whnf(t.lhs, fuel)
            rhs = _whnf(t.rhs, fuel)
            if lhs is not t.lhs or rhs is not t.rhs:
                t = TyPrec(t.level, lhs, rhs)
                continue
            return t
        if isinstance(t, TmPrec):
            lt = _whnf(t.lhs_ty, fuel)
            rt = _whnf(t.rhs_ty, fuel)
            if lt is not t.lhs_ty or rt is not t.rhs_ty:
                t = TmPrec(lt, rt, t.lhs, t.rhs)
                continue
            if (head(lt) in (HeadTag.LIST, HeadTag.NAT, HeadTag.BOOL,
                             HeadTag.SIGMA)
                    and head(lt) == head(rt)):
                lhs = _whnf(t.lhs, fuel)
                rhs = _whnf(t.rhs, fuel)
                if lhs is not t.lhs or rhs is not t.rhs:
                    t = TmPrec(lt, rt, lhs, rhs)
                    continue
            return t
        return t


def whnf(t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    return _whnf(t, Fuel(fuel))


# --- deep normalization and traces --------------------------------------------

def normalize(t: Term, fuel: int = DEFAULT_FUEL) -> Term:
    for _ in range(fuel):
        r = step(t)
        if isinstance(r, Stuck):
            return t
        t = r.term
    if isinstance(step(t), Stuck):
        return t
    raise FuelExhausted(f"no normal form within {fuel} steps")


@dataclass(frozen=True)
class Trace:
    entries: tuple[tuple[str, Term, Term], ...]
    steps_used: int

    @property
    def final(self) -> Term:
        return self.entries[-1][2] if self.entries else None


def trace(t: Term, fuel: int = DEFAULT_FUEL) -> Trace:
    entries = []
    cur = t
    for _ in range(fuel):
        r = step(cur)
        if isinstance(r, Stuck):
            return Trace(tuple(entries), len(entries))
        entries.append((r.rule, cur, r.term))
        cur = r.term
    if isinstance(step(cur), Stuck):
        return Trace(tuple(entries), len(entries))
    raise FuelExhausted(f"no normal form within {fuel} steps")


# --- redex enumeration (for the randomized-strategy confluence tests) --------

Path = tuple

def redexes(t: Term, path: Path = ()) -> list[Path]:
    """Paths of all subterms where a head rule fires."""
    found = []
    if head_step(t) is not None:
        found.append(path)
    for name, depth in subterm_spec(t):
        val = getattr(t, name)
        if val is None:
            continue
        if isinstance(val, tuple):
            for k, el in enumerate(val):
                found.extend(redexes(el, path + ((name, k),)))
        else:
            found.extend(redexes(val, path + ((name, None),)))
    return found


def contract_at(t: Term, path: Path) -> Term:
    if not path:
        r = head_step(t)
        if r is None:
            raise ValueError("no redex at path")
        return r[0]
    (name, k), rest = path[0], path[1:]
    val = getattr(t, name)
    if k is None:
        return _replace_field(t, name, contract_at(val, rest))
    new = val[:k] + (contract_at(val[k], rest),) + val[k + 1:]
    return _replace_field(t, name, new)
