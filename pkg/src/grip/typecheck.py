"""Bidirectional typing for the two-sorted kernel.

Terms carry enough annotations that inference is syntax-directed; checking is
inference plus type-directed conversion. Conversion is proof-irrelevant at
propositions, eta for functions, and coercion-aware at lifted types, falling
back to structural comparison of weak-head normal forms at base heads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import prelude as prelude_mod
from . import reduction as R
from . import syntax as S
from .syntax import (Ctx, EMPTY_CTX, Term, ctx_extend, ctx_lookup, shift,
                     subst)


@dataclass
class TypeCheckError(Exception):
    kind: str  # UnboundVariable | SortMismatch | NotAFunction | ...
    message: str
    rule: str = ""
    offender: Optional[Term] = None
    expected: Optional[Term] = None
    actual: Optional[Term] = None

    def __str__(self):
        loc = f" [{self.rule}]" if self.rule else ""
        return f"{self.kind}{loc}: {self.message}"


@dataclass(frozen=True)
class TypedJudgment:
    ctx: Ctx
    term: Term
    type: Term


_CATCH_CONS = {
    S.CatchList: False, S.CatchListP: True,
    S.CatchNat: False, S.CatchNatP: True,
    S.CatchBool: False, S.CatchBoolP: True,
    S.CatchUnit: False, S.CatchUnitP: True,
    S.CatchEmpty: False, S.CatchEmptyP: True,
    S.CatchSigma: False, S.CatchSigmaP: True,
}


class Checker:
    def __init__(self, max_level: int = S.DEFAULT_MAX_LEVEL,
                 fuel: int = R.DEFAULT_FUEL,
                 const_types: Optional[dict] = None):
        self.max_level = max_level
        self.fuel = fuel
        self.const_types = const_types  # optional (name, level) -> Term override
        self._whnf_cache: dict = {}
        self._conv_cache: dict = {}
        self._prop_cache: dict = {}

    # -- helpers --

    def whnf(self, t: Term) -> Term:
        r = self._whnf_cache.get(t)
        if r is None:
            r = R.whnf(t, self.fuel)
            self._whnf_cache[t] = r
            self._whnf_cache[r] = r
        return r

    def fail(self, kind, message, rule="", **kw):
        raise TypeCheckError(kind, message, rule=rule, **kw)

    def sort_of(self, ctx: Ctx, ty: Term) -> S.Sort:
        s = self.whnf(self.infer(ctx, ty))
        if not isinstance(s, S.Sort):
            self.fail("SortMismatch", "expected a type or proposition",
                      offender=ty, actual=s)
        return s

    def univ_level(self, ctx: Ctx, ty: Term, rule: str) -> int:
        s = self.sort_of(ctx, ty)
        if s.is_prop:
            self.fail("SortMismatch",
                      "expected a type of the impure hierarchy", rule=rule,
                      offender=ty)
        return s.level

    def bump(self, i: int) -> int:
        if i + 1 > self.max_level:
            self.fail("SortMismatch",
                      f"universe level {i + 1} exceeds bound {self.max_level}")
        return i + 1

    def const_type(self, name: str, level: int) -> Term:
        if self.const_types is not None and (name, level) in self.const_types:
            return self.const_types[(name, level)]
        try:
            return prelude_mod.const_type(name, level, self.max_level)
        except prelude_mod.UnknownConstant as e:
            self.fail("UnboundVariable", str(e))

    # -- proposition detection (for proof irrelevance) --

    def is_prop_type(self, ctx: Ctx, ty: Term) -> bool:
        key = (ctx, ty)
        hit = self._prop_cache.get(key)
        if hit is not None:
            return hit
        out = self._is_prop_type_raw(ctx, ty)
        self._prop_cache[key] = out
        return out

    def _is_prop_type_raw(self, ctx: Ctx, ty: Term) -> bool:
        w = self.whnf(ty)
        if isinstance(w, (S.Bot, S.All, S.AndP, S.TyPrec, S.TmPrec)):
            return True
        if isinstance(w, (S.Sort, S.Pi, S.List, S.Nat, S.Bool, S.Unit,
                          S.Empty, S.Sigma, S.BoxP, S.Cum, S.Unk, S.Err)):
            return False
        s = self.whnf(self.infer(ctx, w))
        return isinstance(s, S.Sort) and s.is_prop

    # -- conversion --

    def convertible(self, ctx: Ctx, a: Term, b: Term, ty: Term) -> bool:
        if self.is_prop_type(ctx, ty):
            return True  # definitional proof irrelevance
        w = self.whnf(ty)
        if isinstance(w, S.Pi):
            ctx2 = ctx_extend(ctx, w.hint, w.dom)
            return self.convertible(ctx2,
                                    S.App(shift(a), S.Var(0)),
                                    S.App(shift(b), S.Var(0)), w.cod)
        if isinstance(w, S.Cum):
            return self.convertible(ctx, S.CoeDown(a), S.CoeDown(b), w.ty)
        return self.conv(self.whnf(a), self.whnf(b))

    def conv_types(self, ctx: Ctx, a: Term, b: Term) -> bool:
        """Conversion of two well-sorted types."""
        return self.conv(self.whnf(a), self.whnf(b))

    def conv(self, a: Term, b: Term) -> bool:
        """Structural conversion of weak-head normal forms."""
        if a == b:
            return True
        key = (a, b)
        hit = self._conv_cache.get(key)
        if hit is not None:
            return hit
        out = self._conv_raw(a, b)
        self._conv_cache[key] = out
        return out

    def _conv_raw(self, a: Term, b: Term) -> bool:
        if isinstance(a, S.Lam) and not isinstance(b, S.Lam):
            return self.conv(self.whnf(a.body),
                             self.whnf(S.App(shift(b), S.Var(0))))
        if isinstance(b, S.Lam) and not isinstance(a, S.Lam):
            return self.conv(self.whnf(S.App(shift(a), S.Var(0))),
                             self.whnf(b.body))
        if type(a) is not type(b):
            return False
        if isinstance(a, S.Pair):
            return (self.conv(self.whnf(a.fst), self.whnf(b.fst))
                    and self.conv(self.whnf(a.snd), self.whnf(b.snd)))
        spec = dict(S.subterm_spec(a))
        import dataclasses
        for f in dataclasses.fields(a):
            if not f.compare:
                continue
            va, vb = getattr(a, f.name), getattr(b, f.name)
            if f.name in spec:
                if isinstance(va, tuple) or isinstance(vb, tuple):
                    if len(va) != len(vb):
                        return False
                    if not all(self.conv(self.whnf(x), self.whnf(y))
                               for x, y in zip(va, vb)):
                        return False
                elif va is None or vb is None:
                    if va is not vb:
                        return False
                elif not self.conv(self.whnf(va), self.whnf(vb)):
                    return False
            elif va != vb:
                return False
        return True

    # -- checking --

    def check(self, ctx: Ctx, t: Term, expected: Term) -> Term:
        """Check t against expected; returns t with pair annotations filled."""
        if isinstance(t, S.Pair) and t.fst_ty is None:
            w = self.whnf(expected)
            if isinstance(w, S.Sigma):
                fst = self.check(ctx, t.fst, w.fst)
                snd = self.check(ctx, t.snd, subst(w.snd, 0, fst))
                return S.Pair(w.fst, w.snd, fst, snd)
        if isinstance(t, S.Lam):
            w = self.whnf(expected)
            if isinstance(w, (S.Pi, S.All)) and self.conv_types(ctx, t.dom, w.dom):
                body = self.check(ctx_extend(ctx, t.hint, t.dom), t.body,
                                  w.cod if isinstance(w, S.Pi) else w.body)
                return S.Lam(t.dom, body, hint=t.hint)
        actual = self.infer(ctx, t)
        if not self.conv_types(ctx, actual, expected):
            if not self._conv_as_terms(ctx, actual, expected):
                self.fail("ConversionFailure", "type mismatch", rule="Conv",
                          offender=t,
                          expected=R.normalize(expected, self.fuel),
                          actual=R.normalize(actual, self.fuel))
        return t

    def _conv_as_terms(self, ctx: Ctx, a: Term, b: Term) -> bool:
        # Propositions compare as terms of the proposition sort, which is the
        # same structural comparison; kept as an explicit second chance for
        # eta at function types appearing as type families.
        try:
            sa = self.sort_of(ctx, a)
        except TypeCheckError:
            return False
        return self.convertible(ctx, a, b, sa)

    # -- inference --

    def infer(self, ctx: Ctx, t: Term) -> Term:
        m = getattr(self, "_infer_" + type(t).__name__, None)
        if m is None:
            self.fail("SortMismatch", f"cannot infer {type(t).__name__}",
                      offender=t)
        return m(ctx, t)

    def _infer_Var(self, ctx, t):
        try:
            return ctx_lookup(ctx, t.ix)
        except IndexError:
            self.fail("UnboundVariable", f"index {t.ix} unbound", rule="Var",
                      offender=t)

    def _infer_Sort(self, ctx, t):
        if t.is_prop:
            return S.Sort(0)
        return S.Sort(self.bump(t.level))

    def _infer_Pi(self, ctx, t):
        sd = self.sort_of(ctx, t.dom)
        sc = self.sort_of(ctx_extend(ctx, t.hint, t.dom), t.cod)
        if sc.is_prop:
            self.fail("SortMismatch",
                      "proposition-valued product; use forall", rule="Prod",
                      offender=t)
        lvl = sc.level if sd.is_prop else max(sd.level, sc.level)
        return S.Sort(lvl)

    def _infer_Lam(self, ctx, t):
        self.sort_of(ctx, t.dom)
        body_ty = self.infer(ctx_extend(ctx, t.hint, t.dom), t.body)
        if self.is_prop_type(ctx_extend(ctx, t.hint, t.dom), body_ty):
            return S.All(t.dom, body_ty, hint=t.hint)
        return S.Pi(t.dom, body_ty, hint=t.hint)

    def _infer_App(self, ctx, t):
        fn_ty = self.whnf(self.infer(ctx, t.fn))
        if isinstance(fn_ty, S.Pi):
            self.check(ctx, t.arg, fn_ty.dom)
            return subst(fn_ty.cod, 0, t.arg)
        if isinstance(fn_ty, S.All):
            self.check(ctx, t.arg, fn_ty.dom)
            return subst(fn_ty.body, 0, t.arg)
        self.fail("NotAFunction", "application head is not a function",
                  rule="App", offender=t, actual=fn_ty)

    # inductive type formers

    def _infer_Nat(self, ctx, t):
        return S.Sort(0)

    _infer_Bool = _infer_Unit = _infer_Empty = _infer_Nat

    def _infer_Zero(self, ctx, t):
        return S.Nat()

    def _infer_Succ(self, ctx, t):
        self.check(ctx, t.pred, S.Nat())
        return S.Nat()

    def _infer_TrueT(self, ctx, t):
        return S.Bool()

    def _infer_FalseT(self, ctx, t):
        return S.Bool()

    def _infer_Tt(self, ctx, t):
        return S.Unit()

    def _infer_List(self, ctx, t):
        return S.Sort(self.univ_level(ctx, t.elem, "List"))

    def _infer_Nil(self, ctx, t):
        self.univ_level(ctx, t.elem, "List-Nil")
        return S.List(t.elem)

    def _infer_Cons(self, ctx, t):
        self.univ_level(ctx, t.elem, "List-Cons")
        self.check(ctx, t.head, t.elem)
        self.check(ctx, t.tail, S.List(t.elem))
        return S.List(t.elem)

    def _infer_Sigma(self, ctx, t):
        i = self.univ_level(ctx, t.fst, "Sig")
        j = self.univ_level(ctx_extend(ctx, t.hint, t.fst), t.snd, "Sig")
        return S.Sort(max(i, j))

    def _infer_Pair(self, ctx, t):
        if t.fst_ty is None:
            fst_ty = self.infer(ctx, t.fst)
            snd_ty = self.infer(ctx, t.snd)
            self.univ_level(ctx, fst_ty, "Pair")
            self.univ_level(ctx, snd_ty, "Pair")
            return S.Sigma(fst_ty, shift(snd_ty))
        self.univ_level(ctx, t.fst_ty, "Pair")
        self.univ_level(ctx_extend(ctx, "x", t.fst_ty), t.snd_ty, "Pair")
        self.check(ctx, t.fst, t.fst_ty)
        self.check(ctx, t.snd, subst(t.snd_ty, 0, t.fst))
        return S.Sigma(t.fst_ty, t.snd_ty)

    # gradual primitives

    def _infer_Unk(self, ctx, t):
        self.univ_level(ctx, t.ty, "Unk")
        return t.ty

    def _infer_Err(self, ctx, t):
        self.univ_level(ctx, t.ty, "Err")
        return t.ty

    def _infer_Cast(self, ctx, t):
        i = self.univ_level(ctx, t.src, "Cast")
        j = self.univ_level(ctx, t.tgt, "Cast")
        if i != j:
            self.fail("CastLevelMismatch",
                      f"cast endpoints at different levels ({i} vs {j})",
                      rule="Cast", offender=t)
        self.check(ctx, t.body, t.src)
        return t.tgt

    def _infer_Cum(self, ctx, t):
        i = self.univ_level(ctx, t.ty, "Cum")
        return S.Sort(self.bump(i))

    def _infer_CoeUp(self, ctx, t):
        ty = self.infer(ctx, t.body)
        self.univ_level(ctx, ty, "Coe")
        return S.Cum(ty)

    def _infer_CoeDown(self, ctx, t):
        ty = self.whnf(self.infer(ctx, t.body))
        if not isinstance(ty, S.Cum):
            self.fail("SortMismatch", "down expects a lifted type",
                      rule="Coe-Inv", offender=t, actual=ty)
        return ty.ty

    # pure layer

    def _infer_Bot(self, ctx, t):
        return S.PROP

    def _infer_ExFalso(self, ctx, t):
        self.check(ctx, t.prf, S.Bot())
        self.sort_of(ctx, t.tgt)
        return t.tgt

    def _infer_All(self, ctx, t):
        self.sort_of(ctx, t.dom)
        body_sort = self.sort_of(ctx_extend(ctx, t.hint, t.dom), t.body)
        if not body_sort.is_prop:
            self.fail("SortMismatch", "forall body must be a proposition",
                      rule="Forall-Wf", offender=t)
        return S.PROP

    def _infer_AndP(self, ctx, t):
        for side in (t.lhs, t.rhs):
            if not self.sort_of(ctx, side).is_prop:
                self.fail("SortMismatch", "conjunct is not a proposition",
                          rule="And-Wf", offender=side)
        return S.PROP

    def _infer_PairP(self, ctx, t):
        p = self.infer(ctx, t.fst)
        q = self.infer(ctx, t.snd)
        for prop in (p, q):
            if not self.sort_of(ctx, prop).is_prop:
                self.fail("SortMismatch", "pairP component is not a proof",
                          rule="And-Intro", offender=t)
        return S.AndP(p, q)

    def _infer_FstP(self, ctx, t):
        w = self.whnf(self.infer(ctx, t.pair))
        if not isinstance(w, S.AndP):
            self.fail("SortMismatch", "fstP expects a conjunction proof",
                      rule="And-Elim", offender=t, actual=w)
        return w.lhs

    def _infer_SndP(self, ctx, t):
        w = self.whnf(self.infer(ctx, t.pair))
        if not isinstance(w, S.AndP):
            self.fail("SortMismatch", "sndP expects a conjunction proof",
                      rule="And-Elim", offender=t, actual=w)
        return w.rhs

    def _infer_BoxP(self, ctx, t):
        if not self.sort_of(ctx, t.prop).is_prop:
            self.fail("SortMismatch", "Box expects a proposition",
                      rule="Box-Wf", offender=t)
        return S.Sort(0)

    def _infer_BoxIntro(self, ctx, t):
        if not self.sort_of(ctx, t.prop).is_prop:
            self.fail("SortMismatch", "box expects a proposition",
                      rule="Box-Intro", offender=t)
        self.check(ctx, t.prf, t.prop)
        return S.BoxP(t.prop)

    def _infer_CatchBox(self, ctx, t):
        if not self.sort_of(ctx, t.prop).is_prop:
            self.fail("SortMismatch", "catch_box expects a proposition",
                      rule="Box-Elim", offender=t)
        box_ty = S.BoxP(t.prop)
        mot_ty = self.whnf(self.infer(ctx, t.motive))
        if not (isinstance(mot_ty, S.Pi)
                and self.conv_types(ctx, mot_ty.dom, box_ty)):
            self.fail("SortMismatch", "catch_box motive must map Box P to a sort",
                      rule="Box-Elim", offender=t.motive, actual=mot_ty)
        cod = self.whnf(mot_ty.cod)
        if not isinstance(cod, S.Sort):
            self.fail("SortMismatch", "catch_box motive must land in a sort",
                      rule="Box-Elim", offender=t.motive)
        mk = S.All if cod.is_prop else S.Pi
        on_box_ty = mk(t.prop, S.App(shift(t.motive),
                                     S.BoxIntro(shift(t.prop), S.Var(0))))
        self.check(ctx, t.on_box, on_box_ty)
        self.check(ctx, t.on_err, S.App(t.motive, S.Err(box_ty)))
        self.check(ctx, t.on_unk, S.App(t.motive, S.Unk(box_ty)))
        self.check(ctx, t.scrut, box_ty)
        return S.App(t.motive, t.scrut)

    # internal precision

    def _infer_TyPrec(self, ctx, t):
        if not 0 <= t.level <= self.max_level:
            self.fail("PrecLevelMismatch", f"bad precision level {t.level}",
                      rule="Prec-Type-Wf", offender=t)
        for side in (t.lhs, t.rhs):
            lvl = self.univ_level(ctx, side, "Prec-Type-Wf")
            if lvl != t.level:
                self.fail("PrecLevelMismatch",
                          f"precision at level {t.level} applied to a type "
                          f"at level {lvl}", rule="Prec-Type-Wf", offender=side)
        return S.PROP

    def _infer_TmPrec(self, ctx, t):
        i = self.univ_level(ctx, t.lhs_ty, "Prec-Wf")
        j = self.univ_level(ctx, t.rhs_ty, "Prec-Wf")
        if i != j:
            self.fail("PrecLevelMismatch",
                      f"term precision across levels ({i} vs {j})",
                      rule="Prec-Wf", offender=t)
        self.check(ctx, t.lhs, t.lhs_ty)
        self.check(ctx, t.rhs, t.rhs_ty)
        return S.PROP

    def _infer_Const(self, ctx, t):
        ty = self.const_type(t.name, t.level)
        for arg in t.args:
            w = self.whnf(ty)
            if isinstance(w, (S.Pi, S.All)):
                self.check(ctx, arg, w.dom)
                ty = subst(w.cod if isinstance(w, S.Pi) else w.body, 0, arg)
            else:
                self.fail("NotAFunction", "over-applied prelude constant",
                          offender=t)
        return ty

    # catch eliminators

    def _catch(self, ctx, t, scrut_ty, branches, is_prop):
        mot_ty = self.whnf(self.infer(ctx, t.motive))
        if not (isinstance(mot_ty, S.Pi)
                and self.conv_types(ctx, mot_ty.dom, scrut_ty)):
            self.fail("SortMismatch", "catch motive has the wrong domain",
                      rule="Catch", offender=t.motive, actual=mot_ty)
        cod = self.whnf(mot_ty.cod)
        if not isinstance(cod, S.Sort) or cod.is_prop != is_prop:
            want = "Prop" if is_prop else "the impure hierarchy"
            self.fail("SortMismatch" if not is_prop else "PropElimRestriction",
                      f"catch motive must land in {want}", rule="Catch",
                      offender=t.motive)
        for branch, expected in branches:
            self.check(ctx, branch, expected)
        self.check(ctx, t.scrut, scrut_ty)
        return S.App(t.motive, t.scrut)

    def _hyp_chain(self, motive, doms, result, is_prop):
        """Π/∀ (x1:dom1)... result, where result may use the bound vars."""
        mk = S.All if is_prop else S.Pi
        t = result
        for dom in reversed(doms):
            t = mk(dom, t)
        return t

    def _infer_CatchList(self, ctx, t, is_prop=False):
        self.univ_level(ctx, t.elem, "List-Catch")
        lty = S.List(t.elem)
        P = t.motive
        a2, p2 = shift(t.elem, 0, 2), shift(P, 0, 2)
        on_cons_ty = self._hyp_chain(
            P,
            [t.elem, S.List(shift(t.elem)), S.App(p2, S.Var(0))],
            S.App(shift(P, 0, 3),
                  S.Cons(shift(t.elem, 0, 3), S.Var(2), S.Var(1))),
            is_prop)
        branches = [
            (t.on_nil, S.App(P, S.Nil(t.elem))),
            (t.on_cons, on_cons_ty),
            (t.on_err, S.App(P, S.Err(lty))),
            (t.on_unk, S.App(P, S.Unk(lty))),
        ]
        return self._catch(ctx, t, lty, branches, is_prop)

    def _infer_CatchListP(self, ctx, t):
        return self._infer_CatchList(ctx, t, is_prop=True)

    def _infer_CatchNat(self, ctx, t, is_prop=False):
        P = t.motive
        on_succ_ty = self._hyp_chain(
            P,
            [S.Nat(), S.App(shift(P), S.Var(0))],
            S.App(shift(P, 0, 2), S.Succ(S.Var(1))),
            is_prop)
        branches = [
            (t.on_zero, S.App(P, S.Zero())),
            (t.on_succ, on_succ_ty),
            (t.on_err, S.App(P, S.Err(S.Nat()))),
            (t.on_unk, S.App(P, S.Unk(S.Nat()))),
        ]
        return self._catch(ctx, t, S.Nat(), branches, is_prop)

    def _infer_CatchNatP(self, ctx, t):
        return self._infer_CatchNat(ctx, t, is_prop=True)

    def _infer_CatchBool(self, ctx, t, is_prop=False):
        P = t.motive
        branches = [
            (t.on_true, S.App(P, S.TrueT())),
            (t.on_false, S.App(P, S.FalseT())),
            (t.on_err, S.App(P, S.Err(S.Bool()))),
            (t.on_unk, S.App(P, S.Unk(S.Bool()))),
        ]
        return self._catch(ctx, t, S.Bool(), branches, is_prop)

    def _infer_CatchBoolP(self, ctx, t):
        return self._infer_CatchBool(ctx, t, is_prop=True)

    def _infer_CatchUnit(self, ctx, t, is_prop=False):
        P = t.motive
        branches = [
            (t.on_tt, S.App(P, S.Tt())),
            (t.on_err, S.App(P, S.Err(S.Unit()))),
            (t.on_unk, S.App(P, S.Unk(S.Unit()))),
        ]
        return self._catch(ctx, t, S.Unit(), branches, is_prop)

    def _infer_CatchUnitP(self, ctx, t):
        return self._infer_CatchUnit(ctx, t, is_prop=True)

    def _infer_CatchEmpty(self, ctx, t, is_prop=False):
        P = t.motive
        branches = [
            (t.on_err, S.App(P, S.Err(S.Empty()))),
            (t.on_unk, S.App(P, S.Unk(S.Empty()))),
        ]
        return self._catch(ctx, t, S.Empty(), branches, is_prop)

    def _infer_CatchEmptyP(self, ctx, t):
        return self._infer_CatchEmpty(ctx, t, is_prop=True)

    def _infer_CatchSigma(self, ctx, t, is_prop=False):
        self.univ_level(ctx, t.fst_ty, "Sig-Catch")
        self.univ_level(ctx_extend(ctx, "x", t.fst_ty), t.snd_ty, "Sig-Catch")
        sty = S.Sigma(t.fst_ty, t.snd_ty)
        P = t.motive
        pair = S.Pair(shift(t.fst_ty, 0, 2), shift(t.snd_ty, 1, 2),
                      S.Var(1), S.Var(0))
        on_pair_ty = self._hyp_chain(
            P, [t.fst_ty, t.snd_ty], S.App(shift(P, 0, 2), pair), is_prop)
        branches = [
            (t.on_pair, on_pair_ty),
            (t.on_err, S.App(P, S.Err(sty))),
            (t.on_unk, S.App(P, S.Unk(sty))),
        ]
        return self._catch(ctx, t, sty, branches, is_prop)

    def _infer_CatchSigmaP(self, ctx, t):
        return self._infer_CatchSigma(ctx, t, is_prop=True)


# --- module-level convenience ---------------------------------------------

_DEFAULT = Checker()


def infer(ctx: Ctx, t: Term, checker: Optional[Checker] = None) -> Term:
    return (checker or _DEFAULT).infer(ctx, t)


def check(ctx: Ctx, t: Term, ty: Term,
          checker: Optional[Checker] = None) -> Term:
    return (checker or _DEFAULT).check(ctx, t, ty)


def convertible(ctx: Ctx, a: Term, b: Term, ty: Term,
                checker: Optional[Checker] = None) -> bool:
    return (checker or _DEFAULT).convertible(ctx, a, b, ty)


def check_file(src, checker: Optional[Checker] = None):
    """Check every declaration; returns (judgments, [(name, error), ...])."""
    ck = checker or _DEFAULT
    judgments, errors = [], []
    for name, ty, body in src.decls:
        try:
            ck.sort_of(EMPTY_CTX, ty)
            elaborated = ck.check(EMPTY_CTX, body, ty)
            judgments.append(TypedJudgment(EMPTY_CTX, elaborated, ty))
        except TypeCheckError as e:
            errors.append((name, e))
    return judgments, errors
