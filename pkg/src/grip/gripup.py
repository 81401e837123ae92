"""The level-raising fragment: checker, lifting translation, self-precision
witness synthesis, and the dynamic gradual guarantee checker.

Witnesses are synthesized as surface-syntax strings (the parser owns binder
scoping) and parsed back; every witness replays through the kernel checker.
The recursor cases follow the monotone-catch argument: heterogeneous
instances plus quasi-reflexivity supply every self-precision side condition,
so no witness ever refers to itself.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from . import reduction as R
from . import surface as SF
from . import syntax as S
from . import typecheck as T
from .syntax import EMPTY_CTX, Ctx, Term, ctx_extend


@dataclass(frozen=True)
class GripUpJudgment:
    ctx: Ctx
    term: Term
    type: Term


_REJECTED = (S.Bot, S.All, S.AndP, S.PairP, S.FstP, S.SndP, S.BoxP,
             S.BoxIntro, S.CatchBox, S.ExFalso, S.TyPrec, S.TmPrec, S.Const,
             S.CatchListP, S.CatchNatP, S.CatchBoolP, S.CatchUnitP,
             S.CatchEmptyP, S.CatchSigmaP)


class GripUpChecker(T.Checker):
    """Typing of the restricted fragment: products one level up, catches
    restricted to plain recursors, no pure-layer formers."""

    def violation(self, message, offender=None):
        raise T.TypeCheckError("GripUpViolation", message, rule="GRIP-up",
                               offender=offender)

    def infer(self, ctx, t):
        if isinstance(t, _REJECTED):
            self.violation(f"{type(t).__name__} is outside the fragment", t)
        if isinstance(t, S.Sort) and t.is_prop:
            self.violation("the proposition sort is outside the fragment", t)
        return super().infer(ctx, t)

    def _infer_Pi(self, ctx, t):
        i = self.univ_level(ctx, t.dom, "Prod-up")
        j = self.univ_level(ctx_extend(ctx, t.hint, t.dom), t.cod, "Prod-up")
        return S.Sort(self.bump(max(i, j)))

    def _catch(self, ctx, t, scrut_ty, branches, is_prop):
        err_def = S.Err(S.App(t.motive, S.Err(scrut_ty)))
        unk_def = S.Unk(S.App(t.motive, S.Unk(scrut_ty)))
        for branch, default, tag in ((t.on_err, err_def, "err"),
                                     (t.on_unk, unk_def, "unk")):
            na = R.normalize(branch, self.fuel)
            nb = R.normalize(default, self.fuel)
            if not self.conv(na, nb):
                self.violation(
                    f"catch is not a plain recursor: the {tag} branch must "
                    f"be the default exceptional value", t)
        return super()._catch(ctx, t, scrut_ty, branches, is_prop)


def check_grip_up(t: Term, ctx: Ctx = EMPTY_CTX,
                  checker: Optional[GripUpChecker] = None) -> GripUpJudgment:
    ck = checker or GripUpChecker()
    try:
        ty = ck.infer(ctx, t)
    except T.TypeCheckError as e:
        if e.kind == "GripUpViolation":
            raise
        try:
            T.Checker(max_level=ck.max_level, fuel=ck.fuel).infer(ctx, t)
        except T.TypeCheckError:
            raise e from None
        raise T.TypeCheckError(
            "GripUpViolation",
            "typable in the full theory but not in the fragment; the "
            "level-raising product rule rejects it", rule="Prod-up",
            offender=t) from e
    return GripUpJudgment(ctx, t, ty)


def check_decl_grip_up(ty: Term, body: Term,
                       gup: Optional[GripUpChecker] = None) -> None:
    """Check one declaration in the fragment; errors are reported as
    GripUpViolation when the full theory accepts the declaration."""
    gup = gup or GripUpChecker()
    try:
        gup.sort_of(EMPTY_CTX, ty)
        gup.check(EMPTY_CTX, body, ty)
        return
    except T.TypeCheckError as e:
        if e.kind == "GripUpViolation":
            raise
        err = e
    full = T.Checker(max_level=gup.max_level, fuel=gup.fuel)
    try:
        full.sort_of(EMPTY_CTX, ty)
        full.check(EMPTY_CTX, body, ty)
    except T.TypeCheckError:
        raise err from None
    raise T.TypeCheckError(
        "GripUpViolation",
        "typable in the full theory but not in the fragment; the "
        "level-raising product rule rejects it", rule="Prod-up",
        offender=body) from err


# --- the lifting translation ---------------------------------------------

def _eta_coerce(tm: Term, doms: list) -> Term:
    """λx₁…xₙ. (↓(…(↓ tm) x₁ …)) xₙ — weaken a translated (hence lifted)
    n-ary function into the plain product type an eliminator slot expects."""
    n = len(doms)
    body = S.shift(tm, 0, n)
    for k in range(n):
        body = S.App(S.CoeDown(body), S.Var(n - 1 - k))
    for d in reversed(doms):
        body = S.Lam(d, body)
    return body


def shift_translate(t: Term) -> Term:
    """Guard products with an explicit lift; coerce at application and at
    the product-typed argument slots of eliminators."""
    if isinstance(t, S.Pi):
        return S.Cum(S.Pi(shift_translate(t.dom), shift_translate(t.cod),
                          hint=t.hint))
    if isinstance(t, S.Lam):
        return S.CoeUp(S.Lam(shift_translate(t.dom), shift_translate(t.body),
                             hint=t.hint))
    if isinstance(t, S.App):
        return S.App(S.CoeDown(shift_translate(t.fn)), shift_translate(t.arg))
    if isinstance(t, S.CatchNat):
        out = S.map_subterms(t, lambda s, d: shift_translate(s))
        motive = S.CoeDown(out.motive)
        doms = [S.Nat(), S.App(S.shift(motive), S.Var(0))]
        return replace(out, motive=motive,
                       on_succ=_eta_coerce(out.on_succ, doms))
    if isinstance(t, S.CatchList):
        out = S.map_subterms(t, lambda s, d: shift_translate(s))
        motive = S.CoeDown(out.motive)
        doms = [out.elem, S.List(S.shift(out.elem)),
                S.App(S.shift(motive, 0, 2), S.Var(0))]
        return replace(out, motive=motive,
                       on_cons=_eta_coerce(out.on_cons, doms))
    if isinstance(t, (S.CatchBool, S.CatchUnit, S.CatchEmpty)):
        out = S.map_subterms(t, lambda s, d: shift_translate(s))
        return replace(out, motive=S.CoeDown(out.motive))
    if isinstance(t, S.CatchSigma):
        out = S.map_subterms(t, lambda s, d: shift_translate(s))
        doms = [out.fst_ty, out.snd_ty]
        return replace(out, motive=S.CoeDown(out.motive),
                       on_pair=_eta_coerce(out.on_pair, doms))
    return S.map_subterms(t, lambda s, d: shift_translate(s))


# --- self-precision witness synthesis --------------------------------------

@dataclass(frozen=True)
class SelfPrecWitness:
    ctx: Ctx       # the doubled context for open judgments
    prop: Term     # the self-precision proposition
    witness: Term


@dataclass
class Entry:
    n0: str
    n1: str
    nw: str
    t0: str
    t1: str
    ih: str   # proof string: left type ⊑[□ᵢ,□ᵢ] right type
    lvl: int


def _p(s: str) -> str:
    return f"({s})"


class SynthesisError(Exception):
    pass


# Per-inductive description used by the recursor case.
# patterns: (name, handler field, argument kinds); argument kinds are
# "elem" (the list element), "fst"/"snd" (pair components), "rec"
# (recursive occurrence, receives an induction hypothesis).
_SHAPES = {
    S.CatchNat: ("catch_natP", False,
                 [("zero", "on_zero", []), ("succ", "on_succ", ["rec"])]),
    S.CatchList: ("catch_listP", True,
                  [("nil", "on_nil", []),
                   ("cons", "on_cons", ["elem", "rec"])]),
    S.CatchBool: ("catch_boolP", False,
                  [("true", "on_true", []), ("false", "on_false", [])]),
    S.CatchUnit: ("catch_unitP", False, [("tt", "on_tt", [])]),
    S.CatchEmpty: ("catch_emptyP", False, []),
    S.CatchSigma: ("catch_sigmaP", True,
                   [("pair", "on_pair", ["fst", "snd"])]),
}


class Synthesizer:
    """Names are deterministic per (environment depth, local counter), and
    every synthesized string's free names are exactly the environment entry
    names, so structurally equal syntheses are shared across contexts."""

    def __init__(self, gup: Optional[GripUpChecker] = None):
        self.gup = gup or GripUpChecker()
        self.fresh = 0
        self._depth = 0
        self._synth_memo: dict = {}
        self._tr_memo: dict = {}

    @staticmethod
    def _env_key(env):
        return tuple((e.n0, e.n1, e.nw, e.t0, e.t1, e.ih, e.lvl)
                     for e in env)

    def name(self, base="v"):
        self.fresh += 1
        return f"{base}{self._depth}x{self.fresh}"

    def c(self, name, lvl):
        return f"@{name}_{lvl}" if lvl else f"@{name}"

    # -- translated term as a surface string --

    def tr(self, t: Term, col: int, env: list) -> str:
        if isinstance(t, S.Var):
            e = env[-(t.ix + 1)]
            return e.n0 if col == 0 else e.n1
        key = (t, col, tuple((e.n0, e.n1) for e in env))
        hit = self._tr_memo.get(key)
        if hit is not None:
            return hit
        saved = (self.fresh, self._depth)
        self.fresh, self._depth = 0, len(env)
        out = self._tr_raw(t, col, env)
        self.fresh, self._depth = saved
        self._tr_memo[key] = out
        return out

    def _tr_raw(self, t: Term, col: int, env: list) -> str:

        def under(sub, hint="x"):
            n = self.name(hint if hint.isidentifier() and hint != "_" else "x")
            e = Entry(n, n, "?", "?", "?", "?", 0)
            return n, self.tr(sub, col, env + [e])

        if isinstance(t, S.Pi):
            d = self.tr(t.dom, col, env)
            n, cod = under(t.cod, t.hint)
            return f"iota (Pi ({n}:{d}) -> ({cod}))"
        if isinstance(t, S.Lam):
            d = self.tr(t.dom, col, env)
            n, b = under(t.body, t.hint)
            return f"up (fun ({n}:{d}) => ({b}))"
        if isinstance(t, S.App):
            return (f"((down {_p(self.tr(t.fn, col, env))}) "
                    f"{_p(self.tr(t.arg, col, env))})")
        if isinstance(t, S.Sigma):
            d = self.tr(t.fst, col, env)
            n, cod = under(t.snd, t.hint)
            return f"Sig ({n}:{d}) ({cod})"
        if isinstance(t, S.Sort):
            return f"Type {t.level}"
        if isinstance(t, S.Nat):
            return "Nat"
        if isinstance(t, S.Bool):
            return "Bool"
        if isinstance(t, S.Unit):
            return "Unit"
        if isinstance(t, S.Empty):
            return "Empty"
        if isinstance(t, S.Zero):
            return "0"
        if isinstance(t, S.Succ):
            return f"S {_p(self.tr(t.pred, col, env))}"
        if isinstance(t, S.TrueT):
            return "true"
        if isinstance(t, S.FalseT):
            return "false"
        if isinstance(t, S.Tt):
            return "tt"
        if isinstance(t, S.List):
            return f"List {_p(self.tr(t.elem, col, env))}"
        if isinstance(t, S.Nil):
            return f"nil[{self.tr(t.elem, col, env)}]"
        if isinstance(t, S.Cons):
            return (f"cons[{self.tr(t.elem, col, env)}] "
                    f"{_p(self.tr(t.head, col, env))} "
                    f"{_p(self.tr(t.tail, col, env))}")
        if isinstance(t, S.Unk):
            return f"?[{self.tr(t.ty, col, env)}]"
        if isinstance(t, S.Err):
            return f"err[{self.tr(t.ty, col, env)}]"
        if isinstance(t, S.Cast):
            return (f"cast {_p(self.tr(t.src, col, env))} "
                    f"{_p(self.tr(t.tgt, col, env))} "
                    f"{_p(self.tr(t.body, col, env))}")
        if isinstance(t, S.Cum):
            return f"iota {_p(self.tr(t.ty, col, env))}"
        if isinstance(t, S.CoeUp):
            return f"up {_p(self.tr(t.body, col, env))}"
        if isinstance(t, S.CoeDown):
            return f"down {_p(self.tr(t.body, col, env))}"
        if isinstance(t, S.Pair):
            if t.fst_ty is None:
                raise SynthesisError("pair literal needs elaborated annotations")
            f0 = self.tr(t.fst_ty, col, env)
            n, s0 = under(t.snd_ty)
            return (f"pair[Sig ({n}:{f0}) ({s0})] "
                    f"{_p(self.tr(t.fst, col, env))} "
                    f"{_p(self.tr(t.snd, col, env))}")
        if type(t) in _SHAPES:
            return self._tr_catch(t, col, env, self.tr(t.scrut, col, env))
        raise SynthesisError(f"cannot translate {type(t).__name__}")

    def _tr_catch(self, t, col, env, scrut_str):
        """The translated recursor, with an arbitrary scrutinee string."""
        mot = f"(down {_p(self.tr(t.motive, col, env))})"

        def eta(field, dom_strs):
            h = _p(self.tr(getattr(t, field), col, env))
            names = [self.name("e") for _ in dom_strs]
            body = h
            for n in names:
                body = f"(down {body}) {n}"
                body = _p(body)
            binders = " ".join(f"({n}:{d(names)})"
                               for n, d in zip(names, dom_strs))
            return f"(fun {binders} => {body})"

        if isinstance(t, S.CatchList):
            e = self.tr(t.elem, col, env)
            head = f"catch_list[{e}]"
            on_cons = eta("on_cons", [lambda ns: e,
                                      lambda ns: f"List ({e})",
                                      lambda ns: f"({mot}) {ns[1]}"])
            parts = [mot, _p(self.tr(t.on_nil, col, env)), on_cons,
                     _p(self.tr(t.on_err, col, env)),
                     _p(self.tr(t.on_unk, col, env))]
        elif isinstance(t, S.CatchNat):
            head = "catch_nat"
            on_succ = eta("on_succ", [lambda ns: "Nat",
                                      lambda ns: f"({mot}) {ns[0]}"])
            parts = [mot, _p(self.tr(t.on_zero, col, env)), on_succ,
                     _p(self.tr(t.on_err, col, env)),
                     _p(self.tr(t.on_unk, col, env))]
        elif isinstance(t, S.CatchBool):
            head = "catch_bool"
            parts = [mot, _p(self.tr(t.on_true, col, env)),
                     _p(self.tr(t.on_false, col, env)),
                     _p(self.tr(t.on_err, col, env)),
                     _p(self.tr(t.on_unk, col, env))]
        elif isinstance(t, S.CatchUnit):
            head = "catch_unit"
            parts = [mot, _p(self.tr(t.on_tt, col, env)),
                     _p(self.tr(t.on_err, col, env)),
                     _p(self.tr(t.on_unk, col, env))]
        elif isinstance(t, S.CatchEmpty):
            head = "catch_empty"
            parts = [mot, _p(self.tr(t.on_err, col, env)),
                     _p(self.tr(t.on_unk, col, env))]
        elif isinstance(t, S.CatchSigma):
            f0 = self.tr(t.fst_ty, col, env)
            n = self.name("x")
            ent = Entry(n, n, "?", "?", "?", "?", 0)
            s0 = self.tr(t.snd_ty, col, env + [ent])
            head = f"catch_sigma[Sig ({n}:{f0}) ({s0})]"

            def snd_dom(ns):
                ent2 = Entry(ns[0], ns[0], "?", "?", "?", "?", 0)
                return self.tr(t.snd_ty, col, env + [ent2])

            on_pair = eta("on_pair", [lambda ns: f0, snd_dom])
            parts = [mot, on_pair, _p(self.tr(t.on_err, col, env)),
                     _p(self.tr(t.on_unk, col, env))]
        else:
            raise SynthesisError(type(t).__name__)
        return f"({head} " + " ".join(parts) + f" {_p(scrut_str)})"

    # -- entry derivations --

    def spty(self, e: Entry, side: int) -> str:
        fn = "lrefl" if side == 0 else "urefl"
        return f"({self.c(fn, e.lvl)} {_p(e.t0)} {_p(e.t1)} (fstP {e.ih}))"

    def tybound(self, e: Entry, side: int) -> str:
        b1 = f"(sndP {e.ih})"
        if side == 1:
            return b1
        return (f"({self.c('transTy', e.lvl)} {_p(e.t0)} {_p(e.t1)} "
                f"?[Type {e.lvl}] (fstP {e.ih}) {b1})")

    def diag(self, e: Entry, side: int) -> Entry:
        if e.n0 == e.n1 and e.t0 == e.t1:
            return e
        t = e.t0 if side == 0 else e.t1
        n = e.n0 if side == 0 else e.n1
        ih = f"(pairP {self.spty(e, side)} {self.tybound(e, side)})"
        fn = "lreflTm" if side == 0 else "ureflTm"
        nw = (f"({self.c(fn, e.lvl)} {_p(e.t0)} {_p(e.t1)} "
              f"{self.spty(e, 0)} {self.spty(e, 1)} {e.n0} {e.n1} {e.nw})")
        return Entry(n, n, nw, t, t, ih, e.lvl)

    def diag_env(self, env, side):
        return [self.diag(e, side) for e in env]

    def _diagonal(self, env) -> bool:
        return all(e.n0 == e.n1 and e.t0 == e.t1 for e in env)

    # -- the main recursion --

    def synth(self, t: Term, env: list, sctx: Ctx) -> str:
        if isinstance(t, S.Var):
            return env[-(t.ix + 1)].nw
        key = (t, self._env_key(env), sctx)
        hit = self._synth_memo.get(key)
        if hit is not None:
            return hit
        saved = (self.fresh, self._depth)
        self.fresh, self._depth = 0, len(env)
        out = self._synth_raw(t, env, sctx)
        self.fresh, self._depth = saved
        self._synth_memo[key] = out
        return out

    def _synth_raw(self, t: Term, env: list, sctx: Ctx) -> str:
        if isinstance(t, S.Sort):
            i = t.level
            return f"(pairP {self.c('reflUniv', i)} {self.c('boundUniv', i)})"
        if isinstance(t, (S.Nat, S.Bool, S.Unit, S.Empty)):
            b = {S.Nat: "boundNat", S.Bool: "boundBool", S.Unit: "boundUnit",
                 S.Empty: "boundEmpty"}[type(t)]
            ty = self.tr(t, 0, env)
            return (f"(pairP (@lrefl {ty} ?[Type 0] {self.c(b, 0)}) "
                    f"{self.c(b, 0)})")
        if isinstance(t, S.Zero):
            return "@congZero"
        if isinstance(t, S.TrueT):
            return "@congTrue"
        if isinstance(t, S.FalseT):
            return "@congFalse"
        if isinstance(t, S.Tt):
            return "@congTt"
        if isinstance(t, S.Succ):
            return self.synth(t.pred, env, sctx)
        if isinstance(t, (S.CoeUp, S.CoeDown)):
            return self.synth(t.body, env, sctx)
        if isinstance(t, S.List):
            i = self.gup.univ_level(sctx, t.elem, "synth")
            ih = self.synth(t.elem, env, sctx)
            e1 = self.tr(t.elem, 1, env)
            return (f"(pairP (fstP {ih}) "
                    f"({self.c('boundList', i)} {_p(e1)} (sndP {ih})))")
        if isinstance(t, S.Cum):
            i = self.gup.univ_level(sctx, t.ty, "synth")
            ih = self.synth(t.ty, env, sctx)
            e0, e1 = self.tr(t.ty, 0, env), self.tr(t.ty, 1, env)
            ur = f"({self.c('urefl', i)} {_p(e0)} {_p(e1)} (fstP {ih}))"
            return (f"(pairP (fstP {ih}) "
                    f"({self.c('boundCum', i)} {_p(e1)} {ur}))")
        if isinstance(t, S.Nil):
            return self._nil(t, env, sctx)
        if isinstance(t, S.Cons):
            return (f"(pairP {_p(self.synth(t.head, env, sctx))} "
                    f"{_p(self.synth(t.tail, env, sctx))})")
        if isinstance(t, S.Pair):
            return (f"(pairP {_p(self.synth(t.fst, env, sctx))} "
                    f"{_p(self.synth(t.snd, env, sctx))})")
        if isinstance(t, S.Unk):
            return self._exceptional(t, "unk", env, sctx)
        if isinstance(t, S.Err):
            return self._exceptional(t, "err", env, sctx)
        if isinstance(t, S.Cast):
            i = self.gup.univ_level(sctx, t.src, "synth")
            ihs = self.synth(t.src, env, sctx)
            iht = self.synth(t.tgt, env, sctx)
            ihu = self.synth(t.body, env, sctx)
            s0, s1 = self.tr(t.src, 0, env), self.tr(t.src, 1, env)
            g0, g1 = self.tr(t.tgt, 0, env), self.tr(t.tgt, 1, env)
            u0, u1 = self.tr(t.body, 0, env), self.tr(t.body, 1, env)
            return (f"({self.c('castMon', i)} {_p(s0)} {_p(s1)} (fstP {ihs}) "
                    f"{_p(g0)} {_p(g1)} (fstP {iht}) {_p(u0)} {_p(u1)} {ihu})")
        if isinstance(t, S.App):
            ihf = self.synth(t.fn, env, sctx)
            ihu = self.synth(t.arg, env, sctx)
            u0, u1 = self.tr(t.arg, 0, env), self.tr(t.arg, 1, env)
            return f"((sndP (sndP {ihf})) {_p(u0)} {_p(u1)} {ihu})"
        if isinstance(t, S.Lam):
            if self._diagonal(env):
                c = self._fam_conjunct(t.body, t.dom, env, sctx, 0, True,
                                       False)
                return f"(pairP {c} (pairP {c} {c}))"
            m1 = self._fam_conjunct(t.body, t.dom, env, sctx, 0, False, False)
            m2 = self._fam_conjunct(t.body, t.dom, env, sctx, 1, False, False)
            het = self._fam_conjunct(t.body, t.dom, env, sctx, 0, True, False)
            return f"(pairP {m1} (pairP {m2} {het}))"
        if isinstance(t, (S.Pi, S.Sigma)):
            return self._binder_type(t, env, sctx)
        if type(t) in _SHAPES:
            return self._catch(t, env, sctx)
        raise SynthesisError(f"cannot synthesize for {type(t).__name__}")

    # exceptional leaves ----------------------------------------------------

    def _exceptional(self, t, kind, env, sctx):
        i = self.gup.univ_level(sctx, t.ty, "synth")
        ih = self.synth(t.ty, env, sctx)
        a0, a1 = self.tr(t.ty, 0, env), self.tr(t.ty, 1, env)
        sp0 = f"({self.c('lrefl', i)} {_p(a0)} {_p(a1)} (fstP {ih}))"
        sp1 = f"({self.c('urefl', i)} {_p(a0)} {_p(a1)} (fstP {ih}))"
        if kind == "unk":
            ru = f"({self.c('reflUnk', i)} {_p(a0)} {sp0})"
            return (f"({self.c('unkMax', i)} {_p(a0)} {_p(a1)} ?[{a0}] "
                    f"{sp0} {ru} {sp1})")
        re = f"({self.c('reflErr', i)} {_p(a1)} {sp1})"
        return (f"({self.c('errMin', i)} {_p(a0)} {_p(a1)} err[{a1}] "
                f"{sp0} {sp1} {re})")

    def _nil(self, t, env, sctx):
        i = self.gup.univ_level(sctx, t.elem, "synth")
        e0, e1 = self.tr(t.elem, 0, env), self.tr(t.elem, 1, env)
        if e0 == e1:
            return f"({self.c('congNil', i)} {_p(e0)})"
        ih = self.synth(t.elem, env, sctx)
        sp0 = f"({self.c('lrefl', i)} {_p(e0)} {_p(e1)} (fstP {ih}))"
        sp1 = f"({self.c('urefl', i)} {_p(e0)} {_p(e1)} (fstP {ih}))"
        return (f"((sndP ({self.c('hetChar', i)} (List {_p(e0)}) "
                f"(List {_p(e1)}) {sp0} {sp1} nil[{e0}] nil[{e1}])) "
                f"(pairP ({self.c('congNil', i)} {_p(e0)}) "
                f"({self.c('congNil', i)} {_p(e1)})))")

    # binders ----------------------------------------------------------------

    def _fam_conjunct(self, body, dom_src, env, sctx, side, het, fstp):
        """fun (x0:D0) (x1:D1) (w: ...) => [fstP] synth(body)."""
        base = env if het else self.diag_env(env, side)
        ih_dom = self.synth(dom_src, base, sctx)
        d0 = self.tr(dom_src, 0, base)
        d1 = self.tr(dom_src, 1, base)
        lvl = self.gup.univ_level(sctx, dom_src, "synth")
        n0, n1, nw = self.name("a"), self.name("a"), self.name("w")
        entry = Entry(n0, n1, nw, d0, d1, ih_dom, lvl)
        inner = self.synth(body, base + [entry],
                           ctx_extend(sctx, "x", dom_src))
        if fstp:
            inner = f"(fstP {inner})"
        return (f"(fun ({n0}:{d0}) ({n1}:{d1}) "
                f"({nw}: {n0} : {d0} <= {n1} : {d1}) => {inner})")

    def _binder_type(self, t, env, sctx):
        dom, cod = ((t.dom, t.cod) if isinstance(t, S.Pi)
                    else (t.fst, t.snd))
        i = self.gup.univ_level(sctx, dom, "synth")
        j = self.gup.univ_level(ctx_extend(sctx, t.hint, dom), cod, "synth")
        lvl = max(i, j)
        ih_dom = self.synth(dom, env, sctx)
        if self._diagonal(env):
            c = self._fam_conjunct(cod, dom, env, sctx, 0, True, True)
            m1 = m2 = het = c
        else:
            m1 = self._fam_conjunct(cod, dom, env, sctx, 0, False, True)
            m2 = self._fam_conjunct(cod, dom, env, sctx, 1, False, True)
            het = self._fam_conjunct(cod, dom, env, sctx, 0, True, True)
        part1 = f"(pairP (fstP {ih_dom}) (pairP {m1} (pairP {m2} {het})))"
        if isinstance(t, S.Pi):
            p0 = f"(Pi ({self.name('x')}:{self.tr(dom, 0, env)}) -> "
            # rebuild the unlifted products for urefl
            n0 = self.name("x")
            e = Entry(n0, n0, "?", "?", "?", "?", 0)
            p0 = (f"(Pi ({n0}:{self.tr(dom, 0, env)}) -> "
                  f"({self.tr(cod, 0, env + [e])}))")
            n1 = self.name("x")
            e1 = Entry(n1, n1, "?", "?", "?", "?", 0)
            p1 = (f"(Pi ({n1}:{self.tr(dom, 1, env)}) -> "
                  f"({self.tr(cod, 1, env + [e1])}))")
            ur = f"({self.c('urefl', lvl)} {p0} {p1} {part1})"
            part2 = f"({self.c('boundCum', lvl)} {p1} {ur})"
            return f"(pairP {part1} {part2})"
        # dependent pair types embed through their own germ
        d1 = self.tr(dom, 1, env)
        n = self.name("x")
        e = Entry(n, n, "?", "?", "?", "?", 0)
        s1 = self.tr(cod, 1, env + [e])
        fam = f"(fun ({n}:{d1}) => ({s1}))"
        dom_entry = Entry("", "", "", self.tr(dom, 0, env), d1, ih_dom, i)
        w_dom_bound = self.tybound(dom_entry, 1)
        mono = self._fam_conjunct(cod, dom, env, sctx, 1, False, True)
        denv = self.diag_env(env, 1)
        ihd1 = self.synth(dom, denv, sctx)
        d1d = self.tr(dom, 1, denv)
        nb, nwb = self.name("a"), self.name("w")
        entry = Entry(nb, nb, nwb, d1d, d1d, ihd1, i)
        sub = self.synth(cod, denv + [entry], ctx_extend(sctx, "x", dom))
        bound = (f"(fun ({nb}:{d1d}) ({nwb}: {nb} : {d1d} <= {nb} : {d1d}) "
                 f"=> (sndP {sub}))")
        part2 = (f"({self.c('boundSigma', lvl)} {_p(d1)} {fam} {w_dom_bound} "
                 f"{mono} {bound})")
        return f"(pairP {part1} {part2})"

    # recursors ----------------------------------------------------------------

    def _catch(self, t, env, sctx):
        info = _CatchInfo(self, t, env, sctx)
        x0, x1, w = self.name("x"), self.name("y"), self.name("w")
        outer_motive = (
            f"(fun ({x0}:{info.i0}) => forall ({x1}:{info.i1}) "
            f"({w}: {x0} : {info.i0} <= {x1} : {info.i1}), "
            f"({info.goal(x0, x1)}))")
        branches = []
        for pat, handler, kinds in info.patterns:
            branches.append(self._outer_branch(info, pat, handler, kinds,
                                               outer_motive))
        for pat in ("err", "unk"):
            branches.append(_p(self._inner_split(
                info, pat, info.exc_term(pat, 0), [], None, None)))
        lemma = (f"(fun ({x0}:{info.i0}) => {info.kwP(0)} {outer_motive} "
                 + " ".join(branches) + f" {x0})")
        ihs = self.synth(t.scrut, env, sctx)
        s0 = self.tr(t.scrut, 0, env)
        s1 = self.tr(t.scrut, 1, env)
        out = f"(({lemma} {_p(s0)}) {_p(s1)} {ihs})"
        for name, prop, proof in reversed(info.lets):
            out = f"((fun ({name}: {prop}) => {out}) {proof})"
        return out

    def _outer_branch(self, info, pat, handler, kinds, outer_motive):
        binders, args0 = [], []
        for kind in kinds:
            n = self.name("u")
            binders.append(f"({n}:{info.argty(kind, 0, args0)})")
            ihn = None
            if kind == "rec":
                ihn = self.name("ih")
                binders.append(f"({ihn}: ({outer_motive}) {n})")
            args0.append((kind, n, ihn))
        term0 = info.pattern_term(pat, 0, [a[1] for a in args0])
        outer_ih = next((a[2] for a in args0 if a[0] == "rec"), None)
        inner = self._inner_split(info, pat, term0, args0, handler, outer_ih)
        if not binders:
            return _p(inner)
        return f"(fun {' '.join(binders)} => {inner})"

    def _inner_split(self, info, pat0, term0, args0, handler0, outer_ih):
        x1 = self.name("y")
        w = self.name("w")
        mot = (f"(fun ({x1}:{info.i1}) => forall ({w}: {term0} : {info.i0} "
               f"<= {x1} : {info.i1}), ({info.goal(term0, x1)}))")
        branches = []
        for pat1, handler1, kinds in info.patterns:
            binders, args1 = [], []
            for kind in kinds:
                n = self.name("r")
                binders.append(f"({n}:{info.argty(kind, 1, args1)})")
                ihn = None
                if kind == "rec":
                    ihn = self.name("ih")
                    binders.append(f"({ihn}: ({mot}) {n})")
                args1.append((kind, n, ihn))
            term1 = info.pattern_term(pat1, 1, [a[1] for a in args1])
            wn = self.name("w")
            body = self._case(info, pat0, term0, args0, handler0, outer_ih,
                              pat1, term1, args1, wn)
            lam = (f"(fun ({wn}: {term0} : {info.i0} <= {term1} : {info.i1})"
                   f" => {body})")
            if binders:
                lam = f"(fun {' '.join(binders)} => {lam})"
            branches.append(lam)
        for pat1 in ("err", "unk"):
            term1 = info.exc_term(pat1, 1)
            wn = self.name("w")
            body = self._case(info, pat0, term0, args0, handler0, outer_ih,
                              pat1, term1, [], wn)
            branches.append(
                f"(fun ({wn}: {term0} : {info.i0} <= {term1} : {info.i1}) "
                f"=> {body})")
        xb = self.name("y")
        return (f"(fun ({xb}:{info.i1}) => {info.kwP(1)} {mot} "
                + " ".join(branches) + f" {xb})")

    def _case(self, info, pat0, term0, args0, handler0, outer_ih,
              pat1, term1, args1, w):
        goal = info.goal(term0, term1)
        if pat0 == "err":
            return self._err_case(info, pat1, term1, args1, w)
        if pat0 == "unk" and pat1 == "unk":
            u0 = info.exc_term("unk", 0)
            sp_pl = info.spty_papp(0, u0, info.sp_exc("unk", 0))
            sp_pr = info.spty_papp(1, term1, info.sp_exc("unk", 1))
            ru = (f"({self.c('reflUnk', info.jlvl)} "
                  f"({info.papp(0, u0)}) {sp_pl})")
            return (f"({self.c('unkMax', info.jlvl)} ({info.papp(0, u0)}) "
                    f"({info.papp(1, term1)}) ?[{info.papp(0, u0)}] "
                    f"{sp_pl} {ru} {sp_pr})")
        if pat0 == "unk":
            return (f"exfalso "
                    f"{_p(info.absurd(pat0, term0, pat1, term1, w))} "
                    f"({goal})")
        if pat1 == "unk":
            sp_lhs = self._sp_left_result(info, pat0, term0, args0,
                                          handler0, outer_ih, w)
            sp_t0 = info.sp_from_w(0, term0, info.exc_term("unk", 1), w)
            return (f"({self.c('unkMax', info.jlvl)} "
                    f"({info.papp(0, term0)}) ({info.papp(1, term1)}) "
                    f"({info.ind(0, term0)}) "
                    f"{info.spty_papp(0, term0, sp_t0)} {sp_lhs} "
                    f"{info.spty_papp(1, term1, info.sp_exc('unk', 1))})")
        if pat0 != pat1:
            return (f"exfalso "
                    f"{_p(info.absurd(pat0, term0, pat1, term1, w))} "
                    f"({goal})")
        # matching constructors
        ih_h = info.hsyn(handler0, "het")
        comps = info.components(pat0, w)
        out = ih_h
        for k, ((kind, u0, _), (_, u1, _)) in enumerate(zip(args0, args1)):
            out = self._peel(out, u0, u1, comps[k])
            if kind == "rec":
                ihapp = f"(({outer_ih} {_p(u1)}) {comps[k]})"
                out = self._peel(out, info.ind(0, u0), info.ind(1, u1), ihapp)
        return out

    def _peel(self, ih, l, r, w):
        return f"((sndP (sndP {ih})) {_p(l)} {_p(r)} {w})"

    def _err_case(self, info, pat1, term1, args1, w):
        """Left scrutinee is err: the recursor yields the minimal element."""
        e0 = info.exc_term("err", 0)
        sp_pl = info.spty_papp(0, e0, info.sp_exc("err", 0))
        if pat1 == "err":
            sp_val = info.sp_exc("err", 1)
            wb = (f"({self.c('reflErr', info.jlvl)} ({info.papp(1, term1)}) "
                  f"{info.spty_papp(1, term1, sp_val)})")
        elif pat1 == "unk":
            sp_val = info.sp_exc("unk", 1)
            wb = (f"({self.c('reflUnk', info.jlvl)} ({info.papp(1, term1)}) "
                  f"{info.spty_papp(1, term1, sp_val)})")
        else:
            sp_val = info.sp_from_w(1, e0, term1, w)
            wb = self._sp_right_result(info, pat1, term1, args1, w, sp_val)
        sp_t1 = (info.sp_exc(pat1, 1) if pat1 in ("err", "unk")
                 else info.sp_from_w(1, e0, term1, w))
        return (f"({self.c('errMin', info.jlvl)} ({info.papp(0, e0)}) "
                f"({info.papp(1, term1)}) ({info.ind(1, term1)}) "
                f"{sp_pl} {info.spty_papp(1, term1, sp_t1)} {wb})")

    def _sp_left_result(self, info, pat0, term0, args0, handler0,
                        outer_ih, w):
        """sp(ind_0 term0) given w : term0 ⊑ ?; via the diagonal handler."""
        ih_h = info.hsyn(handler0, "l")
        if not args0:
            return ih_h
        sp_t0 = info.sp_from_w(0, term0, info.exc_term("unk", 1), w)
        comps = info.components(pat0, sp_t0)
        out = ih_h
        for k, (kind, u0, _) in enumerate(args0):
            out = self._peel(out, u0, u0, comps[k])
            if kind == "rec":
                # het instance against the right unknown, then left refl
                hetw = (f"({self.c('unkMax', info.ilvl)} ({info.i0}) "
                        f"({info.i1}) {_p(u0)} {info.sp_i0} {comps[k]} "
                        f"{info.sp_i1})")
                het = f"(({outer_ih} {_p(info.exc_term('unk', 1))}) {hetw})"
                spind = (f"({self.c('lreflTm', info.jlvl)} "
                         f"({info.papp(0, u0)}) "
                         f"({info.papp(1, info.exc_term('unk', 1))}) "
                         f"{info.spty_papp(0, u0, comps[k])} "
                         f"{info.spty_papp(1, info.exc_term('unk', 1), info.sp_exc('unk', 1))} "
                         f"({info.ind(0, u0)}) "
                         f"({info.ind(1, info.exc_term('unk', 1))}) {het})")
                out = self._peel(out, info.ind(0, u0), info.ind(0, u0), spind)
        return out

    def _sp_right_result(self, info, pat1, term1, args1, w, sp_t1):
        """sp(ind_1 term1) given w : err ⊑ term1, via the diagonal handler;
        recursive slots go through the inner induction hypothesis."""
        _, handler1, _ = next(p for p in info.patterns if p[0] == pat1)
        ih_h = info.hsyn(handler1, "r")
        if not args1:
            return ih_h
        comps = info.components(pat1, sp_t1)
        e0 = info.exc_term("err", 0)
        out = ih_h
        for k, (kind, u1, ih2) in enumerate(args1):
            out = self._peel(out, u1, u1, comps[k])
            if kind == "rec":
                errw = (f"({self.c('errMin', info.ilvl)} ({info.i0}) "
                        f"({info.i1}) {_p(u1)} {info.sp_i0} {info.sp_i1} "
                        f"{comps[k]})")
                het = f"(({ih2}) {errw})"
                spind = (f"({self.c('ureflTm', info.jlvl)} "
                         f"({info.papp(0, e0)}) ({info.papp(1, u1)}) "
                         f"{info.spty_papp(0, e0, info.sp_exc('err', 0))} "
                         f"{info.spty_papp(1, u1, comps[k])} "
                         f"({info.ind(0, e0)}) ({info.ind(1, u1)}) {het})")
                out = self._peel(out, info.ind(1, u1), info.ind(1, u1), spind)
        return out


class _CatchInfo:
    """Precomputed strings and derivations shared by one recursor case."""

    def __init__(self, syn: Synthesizer, t, env, sctx):
        self.syn = syn
        self.t = t
        self.env = env
        self.sctx = sctx
        _, _, self.patterns = _SHAPES[type(t)]
        if isinstance(t, S.CatchNat):
            self.src_ty = S.Nat()
        elif isinstance(t, S.CatchList):
            self.src_ty = S.List(t.elem)
        elif isinstance(t, S.CatchBool):
            self.src_ty = S.Bool()
        elif isinstance(t, S.CatchUnit):
            self.src_ty = S.Unit()
        elif isinstance(t, S.CatchEmpty):
            self.src_ty = S.Empty()
        else:
            self.src_ty = S.Sigma(t.fst_ty, t.snd_ty)
        self.i0 = syn.tr(self.src_ty, 0, env)
        self.i1 = syn.tr(self.src_ty, 1, env)
        self.ilvl = syn.gup.univ_level(sctx, self.src_ty, "synth")
        mot_ty = syn.gup.whnf(syn.gup.infer(sctx, t.motive))
        self.jlvl = syn.gup.whnf(mot_ty.cod).level
        self.p0 = syn.tr(t.motive, 0, env)
        self.p1 = syn.tr(t.motive, 1, env)
        self.lets = []
        ih_i = syn.synth(self.src_ty, env, sctx)
        self.sp_i0 = self.bind(
            "si", f"({self.i0}) <=[{self.ilvl}] ({self.i0})",
            f"({syn.c('lrefl', self.ilvl)} {_p(self.i0)} "
            f"{_p(self.i1)} (fstP {ih_i}))")
        self.sp_i1 = self.bind(
            "si", f"({self.i1}) <=[{self.ilvl}] ({self.i1})",
            f"({syn.c('urefl', self.ilvl)} {_p(self.i0)} "
            f"{_p(self.i1)} (fstP {ih_i}))")
        self.ihp_diag = (
            self.bind("hp", self._selfprec_prop(t.motive, 0, env),
                      syn.synth(t.motive, syn.diag_env(env, 0), sctx)),
            self.bind("hp", self._selfprec_prop(t.motive, 1, env),
                      syn.synth(t.motive, syn.diag_env(env, 1), sctx)))
        self._hsyn = {}
        if isinstance(t, S.CatchList):
            self.e = (syn.tr(t.elem, 0, env), syn.tr(t.elem, 1, env))
            ih_e = syn.synth(t.elem, env, sctx)
            self.sp_e = (
                self.bind("se", f"({self.e[0]}) <=[{self.ilvl}] ({self.e[0]})",
                          f"({syn.c('lrefl', self.ilvl)} {_p(self.e[0])} "
                          f"{_p(self.e[1])} (fstP {ih_e}))"),
                self.bind("se", f"({self.e[1]}) <=[{self.ilvl}] ({self.e[1]})",
                          f"({syn.c('urefl', self.ilvl)} {_p(self.e[0])} "
                          f"{_p(self.e[1])} (fstP {ih_e}))"))
        if isinstance(t, S.CatchSigma):
            self.f = (syn.tr(t.fst_ty, 0, env), syn.tr(t.fst_ty, 1, env))
            self.snd_src = t.snd_ty

    def bind(self, tag, prop, proof):
        name = self.syn.name(tag)
        self.lets.append((name, prop, proof))
        return name

    def _selfprec_prop(self, term, col, env):
        denv = self.syn.diag_env(env, col)
        ty = self.syn.gup.infer(self.sctx, term)
        return (f"({self.syn.tr(term, 0, denv)}) : "
                f"({self.syn.tr(ty, 0, denv)}) <= "
                f"({self.syn.tr(term, 1, denv)}) : "
                f"({self.syn.tr(ty, 1, denv)})")

    def _het_prop(self, term, env):
        ty = self.syn.gup.infer(self.sctx, term)
        return (f"({self.syn.tr(term, 0, env)}) : "
                f"({self.syn.tr(ty, 0, env)}) <= "
                f"({self.syn.tr(term, 1, env)}) : "
                f"({self.syn.tr(ty, 1, env)})")

    def hsyn(self, field, which):
        """Let-bound handler synthesis; which is het, l(eft diag) or r."""
        env = {"het": self.env, "l": self.syn.diag_env(self.env, 0),
               "r": self.syn.diag_env(self.env, 1)}[which]
        key = (field, Synthesizer._env_key(env))
        if key not in self._hsyn:
            prop = self._het_prop(getattr(self.t, field), env)
            proof = self.syn.synth(getattr(self.t, field), env, self.sctx)
            self._hsyn[key] = self.bind("hh", prop, proof)
        return self._hsyn[key]

    # term builders --

    def exc_term(self, pat, col):
        ty = self.i0 if col == 0 else self.i1
        return f"err[{ty}]" if pat == "err" else f"?[{ty}]"

    def pattern_term(self, pat, col, argnames):
        if pat in ("err", "unk"):
            return self.exc_term(pat, col)
        if pat == "zero":
            return "0"
        if pat == "succ":
            return f"S {argnames[0]}"
        if pat == "true":
            return "true"
        if pat == "false":
            return "false"
        if pat == "tt":
            return "tt"
        if pat == "nil":
            return f"nil[{self.e[col]}]"
        if pat == "cons":
            return (f"cons[{self.e[col]}] {_p(argnames[0])} "
                    f"{_p(argnames[1])}")
        if pat == "pair":
            sig = self.sig_str(col)
            return f"pair[{sig}] {_p(argnames[0])} {_p(argnames[1])}"
        raise SynthesisError(pat)

    def sig_str(self, col):
        syn = self.syn
        n = syn.name("x")
        e = Entry(n, n, "?", "?", "?", "?", 0)
        s = syn.tr(self.snd_src, col, self.env + [e])
        return f"Sig ({n}:{self.f[col]}) ({s})"

    def argty(self, kind, col, prior):
        if kind == "elem":
            return self.e[col]
        if kind == "rec":
            return self.i0 if col == 0 else self.i1
        if kind == "fst":
            return self.f[col]
        if kind == "snd":
            syn = self.syn
            fst_name = prior[0][1]
            e = Entry(fst_name, fst_name, "?", "?", "?", "?", 0)
            return syn.tr(self.snd_src, col, self.env + [e])
        raise SynthesisError(kind)

    def components(self, pat, w):
        n = len(next(p for p in self.patterns if p[0] == pat)[2])
        if n == 0:
            return []
        if n == 1:
            return [w]
        return [f"(fstP {w})", f"(sndP {w})"]

    def kwP(self, col):
        t = self.t
        if isinstance(t, S.CatchNat):
            return "catch_natP"
        if isinstance(t, S.CatchList):
            return f"catch_listP[{self.e[col]}]"
        if isinstance(t, S.CatchBool):
            return "catch_boolP"
        if isinstance(t, S.CatchUnit):
            return "catch_unitP"
        if isinstance(t, S.CatchEmpty):
            return "catch_emptyP"
        return f"catch_sigmaP[{self.sig_str(col)}]"

    # proposition pieces --

    def papp(self, col, x):
        p = self.p0 if col == 0 else self.p1
        return f"((down {_p(p)}) {_p(x)})"

    def ind(self, col, x):
        return self.syn._tr_catch(self.t, col, self.env, x)

    def goal(self, t0, t1):
        return (f"({self.ind(0, t0)}) : ({self.papp(0, t0)}) "
                f"<= ({self.ind(1, t1)}) : ({self.papp(1, t1)})")

    def spty_papp(self, col, x, spx):
        """P_col x ⊑ P_col x, from the diagonal motive derivation."""
        return f"(fstP ((fstP {self.ihp_diag[col]}) {_p(x)} {_p(x)} {spx}))"

    def sp_exc(self, pat, col):
        ty = self.i0 if col == 0 else self.i1
        sp = self.sp_i0 if col == 0 else self.sp_i1
        fn = "reflErr" if pat == "err" else "reflUnk"
        return f"({self.syn.c(fn, self.ilvl)} {_p(ty)} {sp})"

    def sp_from_w(self, side, t0, t1, w):
        """Self-precision of one side of w : t0 ⊑ t1."""
        fn = "lreflTm" if side == 0 else "ureflTm"
        return (f"({self.syn.c(fn, self.ilvl)} {_p(self.i0)} {_p(self.i1)} "
                f"{self.sp_i0} {self.sp_i1} {_p(t0)} {_p(t1)} {w})")

    # absurd hypotheses --

    def junk(self, col, avoid):
        """A self-precise canonical value with a constructor other than
        `avoid`, as (term, sp-proof)."""
        syn = self.syn
        t = self.t
        if isinstance(t, S.CatchNat):
            if avoid == "zero":
                return "1", "@congZero"
            return "0", "@congZero"
        if isinstance(t, S.CatchBool):
            if avoid == "true":
                return "false", "@congFalse"
            return "true", "@congTrue"
        if isinstance(t, S.CatchList):
            e = self.e[col]
            sp_e = self.sp_e[col]
            if avoid == "nil":
                term = f"cons[{e}] ?[{e}] ?[List ({e})]"
                sp = (f"(pairP ({syn.c('reflUnk', self.ilvl)} {_p(e)} {sp_e})"
                      f" ({syn.c('reflUnk', self.ilvl)} (List {_p(e)}) "
                      f"{sp_e}))")
                return term, sp
            return (f"nil[{e}]", f"({syn.c('congNil', self.ilvl)} {_p(e)})")
        raise SynthesisError("no junk constructor available")

    def absurd(self, pat0, term0, pat1, term1, w):
        """A proof of Bot from w : term0 ⊑ term1, impossible pair."""
        syn = self.syn
        t = self.t
        i0, i1, lvl = self.i0, self.i1, self.ilvl
        sps = (self.sp_i0, self.sp_i1)

        def trans(tys, terms, w1, w2, spt):
            a, b, c = tys
            x, y, z = terms
            return (f"({syn.c('transTm', lvl)} {_p(a)} {_p(b)} {_p(c)} "
                    f"{spt[0]} {spt[1]} {spt[2]} {_p(x)} {_p(y)} {_p(z)} "
                    f"{w1} {w2})")

        if isinstance(t, S.CatchUnit):
            name = {("tt", "err"): "noConfTtErr",
                    ("unk", "tt"): "noConfUnkTt",
                    ("unk", "err"): "noConfUnkErrUnit"}[(pat0, pat1)]
            return f"(@{name} {w})"
        if isinstance(t, S.CatchEmpty):
            return f"(@noConfUnkErrEmpty {w})"
        if isinstance(t, S.CatchSigma):
            return self._absurd_sigma(pat0, term0, pat1, term1, w)
        # Nat / Bool / List: constructor clashes reduce to Bot
        if pat0 not in ("err", "unk") and pat1 not in ("err", "unk"):
            return w
        if pat1 == "err":
            if pat0 == "unk":
                j0, spj0 = self.junk(0, avoid="")
                u = (f"({syn.c('unkMax', lvl)} {_p(i0)} {_p(i0)} {_p(j0)} "
                     f"{self.sp_i0} {spj0} {self.sp_i0})")
                w = trans((i0, i0, i1), (j0, f"?[{i0}]", term1), u, w,
                          (self.sp_i0, self.sp_i0, self.sp_i1))
                term0, pat0 = j0, "junk"
            # term0 ⊑ err: chase through err ⊑ (junk of a different shape)
            j1, spj1 = self.junk(1, avoid=self._shape_of(term0))
            em = (f"({syn.c('errMin', lvl)} {_p(i1)} {_p(i1)} {_p(j1)} "
                  f"{self.sp_i1} {self.sp_i1} {spj1})")
            return trans((i0, i1, i1), (term0, term1, j1), w, em,
                         (self.sp_i0, self.sp_i1, self.sp_i1))
        # pat0 == "unk", pat1 a constructor
        j0, spj0 = self.junk(0, avoid=pat1)
        u = (f"({syn.c('unkMax', lvl)} {_p(i0)} {_p(i0)} {_p(j0)} "
             f"{self.sp_i0} {spj0} {self.sp_i0})")
        return trans((i0, i0, i1), (j0, term0, term1), u, w,
                     (self.sp_i0, self.sp_i0, self.sp_i1))

    def _shape_of(self, term0):
        if term0.startswith("cons") or term0.startswith("S "):
            return "cons" if term0.startswith("cons") else "succ"
        if term0.startswith("nil"):
            return "nil"
        if term0 in ("0",):
            return "zero"
        if term0 in ("true", "false"):
            return term0
        return ""

    def _absurd_sigma(self, pat0, term0, pat1, term1, w):
        syn = self.syn
        lvl = self.ilvl
        f0, f1 = self.f
        n0 = syn.name("x")
        e = Entry(n0, n0, "?", "?", "?", "?", 0)
        s0 = syn.tr(self.snd_src, 0, self.env + [e])
        fam0 = f"(fun ({n0}:{f0}) => ({s0}))"
        n1 = syn.name("x")
        e1 = Entry(n1, n1, "?", "?", "?", "?", 0)
        s1 = syn.tr(self.snd_src, 1, self.env + [e1])
        fam1 = f"(fun ({n1}:{f1}) => ({s1}))"
        if pat0 == "pair" and pat1 == "err":
            a, b = term0.split()[-2:]  # the two argument atoms
            return (f"({syn.c('noConfPairErr', lvl)} {_p(f0)} {_p(f1)} "
                    f"{fam0} {fam1} {a} {b} {w})")
        if pat0 == "unk" and pat1 == "pair":
            a, b = term1.split()[-2:]
            return (f"({syn.c('noConfUnkPair', lvl)} {_p(f0)} {_p(f1)} "
                    f"{fam0} {fam1} {a} {b} {w})")
        # unk vs err: go through a junk pair below the left unknown
        sp_f0 = f"(fstP (fstP {self.ihp_diag[0]}))" if False else None
        # components of the junk pair: unknown fst and snd
        spF0 = (f"({syn.c('lrefl', lvl)} {_p(f0)} {_p(f1)} "
                f"(fstP {syn.synth(self.t.fst_ty, self.env, self.sctx)}))")
        ufst = f"?[{f0}]"
        e2 = Entry(ufst, ufst, "?", "?", "?", "?", 0)
        snd_at_unk = syn.tr(self.snd_src, 0, self.env +
                            [Entry(f"?[{f0}]", f"?[{f0}]", "?", "?", "?",
                                   "?", 0)])
        denv = syn.diag_env(self.env, 0)
        ihd = syn.synth(self.t.fst_ty, denv, self.sctx)
        f0d = syn.tr(self.t.fst_ty, 0, denv)
        nb, nwb = syn.name("a"), syn.name("w")
        entry = Entry(nb, nb, nwb, f0d, f0d, ihd,
                      syn.gup.univ_level(self.sctx, self.t.fst_ty, "synth"))
        sub = syn.synth(self.snd_src, denv + [entry],
                        ctx_extend(self.sctx, "x", self.t.fst_ty))
        flvl = syn.gup.univ_level(self.sctx, self.t.fst_ty, "synth")
        runk_f = f"({syn.c('reflUnk', flvl)} {_p(f0)} {spF0})"
        spsnd_ty = (f"(fstP ((fun ({nb}:{f0d}) ({nwb}: {nb} : {f0d} <= {nb} "
                    f": {f0d}) => (fstP {sub})) {ufst} {runk_f}))")
        runk_s = (f"({syn.c('reflUnk', self.jlvl if False else flvl)} "
                  f"({snd_at_unk}) {spsnd_ty})")
        junk = f"pair[{self.sig_str(0)}] ({ufst}) (?[{snd_at_unk}])"
        spjunk = f"(pairP {runk_f} {runk_s})"
        u = (f"({syn.c('unkMax', lvl)} {_p(self.i0)} {_p(self.i0)} "
             f"{_p(junk)} {self.sp_i0} {spjunk} {self.sp_i0})")
        w2 = (f"({syn.c('transTm', lvl)} {_p(self.i0)} {_p(self.i0)} "
              f"{_p(self.i1)} {self.sp_i0} {self.sp_i0} {self.sp_i1} "
              f"{_p(junk)} {_p(term0)} {_p(term1)} {u} {w})")
        return (f"({syn.c('noConfPairErr', lvl)} {_p(f0)} {_p(f1)} "
                f"{fam0} {fam1} ({ufst}) (?[{snd_at_unk}]) {w2})")


# --- public synthesis API ----------------------------------------------------

def synthesize_selfprec(j: GripUpJudgment,
                        syn: Optional[Synthesizer] = None) -> SelfPrecWitness:
    """A proof that the lifted translation of the judgment's term is related
    to itself, over the doubled translation of its context."""
    syn = syn or Synthesizer()
    env: list = []
    sctx: Ctx = EMPTY_CTX
    names: list = []
    doubled: list = []
    for hint, ty in j.ctx:
        ih = syn.synth(ty, env, sctx)
        t0 = syn.tr(ty, 0, env)
        t1 = syn.tr(ty, 1, env)
        lvl = syn.gup.univ_level(sctx, ty, "synth")
        base = hint if hint.isidentifier() and hint != "_" else "x"
        n0, n1, nw = (syn.name(base), syn.name(base), syn.name("w"))
        doubled.append((n0, SF.parse_term_in_scope(t0, names)))
        names.append(n0)
        doubled.append((n1, SF.parse_term_in_scope(t1, names)))
        names.append(n1)
        doubled.append((nw, SF.parse_term_in_scope(
            f"{n0} : ({t0}) <= {n1} : ({t1})", names)))
        names.append(nw)
        env.append(Entry(n0, n1, nw, t0, t1, ih, lvl))
        sctx = ctx_extend(sctx, hint, ty)
    wit_str = syn.synth(j.term, env, sctx)
    prop_str = (f"({syn.tr(j.term, 0, env)}) : ({syn.tr(j.type, 0, env)}) "
                f"<= ({syn.tr(j.term, 1, env)}) : ({syn.tr(j.type, 1, env)})")
    witness = SF.parse_term_in_scope(wit_str, names)
    prop = SF.parse_term_in_scope(prop_str, names)
    return SelfPrecWitness(tuple(doubled), prop, witness)


# --- dynamic gradual guarantee ------------------------------------------------

_BOOL_RANK = {"err": 0, "false": 1, "true": 1, "unk": 2}


def _bool_value(t: Term) -> str:
    if isinstance(t, S.TrueT):
        return "true"
    if isinstance(t, S.FalseT):
        return "false"
    if isinstance(t, S.Err):
        return "err"
    if isinstance(t, S.Unk):
        return "unk"
    raise ValueError(f"not a boolean value: {t!r}")


def bool_leq(u: Term, v: Term) -> bool:
    a, b = _bool_value(u), _bool_value(v)
    return a == "err" or b == "unk" or a == b


@dataclass
class DggResult:
    verdict: str
    lhs: Term
    rhs: Term
    detail: str = ""

    @property
    def holds(self):
        return self.verdict == "holds"


class DggPreconditionError(Exception):
    pass


def check_dgg(ctx_fn: Term, ty: Term, x: Term, y: Term,
              witness: Optional[Term] = None,
              checker: Optional[T.Checker] = None,
              decider=None) -> DggResult:
    """Evaluate a boolean context at two precision-related inputs and check
    that the results respect the boolean value ordering."""
    from . import precision as PR
    ck = checker or T.Checker()
    dec = decider or PR.Decider(checker=ck)
    pre = dec.decide_term_prec(x, y, ty, ty)
    if not pre.holds:
        raise DggPreconditionError(f"inputs unrelated: {pre.verdict} "
                                   f"({pre.path})")
    if witness is not None:
        fn_ty = S.arrow(ty, S.Bool())
        ck.check(EMPTY_CTX, witness, S.TmPrec(fn_ty, fn_ty, ctx_fn, ctx_fn))
        applied = ctx_fn
    else:
        j = check_grip_up(ctx_fn)
        w = synthesize_selfprec(j)
        ck.check(w.ctx, w.witness, w.prop)
        applied = S.CoeDown(shift_translate(ctx_fn))
        tr_dom = ck.whnf(shift_translate(j.type))
        if not (isinstance(tr_dom, S.Cum)):
            raise DggPreconditionError("context is not function-typed")
        dom = ck.whnf(tr_dom.ty)
        if not (isinstance(dom, S.Pi) and ck.conv_types(EMPTY_CTX, dom.dom, ty)):
            raise DggPreconditionError(
                "context domain does not match the given type")
    ck.check(EMPTY_CTX, x, ty)
    ck.check(EMPTY_CTX, y, ty)
    u = R.normalize(S.App(applied, x), ck.fuel)
    v = R.normalize(S.App(applied, y), ck.fuel)
    ok = bool_leq(u, v)
    return DggResult("holds" if ok else "fails", u, v,
                     "" if ok else "boolean ordering violated")
