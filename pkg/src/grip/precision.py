"""Ground decision procedures for internal precision.

Verdicts are three-valued: Holds carries a proof term over the prelude that
replays through the kernel; Fails names the violated rule; UnknownUpToBound
is a positive-but-not-exhaustive answer for queries that quantify over all
inputs (function types, dependent families).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import model as M
from . import reduction as R
from . import syntax as S
from . import typecheck as T
from .syntax import EMPTY_CTX, Term, apps, shift, subst


@dataclass
class PrecResult:
    verdict: str  # "holds" | "fails" | "unknown"
    witness: Optional[Term] = None
    path: str = ""
    checked: int = 0

    @property
    def holds(self):
        return self.verdict == "holds"

    @property
    def fails(self):
        return self.verdict == "fails"


def _holds(witness, path=""):
    return PrecResult("holds", witness=witness, path=path)


def _fails(path):
    return PrecResult("fails", path=path)


def _unknown(path, checked=0):
    return PrecResult("unknown", path=path, checked=checked)


def C(name: str, level: int, *args: Term) -> Term:
    return apps(S.Const(name, level), *args)


class DecideError(Exception):
    """Ill-formed input to a decision procedure."""


class Decider:
    def __init__(self, checker: Optional[T.Checker] = None,
                 model: Optional[M.Model] = None):
        self.ck = checker or T.Checker()
        self.model = model or M.Model(M.Bounds())

    def norm(self, t: Term) -> Term:
        return R.normalize(t, self.ck.fuel)

    # -- entry points --

    def decide_type_prec(self, a: Term, b: Term, lvl: int) -> PrecResult:
        for side in (a, b):
            if not S.scope_check(side, 0):
                raise DecideError("type precision needs closed types")
            try:
                got = self.ck.univ_level(EMPTY_CTX, side, "decide")
            except T.TypeCheckError as e:
                raise DecideError(f"ill-typed input: {e}") from e
            if got != lvl:
                raise DecideError(f"type at level {got}, query at level {lvl}")
        return self.ty(self.norm(a), self.norm(b), lvl)

    def decide_term_prec(self, a: Term, b: Term, ty_a: Term,
                         ty_b: Term) -> PrecResult:
        for t, ty in ((a, ty_a), (b, ty_b)):
            if not (S.scope_check(t, 0) and S.scope_check(ty, 0)):
                raise DecideError("term precision needs closed inputs")
            try:
                self.ck.check(EMPTY_CTX, t, ty)
            except T.TypeCheckError as e:
                raise DecideError(f"ill-typed input: {e}") from e
        i = self.ck.univ_level(EMPTY_CTX, ty_a, "decide")
        j = self.ck.univ_level(EMPTY_CTX, ty_b, "decide")
        if i != j:
            raise DecideError("term precision across universe levels")
        return self.tm(self.norm(a), self.norm(b),
                       self.norm(ty_a), self.norm(ty_b), i)

    # -- helpers on types --

    def _sp_witnesses(self, a: Term, b: Term, i: int):
        """(spTy a, spTy b) results from a decided a ⊑ b or from scratch."""
        wa = self.ty(a, a, i)
        wb = self.ty(b, b, i)
        return wa, wb

    def _merge(self, *results):
        """Combine subresults: any Fails dominates, then Unknown."""
        for r in results:
            if r.fails:
                return r
        for r in results:
            if r.verdict == "unknown":
                return r
        return None

    # -- type precision ---------------------------------------------------

    def ty(self, a: Term, b: Term, i: int) -> PrecResult:
        unk = S.unk_ty(i)
        if b == unk:
            return self._ty_bound(a, i)
        if isinstance(b, S.Err) and b.ty == S.Sort(i):
            if a == b:
                return _holds(S.FstP(self._exc_sp_univ(S.Err, i)), "err-Refl")
            return _fails("err-type-minimal")
        if isinstance(a, S.Err) and a.ty == S.Sort(i):
            wb = self.ty(b, b, i)
            wub = self.ty(b, unk, i)
            bad = self._merge(wb, wub)
            if bad:
                return _fails(f"errw-needs-self-precise-bound: {bad.path}")
            sp_univ = C("reflUniv", i)
            wit = S.FstP(C("errMin", i + 1, S.Sort(i), S.Sort(i), b,
                           sp_univ, sp_univ, S.PairP(wb.witness, wub.witness)))
            return _holds(wit, "err-min")
        if a == unk:
            return _fails("unk-type-maximal")
        ha, hb = R.head(a), R.head(b)
        if ha is None or hb is None:
            return _unknown("neutral-type")
        if ha != hb:
            return _fails(f"head-mismatch:{ha.value}-vs-{hb.value}")
        if isinstance(a, S.Sort):
            if a.is_prop:
                return _holds(C("reflProp", 0), "Prop-Refl-Ty")
            return _holds(C("reflUniv", a.level), "Univ-Refl-Ty")
        if isinstance(a, (S.Nat, S.Bool, S.Unit, S.Empty)):
            name = {S.Nat: "boundNat", S.Bool: "boundBool",
                    S.Unit: "boundUnit", S.Empty: "boundEmpty"}[type(a)]
            return _holds(C("lrefl", 0, a, S.unk_ty(0), C(name, 0)),
                          "base-refl")
        if isinstance(a, S.List):
            sub = self.ty(a.elem, b.elem, i)
            if not sub.holds:
                return sub
            return _holds(sub.witness, "List-Cong-Ty")
        if isinstance(a, S.Cum):
            sub = self.ty(a.ty, b.ty, i - 1)
            if not sub.holds:
                return sub
            return _holds(sub.witness, "Cum-Cong-Ty")
        if isinstance(a, S.BoxP):
            return _holds(C("irrProp", 0, a.prop, b.prop), "Box-Cong")
        if isinstance(a, (S.Pi, S.Sigma)):
            return self._ty_cong_binder(a, b, i)
        return _unknown("undecided-type-pair")

    def _exc_sp_univ(self, cls, i: int) -> Term:
        """err_□ᵢ or ?_□ᵢ self-precise as a term of □ᵢ (reduces via the
        universe rule to the pair of type-precision facts)."""
        name = "reflErr" if cls is S.Err else "reflUnk"
        return C(name, i + 1, S.Sort(i), C("reflUniv", i))

    def _ty_bound(self, a: Term, i: int) -> PrecResult:
        """a ⊑ᵢ ?_□ᵢ for a in weak-head normal form."""
        unk = S.unk_ty(i)
        if a == unk:
            return _holds(S.SndP(self._exc_sp_univ(S.Unk, i)), "unk-Refl")
        if isinstance(a, S.Err) and a.ty == S.Sort(i):
            return _holds(S.SndP(self._exc_sp_univ(S.Err, i)), "err-bound")
        if isinstance(a, S.Nat):
            return _holds(C("boundNat", 0), "Nat-bound")
        if isinstance(a, S.Bool):
            return _holds(C("boundBool", 0), "Bool-bound")
        if isinstance(a, S.Unit):
            return _holds(C("boundUnit", 0), "Unit-bound")
        if isinstance(a, S.Empty):
            return _holds(C("boundEmpty", 0), "Empty-bound")
        if isinstance(a, S.Sort):
            if a.is_prop:
                return _holds(C("boundProp", 0), "Prop-bound")
            return _holds(C("boundUniv", a.level), "Univ-bound")
        if isinstance(a, S.List):
            sub = self._ty_bound(self.norm(a.elem), i)
            if not sub.holds:
                return sub
            return _holds(C("boundList", i, a.elem, sub.witness), "List-bound")
        if isinstance(a, S.Cum):
            sub = self.ty(a.ty, a.ty, i - 1)
            if not sub.holds:
                return sub
            return _holds(C("boundCum", i - 1, a.ty, sub.witness), "Cum-bound")
        if isinstance(a, S.Sigma):
            if S.scope_check(a.snd, 0):  # non-dependent family
                snd = self.norm(shift(a.snd, 0, -1))
                wfst = self._ty_bound(self.norm(a.fst), i)
                wsnd_sp = self.ty(snd, snd, i)
                wsnd = self._ty_bound(snd, i)
                bad = self._merge(wfst, wsnd_sp, wsnd)
                if bad:
                    return bad
                fam = S.Lam(a.fst, shift(snd))
                mono = S.Lam(a.fst, S.Lam(
                    shift(a.fst),
                    S.Lam(S.TmPrec(shift(a.fst, 0, 2), shift(a.fst, 0, 2),
                                   S.Var(1), S.Var(0)),
                          shift(wsnd_sp.witness, 0, 3))))
                bound = S.Lam(a.fst, S.Lam(
                    S.TmPrec(shift(a.fst), shift(a.fst), S.Var(0), S.Var(0)),
                    shift(wsnd.witness, 0, 2)))
                return _holds(
                    C("boundSigma", i, a.fst, fam, wfst.witness, mono, bound),
                    "Sigma-bound")
            return self._enum_sigma_bound(a, i)
        if isinstance(a, S.Pi):
            return _fails("no-Pi-unk-bound")
        if isinstance(a, S.BoxP):
            return _fails("no-Box-unk-bound")
        return _unknown("neutral-type")

    def _ty_cong_binder(self, a, b, i) -> PrecResult:
        """Pi-vs-Pi or Sigma-vs-Sigma congruence."""
        da, ca = (a.dom, a.cod) if isinstance(a, S.Pi) else (a.fst, a.snd)
        db, cb = (b.dom, b.cod) if isinstance(b, S.Pi) else (b.fst, b.snd)
        wdom = self.ty(self.norm(da), self.norm(db), i)
        if wdom.fails:
            return wdom
        if S.scope_check(ca, 0) and S.scope_check(cb, 0):
            ca0 = self.norm(shift(ca, 0, -1))
            cb0 = self.norm(shift(cb, 0, -1))
            whet = self.ty(ca0, cb0, i)
            bad = self._merge(wdom, whet)
            if bad:
                return bad
            wl = C("lrefl", i, ca0, cb0, whet.witness)
            wr = C("urefl", i, ca0, cb0, whet.witness)

            def lam3(dom_l, dom_r, body):
                return S.Lam(dom_l, S.Lam(
                    shift(dom_r),
                    S.Lam(S.TmPrec(shift(dom_l, 0, 2), shift(dom_r, 0, 2),
                                   S.Var(1), S.Var(0)), shift(body, 0, 3))))

            wit = S.PairP(wdom.witness,
                          S.PairP(lam3(da, da, wl),
                                  S.PairP(lam3(db, db, wr),
                                          lam3(da, db, whet.witness))))
            return _holds(wit, "binder-cong")
        return self._enum_binder_cong(a, b, i, wdom)

    # bounded enumeration fallbacks (dependent families) -------------------

    def _encode_dom(self, dom: Term):
        try:
            code = M.decode_code(dom)
            vals = self.model.el(code)
        except (M.Undecodable, M.BoundOverflow, M.ModelError):
            return None
        return code, vals

    def _enum_binder_cong(self, a, b, i, wdom) -> PrecResult:
        da = a.dom if isinstance(a, S.Pi) else a.fst
        ca = a.cod if isinstance(a, S.Pi) else a.snd
        db = b.dom if isinstance(b, S.Pi) else b.fst
        cb = b.cod if isinstance(b, S.Pi) else b.snd
        enc = self._encode_dom(self.norm(da))
        if enc is None or wdom.verdict == "unknown":
            return _unknown("dependent-family-unencodable")
        code, vals = enc
        checked = 0
        for v in vals:
            if not self.model.sp(code, v):
                continue
            for w in vals:
                if not self.model.prec(code, v, w):
                    continue
                checked += 1
                tv, tw = M.encode_val(code, v), M.encode_val(code, w)
                for cod, tag in ((ca, "lhs"), (cb, "rhs")):
                    sub = self.ty(self.norm(subst(cod, 0, tv)),
                                  self.norm(subst(cod, 0, tw)), i)
                    if sub.fails:
                        return _fails(f"family-not-monotone:{tag}@{v!r}")
                sub = self.ty(self.norm(subst(ca, 0, tv)),
                              self.norm(subst(cb, 0, tw)), i)
                if sub.fails:
                    return _fails(f"family-prec-fails@{v!r}")
        return _unknown("positive-up-to-bound", checked=checked)

    def _enum_sigma_bound(self, a, i) -> PrecResult:
        wfst = self._ty_bound(self.norm(a.fst), i)
        if wfst.fails:
            return wfst
        enc = self._encode_dom(self.norm(a.fst))
        if enc is None:
            return _unknown("dependent-family-unencodable")
        code, vals = enc
        checked = 0
        for v in vals:
            if not self.model.sp(code, v):
                continue
            checked += 1
            sub = self._ty_bound(
                self.norm(subst(a.snd, 0, M.encode_val(code, v))), i)
            if sub.fails:
                return _fails(f"family-not-bounded@{v!r}")
        return _unknown("positive-up-to-bound", checked=checked)

    # -- term precision ----------------------------------------------------

    def tm(self, a: Term, b: Term, ta: Term, tb: Term, i: int) -> PrecResult:
        if self.ck.is_prop_type(EMPTY_CTX, ta):
            raise DecideError("no precision on proofs of propositions")
        if isinstance(ta, S.Sort) and isinstance(tb, S.Sort):
            if ta.is_prop and tb.is_prop:
                return _holds(C("irrProp", 0, a, b), "Prop-irr")
            w1 = self.ty(a, b, ta.level)
            w2 = self.ty(b, S.unk_ty(ta.level), ta.level)
            bad = self._merge(w1, w2)
            if bad:
                return bad
            return _holds(S.PairP(w1.witness, w2.witness), "Univ-Prec")
        if isinstance(ta, S.BoxP) and isinstance(tb, S.BoxP):
            return _holds(C("irrBox", 0, ta.prop, tb.prop, a, b), "Box-irr")
        if isinstance(ta, S.Cum) and isinstance(tb, S.Cum):
            na = self.norm(S.CoeDown(a))
            nb = self.norm(S.CoeDown(b))
            return self.tm(na, nb, self.norm(ta.ty), self.norm(tb.ty), i - 1)
        if isinstance(ta, S.Pi) and isinstance(tb, S.Pi):
            return self._tm_pi(a, b, ta, tb, i)
        if isinstance(ta, S.Unk) and isinstance(tb, S.Unk):
            return self._tm_unknown(a, b, i)
        if R.head(ta) is not None and R.head(ta) == R.head(tb):
            return self._tm_firstorder(a, b, ta, tb, i)
        return _unknown("undecided-term-pair")

    def _sp_tm(self, a: Term, ta: Term, i: int) -> PrecResult:
        if isinstance(a, (S.Err, S.Unk)):
            w = self.ty(ta, ta, i)
            if not w.holds:
                return w
            name = "reflErr" if isinstance(a, S.Err) else "reflUnk"
            return _holds(C(name, i, ta, w.witness), "exc-refl")
        return self.tm(a, a, ta, ta, i)

    def _tm_exceptional(self, a, b, ta, tb, i):
        """err-minimality, ?-maximality, and their reflexivity; None when
        neither side is exceptional."""
        a_err = isinstance(a, S.Err)
        b_unk = isinstance(b, S.Unk)
        if a_err:
            wta, wtb = self._sp_witnesses(ta, tb, i)
            wb = self._sp_tm(b, tb, i)
            bad = self._merge(wta, wtb, wb)
            if bad:
                return bad
            return _holds(C("errMin", i, ta, tb, b, wta.witness, wtb.witness,
                            wb.witness), "err-min")
        if b_unk:
            wta, wtb = self._sp_witnesses(ta, tb, i)
            wa = self._sp_tm(a, ta, i)
            bad = self._merge(wta, wtb, wa)
            if bad:
                return bad
            return _holds(C("unkMax", i, ta, tb, a, wta.witness, wa.witness,
                            wtb.witness), "unk-max")
        if isinstance(a, S.Unk):
            return _fails("unk-maximal")
        if isinstance(b, S.Err):
            return _fails("err-minimal")
        return None

    def _tm_firstorder(self, a, b, ta, tb, i) -> PrecResult:
        exc = self._tm_exceptional(a, b, ta, tb, i)
        if exc is not None:
            return exc
        if isinstance(ta, S.Nat):
            if isinstance(a, S.Zero) and isinstance(b, S.Zero):
                return _holds(C("congZero", 0), "zero-cong")
            if isinstance(a, S.Succ) and isinstance(b, S.Succ):
                return self.tm(a.pred, b.pred, ta, tb, i)
            return _fails("NoConf-Nat")
        if isinstance(ta, S.Bool):
            if type(a) is type(b):
                name = "congTrue" if isinstance(a, S.TrueT) else "congFalse"
                return _holds(C(name, 0), "bool-cong")
            return _fails("NoConf-Bool")
        if isinstance(ta, S.Unit):
            return _holds(C("congTt", 0), "tt-cong")
        if isinstance(ta, S.Empty):
            return _fails("NoConf-Empty")  # only exceptional inhabitants
        if isinstance(ta, S.List):
            ea, eb = self.norm(ta.elem), self.norm(tb.elem)
            if isinstance(a, S.Nil) and isinstance(b, S.Nil):
                return self._nil_witness(ea, eb, i)
            if isinstance(a, S.Cons) and isinstance(b, S.Cons):
                wh = self.tm(self.norm(a.head), self.norm(b.head), ea, eb, i)
                wt = self.tm(self.norm(a.tail), self.norm(b.tail),
                             S.List(ea), S.List(eb), i)
                bad = self._merge(wh, wt)
                if bad:
                    return bad
                return _holds(S.PairP(wh.witness, wt.witness), "cons-cong")
            return _fails("NoConf-List")
        if isinstance(ta, S.Sigma):
            if isinstance(a, S.Pair) and isinstance(b, S.Pair):
                wf = self.tm(self.norm(a.fst), self.norm(b.fst),
                             self.norm(ta.fst), self.norm(tb.fst), i)
                ws = self.tm(self.norm(a.snd), self.norm(b.snd),
                             self.norm(subst(ta.snd, 0, a.fst)),
                             self.norm(subst(tb.snd, 0, b.fst)), i)
                bad = self._merge(wf, ws)
                if bad:
                    return bad
                return _holds(S.PairP(wf.witness, ws.witness), "pair-cong")
            return _fails("NoConf-Sigma")
        if isinstance(ta, S.Err):
            # terms of the exceptional type err_□ are degenerate in the
            # model; no positive rule exists beyond err/?-handling above
            return _unknown("err-univ-degenerate")
        return _unknown("undecided-first-order")

    def _nil_witness(self, ea, eb, i) -> PrecResult:
        if ea == eb:
            return _holds(C("congNil", i, ea), "nil-cong")
        wla = self.ty(S.List(ea), S.List(ea), i)
        wlb = self.ty(S.List(eb), S.List(eb), i)
        bad = self._merge(wla, wlb)
        if bad:
            return _fails(f"nil-het-needs-self-precise: {bad.path}")
        back = S.SndP(C("hetChar", i, S.List(ea), S.List(eb),
                        wla.witness, wlb.witness, S.Nil(ea), S.Nil(eb)))
        wit = S.App(back, S.PairP(C("congNil", i, ea), C("congNil", i, eb)))
        return _holds(wit, "nil-het")

    # unknown-type inhabitants ----------------------------------------------

    def _tm_unknown(self, a, b, i) -> PrecResult:
        code = M.CUnkU(i)
        try:
            da = M.decode_val(code, a, self.model)
            db = M.decode_val(code, b, self.model)
        except (M.Undecodable, M.ModelError):
            return _unknown("unknown-value-undecodable")
        if not self.model.prec(code, da, db):
            return _fails("model-refutes")
        wit = self._unknown_witness(a, b, da, db, i)
        if wit is None:
            return _unknown("positive-no-witness")
        return _holds(wit, "unknown-model")

    def _unknown_witness(self, a, b, da, db, i) -> Optional[Term]:
        unk = S.unk_ty(i)
        w_unk_ty = S.SndP(self._exc_sp_univ(S.Unk, i))

        def sp_unk_val(t, dv):
            w = self._unknown_witness(t, t, dv, dv, i)
            return w

        if isinstance(a, S.Unk) and isinstance(b, S.Unk):
            return C("reflUnk", i, unk, w_unk_ty)
        if isinstance(a, S.Err) and isinstance(b, S.Err):
            return C("reflErr", i, unk, w_unk_ty)
        if isinstance(b, S.Unk):
            wa = sp_unk_val(a, da)
            if wa is None:
                return None
            return C("unkMax", i, unk, unk, a, w_unk_ty, wa, w_unk_ty)
        if isinstance(a, S.Err):
            wb = sp_unk_val(b, db)
            if wb is None:
                return None
            return C("errMin", i, unk, unk, b, w_unk_ty, w_unk_ty, wb)
        if isinstance(a, S.Cast) and isinstance(b, S.Cast):
            # same-germ canonical forms: cast monotonicity; tried before the
            # collapsed-error chain so diagonal queries terminate
            ga, gb = self.norm(a.src), self.norm(b.src)
            wg = self.ty(ga, gb, i)
            if wg.holds:
                wtt = self.tm(self.norm(a.body), self.norm(b.body), ga, gb, i)
                if wtt.holds:
                    return C("castMon", i, ga, gb, wg.witness, unk, unk,
                             w_unk_ty, a.body, b.body, wtt.witness)
        if da == M.ERR and isinstance(a, S.Cast):
            return self._collapsed_err_witness(a, b, db, i)
        return None

    def _collapsed_err_witness(self, a, b, db, i) -> Optional[Term]:
        """a = cast X ?ᵢ t where t is at or below err_X: chain a ⊑ err_? ⊑ b."""
        unk = S.unk_ty(i)
        x = self.norm(a.src)
        bound = self._ty_bound(x, i)
        wx = self.ty(x, x, i)
        if not (bound.holds and wx.holds):
            return None
        w_unk_ty = S.SndP(self._exc_sp_univ(S.Unk, i))
        w_err_sp = C("reflErr", i, unk, w_unk_ty)
        wt = self.tm(self.norm(a.body), S.Err(x), x, x, i)
        if not wt.holds:
            return None
        # upcast monotone on t ⊑ err_X
        mono_up = S.FstP(C("epPair", i, x, unk, bound.witness))
        step1 = apps(mono_up, a.body, S.Err(x), wt.witness)
        # cast X ? err_X  ⊑?  err_?
        em = C("errMin", i, x, unk, S.Err(unk), wx.witness, w_unk_ty, w_err_sp)
        fwd = S.FstP(C("hetDecomp", i, x, unk, unk, bound.witness,
                       w_unk_ty, S.Err(x), S.Err(unk)))
        step2 = S.FstP(S.SndP(S.App(fwd, em)))
        wsp_b = self._unknown_witness(b, b, db, db, i)
        if wsp_b is None:
            return None
        step3 = C("errMin", i, unk, unk, b, w_unk_ty, w_unk_ty, wsp_b)
        t12 = C("transTm", i, unk, unk, unk, w_unk_ty, w_unk_ty, w_unk_ty,
                a, S.Cast(x, unk, S.Err(x)), S.Err(unk), step1, step2)
        return C("transTm", i, unk, unk, unk, w_unk_ty, w_unk_ty, w_unk_ty,
                 a, S.Err(unk), b, t12, step3)

    # function types ---------------------------------------------------------

    def _tm_pi(self, a, b, ta, tb, i) -> PrecResult:
        enc_a = self._encode_dom(self.norm(ta.dom))
        enc_b = self._encode_dom(self.norm(tb.dom))
        if enc_a is None or enc_b is None:
            return _unknown("function-domain-unencodable")
        ca, va = enc_a
        cb, vb = enc_b
        checked = 0
        groups = [(ca, ca, va, va, a, a, ta.cod, ta.cod, "lhs-mono"),
                  (cb, cb, vb, vb, b, b, tb.cod, tb.cod, "rhs-mono"),
                  (ca, cb, va, vb, a, b, ta.cod, tb.cod, "pointwise")]
        for cd, cd2, vs, vs2, f, g, cod, cod2, tag in groups:
            for v in vs:
                for w in vs2:
                    if cd == cd2:
                        if not self.model.prec(cd, v, w):
                            continue
                    elif not self.model.hprec(cd, cd2, v, w):
                        continue
                    checked += 1
                    tv, tw = M.encode_val(cd, v), M.encode_val(cd2, w)
                    ra = self.norm(S.App(f, tv))
                    rb = self.norm(S.App(g, tw))
                    sub = self.tm(ra, rb, self.norm(subst(cod, 0, tv)),
                                  self.norm(subst(cod2, 0, tw)), i)
                    if sub.fails:
                        return _fails(f"{tag}@{v!r}: {sub.path}")
        return _unknown("positive-up-to-bound", checked=checked)


# -- module-level wrappers ------------------------------------------------

_DEFAULT = None


def _default():
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Decider()
    return _DEFAULT


def decide_type_prec(a: Term, b: Term, level: int,
                     decider: Optional[Decider] = None) -> PrecResult:
    return (decider or _default()).decide_type_prec(a, b, level)


def decide_term_prec(a: Term, b: Term, ty_a: Term, ty_b: Term,
                     decider: Optional[Decider] = None) -> PrecResult:
    return (decider or _default()).decide_term_prec(a, b, ty_a, ty_b)
