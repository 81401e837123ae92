"""Random well-typed term generation for the property suites.

Generation is goal-directed (by target type), so terms are well-typed by
construction; the suites re-check them against the kernel anyway.
"""

from __future__ import annotations

import random
from typing import Optional

from . import syntax as S
from .syntax import Term, shift


def gen_type(rng: random.Random, level: int = 0, depth: int = 2) -> Term:
    """A closed normal type at the given universe level."""
    if level >= 1:
        pick = rng.random()
        if pick < 0.35:
            return S.Cum(gen_type(rng, level - 1, depth))
        if pick < 0.45:
            return S.Sort(level - 1)
        if pick < 0.55:
            return S.Unk(S.Sort(level))
        if depth <= 0:
            return S.Cum(gen_type(rng, level - 1, 0))
        if pick < 0.75:
            return S.List(gen_type(rng, level, depth - 1))
        return S.Pi(gen_type(rng, level, depth - 1),
                    shift(gen_type(rng, level, depth - 1)))
    atoms = [S.Nat(), S.Bool(), S.Unit(), S.Nat(), S.Bool(),
             S.Unk(S.Sort(0))]
    if depth <= 0:
        return rng.choice(atoms)
    pick = rng.random()
    if pick < 0.45:
        return rng.choice(atoms)
    if pick < 0.6:
        return S.List(gen_type(rng, 0, depth - 1))
    if pick < 0.75:
        return S.Pi(gen_type(rng, 0, depth - 1),
                    shift(gen_type(rng, 0, depth - 1)))
    if pick < 0.85:
        return S.Sigma(gen_type(rng, 0, depth - 1),
                       shift(gen_type(rng, 0, depth - 1)))
    if pick < 0.95:
        return S.Unk(S.Sort(0))
    return S.Empty()


def _germs(i: int):
    return [S.Nat(), S.Bool(), S.Unit(), S.list_germ(i), S.sig_germ(i)]


def gen_term(rng: random.Random, ty: Term, depth: int = 3,
             ctx: Optional[list] = None) -> Term:
    """A closed (or ctx-open) term of the given closed normal type."""
    ctx = ctx or []

    def candidates():
        out = []
        for ix, cty in enumerate(reversed(ctx)):
            if shift(cty, 0, ix + 1) == ty:
                out.append(S.Var(ix))
        return out

    vs = candidates()
    if vs and rng.random() < 0.3:
        return rng.choice(vs)
    if depth <= 0 or rng.random() < 0.12:
        return rng.choice([S.Err(ty), S.Unk(ty)])

    roll = rng.random()
    # generic cast-through wrappers
    if roll < 0.12:
        src = gen_type(rng, _level_of(ty), 1)
        return S.Cast(src, ty, gen_term(rng, src, depth - 1, ctx))
    if roll < 0.2:
        dom = gen_type(rng, _level_of(ty), 1)
        body = gen_term(rng, shift(ty), depth - 1, ctx + [dom])
        return S.App(S.Lam(dom, body), gen_term(rng, dom, depth - 1, ctx))
    if roll < 0.26:
        scrut = gen_term(rng, S.Bool(), depth - 1, ctx)
        motive = S.Lam(S.Bool(), shift(ty))
        return S.CatchBool(motive,
                           gen_term(rng, ty, depth - 1, ctx),
                           gen_term(rng, ty, depth - 1, ctx),
                           S.Err(ty), S.Unk(ty), scrut)

    if isinstance(ty, S.Nat):
        if rng.random() < 0.5:
            return S.numeral(rng.randrange(4))
        scrut = gen_term(rng, S.Nat(), depth - 1, ctx)
        motive = S.Lam(S.Nat(), S.Nat())
        step = S.Lam(S.Nat(), S.Lam(S.Nat(), S.Succ(S.Var(0))))
        return S.CatchNat(motive, S.numeral(rng.randrange(3)), step,
                          S.Err(S.Nat()), S.Unk(S.Nat()), scrut)
    if isinstance(ty, S.Bool):
        return rng.choice([S.TrueT(), S.FalseT()])
    if isinstance(ty, S.Unit):
        return S.Tt()
    if isinstance(ty, S.Empty):
        return rng.choice([S.Err(ty), S.Unk(ty)])
    if isinstance(ty, S.List):
        n = rng.randrange(3)
        out: Term = S.Nil(ty.elem)
        for _ in range(n):
            out = S.Cons(ty.elem, gen_term(rng, ty.elem, depth - 1, ctx), out)
        return out
    if isinstance(ty, S.Sigma):
        fst = gen_term(rng, ty.fst, depth - 1, ctx)
        snd_ty = S.subst(ty.snd, 0, fst)
        return S.Pair(ty.fst, ty.snd, fst,
                      gen_term(rng, snd_ty, depth - 1, ctx))
    if isinstance(ty, S.Pi):
        body = gen_term(rng, ty.cod, depth - 1, ctx + [ty.dom])
        return S.Lam(ty.dom, body)
    if isinstance(ty, S.Cum):
        return S.CoeUp(gen_term(rng, ty.ty, depth - 1, ctx))
    if isinstance(ty, S.Sort):
        return gen_type(rng, ty.level, depth - 1)
    if isinstance(ty, S.Unk) and isinstance(ty.ty, S.Sort):
        i = ty.ty.level
        germ = rng.choice(_germs(i) if i == 0 else [S.Sort(i - 1),
                                                    S.list_germ(i)])
        return S.Cast(germ, ty, gen_term(rng, germ, depth - 1, ctx))
    if isinstance(ty, S.BoxP):
        return rng.choice([S.Err(ty), S.Unk(ty)])
    if isinstance(ty, S.Err):
        return rng.choice([S.Err(ty), S.Unk(ty)])
    return S.Unk(ty)


def _level_of(ty: Term) -> int:
    if isinstance(ty, S.Cum):
        return _level_of(ty.ty) + 1
    if isinstance(ty, S.Sort):
        return (ty.level or 0) + 1
    if isinstance(ty, S.Unk) and isinstance(ty.ty, S.Sort):
        return ty.ty.level
    if isinstance(ty, (S.List, S.Sigma, S.Pi)):
        parts = [ty.elem] if isinstance(ty, S.List) else (
            [ty.fst] if isinstance(ty, S.Sigma) else [ty.dom])
        return max(_level_of(p) for p in parts)
    return 0


# --- arbitrary well-scoped terms (printer round-trips) ------------------------

def gen_scoped(rng: random.Random, depth: int = 3, binders: int = 0) -> Term:
    """A well-scoped but not necessarily well-typed term."""
    leaves = [S.Nat(), S.Bool(), S.Unit(), S.Empty(), S.Zero(), S.TrueT(),
              S.FalseT(), S.Tt(), S.Bot(), S.Sort(0), S.Sort(1), S.Sort(None),
              S.numeral(rng.randrange(5)), S.Const("errMin", 1),
              S.Const("boundNat", 0)]
    if binders:
        leaves += [S.Var(rng.randrange(binders)) for _ in range(3)]
    if depth <= 0:
        return rng.choice(leaves)

    def sub(extra=0):
        return gen_scoped(rng, depth - 1, binders + extra)

    forms = [
        lambda: S.Pi(sub(), sub(1)),
        lambda: S.Lam(sub(), sub(1)),
        lambda: S.App(sub(), sub()),
        lambda: S.List(sub()),
        lambda: S.Nil(sub()),
        lambda: S.Cons(sub(), sub(), sub()),
        lambda: S.Succ(sub()),
        lambda: S.Unk(sub()),
        lambda: S.Err(sub()),
        lambda: S.Cast(sub(), sub(), sub()),
        lambda: S.Cum(sub()),
        lambda: S.CoeUp(sub()),
        lambda: S.CoeDown(sub()),
        lambda: S.Sigma(sub(), sub(1)),
        lambda: S.Pair(sub(), sub(1), sub(), sub()),
        lambda: S.All(sub(), sub(1)),
        lambda: S.AndP(sub(), sub()),
        lambda: S.PairP(sub(), sub()),
        lambda: S.FstP(sub()),
        lambda: S.SndP(sub()),
        lambda: S.BoxP(sub()),
        lambda: S.BoxIntro(sub(), sub()),
        lambda: S.ExFalso(sub(), sub()),
        lambda: S.TyPrec(rng.randrange(2), sub(), sub()),
        lambda: S.TmPrec(sub(), sub(), sub(), sub()),
        lambda: S.CatchList(sub(), sub(), sub(), sub(), sub(), sub(), sub()),
        lambda: S.CatchNat(sub(), sub(), sub(), sub(), sub(), sub()),
        lambda: S.CatchNatP(sub(), sub(), sub(), sub(), sub(), sub()),
        lambda: S.CatchBool(sub(), sub(), sub(), sub(), sub(), sub()),
        lambda: S.CatchUnit(sub(), sub(), sub(), sub(), sub()),
        lambda: S.CatchEmpty(sub(), sub(), sub(), sub()),
        lambda: S.CatchSigma(sub(), sub(1), sub(), sub(), sub(), sub(), sub()),
        lambda: S.CatchBox(sub(), sub(), sub(), sub(), sub(), sub()),
        lambda: rng.choice(leaves),
    ]
    return rng.choice(forms)()


# --- fragment terms and precision-related value pairs -------------------------

def gen_gripup_value_type(rng: random.Random) -> Term:
    return rng.choice([S.Nat(), S.Bool(), S.List(S.Nat()), S.Unit(),
                       S.List(S.Bool())])


def gen_gripup_term(rng: random.Random, depth: int = 2) -> Term:
    """A closed term of the level-raising fragment (a function over a
    first-order type, built from recursors, constructors and casts)."""
    dom = gen_gripup_value_type(rng)
    cod = gen_gripup_value_type(rng)
    body = _gripup_body(rng, cod, [dom], depth)
    return S.Lam(dom, body)


def _gripup_body(rng, ty, ctx, depth):
    vs = [S.Var(ix) for ix, cty in enumerate(reversed(ctx))
          if shift(cty, 0, ix + 1) == ty]
    if vs and rng.random() < 0.35:
        return rng.choice(vs)
    if depth <= 0 or rng.random() < 0.15:
        if rng.random() < 0.4:
            return rng.choice([S.Err(ty), S.Unk(ty)])
        return _gripup_literal(rng, ty)
    roll = rng.random()
    if roll < 0.2:
        src = gen_gripup_value_type(rng)
        return S.Cast(src, ty, _gripup_body(rng, src, ctx, depth - 1))
    if roll < 0.5 and ctx:
        # eliminate a context variable with a plain recursor
        ix = rng.randrange(len(ctx))
        sty = shift(ctx[-(ix + 1)], 0, ix + 1)
        scrut = S.Var(ix)
        if isinstance(sty, S.Nat):
            motive = S.Lam(S.Nat(), shift(ty))
            z = _gripup_body(rng, ty, ctx, depth - 1)
            step = S.Lam(S.Nat(), S.Lam(
                S.App(shift(motive), S.Var(0)),
                _gripup_body(rng, shift(ty, 0, 2),
                             ctx + [S.Nat(), shift(ty)], depth - 1)))
            return S.CatchNat(motive, z, step,
                              S.Err(S.App(motive, S.Err(S.Nat()))),
                              S.Unk(S.App(motive, S.Unk(S.Nat()))), scrut)
        if isinstance(sty, S.List):
            e = sty.elem
            motive = S.Lam(sty, shift(ty))
            nil_case = _gripup_body(rng, ty, ctx, depth - 1)
            step = S.Lam(e, S.Lam(S.List(shift(e)), S.Lam(
                shift(ty, 0, 2),
                _gripup_body(rng, shift(ty, 0, 3),
                             ctx + [e, S.List(e), ty], depth - 1))))
            return S.CatchList(e, motive, nil_case, step,
                               S.Err(S.App(motive, S.Err(sty))),
                               S.Unk(S.App(motive, S.Unk(sty))), scrut)
        if isinstance(sty, S.Bool):
            motive = S.Lam(S.Bool(), shift(ty))
            return S.CatchBool(motive,
                               _gripup_body(rng, ty, ctx, depth - 1),
                               _gripup_body(rng, ty, ctx, depth - 1),
                               S.Err(S.App(motive, S.Err(S.Bool()))),
                               S.Unk(S.App(motive, S.Unk(S.Bool()))), scrut)
    return _gripup_literal(rng, ty, rng, ctx, depth)


def _gripup_literal(rng, ty, *_rest):
    if isinstance(ty, S.Nat):
        return S.numeral(rng.randrange(4))
    if isinstance(ty, S.Bool):
        return rng.choice([S.TrueT(), S.FalseT()])
    if isinstance(ty, S.Unit):
        return S.Tt()
    if isinstance(ty, S.List):
        out: Term = S.Nil(ty.elem)
        for _ in range(rng.randrange(3)):
            out = S.Cons(ty.elem, _gripup_literal(rng, ty.elem), out)
        return out
    return S.Unk(ty)


def gen_related_pair(rng: random.Random, ty: Term):
    """(x, y) with x ⊑ y at a first-order type: both sides share a concrete
    base value; y coarsens positions to ?, x degrades positions to err."""
    base = _gripup_literal(rng, ty)
    y = _coarsen_value(rng, base, ty, 0.3, S.Unk)
    x = _coarsen_value(rng, base, ty, 0.15, S.Err)
    return x, y


def _coarsen_value(rng, v, ty, p, wrap):
    if rng.random() < p:
        return wrap(ty)
    if isinstance(v, S.Succ):
        return S.Succ(_coarsen_value(rng, v.pred, S.Nat(), p, wrap))
    if isinstance(v, S.Cons):
        return S.Cons(v.elem,
                      _coarsen_value(rng, v.head, v.elem, p, wrap),
                      _coarsen_value(rng, v.tail, S.List(v.elem), p, wrap))
    return v
