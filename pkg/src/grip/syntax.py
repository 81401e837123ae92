"""Abstract syntax for the two-sorted gradual kernel.

Terms use de Bruijn indices; binder name hints are kept only for printing and
are excluded from equality, so alpha-equivalence is structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Callable, Optional, Union

Level = int

DEFAULT_MAX_LEVEL = 4


class ScopeError(Exception):
    """An index went negative during relocation: internal scope bug."""


@dataclass(frozen=True)
class Term:
    pass


# --- sorts ------------------------------------------------------------------

@dataclass(frozen=True)
class Sort(Term):
    """Universe □_level, or the proposition sort when level is None."""
    level: Optional[Level]

    @property
    def is_prop(self) -> bool:
        return self.level is None


PROP = Sort(None)


def univ(i: Level) -> Sort:
    return Sort(i)


# --- core -------------------------------------------------------------------

@dataclass(frozen=True)
class Var(Term):
    ix: int


@dataclass(frozen=True)
class Pi(Term):
    dom: Term
    cod: Term  # one binder
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Lam(Term):
    dom: Term
    body: Term  # one binder
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


# --- lists ------------------------------------------------------------------

@dataclass(frozen=True)
class List(Term):
    elem: Term


@dataclass(frozen=True)
class Nil(Term):
    elem: Term


@dataclass(frozen=True)
class Cons(Term):
    elem: Term
    head: Term
    tail: Term


@dataclass(frozen=True)
class CatchList(Term):
    elem: Term
    motive: Term
    on_nil: Term
    on_cons: Term
    on_err: Term
    on_unk: Term
    scrut: Term


@dataclass(frozen=True)
class CatchListP(Term):
    elem: Term
    motive: Term
    on_nil: Term
    on_cons: Term
    on_err: Term
    on_unk: Term
    scrut: Term


# --- naturals ---------------------------------------------------------------

@dataclass(frozen=True)
class Nat(Term):
    pass


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Succ(Term):
    pred: Term


@dataclass(frozen=True)
class CatchNat(Term):
    motive: Term
    on_zero: Term
    on_succ: Term
    on_err: Term
    on_unk: Term
    scrut: Term


@dataclass(frozen=True)
class CatchNatP(Term):
    motive: Term
    on_zero: Term
    on_succ: Term
    on_err: Term
    on_unk: Term
    scrut: Term


# --- booleans ---------------------------------------------------------------

@dataclass(frozen=True)
class Bool(Term):
    pass


@dataclass(frozen=True)
class TrueT(Term):
    pass


@dataclass(frozen=True)
class FalseT(Term):
    pass


@dataclass(frozen=True)
class CatchBool(Term):
    motive: Term
    on_true: Term
    on_false: Term
    on_err: Term
    on_unk: Term
    scrut: Term


@dataclass(frozen=True)
class CatchBoolP(Term):
    motive: Term
    on_true: Term
    on_false: Term
    on_err: Term
    on_unk: Term
    scrut: Term


# --- unit / empty -----------------------------------------------------------

@dataclass(frozen=True)
class Unit(Term):
    pass


@dataclass(frozen=True)
class Tt(Term):
    pass


@dataclass(frozen=True)
class CatchUnit(Term):
    motive: Term
    on_tt: Term
    on_err: Term
    on_unk: Term
    scrut: Term


@dataclass(frozen=True)
class CatchUnitP(Term):
    motive: Term
    on_tt: Term
    on_err: Term
    on_unk: Term
    scrut: Term


@dataclass(frozen=True)
class Empty(Term):
    pass


@dataclass(frozen=True)
class CatchEmpty(Term):
    motive: Term
    on_err: Term
    on_unk: Term
    scrut: Term


@dataclass(frozen=True)
class CatchEmptyP(Term):
    motive: Term
    on_err: Term
    on_unk: Term
    scrut: Term


# --- dependent pairs --------------------------------------------------------

@dataclass(frozen=True)
class Sigma(Term):
    fst: Term
    snd: Term  # one binder
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Pair(Term):
    # Annotations may be None on freshly parsed `(a , b)` literals; the
    # checker elaborates them before any cast can need them.
    fst_ty: Optional[Term]
    snd_ty: Optional[Term]  # one binder
    fst: Term
    snd: Term


@dataclass(frozen=True)
class CatchSigma(Term):
    fst_ty: Term
    snd_ty: Term  # one binder
    motive: Term
    on_pair: Term
    on_err: Term
    on_unk: Term
    scrut: Term


@dataclass(frozen=True)
class CatchSigmaP(Term):
    fst_ty: Term
    snd_ty: Term  # one binder
    motive: Term
    on_pair: Term
    on_err: Term
    on_unk: Term
    scrut: Term


# --- gradual primitives -----------------------------------------------------

@dataclass(frozen=True)
class Unk(Term):
    ty: Term


@dataclass(frozen=True)
class Err(Term):
    ty: Term


@dataclass(frozen=True)
class Cast(Term):
    src: Term
    tgt: Term
    body: Term


# --- explicit cumulativity --------------------------------------------------

@dataclass(frozen=True)
class Cum(Term):
    ty: Term


@dataclass(frozen=True)
class CoeUp(Term):
    body: Term


@dataclass(frozen=True)
class CoeDown(Term):
    body: Term


# --- the pure layer ---------------------------------------------------------

@dataclass(frozen=True)
class Bot(Term):
    pass


@dataclass(frozen=True)
class ExFalso(Term):
    prf: Term
    tgt: Term


@dataclass(frozen=True)
class All(Term):
    """Universal quantification landing in the proposition sort."""
    dom: Term
    body: Term  # one binder
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class AndP(Term):
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class PairP(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True)
class FstP(Term):
    pair: Term


@dataclass(frozen=True)
class SndP(Term):
    pair: Term


@dataclass(frozen=True)
class BoxP(Term):
    prop: Term


@dataclass(frozen=True)
class BoxIntro(Term):
    prop: Term
    prf: Term


@dataclass(frozen=True)
class CatchBox(Term):
    prop: Term
    motive: Term
    on_box: Term
    on_err: Term
    on_unk: Term
    scrut: Term


# --- internal precision -----------------------------------------------------

@dataclass(frozen=True)
class TyPrec(Term):
    level: Level
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class TmPrec(Term):
    lhs_ty: Term
    rhs_ty: Term
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Const(Term):
    """Opaque proof constant from the precision prelude."""
    name: str
    level: Level = 0
    args: tuple = ()


# --- contexts ---------------------------------------------------------------

CtxEntry = tuple[str, Term]
Ctx = tuple[CtxEntry, ...]

EMPTY_CTX: Ctx = ()


def ctx_extend(ctx: Ctx, hint: str, ty: Term) -> Ctx:
    return ctx + ((hint, ty),)


def ctx_lookup(ctx: Ctx, ix: int) -> Term:
    """Type of Var(ix), shifted to be valid in the full context."""
    if ix < 0 or ix >= len(ctx):
        raise IndexError(f"de Bruijn index {ix} out of range")
    return shift(ctx[-(ix + 1)][1], 0, ix + 1)


# --- generic traversal ------------------------------------------------------

# (field name, binder depth under which the field's subterm lives)
_SUBTERMS: dict[type, tuple[tuple[str, int], ...]] = {
    Pi: (("dom", 0), ("cod", 1)),
    Lam: (("dom", 0), ("body", 1)),
    App: (("fn", 0), ("arg", 0)),
    List: (("elem", 0),),
    Nil: (("elem", 0),),
    Cons: (("elem", 0), ("head", 0), ("tail", 0)),
    CatchList: (("elem", 0), ("motive", 0), ("on_nil", 0), ("on_cons", 0),
                ("on_err", 0), ("on_unk", 0), ("scrut", 0)),
    CatchListP: (("elem", 0), ("motive", 0), ("on_nil", 0), ("on_cons", 0),
                 ("on_err", 0), ("on_unk", 0), ("scrut", 0)),
    Succ: (("pred", 0),),
    CatchNat: (("motive", 0), ("on_zero", 0), ("on_succ", 0), ("on_err", 0),
               ("on_unk", 0), ("scrut", 0)),
    CatchNatP: (("motive", 0), ("on_zero", 0), ("on_succ", 0), ("on_err", 0),
                ("on_unk", 0), ("scrut", 0)),
    CatchBool: (("motive", 0), ("on_true", 0), ("on_false", 0), ("on_err", 0),
                ("on_unk", 0), ("scrut", 0)),
    CatchBoolP: (("motive", 0), ("on_true", 0), ("on_false", 0), ("on_err", 0),
                 ("on_unk", 0), ("scrut", 0)),
    CatchUnit: (("motive", 0), ("on_tt", 0), ("on_err", 0), ("on_unk", 0),
                ("scrut", 0)),
    CatchUnitP: (("motive", 0), ("on_tt", 0), ("on_err", 0), ("on_unk", 0),
                 ("scrut", 0)),
    CatchEmpty: (("motive", 0), ("on_err", 0), ("on_unk", 0), ("scrut", 0)),
    CatchEmptyP: (("motive", 0), ("on_err", 0), ("on_unk", 0), ("scrut", 0)),
    Sigma: (("fst", 0), ("snd", 1)),
    Pair: (("fst_ty", 0), ("snd_ty", 1), ("fst", 0), ("snd", 0)),
    CatchSigma: (("fst_ty", 0), ("snd_ty", 1), ("motive", 0), ("on_pair", 0),
                 ("on_err", 0), ("on_unk", 0), ("scrut", 0)),
    CatchSigmaP: (("fst_ty", 0), ("snd_ty", 1), ("motive", 0), ("on_pair", 0),
                  ("on_err", 0), ("on_unk", 0), ("scrut", 0)),
    Unk: (("ty", 0),),
    Err: (("ty", 0),),
    Cast: (("src", 0), ("tgt", 0), ("body", 0)),
    Cum: (("ty", 0),),
    CoeUp: (("body", 0),),
    CoeDown: (("body", 0),),
    ExFalso: (("prf", 0), ("tgt", 0)),
    All: (("dom", 0), ("body", 1)),
    AndP: (("lhs", 0), ("rhs", 0)),
    PairP: (("fst", 0), ("snd", 0)),
    FstP: (("pair", 0),),
    SndP: (("pair", 0),),
    BoxP: (("prop", 0),),
    BoxIntro: (("prop", 0), ("prf", 0)),
    CatchBox: (("prop", 0), ("motive", 0), ("on_box", 0), ("on_err", 0),
               ("on_unk", 0), ("scrut", 0)),
    TyPrec: (("lhs", 0), ("rhs", 0)),
    TmPrec: (("lhs_ty", 0), ("rhs_ty", 0), ("lhs", 0), ("rhs", 0)),
    Const: (("args", 0),),
}


def subterm_spec(t: Term) -> tuple[tuple[str, int], ...]:
    return _SUBTERMS.get(type(t), ())


def map_subterms(t: Term, fn: Callable[[Term, int], Term]) -> Term:
    """Rebuild t with fn applied to each immediate subterm.

    fn receives the subterm and the number of extra binders it sits under.
    Returns t itself when nothing changed.
    """
    spec = _SUBTERMS.get(type(t))
    if not spec:
        return t
    changes = {}
    for name, depth in spec:
        old = getattr(t, name)
        if old is None:
            continue
        if isinstance(old, tuple):
            new = tuple(fn(x, depth) for x in old)
            if new != old:
                changes[name] = new
        else:
            new = fn(old, depth)
            if new is not old:
                changes[name] = new
    return replace(t, **changes) if changes else t


def iter_subterms(t: Term):
    """Yield (field name, subterm, binder depth) for immediate subterms."""
    for name, depth in _SUBTERMS.get(type(t), ()):
        val = getattr(t, name)
        if val is None:
            continue
        if isinstance(val, tuple):
            for v in val:
                yield name, v, depth
        else:
            yield name, val, depth


# --- relocation and substitution --------------------------------------------

def shift(t: Term, cutoff: int = 0, amount: int = 1) -> Term:
    """Standard de Bruijn relocation of free indices >= cutoff."""
    if isinstance(t, Var):
        if t.ix >= cutoff:
            nix = t.ix + amount
            if nix < 0:
                raise ScopeError(f"shift drove index {t.ix} negative")
            return Var(nix)
        return t
    if not _SUBTERMS.get(type(t)):
        return t
    if amount == 0:
        return t
    return map_subterms(t, lambda s, d: shift(s, cutoff + d, amount))


def subst(t: Term, j: int, u: Term) -> Term:
    """Capture-avoiding substitution of u for index j, removing the binder."""
    if isinstance(t, Var):
        if t.ix == j:
            return shift(u, 0, j)
        if t.ix > j:
            return Var(t.ix - 1)
        return t
    return map_subterms(t, lambda s, d: subst(s, j + d, u))


def subst_keep(t: Term, j: int, u: Term) -> Term:
    """Substitute u for index j without removing the binder slot."""
    if isinstance(t, Var):
        if t.ix == j:
            return shift(u, 0, j)
        return t
    return map_subterms(t, lambda s, d: subst_keep(s, j + d, u))


def scope_check(t: Term, depth: int = 0) -> bool:
    """True iff every free index of t is < depth."""
    if isinstance(t, Var):
        return t.ix < depth
    for _, sub, d in iter_subterms(t):
        if not scope_check(sub, depth + d):
            return False
    return True


def term_size(t: Term) -> int:
    return 1 + sum(term_size(s) for _, s, _ in iter_subterms(t))


# --- small builders ---------------------------------------------------------

def numeral(n: int) -> Term:
    t: Term = Zero()
    for _ in range(n):
        t = Succ(t)
    return t


def as_numeral(t: Term) -> Optional[int]:
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.pred
    return n if isinstance(t, Zero) else None


def arrow(a: Term, b: Term, hint: str = "_") -> Term:
    """Non-dependent function type."""
    return Pi(a, shift(b), hint=hint)


def implies(p: Term, q: Term) -> Term:
    """Non-dependent ∀, i.e. implication in the proposition sort."""
    return All(p, shift(q), hint="_")


def apps(fn: Term, *args: Term) -> Term:
    for a in args:
        fn = App(fn, a)
    return fn


def unk_ty(i: Level) -> Term:
    """?_□ᵢ, the unknown type at level i."""
    return Unk(Sort(i))


def sig_germ(i: Level) -> Term:
    """The Σ germ Sig (x : ?_□ᵢ) ?_□ᵢ."""
    return Sigma(unk_ty(i), unk_ty(i))


def list_germ(i: Level) -> Term:
    return List(unk_ty(i))


# --- hash caching -------------------------------------------------------------
# Terms are deeply compared and used as memo keys throughout the kernel;
# caching each node's hash keeps dict operations linear instead of quadratic.

def _install_hash_caching():
    def wrap(orig):
        def cached(self):
            h = self.__dict__.get("_grip_hash")
            if h is None:
                h = orig(self)
                object.__setattr__(self, "_grip_hash", h)
            return h
        return cached

    seen = set()
    stack = [Term]
    while stack:
        cls = stack.pop()
        for sub in cls.__subclasses__():
            if sub not in seen:
                seen.add(sub)
                stack.append(sub)
        if cls is not Term and cls.__hash__ is not None:
            cls.__hash__ = wrap(cls.__hash__)


_install_hash_caching()
