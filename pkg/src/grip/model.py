"""Executable model oracle: type codes, enumerable semantic values, the model
cast, and model precision, verified exhaustively within bounds.

Two universe levels only. Values are nested tuples so everything is hashable
and memoizable; functions are total tables over their (bounded) domains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Optional

from . import syntax as S
from .syntax import Term


class BoundOverflow(Exception):
    """An enumeration domain is too large to tabulate exhaustively."""


class ModelError(Exception):
    pass


# --- codes --------------------------------------------------------------------

@dataclass(frozen=True)
class Code:
    pass


@dataclass(frozen=True)
class CNat(Code):
    pass


@dataclass(frozen=True)
class CBool(Code):
    pass


@dataclass(frozen=True)
class CUnit(Code):
    pass


@dataclass(frozen=True)
class CEmpty(Code):
    pass


@dataclass(frozen=True)
class CProp(Code):
    pass


@dataclass(frozen=True)
class CBox(Code):
    pass


@dataclass(frozen=True)
class CList(Code):
    elem: Code


@dataclass(frozen=True)
class Fam:
    """Total mapping from values of a domain code to codes."""
    table: tuple  # ((value, Code), ...)
    default: Optional[Code] = None

    def apply(self, v) -> Code:
        for key, code in self.table:
            if key == v:
                return code
        if self.default is not None:
            return self.default
        raise ModelError(f"family not defined at {v!r}")


def const_fam(c: Code) -> Fam:
    return Fam((), default=c)


@dataclass(frozen=True)
class CSigma(Code):
    fst: Code
    fam: Fam


@dataclass(frozen=True)
class CPi(Code):
    dom: Code
    fam: Fam


@dataclass(frozen=True)
class CErrU(Code):
    level: int = 0


@dataclass(frozen=True)
class CUnkU(Code):
    level: int = 0


@dataclass(frozen=True)
class CUniv(Code):
    """The level-0 universe as a code at level 1."""


@dataclass(frozen=True)
class CCum(Code):
    inner: Code  # a level-0 code


def level(c: Code) -> int:
    if isinstance(c, (CNat, CBool, CUnit, CEmpty, CProp, CBox)):
        return 0
    if isinstance(c, CList):
        return level(c.elem)
    if isinstance(c, (CSigma, CPi)):
        return level(c.fst if isinstance(c, CSigma) else c.dom)
    if isinstance(c, (CErrU, CUnkU)):
        return c.level
    if isinstance(c, CUniv):
        return 1
    if isinstance(c, CCum):
        return level(c.inner) + 1
    raise ModelError(f"no level for {c!r}")


ERR = ("err",)
UNK = ("unk",)
STAR = ("star",)


@dataclass(frozen=True)
class Bounds:
    nat_bound: int = 3
    list_len: int = 2
    fn_table_bound: int = 8
    depth: int = 2

    def shallower(self) -> "Bounds":
        return replace(self, depth=self.depth - 1)


@dataclass
class EpReport:
    pair: tuple
    checked: dict
    violations: list
    precondition_ok: bool = True

    @property
    def ok(self) -> bool:
        return self.precondition_ok and not self.violations


# The unknown type's summands per level: which germ embeddings exist.
_UNK_SUMMANDS_L0 = ("nat", "bool", "unit", "empty", "list", "sigma")
_UNK_SUMMANDS_L1 = ("list", "sigma", "univ", "cum")

_HARD_CAP = 300_000


class Model:
    """The oracle at fixed bounds; all queries are memoized."""

    def __init__(self, bounds: Bounds = Bounds()):
        self.bounds = bounds
        self._el: dict = {}
        self._cast: dict = {}
        self._prec: dict = {}
        self._tprec: dict = {}

    # -- germ codes --

    def list_germ(self, i: int) -> Code:
        return CList(CUnkU(i))

    def sigma_germ(self, i: int) -> Code:
        return CSigma(CUnkU(i), const_fam(CUnkU(i)))

    def univ_codes(self, b: Optional[Bounds] = None) -> tuple:
        """El of the embedded level-0 universe: a bounded code universe."""
        b = b or self.bounds
        atoms = [CNat(), CBool(), CUnit(), CEmpty(), CProp(), CBox(),
                 CErrU(0), CUnkU(0)]
        if b.depth <= 0:
            return tuple(atoms)
        out = list(atoms)
        out += [CList(CNat()), CList(CBool()), CList(CUnkU(0))]
        out += [CSigma(CBool(), const_fam(CNat())),
                CSigma(CUnkU(0), const_fam(CUnkU(0)))]
        out += [CPi(CBool(), const_fam(CBool()))]
        return tuple(out)

    # -- enumeration --

    def el(self, c: Code, b: Optional[Bounds] = None) -> tuple:
        b = b or self.bounds
        key = (c, b)
        if key in self._el:
            return self._el[key]
        vals = tuple(self._enum(c, b))
        if len(vals) > _HARD_CAP:
            raise BoundOverflow(f"{len(vals)} values at {c!r}")
        self._el[key] = vals
        return vals

    def _enum(self, c: Code, b: Bounds):
        if isinstance(c, CNat):
            return [ERR, UNK] + [("nat", n) for n in range(b.nat_bound + 1)]
        if isinstance(c, CBool):
            return [ERR, UNK, ("bool", True), ("bool", False)]
        if isinstance(c, CUnit):
            return [ERR, UNK, ("tt",)]
        if isinstance(c, CEmpty):
            return [ERR, UNK]
        if isinstance(c, CProp):
            return [ERR, UNK, ("prop",)]
        if isinstance(c, CBox):
            return [ERR, UNK, ("box",)]
        if isinstance(c, CErrU):
            return [STAR]
        if isinstance(c, CUniv):
            return list(self.univ_codes(b))
        if isinstance(c, CCum):
            return [("cum", v) for v in self.el(c.inner, b.shallower())]
        if isinstance(c, CList):
            elems = self.el(c.elem, b.shallower())
            out = [ERR, UNK]
            for n in range(b.list_len + 1):
                out += [("list", t) for t in itertools.product(elems, repeat=n)]
            return out
        if isinstance(c, CSigma):
            inner = b.shallower()
            out = [ERR, UNK]
            for a in self.el(c.fst, inner):
                for snd in self.el(c.fam.apply(a), inner):
                    out.append(("pair", a, snd))
            return out
        if isinstance(c, CPi):
            inner = b.shallower()
            dom = self.el(c.dom, inner)
            if len(dom) > b.fn_table_bound:
                raise BoundOverflow(
                    f"function domain of size {len(dom)} exceeds "
                    f"fn_table_bound={b.fn_table_bound}")
            cods = [self.el(c.fam.apply(x), inner) for x in dom]
            out = []
            for image in itertools.product(*cods):
                out.append(("fn", tuple(zip(dom, image))))
            return out
        if isinstance(c, CUnkU):
            if b.depth <= 0:
                return [ERR, UNK]
            inner = b.shallower()
            out = [ERR, UNK]
            summands = _UNK_SUMMANDS_L0 if c.level == 0 else _UNK_SUMMANDS_L1
            if "nat" in summands:
                out += [("u", "nat", v) for v in self.el(CNat(), inner)]
            if "bool" in summands:
                out += [("u", "bool", v) for v in self.el(CBool(), inner)]
            if "unit" in summands:
                out += [("u", "unit", v) for v in self.el(CUnit(), inner)]
            if "empty" in summands:
                out += [("u", "empty", v) for v in self.el(CEmpty(), inner)]
            if "list" in summands:
                out += [("u", "list", v)
                        for v in self.el(CList(CUnkU(c.level)), inner)]
            if "sigma" in summands:
                out += [("u", "sigma", v)
                        for v in self.el(self.sigma_germ(c.level), inner)]
            if "univ" in summands:
                out += [("u", "univ", code) for code in self.univ_codes(inner)]
            if "cum" in summands:
                for code in self.univ_codes(inner):
                    if isinstance(code, CPi):
                        continue  # keep cum payloads first-order
                    out += [("u", "cum", code, v)
                            for v in self.el(code, inner)]
            return out
        raise ModelError(f"cannot enumerate {c!r}")

    # -- err / unk values per code --

    def err_of(self, c: Code):
        if isinstance(c, CPi):
            return ("fn", tuple((x, self.err_of(c.fam.apply(x)))
                                for x in self.el(c.dom)))
        if isinstance(c, CCum):
            return ("cum", self.err_of(c.inner))
        if isinstance(c, CErrU):
            return STAR
        if isinstance(c, CUniv):
            return CErrU(0)
        return ERR

    def unk_of(self, c: Code):
        if isinstance(c, CPi):
            return ("fn", tuple((x, self.unk_of(c.fam.apply(x)))
                                for x in self.el(c.dom)))
        if isinstance(c, CCum):
            return ("cum", self.unk_of(c.inner))
        if isinstance(c, CErrU):
            return STAR
        if isinstance(c, CUniv):
            return CUnkU(0)
        return UNK

    # -- the model cast --

    def cast(self, a: Code, b: Code, v):
        key = (a, b, v)
        if key in self._cast:
            return self._cast[key]
        out = self._cast_raw(a, b, v)
        self._cast[key] = out
        return out

    def _cast_raw(self, a: Code, b: Code, v):
        if isinstance(a, CErrU):
            return self.err_of(b)
        if isinstance(b, CErrU):
            return STAR
        if isinstance(a, CUnkU):
            if isinstance(b, CUnkU):
                return v
            if v == ERR:
                return self.err_of(b)
            if v == UNK:
                return self.unk_of(b)
            if v[0] == "u":
                germ, payload = self._germ_of(v, a.level)
                return self.cast(germ, b, payload)
            raise ModelError(f"bad unknown value {v!r}")
        if isinstance(b, CUnkU):
            i = b.level
            if isinstance(a, CPi):
                return ERR  # no germ for functions at their own level
            if isinstance(a, CBox):
                return ERR  # Box has no germ either
            if isinstance(a, CNat):
                return self._embed("nat", CNat(), v)
            if isinstance(a, CBool):
                return self._embed("bool", CBool(), v)
            if isinstance(a, CUnit):
                return self._embed("unit", CUnit(), v)
            if isinstance(a, CEmpty):
                return self._embed("empty", CEmpty(), v)
            if isinstance(a, CProp):
                return ERR  # propositions embed degenerately, like Box
            if isinstance(a, CList):
                germ = self.list_germ(i)
                return self._embed("list", germ, self.cast(a, germ, v))
            if isinstance(a, CSigma):
                germ = self.sigma_germ(i)
                return self._embed("sigma", germ, self.cast(a, germ, v))
            if isinstance(a, CUniv):
                if self.prec(CUniv(), v, CErrU(0)):
                    return ERR
                return ("u", "univ", v)
            if isinstance(a, CCum):
                raw = v[1]
                if self.prec(a.inner, raw, self.err_of(a.inner)):
                    return ERR
                return ("u", "cum", a.inner, raw)
            raise ModelError(f"cannot embed {a!r} into the unknown type")
        if type(a) is not type(b):
            return self.err_of(b)
        if isinstance(a, (CNat, CBool, CUnit, CEmpty, CProp, CUniv)):
            return v
        if isinstance(a, CBox):
            return ERR  # casts between boxed propositions fail eagerly
        if isinstance(a, CCum):
            return ("cum", self.cast(a.inner, b.inner, v[1]))
        if isinstance(a, CList):
            if v in (ERR, UNK):
                return v
            return ("list", tuple(self.cast(a.elem, b.elem, x) for x in v[1]))
        if isinstance(a, CSigma):
            if v in (ERR, UNK):
                return v
            fst2 = self.cast(a.fst, b.fst, v[1])
            snd2 = self.cast(a.fam.apply(v[1]), b.fam.apply(fst2), v[2])
            return ("pair", fst2, snd2)
        if isinstance(a, CPi):
            table = []
            for x2 in self.el(b.dom):
                x1 = self.cast(b.dom, a.dom, x2)
                y = self._apply(v, x1)
                table.append((x2, self.cast(a.fam.apply(x1),
                                            b.fam.apply(x2), y)))
            return ("fn", tuple(table))
        raise ModelError(f"cannot cast {a!r} -> {b!r}")

    def _embed(self, kind: str, germ: Code, payload):
        """Wrap a germ value as an unknown inhabitant. Payloads at or below
        the germ's error collapse to the unknown type's own err (adjunction
        forces upcasts of err to stay minimal; for degenerate orders such as
        propositions that is every payload). Unknowns stay germ-tagged so
        casting back out through the germ behaves like Up-Down."""
        if self.prec(germ, payload, self.err_of(germ)):
            return ERR
        return ("u", kind, payload)

    def _germ_of(self, v, i: int):
        kind = v[1]
        if kind == "nat":
            return CNat(), v[2]
        if kind == "bool":
            return CBool(), v[2]
        if kind == "unit":
            return CUnit(), v[2]
        if kind == "empty":
            return CEmpty(), v[2]
        if kind == "list":
            return self.list_germ(i), v[2]
        if kind == "sigma":
            return self.sigma_germ(i), v[2]
        if kind == "univ":
            return CUniv(), v[2]
        if kind == "cum":
            return CCum(v[2]), ("cum", v[3])
        raise ModelError(f"bad unknown summand {v!r}")

    def _apply(self, fn, x):
        for key, out in fn[1]:
            if key == x:
                return out
        raise ModelError(f"function table not defined at {x!r}")

    # -- type precision (the universe's order) --

    def tprec(self, a: Code, b: Code) -> bool:
        key = (a, b)
        if key in self._tprec:
            return self._tprec[key]
        self._tprec[key] = out = self._tprec_raw(a, b)
        return out

    def _tprec_raw(self, a: Code, b: Code) -> bool:
        if level(a) != level(b):
            return False
        if isinstance(a, CErrU):
            if isinstance(b, (CErrU, CUnkU)):
                return True
            return self.tprec(b, b) and self.tprec(b, CUnkU(level(b)))
        if isinstance(b, CUnkU):
            i = b.level
            if isinstance(a, (CNat, CBool, CUnit, CEmpty, CProp, CUniv,
                              CUnkU)):
                return True
            if isinstance(a, CList):
                return self.tprec(a.elem, CUnkU(i))
            if isinstance(a, CSigma):
                return (self.tprec(a.fst, CUnkU(i))
                        and self._fam_mono(a.fst, a.fam)
                        and all(self.tprec(a.fam.apply(v), CUnkU(i))
                                for v in self.el(a.fst) if self.sp(a.fst, v)))
            if isinstance(a, CCum):
                return self.tprec(a.inner, a.inner)
            return False  # functions and boxes are not below the unknown type
        if isinstance(a, CUnkU) or isinstance(b, CErrU):
            return False
        if type(a) is not type(b):
            return False
        if isinstance(a, (CNat, CBool, CUnit, CEmpty, CProp, CBox, CUniv)):
            return True
        if isinstance(a, CList):
            return self.tprec(a.elem, b.elem)
        if isinstance(a, CCum):
            return self.tprec(a.inner, b.inner)
        if isinstance(a, (CSigma, CPi)):
            da, fa = ((a.fst, a.fam) if isinstance(a, CSigma)
                      else (a.dom, a.fam))
            db, fb = ((b.fst, b.fam) if isinstance(b, CSigma)
                      else (b.dom, b.fam))
            if not self.tprec(da, db):
                return False
            if not (self._fam_mono(da, fa) and self._fam_mono(db, fb)):
                return False
            for v in self.el(da):
                for w in self.el(db):
                    if self.hprec(da, db, v, w):
                        if not self.tprec(fa.apply(v), fb.apply(w)):
                            return False
            return True
        raise ModelError(f"tprec undefined on {a!r}, {b!r}")

    def _fam_mono(self, dom: Code, fam: Fam) -> bool:
        for v in self.el(dom):
            for w in self.el(dom):
                if self.prec(dom, v, w):
                    if not self.tprec(fam.apply(v), fam.apply(w)):
                        return False
        return True

    def sp_univ(self, c: Code) -> bool:
        """Self-precision of a code as a term of its universe."""
        return self.tprec(c, c) and self.tprec(c, CUnkU(level(c)))

    # -- term precision --

    def prec(self, c: Code, v, w) -> bool:
        key = (c, v, w)
        if key in self._prec:
            return self._prec[key]
        self._prec[key] = out = self._prec_raw(c, v, w)
        return out

    def _prec_raw(self, c: Code, v, w) -> bool:
        if isinstance(c, (CProp, CBox, CErrU)):
            return True  # degenerate orders
        if isinstance(c, CUniv):
            return self.tprec(v, w) and self.tprec(w, CUnkU(0))
        if isinstance(c, CCum):
            return self.prec(c.inner, v[1], w[1])
        if isinstance(c, CPi):
            return (self._fn_mono(c, v) and self._fn_mono(c, w)
                    and self._fn_het(c, c, v, w))
        # exceptional clauses (base cases first to tie the recursion)
        if v == ERR and w == ERR:
            return True
        if v == UNK and w == UNK:
            return True
        if v == ERR:
            return self.sp(c, w)
        if w == UNK:
            return self.sp(c, v)
        if v == UNK or w == ERR:
            return False
        if isinstance(c, CNat):
            return v == w
        if isinstance(c, CBool):
            return v == w
        if isinstance(c, CUnit):
            return v == w
        if isinstance(c, CList):
            xs, ys = v[1], w[1]
            return (len(xs) == len(ys)
                    and all(self.prec(c.elem, x, y) for x, y in zip(xs, ys)))
        if isinstance(c, CSigma):
            return (self.prec(c.fst, v[1], w[1])
                    and self.hprec(c.fam.apply(v[1]), c.fam.apply(w[1]),
                                   v[2], w[2]))
        if isinstance(c, CUnkU):
            if v[0] != "u" or w[0] != "u" or v[1] != w[1]:
                return False
            kind = v[1]
            if kind in ("nat", "bool", "unit", "empty"):
                base = {"nat": CNat(), "bool": CBool(), "unit": CUnit(),
                        "empty": CEmpty()}[kind]
                return self.prec(base, v[2], w[2])
            if kind == "list":
                return self.prec(CList(CUnkU(c.level)), v[2], w[2])
            if kind == "sigma":
                return self.prec(self.sigma_germ(c.level), v[2], w[2])
            if kind == "univ":
                return self.prec(CUniv(), v[2], w[2])
            if kind == "cum":
                # sp here is self-precision of the *type*, so lifted function
                # types stay self-precise (that is the point of the lift).
                ca, a0 = v[2], v[3]
                cb, b0 = w[2], w[3]
                return (self.tprec(ca, ca) and self.tprec(cb, cb)
                        and self.hprec(ca, cb, a0, b0))
            raise ModelError(f"bad unknown value {v!r}")
        raise ModelError(f"prec undefined at {c!r}")

    def _fn_mono(self, c: CPi, f) -> bool:
        for a0 in self.el(c.dom):
            for a1 in self.el(c.dom):
                if self.prec(c.dom, a0, a1):
                    if not self.hprec(c.fam.apply(a0), c.fam.apply(a1),
                                      self._apply(f, a0), self._apply(f, a1)):
                        return False
        return True

    def _fn_het(self, ca: CPi, cb: CPi, f, g) -> bool:
        for a in self.el(ca.dom):
            for a2 in self.el(cb.dom):
                if self.hprec(ca.dom, cb.dom, a, a2):
                    if not self.hprec(ca.fam.apply(a), cb.fam.apply(a2),
                                      self._apply(f, a), self._apply(g, a2)):
                        return False
        return True

    def sp(self, c: Code, v) -> bool:
        return self.prec(c, v, v)

    def hprec(self, a: Code, b: Code, v, w) -> bool:
        """Heterogeneous precision: v below the downcast of w, w self-precise."""
        return self.prec(a, v, self.cast(b, a, w)) and self.prec(b, w, w)

    # -- law checks --

    def check_partial_preorder(self, c: Code) -> EpReport:
        vals = self.el(c)
        related = [(v, w) for v in vals for w in vals if self.prec(c, v, w)]
        violations = []
        checked = {"pairs": len(vals) ** 2, "related": len(related),
                   "quasi_refl": 0, "trans": 0}
        for v, w in related:
            checked["quasi_refl"] += 1
            if not (self.prec(c, v, v) and self.prec(c, w, w)):
                violations.append(("quasi-refl", v, w))
        succ = {}
        for v, w in related:
            succ.setdefault(v, []).append(w)
        for v, w in related:
            for x in succ.get(w, ()):
                checked["trans"] += 1
                if not self.prec(c, v, x):
                    violations.append(("trans", v, w, x))
        return EpReport(pair=(c,), checked=checked, violations=violations)

    def check_ep_pair(self, a: Code, b: Code) -> EpReport:
        checked = {"monotonicity": 0, "adjunction": 0, "retraction": 0,
                   "cast_id": 0}
        if not self.tprec(a, b):
            return EpReport(pair=(a, b), checked=checked,
                            violations=[("precondition", a, b)],
                            precondition_ok=False)
        violations = []
        ea, eb = self.el(a), self.el(b)

        def up(v):
            return self.cast(a, b, v)

        def down(w):
            return self.cast(b, a, w)

        for v in ea:
            for v2 in ea:
                if self.prec(a, v, v2):
                    checked["monotonicity"] += 1
                    if not self.prec(b, up(v), up(v2)):
                        violations.append(("mono-up", v, v2))
        for w in eb:
            for w2 in eb:
                if self.prec(b, w, w2):
                    checked["monotonicity"] += 1
                    if not self.prec(a, down(w), down(w2)):
                        violations.append(("mono-down", w, w2))
        sp_a = [v for v in ea if self.sp(a, v)]
        sp_b = [w for w in eb if self.sp(b, w)]
        for v in sp_a:
            for w in sp_b:
                checked["adjunction"] += 1
                if self.prec(b, up(v), w) != self.prec(a, v, down(w)):
                    violations.append(("adjunction", v, w))
        for v in sp_a:
            checked["retraction"] += 1
            r = down(up(v))
            if not (self.prec(a, r, v) and self.prec(a, v, r)):
                violations.append(("retraction", v))
        for v in sp_a:
            checked["cast_id"] += 1
            r = self.cast(a, a, v)
            if not (self.prec(a, r, v) and self.prec(a, v, r)):
                violations.append(("cast-id", v))
        return EpReport(pair=(a, b), checked=checked, violations=violations)

    def check_compositions(self, codes) -> EpReport:
        """Upcast-Comp / Downcast-Comp over related triples from `codes`."""
        checked = {"upcast_comp": 0, "downcast_comp": 0}
        violations = []
        triples = [(a, b, c) for a in codes for b in codes for c in codes
                   if self.tprec(a, b) and self.tprec(b, c)]
        for a, b, c in triples:
            for v in self.el(a):
                if not self.sp(a, v):
                    continue
                checked["upcast_comp"] += 1
                two = self.cast(b, c, self.cast(a, b, v))
                one = self.cast(a, c, v)
                if not (self.prec(c, two, one) and self.prec(c, one, two)):
                    violations.append(("upcast-comp", a, b, c, v))
            for w in self.el(c):
                if not self.sp(c, w):
                    continue
                checked["downcast_comp"] += 1
                two = self.cast(b, a, self.cast(c, b, w))
                one = self.cast(c, a, w)
                if not (self.prec(a, two, one) and self.prec(a, one, two)):
                    violations.append(("downcast-comp", a, b, c, w))
        return EpReport(pair=tuple(codes), checked=checked,
                        violations=violations)

    def check_beck_chevalley_failure(self) -> dict:
        """The no-decomposition-through-meets counterexample, replayed."""
        b = Bounds(nat_bound=6, list_len=1, fn_table_bound=9, depth=1)
        m = Model(b)
        x1 = CPi(CNat(), const_fam(CNat()))
        fam2 = Fam(table=((("bool", True), CNat()),
                          (("bool", False), CBool()),
                          (ERR, CErrU(0)),
                          (UNK, CUnkU(0))))
        x2 = CPi(CBool(), fam2)
        meet = CPi(CErrU(0), const_fam(CErrU(0)))
        f = ("fn", tuple((x, ("nat", 5)) for x in m.el(CNat())))
        direct = m.cast(x1, x2, f)
        via_meet = m.cast(meet, x2, m.cast(x1, meet, f))
        at_true = ("bool", True)
        direct_true = m._apply(direct, at_true)
        meet_true = m._apply(via_meet, at_true)
        return {
            "direct_at_true": direct_true,
            "meet_at_true": meet_true,
            "direct_below_meet": m.prec(x2, direct, via_meet),
            "meet_below_direct": m.prec(x2, via_meet, direct),
            "equiprecise": (m.prec(x2, direct, via_meet)
                            and m.prec(x2, via_meet, direct)),
        }


# --- term <-> value encoding (for kernel/model agreement) ----------------------

class Undecodable(Exception):
    pass


def encode_code(c: Code) -> Term:
    if isinstance(c, CNat):
        return S.Nat()
    if isinstance(c, CBool):
        return S.Bool()
    if isinstance(c, CUnit):
        return S.Unit()
    if isinstance(c, CEmpty):
        return S.Empty()
    if isinstance(c, CProp):
        return S.PROP
    if isinstance(c, CBox):
        return S.BoxP(S.TmPrec(S.Nat(), S.Nat(), S.Zero(), S.Zero()))
    if isinstance(c, CList):
        return S.List(encode_code(c.elem))
    if isinstance(c, CSigma):
        if c.fam.table:
            raise Undecodable("only constant families are encodable")
        return S.Sigma(encode_code(c.fst), S.shift(encode_code(c.fam.default)))
    if isinstance(c, CErrU):
        return S.Err(S.Sort(c.level))
    if isinstance(c, CUnkU):
        return S.Unk(S.Sort(c.level))
    if isinstance(c, CUniv):
        return S.Sort(0)
    if isinstance(c, CCum):
        return S.Cum(encode_code(c.inner))
    raise Undecodable(f"cannot encode {c!r}")


def encode_val(c: Code, v) -> Term:
    ty = encode_code(c)
    if isinstance(c, CErrU):
        return S.Err(ty)
    if isinstance(c, CUniv):
        return encode_code(v)
    if v == ERR:
        return S.Err(ty)
    if v == UNK:
        return S.Unk(ty)
    if isinstance(c, CNat):
        return S.numeral(v[1])
    if isinstance(c, CBool):
        return S.TrueT() if v[1] else S.FalseT()
    if isinstance(c, CUnit):
        return S.Tt()
    if isinstance(c, CProp):
        return S.Bot()
    if isinstance(c, CBox):
        return S.BoxIntro(S.TmPrec(S.Nat(), S.Nat(), S.Zero(), S.Zero()),
                          S.Const("congZero"))
    if isinstance(c, CList):
        elem = encode_code(c.elem)
        out = S.Nil(elem)
        for x in reversed(v[1]):
            out = S.Cons(elem, encode_val(c.elem, x), out)
        return out
    if isinstance(c, CSigma):
        sig = encode_code(c)
        snd_code = c.fam.apply(v[1])
        return S.Pair(sig.fst, sig.snd, encode_val(c.fst, v[1]),
                      encode_val(snd_code, v[2]))
    if isinstance(c, CCum):
        return S.CoeUp(encode_val(c.inner, v[1]))
    if isinstance(c, CUnkU):
        m = Model()
        germ, payload = m._germ_of(v, c.level)
        return S.Cast(encode_code(germ), ty, encode_val(germ, payload))
    raise Undecodable(f"cannot encode {v!r} at {c!r}")


def decode_code(t: Term) -> Code:
    if isinstance(t, S.Nat):
        return CNat()
    if isinstance(t, S.Bool):
        return CBool()
    if isinstance(t, S.Unit):
        return CUnit()
    if isinstance(t, S.Empty):
        return CEmpty()
    if isinstance(t, S.Sort) and t.is_prop:
        return CProp()
    if isinstance(t, S.BoxP):
        return CBox()
    if isinstance(t, S.List):
        return CList(decode_code(t.elem))
    if isinstance(t, S.Sigma):
        if not S.scope_check(t.snd, 0):
            raise Undecodable("dependent pair type")
        return CSigma(decode_code(t.fst),
                      const_fam(decode_code(S.shift(t.snd, 0, -1))))
    if isinstance(t, S.Err) and isinstance(t.ty, S.Sort):
        return CErrU(t.ty.level)
    if isinstance(t, S.Unk) and isinstance(t.ty, S.Sort):
        return CUnkU(t.ty.level)
    if isinstance(t, S.Sort) and t.level == 0:
        return CUniv()
    if isinstance(t, S.Cum):
        return CCum(decode_code(t.ty))
    raise Undecodable(f"cannot decode code {t!r}")


def decode_val(c: Code, t: Term, model: Model):
    if isinstance(c, CErrU):
        return STAR
    if isinstance(c, CUniv):
        return decode_code(t)
    if isinstance(t, S.Err):
        return ERR
    if isinstance(t, S.Unk):
        return UNK
    if isinstance(c, CNat):
        n = S.as_numeral(t)
        if n is None:
            raise Undecodable(f"not a numeral: {t!r}")
        return ("nat", n)
    if isinstance(c, CBool):
        return ("bool", isinstance(t, S.TrueT))
    if isinstance(c, CUnit):
        return ("tt",)
    if isinstance(c, CProp):
        return ("prop",)
    if isinstance(c, CBox):
        return ("box",)
    if isinstance(c, CList):
        xs = []
        while isinstance(t, S.Cons):
            xs.append(decode_val(c.elem, t.head, model))
            t = t.tail
        if not isinstance(t, S.Nil):
            raise Undecodable("improper list")
        return ("list", tuple(xs))
    if isinstance(c, CSigma):
        if not isinstance(t, S.Pair):
            raise Undecodable("not a pair")
        fst = decode_val(c.fst, t.fst, model)
        return ("pair", fst, decode_val(c.fam.apply(fst), t.snd, model))
    if isinstance(c, CCum):
        if not isinstance(t, S.CoeUp):
            raise Undecodable("not a lifted value")
        return ("cum", decode_val(c.inner, t.body, model))
    if isinstance(c, CUnkU):
        if isinstance(t, S.Cast):
            germ = decode_code(t.src)
            payload = decode_val(germ, t.body, model)
            return model.cast(germ, c, payload)
        raise Undecodable(f"not a canonical unknown inhabitant: {t!r}")
    raise Undecodable(f"cannot decode at {c!r}")
