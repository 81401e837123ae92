"""The precision prelude: opaque proof constants and their declared types.

Each constant transcribes one non-reduction precision rule, axiom, or
property. Proofs in the proposition sort are definitionally irrelevant, so
the constants need no computational behavior; they only have to be validated
by the model. Types are written in surface syntax (instantiated per universe
level) so the generated prelude file is the same artifact the checker sees.
"""

from __future__ import annotations

from functools import lru_cache

from .syntax import DEFAULT_MAX_LEVEL, Ctx, Term
from . import surface

_MON_UP = ("(forall (a : A) (a' : A) (wa : a : A <= a' : A), "
           "(cast A B a) : B <= (cast A B a') : B)")
_MON_DN = ("(forall (b : B) (b' : B) (wb : b : B <= b' : B), "
           "(cast B A b) : A <= (cast B A b') : A)")
_ADJ = ("(forall (a : A) (b : B) (wa : a : A <= a : A) (wb : b : B <= b : B), "
        "(forall (w1 : (cast A B a) : B <= b : B), a : A <= (cast B A b) : A) "
        "/\\ (forall (w2 : a : A <= (cast B A b) : A), (cast A B a) : B <= b : B))")
_RETR = "(forall (a : A) (wa : a : A <= a : A), (cast B A (cast A B a)) : A <= a : A)"

# name -> (leveled, surface type template over {i} and {i1}=i+1)
TEMPLATES: dict[str, tuple[bool, str]] = {
    # Fig 4 constant-style rules
    "reflUniv": (True, "Type {i} <=[{i1}] Type {i}"),
    "reflProp": (False, "Prop <=[0] Prop"),
    "boundUniv": (True, "Type {i} <=[{i1}] ?[Type {i1}]"),
    "boundProp": (False, "Prop <=[0] ?[Type 0]"),
    "boundCum": (True,
                 "forall (A : Type {i}) (w : A <=[{i}] A), "
                 "iota A <=[{i1}] ?[Type {i1}]"),
    "boundList": (True,
                  "forall (A : Type {i}) (w : A <=[{i}] ?[Type {i}]), "
                  "List A <=[{i}] ?[Type {i}]"),
    "boundNat": (False, "Nat <=[0] ?[Type 0]"),
    "boundBool": (False, "Bool <=[0] ?[Type 0]"),
    "boundUnit": (False, "Unit <=[0] ?[Type 0]"),
    "boundEmpty": (False, "Empty <=[0] ?[Type 0]"),
    "boundSigma": (True,
                   "forall (A : Type {i}) (B : Pi (x:A) -> Type {i}) "
                   "(wA : A <=[{i}] ?[Type {i}]) "
                   "(wMono : forall (a0 : A) (a1 : A) (w : a0 : A <= a1 : A), "
                   "B a0 <=[{i}] B a1) "
                   "(wBound : forall (a : A) (w : a : A <= a : A), "
                   "B a <=[{i}] ?[Type {i}]), "
                   "(Sig (x:A) (B x)) <=[{i}] ?[Type {i}]"),
    "reflErr": (True,
                "forall (A : Type {i}) (w : A <=[{i}] A), "
                "err[A] : A <= err[A] : A"),
    "reflUnk": (True,
                "forall (A : Type {i}) (w : A <=[{i}] A), "
                "?[A] : A <= ?[A] : A"),
    "errMin": (True,
               "forall (A : Type {i}) (B : Type {i}) (b : B) "
               "(wA : A <=[{i}] A) (wB : B <=[{i}] B) (wb : b : B <= b : B), "
               "err[A] : A <= b : B"),
    "unkMax": (True,
               "forall (A : Type {i}) (B : Type {i}) (a : A) "
               "(wA : A <=[{i}] A) (wa : a : A <= a : A) (wB : B <=[{i}] B), "
               "a : A <= ?[B] : B"),
    "irrProp": (False, "forall (P : Prop) (Q : Prop), P : Prop <= Q : Prop"),
    "irrBox": (False,
               "forall (P : Prop) (Q : Prop) (b : Box P) (b' : Box Q), "
               "b : Box P <= b' : Box Q"),
    # per-constructor congruences (nullary constructors)
    "congNil": (True, "forall (A : Type {i}), nil[A] : List A <= nil[A] : List A"),
    "congZero": (False, "0 : Nat <= 0 : Nat"),
    "congTrue": (False, "true : Bool <= true : Bool"),
    "congFalse": (False, "false : Bool <= false : Bool"),
    "congTt": (False, "tt : Unit <= tt : Unit"),
    # primitive no-confusion facts not derivable from constructor rules
    "noConfTtErr": (False,
                    "forall (w : tt : Unit <= err[Unit] : Unit), Bot"),
    "noConfUnkTt": (False,
                    "forall (w : ?[Unit] : Unit <= tt : Unit), Bot"),
    "noConfUnkErrUnit": (False,
                         "forall (w : ?[Unit] : Unit <= err[Unit] : Unit), Bot"),
    "noConfUnkErrEmpty": (False,
                          "forall (w : ?[Empty] : Empty <= err[Empty] : Empty), "
                          "Bot"),
    "noConfPairErr": (True,
                      "forall (A : Type {i}) (B : Pi (x:A) -> Type {i}) "
                      "(a : A) (b : B a) "
                      "(w : (pair[Sig (x:A) (B x)] a b) : (Sig (x:A) (B x)) "
                      "<= err[Sig (x:A) (B x)] : (Sig (x:A) (B x))), Bot"),
    "noConfUnkPair": (True,
                      "forall (A : Type {i}) (B : Pi (x:A) -> Type {i}) "
                      "(a : A) (b : B a) "
                      "(w : ?[Sig (x:A) (B x)] : (Sig (x:A) (B x)) "
                      "<= (pair[Sig (x:A) (B x)] a b) : (Sig (x:A) (B x))), Bot"),
    # Fig 5: quasi-reflexivity, transitivity, decompositions
    "lrefl": (True,
              "forall (A : Type {i}) (B : Type {i}) (w : A <=[{i}] B), "
              "A <=[{i}] A"),
    "urefl": (True,
              "forall (A : Type {i}) (B : Type {i}) (w : A <=[{i}] B), "
              "B <=[{i}] B"),
    "lreflTm": (True,
                "forall (A : Type {i}) (B : Type {i}) "
                "(wA : A <=[{i}] A) (wB : B <=[{i}] B) "
                "(a : A) (b : B) (w : a : A <= b : B), a : A <= a : A"),
    "ureflTm": (True,
                "forall (A : Type {i}) (B : Type {i}) "
                "(wA : A <=[{i}] A) (wB : B <=[{i}] B) "
                "(a : A) (b : B) (w : a : A <= b : B), b : B <= b : B"),
    "transTy": (True,
                "forall (A : Type {i}) (B : Type {i}) (C : Type {i}) "
                "(w1 : A <=[{i}] B) (w2 : B <=[{i}] C), A <=[{i}] C"),
    "transTm": (True,
                "forall (A : Type {i}) (B : Type {i}) (C : Type {i}) "
                "(wA : A <=[{i}] A) (wB : B <=[{i}] B) (wC : C <=[{i}] C) "
                "(a : A) (b : B) (c : C) "
                "(w1 : a : A <= b : B) (w2 : b : B <= c : C), a : A <= c : C"),
    "upperDecomp": (True,
                    "forall (A : Type {i}) (B : Type {i}) (X : Type {i}) "
                    "(wAX : A <=[{i}] X) (wBX : B <=[{i}] X) "
                    "(a : A) (wa : a : A <= a : A), "
                    "((cast X B (cast A X a)) : B <= (cast A B a) : B) "
                    "/\\ ((cast A B a) : B <= (cast X B (cast A X a)) : B)"),
    "hetDecomp": (True,
                  "forall (A : Type {i}) (B : Type {i}) (X : Type {i}) "
                  "(wAX : A <=[{i}] X) (wBX : B <=[{i}] X) (a : A) (b : B), "
                  "(forall (w : a : A <= b : B), "
                  "(a : A <= a : A) /\\ ((cast A X a) : X <= (cast B X b) : X) "
                  "/\\ (b : B <= b : B)) "
                  "/\\ (forall (w : (a : A <= a : A) "
                  "/\\ ((cast A X a) : X <= (cast B X b) : X) "
                  "/\\ (b : B <= b : B)), a : A <= b : B)"),
    # Fig 6: functoriality, monotonicity, characterization
    "castId": (True,
               "forall (A : Type {i}) (wA : A <=[{i}] A) (a : A) "
               "(wa : a : A <= a : A), "
               "((cast A A a) : A <= a : A) /\\ (a : A <= (cast A A a) : A)"),
    "upcastComp": (True,
                   "forall (A : Type {i}) (B : Type {i}) (C : Type {i}) "
                   "(wAB : A <=[{i}] B) (wBC : B <=[{i}] C) "
                   "(a : A) (wa : a : A <= a : A), "
                   "((cast B C (cast A B a)) : C <= (cast A C a) : C) "
                   "/\\ ((cast A C a) : C <= (cast B C (cast A B a)) : C)"),
    "downcastComp": (True,
                     "forall (A : Type {i}) (B : Type {i}) (C : Type {i}) "
                     "(wAB : A <=[{i}] B) (wBC : B <=[{i}] C) "
                     "(c : C) (wc : c : C <= c : C), "
                     "((cast B A (cast C B c)) : A <= (cast C A c) : A) "
                     "/\\ ((cast C A c) : A <= (cast B A (cast C B c)) : A)"),
    "castMon": (True,
                "forall (A : Type {i}) (A' : Type {i}) (wA : A <=[{i}] A') "
                "(B : Type {i}) (B' : Type {i}) (wB : B <=[{i}] B') "
                "(a : A) (a' : A') (wa : a : A <= a' : A'), "
                "(cast A B a) : B <= (cast A' B' a') : B'"),
    "hetChar": (True,
                "forall (A : Type {i}) (B : Type {i}) "
                "(wA : A <=[{i}] A) (wB : B <=[{i}] B) (a : A) (b : B), "
                "(forall (w : a : A <= b : B), "
                "(a : A <= (cast B A b) : A) /\\ (b : B <= b : B)) "
                "/\\ (forall (w : (a : A <= (cast B A b) : A) "
                "/\\ (b : B <= b : B)), a : A <= b : B)"),
    # embedding-projection pairs for precision-related casts
    "epPair": (True,
               "forall (A : Type {i}) (B : Type {i}) (w : A <=[{i}] B), "
               f"{_MON_UP} /\\ {_MON_DN} /\\ {_ADJ} /\\ {_RETR}"),
}


class UnknownConstant(Exception):
    pass


def _level_range(name: str, max_level: int) -> int:
    """Number of instances: families mentioning level i+1 stop one earlier
    so every universe annotation stays typeable under the bound."""
    leveled, tpl = TEMPLATES[name]
    if not leveled:
        return 1
    return max_level - 1 if "{i1}" in tpl else max_level


@lru_cache(maxsize=None)
def const_type(name: str, level: int,
               max_level: int = DEFAULT_MAX_LEVEL) -> Term:
    """Declared type of a prelude constant, or raise UnknownConstant."""
    if name not in TEMPLATES:
        raise UnknownConstant(f"unknown prelude constant {name!r}")
    leveled, tpl = TEMPLATES[name]
    if not 0 <= level < _level_range(name, max_level):
        raise UnknownConstant(
            f"prelude constant {name!r} has no instance at level {level}")
    return surface.parse_term(tpl.format(i=level, i1=level + 1))


def instances(max_level: int = DEFAULT_MAX_LEVEL):
    """All (name, level) instances valid under the level bound."""
    for name in TEMPLATES:
        for i in range(_level_range(name, max_level)):
            yield name, i


def prelude(max_level: int = DEFAULT_MAX_LEVEL) -> Ctx:
    """A context declaring every prelude constant at its transcribed type."""
    return tuple((f"{name}_{i}" if i else name, const_type(name, i, max_level))
                 for name, i in instances(max_level))


def prelude_source(max_level: int = DEFAULT_MAX_LEVEL) -> str:
    """The prelude as a .grip file (one declaration per constant)."""
    lines = ["-- Precision prelude: one opaque constant per non-reduction rule."]
    for name, i in instances(max_level):
        decl = f"{name}_{i}" if i else name
        ref = f"@{name}_{i}" if i else f"@{name}"
        leveled, tpl = TEMPLATES[name]
        ty = tpl.format(i=i, i1=i + 1)
        lines.append(f"def {decl} : {ty} := {ref}.")
    return "\n".join(lines) + "\n"


def load_prelude_overrides(text: str) -> dict[tuple[str, int], Term]:
    """Parse an alternative prelude file into a (name, level) -> type map."""
    import re as _re
    src = surface.parse(text)
    table = {}
    for name, ty, _body in src.decls:
        m = _re.fullmatch(r"(.*?)_(\d+)", name)
        fam, lvl = (m.group(1), int(m.group(2))) if m else (name, 0)
        table[(fam, lvl)] = ty
    return table
