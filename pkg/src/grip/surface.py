"""Concrete syntax: lexer, parser and pretty-printer for `.grip` files.

File format: `def <name> : <type> := <term>.` declarations, `--` line
comments. Earlier definitions are inlined into later bodies, so every parsed
term is closed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from . import syntax as S
from .syntax import Term

KEYWORDS = {
    "def", "Type", "Prop", "Pi", "fun", "forall", "cast", "iota", "up",
    "down", "List", "nil", "cons", "Nat", "S", "Bool", "true", "false",
    "Unit", "tt", "Empty", "Sig", "pair", "Bot", "exfalso", "Box", "box",
    "pairP", "fstP", "sndP",
    "catch_list", "catch_listP", "catch_nat", "catch_natP", "catch_bool",
    "catch_boolP", "catch_unit", "catch_unitP", "catch_empty",
    "catch_emptyP", "catch_sigma", "catch_sigmaP", "catch_box",
}

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>--[^\n]*)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>:=|->|=>|<=|/\\|[()\[\],.:?@])
""", re.VERBOSE)


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}: {self.severity}: {self.message}"


class ParseFailure(Exception):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


@dataclass(frozen=True)
class Token:
    kind: str  # num | ident | op | eof
    text: str
    line: int
    col: int


def lex(text: str) -> list[Token]:
    toks = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseFailure([Diagnostic("error",
                                           f"unexpected character {text[pos]!r}",
                                           line, col)])
        kind = m.lastgroup
        tok = m.group()
        if kind not in ("ws", "comment"):
            toks.append(Token(kind, tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    toks.append(Token("eof", "", line, col))
    return toks


@dataclass(frozen=True)
class SourceFile:
    decls: tuple[tuple[str, Term, Term], ...]  # (name, stated type, body)

    def lookup(self, name: str) -> tuple[Term, Term]:
        for n, ty, body in self.decls:
            if n == name:
                return ty, body
        raise KeyError(name)


# Number of argument slots each keyword form consumes after any [..] part.
_CATCH_ARITY = {
    "catch_list": (S.CatchList, True, 6),
    "catch_listP": (S.CatchListP, True, 6),
    "catch_nat": (S.CatchNat, False, 6),
    "catch_natP": (S.CatchNatP, False, 6),
    "catch_bool": (S.CatchBool, False, 6),
    "catch_boolP": (S.CatchBoolP, False, 6),
    "catch_unit": (S.CatchUnit, False, 5),
    "catch_unitP": (S.CatchUnitP, False, 5),
    "catch_empty": (S.CatchEmpty, False, 4),
    "catch_emptyP": (S.CatchEmptyP, False, 4),
}


class Parser:
    def __init__(self, toks: list[Token], defs: Optional[dict] = None):
        self.toks = toks
        self.pos = 0
        self.scope: list[str] = []
        self.defs = defs if defs is not None else {}

    # -- token plumbing --

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.peek()
        self.pos += 1
        return t

    def fail(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise ParseFailure([Diagnostic("error", msg, tok.line, tok.col)])

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text:
            self.fail(f"expected {text!r}, found {t.text!r}")
        return self.next()

    def at(self, text: str) -> bool:
        return self.peek().text == text

    # -- binders --

    def binder_group(self) -> tuple[str, Term]:
        self.expect("(")
        name = self.peek()
        if name.kind != "ident":
            self.fail("expected binder name")
        self.next()
        self.expect(":")
        ty = self.term()
        self.expect(")")
        return name.text, ty

    def binder_groups(self) -> list[tuple[str, Term]]:
        """Parse binder groups, pushing each name so later groups see it."""
        g = self.binder_group()
        self.scope.append(g[0])
        groups = [g]
        while self.at("("):
            # lookahead: a group is '(' ident ':' ...
            if self.peek(1).kind == "ident" and self.peek(2).text == ":":
                g = self.binder_group()
                self.scope.append(g[0])
                groups.append(g)
            else:
                break
        return groups

    def _close_binders(self, groups, body, mk):
        for name, ty in reversed(groups):
            self.scope.pop()
            body = mk(ty, body, name)
        return body

    # -- grammar levels --

    def term(self) -> Term:
        t = self.peek()
        if t.text == "Pi":
            self.next()
            groups = self.binder_groups()
            self.expect("->")
            body = self.term()
            return self._close_binders(
                groups, body, lambda ty, b, n: S.Pi(ty, b, hint=n))
        if t.text == "fun":
            self.next()
            groups = self.binder_groups()
            self.expect("=>")
            body = self.term()
            return self._close_binders(
                groups, body, lambda ty, b, n: S.Lam(ty, b, hint=n))
        if t.text == "forall":
            self.next()
            groups = self.binder_groups()
            self.expect(",")
            body = self.term()
            return self._close_binders(
                groups, body, lambda ty, b, n: S.All(ty, b, hint=n))
        return self.arrow()

    def arrow(self) -> Term:
        lhs = self.prec()
        if self.at("->"):
            self.next()
            rhs = self.term()
            return S.Pi(lhs, S.shift(rhs), hint="_")
        return lhs

    def prec(self) -> Term:
        lhs = self.conj()
        if self.at("<=") and self.peek(1).text == "[":
            self.next()
            self.expect("[")
            lvl = self.peek()
            if lvl.kind != "num":
                self.fail("expected universe level")
            self.next()
            self.expect("]")
            rhs = self.conj()
            return S.TyPrec(int(lvl.text), lhs, rhs)
        if self.at(":"):
            self.next()
            lty = self.conj()
            self.expect("<=")
            rhs = self.conj()
            self.expect(":")
            rty = self.conj()
            return S.TmPrec(lty, rty, lhs, rhs)
        return lhs

    def conj(self) -> Term:
        lhs = self.app()
        if self.at("/\\"):
            self.next()
            rhs = self.conj()
            return S.AndP(lhs, rhs)
        return lhs

    def _starts_unary(self) -> bool:
        tok = self.peek()
        if tok.kind == "num":
            return True
        if tok.kind == "ident":
            return tok.text != "def"
        return tok.text in ("(", "?", "@")

    def app(self) -> Term:
        t = self.unary()
        while self._starts_unary():
            t = S.App(t, self.unary())
        return t

    def _bracketed(self) -> Term:
        self.expect("[")
        t = self.term()
        self.expect("]")
        return t

    def unary(self) -> Term:
        t = self.peek()
        w = t.text
        if w == "Sig":
            # exactly one binder group: a second parenthesized group would be
            # ambiguous with a parenthesized body term
            self.next()
            name, ty = self.binder_group()
            self.scope.append(name)
            body = self.app()
            self.scope.pop()
            return S.Sigma(ty, body, hint=name)
        if w == "cast":
            self.next()
            return S.Cast(self.unary(), self.unary(), self.unary())
        if w == "iota":
            self.next()
            return S.Cum(self.unary())
        if w == "up":
            self.next()
            return S.CoeUp(self.unary())
        if w == "down":
            self.next()
            return S.CoeDown(self.unary())
        if w == "S":
            self.next()
            return S.Succ(self.unary())
        if w == "List":
            self.next()
            return S.List(self.unary())
        if w == "Box":
            self.next()
            return S.BoxP(self.unary())
        if w == "box":
            self.next()
            ann = self._bracketed()
            return S.BoxIntro(ann, self.unary())
        if w == "exfalso":
            self.next()
            return S.ExFalso(self.unary(), self.unary())
        if w == "nil":
            self.next()
            return S.Nil(self._bracketed())
        if w == "cons":
            self.next()
            ann = self._bracketed()
            return S.Cons(ann, self.unary(), self.unary())
        if w == "pairP":
            self.next()
            return S.PairP(self.unary(), self.unary())
        if w == "fstP":
            self.next()
            return S.FstP(self.unary())
        if w == "sndP":
            self.next()
            return S.SndP(self.unary())
        if w == "pair":
            self.next()
            ann = self._bracketed()
            if not isinstance(ann, S.Sigma):
                self.fail("pair annotation must be a Sig type", t)
            return S.Pair(ann.fst, ann.snd, self.unary(), self.unary())
        if w == "catch_sigma" or w == "catch_sigmaP":
            self.next()
            ann = self._bracketed()
            if not isinstance(ann, S.Sigma):
                self.fail("catch_sigma annotation must be a Sig type", t)
            cls = S.CatchSigma if w == "catch_sigma" else S.CatchSigmaP
            args = [self.unary() for _ in range(5)]
            return cls(ann.fst, ann.snd, *args)
        if w == "catch_box":
            self.next()
            ann = self._bracketed()
            args = [self.unary() for _ in range(5)]
            return S.CatchBox(ann, *args)
        if w in _CATCH_ARITY:
            self.next()
            cls, has_ann, arity = _CATCH_ARITY[w]
            if has_ann:
                ann = self._bracketed()
                args = [self.unary() for _ in range(arity)]
                return cls(ann, *args)
            args = [self.unary() for _ in range(arity)]
            return cls(*args)
        return self.atom()

    def atom(self) -> Term:
        t = self.peek()
        w = t.text
        if w == "(":
            self.next()
            inner = self.term()
            if self.at(","):
                self.next()
                snd = self.term()
                self.expect(")")
                return S.Pair(None, None, inner, snd)
            self.expect(")")
            return inner
        if w == "?":
            self.next()
            return S.Unk(self._bracketed())
        if w == "err":
            self.next()
            return S.Err(self._bracketed())
        if w == "@":
            self.next()
            name = self.peek()
            if name.kind != "ident":
                self.fail("expected prelude constant name")
            self.next()
            m = re.fullmatch(r"(.*?)_(\d+)", name.text)
            if m:
                return S.Const(m.group(1), int(m.group(2)))
            return S.Const(name.text, 0)
        if w == "Type":
            self.next()
            lvl = self.peek()
            if lvl.kind != "num":
                self.fail("expected universe level after Type")
            self.next()
            return S.Sort(int(lvl.text))
        if w == "Prop":
            self.next()
            return S.Sort(None)
        if w == "Nat":
            self.next()
            return S.Nat()
        if w == "Bool":
            self.next()
            return S.Bool()
        if w == "Unit":
            self.next()
            return S.Unit()
        if w == "Empty":
            self.next()
            return S.Empty()
        if w == "Bot":
            self.next()
            return S.Bot()
        if w == "true":
            self.next()
            return S.TrueT()
        if w == "false":
            self.next()
            return S.FalseT()
        if w == "tt":
            self.next()
            return S.Tt()
        if t.kind == "num":
            self.next()
            return S.numeral(int(w))
        if t.kind == "ident" and w not in KEYWORDS:
            self.next()
            if w in self.scope:
                # innermost binding wins
                ix = len(self.scope) - 1 - max(
                    i for i, n in enumerate(self.scope) if n == w)
                return S.Var(ix)
            if w in self.defs:
                return self.defs[w]
            self.fail(f"unbound identifier {w!r}", t)
        self.fail(f"unexpected token {w!r}", t)

    # -- declarations --

    def source_file(self) -> SourceFile:
        decls = []
        diags = []
        while not self.peek().kind == "eof":
            tok = self.peek()
            if tok.text != "def":
                self.fail("expected 'def'", tok)
            self.next()
            name = self.peek()
            if name.kind != "ident" or name.text in KEYWORDS:
                self.fail("expected declaration name", name)
            self.next()
            if name.text in self.defs:
                diags.append(Diagnostic("error",
                                        f"duplicate definition {name.text!r}",
                                        name.line, name.col))
            self.expect(":")
            ty = self.term()
            self.expect(":=")
            body = self.term()
            self.expect(".")
            decls.append((name.text, ty, body))
            self.defs[name.text] = body
        if diags:
            raise ParseFailure(diags)
        return SourceFile(tuple(decls))


def parse(text: str) -> SourceFile:
    """Parse a .grip source file; raises ParseFailure with diagnostics."""
    return Parser(lex(text)).source_file()


def parse_term(text: str, defs: Optional[dict] = None) -> Term:
    p = Parser(lex(text), defs=dict(defs) if defs else {})
    t = p.term()
    if p.peek().kind != "eof":
        p.fail("trailing input")
    return t


def parse_term_in_scope(text: str, names: list) -> Term:
    """Parse an open term whose free names are bound by `names`
    (outermost first); they become de Bruijn indices."""
    p = Parser(lex(text))
    p.scope = list(names)
    t = p.term()
    if p.peek().kind != "eof":
        p.fail("trailing input")
    return t


# --- pretty printer -----------------------------------------------------------

_LVL_TERM, _LVL_PREC, _LVL_CONJ, _LVL_APP, _LVL_ATOM = 0, 1, 2, 3, 4


def _uses_var0(t: Term, depth: int = 0) -> bool:
    if isinstance(t, S.Var):
        return t.ix == depth
    return any(_uses_var0(sub, depth + d) for _, sub, d in S.iter_subterms(t))


class Printer:
    def __init__(self):
        self.names: list[str] = []

    def fresh(self, hint: str, used_below: bool) -> str:
        if hint == "_" and not used_below:
            return "_"
        base = hint if hint and hint != "_" else "x"
        name = base
        k = 0
        while name in self.names or name in KEYWORDS:
            k += 1
            name = f"{base}{k}"
        return name

    def go(self, t: Term, lvl: int) -> str:
        s, mylvl = self.render(t)
        if mylvl < lvl:
            return f"({s})"
        return s

    def binder(self, hint: str, ty: Term, body: Term, kw: str, sep: str,
               body_lvl: int = _LVL_TERM) -> tuple[str, int]:
        tystr = self.go(ty, _LVL_TERM)
        name = self.fresh(hint, _uses_var0(body))
        self.names.append(name)
        bstr = self.go(body, body_lvl)
        self.names.pop()
        return f"{kw} ({name}:{tystr}){sep}{bstr}", _LVL_TERM

    def render(self, t: Term) -> tuple[str, int]:
        if isinstance(t, S.Var):
            if t.ix < len(self.names):
                return self.names[-(t.ix + 1)], _LVL_ATOM
            return f"!{t.ix}", _LVL_ATOM
        if isinstance(t, S.Sort):
            return ("Prop" if t.is_prop else f"Type {t.level}"), _LVL_ATOM
        if isinstance(t, S.Pi):
            if not _uses_var0(t.cod):
                lhs = self.go(t.dom, _LVL_PREC)
                rhs = self.go(S.shift(t.cod, 0, -1), _LVL_TERM)
                return f"{lhs} -> {rhs}", _LVL_TERM
            return self.binder(t.hint, t.dom, t.cod, "Pi", " -> ")
        if isinstance(t, S.Lam):
            return self.binder(t.hint, t.dom, t.body, "fun", " => ")
        if isinstance(t, S.All):
            return self.binder(t.hint, t.dom, t.body, "forall", ", ")
        if isinstance(t, S.Sigma):
            # greedy to the right: parenthesize in application positions
            s, _ = self.binder(t.hint, t.fst, t.snd, "Sig", " ", _LVL_APP)
            return s, _LVL_PREC
        if isinstance(t, S.App):
            return (f"{self.go(t.fn, _LVL_APP)} {self.go(t.arg, _LVL_ATOM)}",
                    _LVL_APP)
        if isinstance(t, S.TyPrec):
            return (f"{self.go(t.lhs, _LVL_CONJ)} <=[{t.level}] "
                    f"{self.go(t.rhs, _LVL_CONJ)}", _LVL_PREC)
        if isinstance(t, S.TmPrec):
            return (f"{self.go(t.lhs, _LVL_CONJ)} : {self.go(t.lhs_ty, _LVL_CONJ)}"
                    f" <= {self.go(t.rhs, _LVL_CONJ)} : "
                    f"{self.go(t.rhs_ty, _LVL_CONJ)}", _LVL_PREC)
        if isinstance(t, S.AndP):
            return (f"{self.go(t.lhs, _LVL_APP)} /\\ {self.go(t.rhs, _LVL_CONJ)}",
                    _LVL_CONJ)
        if isinstance(t, S.Nat):
            return "Nat", _LVL_ATOM
        if isinstance(t, S.Zero):
            return "0", _LVL_ATOM
        if isinstance(t, S.Succ):
            n = S.as_numeral(t)
            if n is not None:
                return str(n), _LVL_ATOM
            return f"S {self.go(t.pred, _LVL_ATOM)}", _LVL_APP
        if isinstance(t, S.Bool):
            return "Bool", _LVL_ATOM
        if isinstance(t, S.TrueT):
            return "true", _LVL_ATOM
        if isinstance(t, S.FalseT):
            return "false", _LVL_ATOM
        if isinstance(t, S.Unit):
            return "Unit", _LVL_ATOM
        if isinstance(t, S.Tt):
            return "tt", _LVL_ATOM
        if isinstance(t, S.Empty):
            return "Empty", _LVL_ATOM
        if isinstance(t, S.Bot):
            return "Bot", _LVL_ATOM
        if isinstance(t, S.List):
            return f"List {self.go(t.elem, _LVL_ATOM)}", _LVL_APP
        if isinstance(t, S.Nil):
            return f"nil[{self.go(t.elem, _LVL_TERM)}]", _LVL_ATOM
        if isinstance(t, S.Cons):
            return (f"cons[{self.go(t.elem, _LVL_TERM)}] "
                    f"{self.go(t.head, _LVL_ATOM)} {self.go(t.tail, _LVL_ATOM)}",
                    _LVL_APP)
        if isinstance(t, S.Unk):
            return f"?[{self.go(t.ty, _LVL_TERM)}]", _LVL_ATOM
        if isinstance(t, S.Err):
            return f"err[{self.go(t.ty, _LVL_TERM)}]", _LVL_ATOM
        if isinstance(t, S.Cast):
            return (f"cast {self.go(t.src, _LVL_ATOM)} "
                    f"{self.go(t.tgt, _LVL_ATOM)} {self.go(t.body, _LVL_ATOM)}",
                    _LVL_APP)
        if isinstance(t, S.Cum):
            return f"iota {self.go(t.ty, _LVL_ATOM)}", _LVL_APP
        if isinstance(t, S.CoeUp):
            return f"up {self.go(t.body, _LVL_ATOM)}", _LVL_APP
        if isinstance(t, S.CoeDown):
            return f"down {self.go(t.body, _LVL_ATOM)}", _LVL_APP
        if isinstance(t, S.ExFalso):
            return (f"exfalso {self.go(t.prf, _LVL_ATOM)} "
                    f"{self.go(t.tgt, _LVL_ATOM)}", _LVL_APP)
        if isinstance(t, S.PairP):
            return (f"pairP {self.go(t.fst, _LVL_ATOM)} "
                    f"{self.go(t.snd, _LVL_ATOM)}", _LVL_APP)
        if isinstance(t, S.FstP):
            return f"fstP {self.go(t.pair, _LVL_ATOM)}", _LVL_APP
        if isinstance(t, S.SndP):
            return f"sndP {self.go(t.pair, _LVL_ATOM)}", _LVL_APP
        if isinstance(t, S.BoxP):
            return f"Box {self.go(t.prop, _LVL_ATOM)}", _LVL_APP
        if isinstance(t, S.BoxIntro):
            return (f"box[{self.go(t.prop, _LVL_TERM)}] "
                    f"{self.go(t.prf, _LVL_ATOM)}", _LVL_APP)
        if isinstance(t, S.Pair):
            if t.fst_ty is None:
                return (f"({self.go(t.fst, _LVL_TERM)} , "
                        f"{self.go(t.snd, _LVL_TERM)})", _LVL_ATOM)
            sig = S.Sigma(t.fst_ty, t.snd_ty)
            return (f"pair[{self.go(sig, _LVL_TERM)}] "
                    f"{self.go(t.fst, _LVL_ATOM)} {self.go(t.snd, _LVL_ATOM)}",
                    _LVL_APP)
        if isinstance(t, S.Const):
            suffix = f"_{t.level}" if t.level else ""
            base = f"@{t.name}{suffix}"
            if not t.args:
                return base, _LVL_ATOM
            argstr = " ".join(self.go(a, _LVL_ATOM) for a in t.args)
            return f"{base} {argstr}", _LVL_APP
        if isinstance(t, S.CatchSigma) or isinstance(t, S.CatchSigmaP):
            kw = "catch_sigma" if isinstance(t, S.CatchSigma) else "catch_sigmaP"
            sig = S.Sigma(t.fst_ty, t.snd_ty)
            parts = [self.go(x, _LVL_ATOM)
                     for x in (t.motive, t.on_pair, t.on_err, t.on_unk, t.scrut)]
            return f"{kw}[{self.go(sig, _LVL_TERM)}] " + " ".join(parts), _LVL_APP
        if isinstance(t, S.CatchBox):
            parts = [self.go(x, _LVL_ATOM)
                     for x in (t.motive, t.on_box, t.on_err, t.on_unk, t.scrut)]
            return f"catch_box[{self.go(t.prop, _LVL_TERM)}] " + " ".join(parts), _LVL_APP
        for cls, kw, fields in _CATCH_PRINT:
            if isinstance(t, cls):
                parts = [self.go(getattr(t, f), _LVL_ATOM) for f in fields]
                if hasattr(t, "elem"):
                    return (f"{kw}[{self.go(t.elem, _LVL_TERM)}] "
                            + " ".join(parts), _LVL_APP)
                return f"{kw} " + " ".join(parts), _LVL_APP
        raise NotImplementedError(f"cannot print {type(t).__name__}")


_CATCH_PRINT = [
    (S.CatchList, "catch_list",
     ("motive", "on_nil", "on_cons", "on_err", "on_unk", "scrut")),
    (S.CatchListP, "catch_listP",
     ("motive", "on_nil", "on_cons", "on_err", "on_unk", "scrut")),
    (S.CatchNat, "catch_nat",
     ("motive", "on_zero", "on_succ", "on_err", "on_unk", "scrut")),
    (S.CatchNatP, "catch_natP",
     ("motive", "on_zero", "on_succ", "on_err", "on_unk", "scrut")),
    (S.CatchBool, "catch_bool",
     ("motive", "on_true", "on_false", "on_err", "on_unk", "scrut")),
    (S.CatchBoolP, "catch_boolP",
     ("motive", "on_true", "on_false", "on_err", "on_unk", "scrut")),
    (S.CatchUnit, "catch_unit", ("motive", "on_tt", "on_err", "on_unk", "scrut")),
    (S.CatchUnitP, "catch_unitP",
     ("motive", "on_tt", "on_err", "on_unk", "scrut")),
    (S.CatchEmpty, "catch_empty", ("motive", "on_err", "on_unk", "scrut")),
    (S.CatchEmptyP, "catch_emptyP", ("motive", "on_err", "on_unk", "scrut")),
]


def print_term(t: Term) -> str:
    return Printer().go(t, _LVL_TERM)
