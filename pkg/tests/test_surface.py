"""Concrete syntax: parsing, printing, diagnostics."""

import random

import pytest

from grip import syntax as S
from grip.generators import gen_scoped
from grip.surface import (Diagnostic, ParseFailure, lex, parse, parse_term,
                          print_term)


def test_parse_lambda():
    assert parse_term("fun (x:Nat) => x") == S.Lam(S.Nat(), S.Var(0))


def test_parse_cast_example():
    assert parse_term("cast Bool Nat true") == S.Cast(S.Bool(), S.Nat(),
                                                      S.TrueT())


def test_parse_guarded_function_precision():
    t = parse_term("iota (Nat -> Nat) <=[1] ?[Type 1]")
    want = S.TyPrec(1, S.Cum(S.Pi(S.Nat(), S.Nat())), S.Unk(S.Sort(1)))
    assert t == want


def test_numera_sugar():
    assert parse_term("2") == S.numeral(2)
    assert print_term(S.numeral(2)) == "2"
    assert print_term(S.Err(S.Nat())) == "err[Nat]"


def test_decl_file_and_duplicate_diagnostic():
    src = parse("def a : Nat := 3. def b : Nat := a.")
    assert src.lookup("b")[1] == S.numeral(3)  # inlined
    with pytest.raises(ParseFailure) as e:
        parse("def a : Nat := 0. def a : Nat := 1.")
    assert "duplicate" in str(e.value)


def test_unbound_identifier_diagnostic_has_position():
    with pytest.raises(ParseFailure) as e:
        parse_term("fun (x:Nat) =>\n  y")
    d = e.value.diagnostics[0]
    assert (d.line, d.col) == (2, 3)


def test_diagnostic_spans_lie_in_input():
    text = "def a : Nat :=\n  missing_name."
    try:
        parse(text)
        assert False, "should fail"
    except ParseFailure as e:
        lines = text.split("\n")
        for d in e.value.diagnostics if hasattr(e, "value") else e.diagnostics:
            assert 1 <= d.line <= len(lines)
            assert 1 <= d.col <= len(lines[d.line - 1]) + 1


def test_comments_and_levels():
    t = parse_term("Type 1 -- a comment\n")
    assert t == S.Sort(1)
    assert parse_term("Prop") == S.Sort(None)


def test_round_trip_1000_random_terms():
    rng = random.Random(5)
    for _ in range(1000):
        t = gen_scoped(rng, 3)
        assert parse_term(print_term(t)) == t


def test_prelude_constant_syntax():
    assert parse_term("@errMin") == S.Const("errMin", 0)
    assert parse_term("@errMin_2") == S.Const("errMin", 2)
    assert print_term(S.Const("errMin", 2)) == "@errMin_2"


def test_pair_sugar():
    t = parse_term("(1 , true)")
    assert t == S.Pair(None, None, S.numeral(1), S.TrueT())
    assert parse_term(print_term(t)) == t
