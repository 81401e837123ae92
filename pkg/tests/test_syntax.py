"""De Bruijn plumbing: relocation, substitution, scoping."""

import random

from hypothesis import given, settings, strategies as st

from grip import syntax as S
from grip.generators import gen_scoped
from grip.syntax import Var, Lam, App, Nat, Zero, shift, subst, scope_check


def test_subst_identity_on_var():
    assert subst(Var(0), 0, Zero()) == Zero()


def test_subst_under_binder_shifts():
    # the bound variable is untouched; the substituted value is relocated
    assert subst(Lam(Nat(), Var(1)), 0, Zero()) == Lam(Nat(), Zero())


def test_subst_reindexes_free_variables():
    t = App(Var(0), Var(1))
    got = subst(t, 0, Lam(Nat(), Var(0)))
    assert got == App(Lam(Nat(), Var(0)), Var(0))


def test_shift_basic():
    assert shift(Var(0), 0, 1) == Var(1)
    assert shift(Lam(Nat(), Var(0)), 0, 5) == Lam(Nat(), Var(0))


def test_shift_negative_raises_on_capture():
    import pytest
    with pytest.raises(S.ScopeError):
        shift(Var(0), 0, -1)


def test_shift_round_trip_500():
    rng = random.Random(11)
    for _ in range(500):
        t = gen_scoped(rng, 3)
        assert shift(shift(t, 0, 2), 0, -2) == t


def test_scope_check():
    assert not scope_check(Var(0), 0)
    assert scope_check(Lam(Nat(), Var(0)), 0)
    assert not scope_check(Lam(Nat(), Var(1)), 0)


# --- a named-variable reference implementation as an independent oracle ----

def _to_named(t, env, nb=0):
    import dataclasses
    if isinstance(t, Var):
        return ("v", env[-(t.ix + 1)])
    sub = dict(S.subterm_spec(t))
    scalars = tuple(getattr(t, f.name) for f in dataclasses.fields(t)
                    if f.name not in sub and f.name != "hint")
    parts = [("f", type(t).__name__, scalars)]
    for name, depth in S.subterm_spec(t):
        val = getattr(t, name)
        if val is None or isinstance(val, tuple):
            continue
        binders = tuple(f"b{nb + k}" for k in range(depth))
        parts.append((name, binders,
                      _to_named(val, env + list(binders), nb + depth)))
    return tuple(parts)


def _canon(t, env):
    """Alpha-canonical form of a named tree: bound names become indices."""
    if t[0] == "v":
        name = t[1]
        if name in env:
            return ("v", len(env) - 1 - max(i for i, n in enumerate(env)
                                            if n == name))
        return ("v", name)
    out = [t[0]]
    for part in t[1:]:
        if isinstance(part, tuple) and len(part) == 3                 and isinstance(part[1], tuple) and part[0] != "f":
            name, binders, sub = part
            out.append((name, len(binders), _canon(sub, env + list(binders))))
        else:
            out.append(part)
    return tuple(out)


def _named_subst(t, target, repl):
    if t[0] == "v":
        return repl if t[1] == target else t
    if t[0] == "f":
        return t
    out = [t[0]]
    for part in t[1:]:
        if isinstance(part, tuple) and len(part) == 3 and isinstance(part[1], tuple):
            name, binders, sub = part
            if target in binders:
                out.append(part)  # shadowed
            else:
                out.append((name, binders, _named_subst(sub, target, repl)))
        else:
            out.append(part)
    return tuple(out)


def _named_subst_top(t, env_len, j, u_named):
    # substitute the named form of de Bruijn index j at the top level
    return _named_subst(t, f"x{env_len - 1 - j}", u_named)


def test_subst_agrees_with_named_reference_200():
    # closed-over-two-variables terms, substitute for each variable in turn
    rng = random.Random(23)
    checked = 0
    for _ in range(400):
        if checked >= 200:
            break
        body = gen_scoped(rng, 3, binders=2)
        u = gen_scoped(rng, 2, binders=0)
        j = rng.randrange(2)
        got = subst(body, j, u)
        # reference: convert both to named form and substitute there
        env = ["x0", "x1"]
        named_before = _to_named(body, env)
        named_u = _to_named(u, [])
        want = _named_subst_top(named_before, 2, j, named_u)
        env_after = ["x0", "x1"]
        env_after.pop(-(j + 1))
        named_after = _to_named(got, env_after)
        assert _canon(named_after, env_after) == _canon(want, env_after)
        checked += 1
    assert checked == 200


@settings(max_examples=200, deadline=None, derandomize=True)
@given(st.integers(min_value=0, max_value=5), st.integers(min_value=1, max_value=4))
def test_shift_composition(cutoff, amount):
    rng = random.Random(cutoff * 7 + amount)
    t = gen_scoped(rng, 3)
    a = shift(shift(t, cutoff, amount), cutoff, 1)
    b = shift(t, cutoff, amount + 1)
    assert a == b
