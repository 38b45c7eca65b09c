import pytest
from hypothesis import given, settings, strategies as st

from monvar.rewrite import (
    DerivationTrace,
    Explorer,
    RewriteStep,
    StepError,
    apply_step,
    compile_system,
    derive,
    make_step,
    match_at,
    neighbors,
    parse_trace,
    verify_trace,
)
from monvar.systems import (
    FamilySpec,
    Identity,
    IdentitySystem,
    family,
    parse_identity,
    system,
)
from monvar.words import letter, parse_word, word_str

L = letter
ident = parse_identity


def bindings(pattern, target):
    return [b for start in range(len(target) + 1) for b, _ in match_at(pattern, target, start)]


def test_match_simple():
    # pattern xyx against xyx: x->x, y->y among matches
    found = list(match_at(parse_word("xyx"), parse_word("xyx"), 0))
    assert ({L("x"): (L("x"),), L("y"): (L("y"),)}, 3) in found


def test_match_requires_consistency():
    # pattern xx on xy has only empty-x matches
    for b, end in match_at(parse_word("xx"), parse_word("xy"), 0):
        assert b[L("x")] == ()


def test_apply_step_examples():
    st3 = make_step(
        ident("xyx = xyx^2"),
        True,
        (),
        (),
        {L("x"): parse_word("x"), L("y"): parse_word("y")},
        expect_source=parse_word("xyx"),
    )
    assert apply_step(st3) == parse_word("xyx^2")
    st3b = make_step(
        ident("xyx = xyx^2"),
        True,
        (),
        parse_word("x"),
        {L("x"): parse_word("x"), L("y"): parse_word("y")},
        expect_source=parse_word("xyx^2"),
    )
    assert apply_step(st3b) == parse_word("xyx^3")
    st7 = make_step(
        ident("x^2y^2 = y^2x^2"),
        True,
        (),
        parse_word("t"),
        {L("x"): parse_word("x"), L("y"): parse_word("y")},
        expect_source=parse_word("x^2y^2t"),
    )
    assert apply_step(st7) == parse_word("y^2x^2t")
    with pytest.raises(StepError):
        make_step(
            ident("xyx = xyx^2"),
            True,
            (),
            (),
            {L("x"): parse_word("x"), L("y"): parse_word("y")},
            expect_source=parse_word("xxx"),
        )


def test_neighbors_examples():
    sys3 = system("xyx = xyx^2")
    ns = neighbors(parse_word("xyx"), sys3, 5)
    assert parse_word("xyx^2") in ns
    ns2 = neighbors(parse_word("xyx^2"), sys3, 5)
    assert parse_word("xyx") in ns2 and parse_word("xyx^3") in ns2
    assert neighbors((), sys3, 4) == []


def test_neighbors_requires_cap():
    with pytest.raises(ValueError):
        neighbors(parse_word("xyx"), system("xyx = xyx^2"), 2)


@settings(deadline=None, max_examples=40)
@given(st.lists(st.integers(min_value=0, max_value=1), min_size=1, max_size=5).map(tuple))
def test_neighbors_symmetric(w):
    sys = system("xyx = xyx^2", "x^2y^2 = y^2x^2")
    cap = 7
    ex = Explorer(sys, cap)
    for v in ex.neighbors(w):
        assert w in ex.neighbors(v), (word_str(w), word_str(v))


def test_derive_examples():
    sys3 = system("xyx = xyx^2")
    tr, stats = derive(parse_word("xyx"), parse_word("xyx^3"), sys3, len_cap=6)
    assert tr is not None and len(tr) == 2
    ok, i, why = verify_trace(tr, sys3)
    assert ok
    assert tr.end() == parse_word("xyx^3")
    # xy = yx is not derivable from the pumping identity at any bound here
    tr2, stats2 = derive(parse_word("xy"), parse_word("yx"), sys3, len_cap=8)
    assert tr2 is None
    assert stats2.status == "exhausted:component"


def test_derive_budget():
    sys3 = system("xyx = xyx^2")
    tr, stats = derive(
        parse_word("xyx"), parse_word("xyx^6"), sys3, len_cap=9, max_states=3
    )
    assert tr is None and stats.status == "exhausted:max_states"


def test_derive_deterministic():
    sysH = system("xyzxy = yxzxy", "xyxztx = xyxzxtx")
    runs = [
        derive(parse_word("xyhxsytx"), parse_word("yxhxsytx"), sysH, len_cap=9)[0]
        for _ in range(3)
    ]
    assert runs[0] == runs[1] == runs[2]


def test_verify_trace_rejects():
    sys3 = system("xyx = xyx^2")
    tr, _ = derive(parse_word("xyx"), parse_word("xyx^3"), sys3, len_cap=6)
    # break the chain
    broken = DerivationTrace(parse_word("xyx^2"), tr.steps)
    ok, i, why = verify_trace(broken, sys3)
    assert not ok and i == 0 and "chain break" in why
    # wrong system
    ok, i, why = verify_trace(tr, system("x^2y^2 = y^2x^2"))
    assert not ok and "not in system" in why


def test_verify_trace_family_instances():
    k2 = family("kappa", 2, 1)
    sysk = IdentitySystem(families=(FamilySpec("kappa", (1, 2)),))
    st = make_step(
        k2,
        True,
        (),
        (),
        {x: (x,) for x in k2.letters()},
        expect_source=k2.lhs,
    )
    ok, _, _ = verify_trace(DerivationTrace(k2.lhs, (st,)), sysk)
    assert ok


def test_trace_roundtrip():
    sys14 = system("xyx = xyx^2", "x^2yzx^2 = x^2yxzx^2")
    tr, _ = derive(parse_word("xyxztx"), parse_word("xyxzxtx"), sys14, len_cap=10)
    text = tr.render()
    back = parse_trace(text, tr.start)
    assert back == tr
    ok, _, _ = verify_trace(back, sys14)
    assert ok


def test_trace_reversal_and_composition():
    sys3 = system("xyx = xyx^2")
    tr, _ = derive(parse_word("xyx"), parse_word("xyx^3"), sys3, len_cap=6)
    rev = tr.reversed()
    assert rev.start == parse_word("xyx^3") and rev.end() == parse_word("xyx")
    assert verify_trace(rev, sys3)[0]
    both = tr.then(rev)
    assert both.start == both.end() == parse_word("xyx")
    assert verify_trace(both, sys3)[0]


def test_compile_system_respects_cap():
    sysk = IdentitySystem(families=(FamilySpec("kappa", (1, 4)),))
    small = compile_system(sysk, 6)
    assert all(len(i.lhs) <= 6 and len(i.rhs) <= 6 for _, i in small)
    assert len(small) < len(compile_system(sysk, 12))
