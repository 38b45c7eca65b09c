import pytest

from monvar import _kernel_py
from monvar.monoids import (
    TRIVIAL,
    BudgetExceeded,
    direct_product,
    dual_monoid,
    evaluate,
    format_table,
    idempotents_commute,
    is_aperiodic,
    make_monoid,
    parse_table,
    satisfies,
    validate,
    zero_element,
)
from monvar.rees import build_rees
from monvar.systems import dual_identity, parse_identity
from monvar.words import letter, parse_word

ident = parse_identity
L = letter


@pytest.fixture(scope="module")
def s_xyx():
    return build_rees([parse_word("xyx")])


def test_validate(s_xyx):
    assert validate(TRIVIAL) == (True, None)
    ok, detail = validate(make_monoid([[1, 1], [1, 1]], 0))
    assert not ok and "identity" in detail
    assert validate(s_xyx.base)[0]
    bad = make_monoid([[0, 1, 2], [1, 2, 1], [2, 1, 1]], 0)
    ok, detail = validate(bad)
    assert not ok and "associativity" in detail


def test_evaluate(s_xyx):
    S = s_xyx
    a = {L("x"): S.element_of(parse_word("x")), L("y"): S.element_of(parse_word("y"))}
    assert evaluate(S.base, (), a) == S.base.one
    assert evaluate(S.base, parse_word("xyx"), a) == S.element_of(parse_word("xyx"))
    assert evaluate(S.base, parse_word("x^2"), a) == S.zero
    with pytest.raises(KeyError):
        evaluate(S.base, parse_word("z"), a)


def test_satisfies(s_xyx):
    S = s_xyx.base
    holds, counter = satisfies(S, ident("x^2 = x^3"))
    assert holds and counter is None
    holds, counter = satisfies(S, ident("xy = yx"))
    assert not holds
    assert counter is not None and len(counter) == 2
    assert satisfies(S, ident("xyx = xyx"))[0]


def test_satisfies_budget(s_xyx):
    with pytest.raises(BudgetExceeded):
        satisfies(s_xyx.base, ident("abcdefgh = hgfedcba"), cap=10**6)


def test_satisfies_renaming_invariant(s_xyx):
    S = s_xyx.base
    pairs = [
        ("xyx = xyx^2", "aba = abab"),
        ("x^2y = x^2yx", "b^2a = b^2ab"),
        ("xy = yx", "ba = ab"),
    ]
    for a, b in pairs:
        assert satisfies(S, ident(a))[0] == satisfies(S, ident(b))[0]


def test_aperiodic(s_xyx):
    assert is_aperiodic(s_xyx.base)
    assert is_aperiodic(TRIVIAL)
    two_group = make_monoid([[0, 1], [1, 0]], 0)
    assert not is_aperiodic(two_group)


def test_idempotents(s_xyx):
    assert idempotents_commute(s_xyx.base)
    assert idempotents_commute(make_monoid([[0, 1], [1, 1]], 0))
    left_zero_band = make_monoid([[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0)
    assert validate(left_zero_band)[0]
    assert not idempotents_commute(left_zero_band)


def test_dual(s_xyx):
    S = s_xyx.base
    d = dual_monoid(S)
    i = ident("x^2y = x^2yx")
    assert satisfies(d, dual_identity(i))[0] == satisfies(S, i)[0]
    assert dual_monoid(d).table == S.table
    assert is_aperiodic(d) == is_aperiodic(S)
    assert idempotents_commute(d) == idempotents_commute(S)
    comm = make_monoid([[0, 1], [1, 1]], 0)
    assert dual_monoid(comm).table == comm.table


def test_direct_product(s_xyx):
    S = s_xyx.base
    P = direct_product(S, S)
    assert P.size == 49
    assert validate(P)[0]
    for i in (ident("xy = yx"), ident("x^2 = x^3")):
        assert satisfies(P, i)[0] == satisfies(S, i)[0]
    T2 = direct_product(S, TRIVIAL)
    assert T2.size == S.size
    with pytest.raises(BudgetExceeded):
        direct_product(P, P, size_cap=100)


def test_table_roundtrip(s_xyx):
    S = s_xyx.base
    text = format_table(S)
    back = parse_table(text, name="S")
    assert back.table == S.table and back.one == S.one
    assert back.labels == S.labels
    with pytest.raises(ValueError):
        parse_table("n 2 0\n0 1\n")


def test_kernel_parity(s_xyx):
    try:
        from monvar import _kernel
    except ImportError:
        pytest.skip("compiled kernel not built")
    S = s_xyx.base
    flat = S.flat()
    assert _kernel.find_zero(flat, S.size) == _kernel_py.find_zero(flat, S.size)
    assert _kernel.find_assoc_violation(flat, S.size) == _kernel_py.find_assoc_violation(
        flat, S.size
    )
    cases = [
        "xyx = xyx^2",
        "x^2 = x^3",
        "xy = yx",
        "x^2y^2 = y^2x^2",
        "xyt1xt2y = yxt1xt2y",
        "x = ",
    ]
    z = zero_element(S)
    for text in cases:
        i = ident(text)
        seq = i.lhs + i.rhs
        letters = sorted(frozenset(seq), key=seq.index)
        slot = {x: k for k, x in enumerate(letters)}
        args = (
            flat,
            S.size,
            S.one,
            [slot[x] for x in i.lhs],
            [slot[x] for x in i.rhs],
            len(letters),
            z,
        )
        assert _kernel.check_identity(*args) == _kernel_py.check_identity(*args), text
