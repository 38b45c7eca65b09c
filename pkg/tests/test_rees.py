import random

import pytest

from monvar import criteria
from monvar.monoids import (
    BudgetExceeded,
    idempotents_commute,
    is_aperiodic,
    satisfies,
    validate,
    zero_element,
)
from monvar.rees import build_rees, factors, is_isoterm, member_check, words_over
from monvar.systems import Identity, parse_identity
from monvar.words import letter, parse_word, word_str


def test_factor_enumeration():
    f = factors(parse_word("xyx"))
    assert f == {(), *map(parse_word, ["x", "y", "xy", "yx", "xyx"])}


def test_build_s_examples():
    S = build_rees([parse_word("xyx")])
    assert S.size == 7
    labels = set(S.base.labels)
    assert labels == {"1", "x", "y", "xy", "yx", "xyx", "0"}
    S2 = build_rees([parse_word("xzxyty")])
    assert S2.size == 21
    S3 = build_rees([parse_word("x")])
    assert S3.size == 3
    x = S3.element_of(parse_word("x"))
    assert S3.base.mul(x, x) == S3.zero


def test_build_s_product_rule():
    S = build_rees([parse_word("xyx")])
    fact = factors(parse_word("xyx"))
    for u in fact:
        for v in fact:
            got = S.base.mul(S.element_of(u), S.element_of(v))
            want = S.element_of(u + v) if (u + v) in fact else S.zero
            assert got == want


def test_build_s_cap():
    with pytest.raises(BudgetExceeded):
        build_rees([parse_word("abcdefghij^6")], size_cap=16)


def test_monotone_embedding():
    small = build_rees([parse_word("xy")])
    big = build_rees([parse_word("xy"), parse_word("yx")])
    for w in factors(parse_word("xy")):
        assert big.element_of(w) != big.zero or w not in factors(parse_word("xy"))


def test_structural_random_suite():
    rng = random.Random(20240)
    alphabet = [letter(c) for c in "abcd"]
    for _ in range(12):
        words = [
            tuple(rng.choice(alphabet) for _ in range(rng.randint(1, 6)))
            for _ in range(rng.randint(1, 3))
        ]
        S = build_rees(words)
        ok, detail = validate(S.base)
        assert ok, detail
        assert is_aperiodic(S.base)
        assert idempotents_commute(S.base)
        fact = set()
        for w in words:
            fact |= factors(w)
        assert S.size == len(fact) + 1
        assert zero_element(S.base) == S.zero


def test_is_isoterm_bounded():
    sl_sat = lambda i: criteria.holds_in_SL(i)
    assert not is_isoterm(parse_word("x"), sl_sat, 3)
    f_sat = criteria.holds_in_F
    assert not is_isoterm(parse_word("xyx"), f_sat, 6)
    S = build_rees([parse_word("xyx")])
    self_sat = lambda i: satisfies(S.base, i)[0]
    assert is_isoterm(parse_word("xyx"), self_sat, 5)
    with pytest.raises(ValueError):
        is_isoterm(parse_word("xyx"), f_sat, 2)


def test_isoterm_exact_rules_cross_validated():
    # bounded search agrees with the all-letters-simple rule
    for text in ("x", "xy", "xyz", "xyx", "x^2", "xyxy", "xzy"):
        w = parse_word(text)
        for sat, rule in (
            (criteria.holds_in_F, criteria.isoterm_for_F),
            (criteria.holds_in_Q, criteria.isoterm_for_Q),
        ):
            assert is_isoterm(w, sat, len(w) + 2) == rule(w), text


def test_member_check():
    S = build_rees([parse_word("xyx")])
    self_sat = lambda i: satisfies(S.base, i)[0]
    verdict = member_check([parse_word("xyx")], self_sat)
    assert verdict.value
    verdict = member_check([parse_word("xyx")], criteria.holds_in_F, exact=True)
    assert not verdict.value
    verdict = member_check([parse_word("x")], criteria.holds_in_SL)
    assert not verdict.value


def test_words_over_order():
    ws = list(words_over([0, 1], 2))
    assert ws == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
