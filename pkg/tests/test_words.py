import pytest
from hypothesis import given, strategies as st

from monvar.words import (
    Decomposition,
    WordSyntaxError,
    canonical_renaming,
    content,
    decompose,
    delete,
    h_index,
    h_table,
    is_i_free,
    is_n_limited,
    letter,
    letter_classes,
    occurrences,
    one_dividers,
    parse_word,
    rename,
    restrict,
    reverse_word,
    substitute,
    unique_2gram_check,
    word_str,
)

L = letter


def test_parse_expansion():
    assert parse_word("xyx^2") == parse_word("xyxx")
    assert parse_word("") == ()
    assert parse_word("x^3y^2") == (L("x"),) * 3 + (L("y"),) * 2


def test_parse_errors():
    with pytest.raises(WordSyntaxError):
        parse_word("x^0")
    with pytest.raises(WordSyntaxError):
        parse_word("x^")
    with pytest.raises(WordSyntaxError):
        parse_word("xY")
    with pytest.raises(WordSyntaxError):
        parse_word("x^70000")


def test_parse_marker_letters():
    w = parse_word("xt1x")
    assert w == (L("x"), L("t1"), L("x"))
    assert word_str(w) == "xt1x"
    # a bare t is the ordinary letter
    assert parse_word("t^2") == (L("t"), L("t"))


def test_word_str_roundtrip():
    for text in ("", "x", "xyx^2", "x^3y^2", "xt1x^2t2y"):
        assert word_str(parse_word(text)) == text


def test_content_occurrences():
    w = parse_word("xtyzxy")
    assert content(w) == frozenset(parse_word("xtyz"))
    assert content(()) == frozenset()
    assert content(parse_word("x^5")) == {L("x")}
    assert occurrences(w, L("x")) == 2
    assert occurrences(w, L("t")) == 1
    assert occurrences((), L("x")) == 0


def test_letter_classes():
    s, m = letter_classes(parse_word("xtyzxy"))
    assert s == {L("t"), L("z")} and m == {L("x"), L("y")}
    s, m = letter_classes(parse_word("xyx"))
    assert s == {L("y")} and m == {L("x")}
    s, m = letter_classes(parse_word("xy"))
    assert s == {L("x"), L("y")} and m == frozenset()


def test_restrict_delete():
    assert restrict(parse_word("xyxztx"), {L("x"), L("t")}) == parse_word("xxtx")
    assert restrict(parse_word("xtyzxy"), {L("x"), L("z")}) == parse_word("xzx")
    w = parse_word("xyxztx")
    assert restrict(w, content(w)) == w
    assert delete(w, {L("x")}) == parse_word("yzt")
    assert delete(w, set()) == w
    assert delete(parse_word("xyx"), {L("x"), L("y")}) == ()


def test_decompose_examples():
    d = decompose(parse_word("xtyzxy"))
    assert d.dividers == (None, L("t"), L("z"))
    assert d.blocks == (parse_word("x"), parse_word("y"), parse_word("xy"))
    d2 = decompose(parse_word("xyxztx"))
    assert d2.dividers == (None, L("y"), L("z"), L("t"))
    assert d2.blocks == (parse_word("x"), parse_word("x"), (), parse_word("x"))
    d3 = decompose(())
    assert d3.dividers == (None,) and d3.blocks == ((),)


def test_h_index_examples():
    w = parse_word("xtyzxy")
    assert h_index(w, L("x"), 1) == 0
    assert h_index(w, L("x"), 2) == 2
    assert h_index(w, L("y"), 2) == 2
    assert h_index(w, L("t"), 1) == 0
    assert h_index(w, L("z"), 1) == 1
    with pytest.raises(ValueError):
        h_index(w, L("x"), 3)
    with pytest.raises(ValueError):
        h_index(w, L("q"), 1)


def test_one_dividers():
    assert one_dividers(parse_word("xtyzxy")) == {L("x"), L("y")}
    assert one_dividers(parse_word("xyx")) == {L("x")}
    assert one_dividers(parse_word("x^2y^2")) == frozenset()


def test_limited_and_free():
    assert is_n_limited(parse_word("xyx"), 2)
    assert not is_n_limited(parse_word("xyx"), 1)
    assert is_n_limited((), 1)
    assert not is_i_free(parse_word("xyxy"), 2)
    assert is_i_free(parse_word("xyx"), 2)
    assert not is_i_free(parse_word("xxx"), 3)
    assert is_i_free(parse_word("xx"), 3)


def test_reverse_substitute():
    assert reverse_word(parse_word("xtyzxy")) == parse_word("yxzytx")
    w = parse_word("xyxztx")
    assert reverse_word(reverse_word(w)) == w
    assert substitute(parse_word("xyx"), {L("x"): parse_word("ab")}) == parse_word("abyab")
    assert substitute(parse_word("xyx"), {L("y"): ()}) == parse_word("xx")
    xi = {L("x"): parse_word("zz")}
    u, v = parse_word("xy"), parse_word("x")
    assert substitute(u + v, xi) == substitute(u, xi) + substitute(v, xi)


def test_unique_2gram():
    assert unique_2gram_check(parse_word("xyt1xt2y"))
    assert not unique_2gram_check(parse_word("xyxy"))
    assert not unique_2gram_check(parse_word("xyyx"))


words = st.lists(st.integers(min_value=0, max_value=3), max_size=9).map(tuple)


@given(words)
def test_letter_classes_partition(w):
    s, m = letter_classes(w)
    assert s | m == content(w)
    assert not (s & m)


@given(words)
def test_decompose_roundtrip(w):
    d = decompose(w)
    assert d.rebuild() == w
    simple, _ = letter_classes(w)
    assert tuple(d.divider_letters()) == tuple(x for x in w if x in simple)
    for b in d.blocks:
        assert all(x not in simple for x in b)


@given(words)
def test_h_monotone(w):
    table = h_table(w)
    for x, hs in table.items():
        assert hs == sorted(hs)


@given(words)
def test_reverse_preserves_statistics(w):
    r = reverse_word(w)
    assert content(r) == content(w)
    assert letter_classes(r) == letter_classes(w)
    for x in content(w):
        assert occurrences(r, x) == occurrences(w, x)


@given(words, st.sets(st.integers(min_value=0, max_value=3)))
def test_delete_content(w, xs):
    assert content(delete(w, xs)) == content(w) - xs
    ys = {0, 2}
    assert delete(delete(w, xs), ys) == delete(w, xs | ys)


@given(words)
def test_substitute_identity_map(w):
    assert substitute(w, {}) == w


def brute_i_free(w, i):
    n = len(w)
    for start in range(n):
        for length in range(1, n + 1):
            if start + i * length > n:
                break
            if all(
                w[start + k * length : start + (k + 1) * length]
                == w[start : start + length]
                for k in range(i)
            ):
                return False
    return True


@given(words, st.integers(min_value=2, max_value=4))
def test_i_free_matches_brute_force(w, i):
    assert is_i_free(w, i) == brute_i_free(w, i)


@given(words)
def test_predicates_renaming_invariant(w):
    mapping = canonical_renaming([w])
    r = rename(w, mapping)
    assert is_n_limited(w, 2) == is_n_limited(r, 2)
    assert is_i_free(w, 2) == is_i_free(r, 2)
    assert unique_2gram_check(w) == unique_2gram_check(r)
    du, dr = decompose(w), decompose(r)
    assert [len(b) for b in du.blocks] == [len(b) for b in dr.blocks]
