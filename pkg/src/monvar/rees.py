"""Rees quotients of the free monoid over a finite set of words.

``build_rees(W)`` constructs the monoid whose nonzero elements are the
contiguous factors of the words in W (including the empty factor, the
identity); the product of two factors is their concatenation when that
is again a factor, and the adjoined zero otherwise.

Isoterm checking is a bounded semi-decision in general: a word w is an
isoterm for a variety when no non-trivial identity w = w' holds there.
The bounded check enumerates candidate right-hand sides up to a length
cap; for the two varieties with exact word problems the candidate
space collapses and the check is exact (see ``criteria``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Set

from .monoids import BudgetExceeded, FiniteMonoid, make_monoid, validate
from .systems import Identity
from .words import Word, content, word_str

SIZE_CAP = 4096


def factors(w: Word) -> Set[Word]:
    """All contiguous factors of w, including the empty word."""
    out = {()}
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n + 1):
            out.add(w[i:j])
    return out


@dataclass(frozen=True)
class ReesMonoid:
    base: FiniteMonoid
    elem_words: tuple  # element id -> factor (nonzero elements only)
    zero: int
    source: tuple  # the generating words

    @property
    def size(self) -> int:
        return self.base.size

    def element_of(self, w: Word) -> int:
        try:
            return self.elem_words.index(w)
        except ValueError:
            return self.zero


def build_rees(words: Iterable[Word], size_cap: int = SIZE_CAP) -> ReesMonoid:
    """The Rees quotient S(W): factors of W with truncated product."""
    source = tuple(sorted(set(words), key=lambda w: (len(w), w)))
    fact: Set[Word] = set()
    for w in source:
        fact |= factors(w)
    elems = sorted(fact, key=lambda w: (len(w), w))
    if len(elems) + 1 > size_cap:
        raise BudgetExceeded(f"{len(elems) + 1} elements exceed cap {size_cap}")
    index = {w: i for i, w in enumerate(elems)}
    zero = len(elems)
    size = zero + 1
    rows = []
    for u in elems:
        row = []
        for v in elems:
            row.append(index.get(u + v, zero))
        row.append(zero)
        rows.append(row)
    rows.append([zero] * size)
    labels = tuple(word_str(w) if w else "1" for w in elems) + ("0",)
    name = "S(" + ",".join(word_str(w) for w in source) + ")"
    m = make_monoid(rows, index[()], labels, name=name)
    ok, detail = validate(m)
    if not ok:  # pragma: no cover - construction is associative by design
        raise AssertionError(f"Rees table failed validation: {detail}")
    return ReesMonoid(base=m, elem_words=tuple(elems), zero=zero, source=source)


def words_over(alphabet, max_len: int) -> Iterator[Word]:
    """All words over the given letters with length <= max_len,
    in (length, lexicographic) order."""
    alphabet = sorted(alphabet)
    layer = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in alphabet:
                v = w + (x,)
                nxt.append(v)
                yield v
        layer = nxt


def is_isoterm(
    w: Word,
    sat: Callable[[Identity], bool],
    max_len: int,
) -> bool:
    """Bounded isoterm check: False once some w' != w with
    content(w') within content(w) and len(w') <= max_len satisfies
    w = w'; True means "no violation up to max_len"."""
    if max_len < len(w):
        raise ValueError("max_len must be at least len(w)")
    for cand in words_over(content(w), max_len):
        if cand == w:
            continue
        if sat(Identity(w, cand)):
            return False
    return True


@dataclass(frozen=True)
class MembershipVerdict:
    value: bool
    bounded: bool
    detail: str


def member_check(
    words: Iterable[Word],
    sat: Callable[[Identity], bool],
    max_len: Optional[int] = None,
    exact: bool = False,
) -> MembershipVerdict:
    """S(W) lies in the variety iff every w in W is an isoterm for it.

    The verdict records whether the isoterm checks were exact or only
    up to the length bound.
    """
    words = tuple(words)
    for w in words:
        bound = max_len if max_len is not None else 2 * len(w) + 2
        if not is_isoterm(w, sat, max(bound, len(w))):
            return MembershipVerdict(
                False, False, f"{word_str(w)} is not an isoterm (witness within bound)"
            )
    detail = "all words are isoterms" + ("" if exact else f" up to the length bound")
    return MembershipVerdict(True, not exact, detail)
