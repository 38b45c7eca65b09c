"""Words over a countable alphabet and their combinatorial structure.

A word is a tuple of letter ids.  Ids 0..25 are the ordinary letters
``a``..``z``; ids 26 and above form a reserved band of marker letters
``t0``, ``t1``, ... used by parametric identity shapes.  Everything in
this module is a pure function of immutable values.

The central structural notion is the decomposition of a word into
alternating dividers (its letters that occur exactly once, plus a
leading sentinel) and blocks (maximal runs of repeated letters between
consecutive dividers)::

    xtyzxy  ->  dividers (sentinel, t, z), blocks (x, y, xy)

``h_index(w, x, i)`` locates the right-most divider strictly preceding
the i-th occurrence of x; index 0 always denotes the sentinel.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

Letter = int
Word = tuple  # tuple of Letter

T_BASE = 26  # ids >= T_BASE are marker letters t0, t1, ...

EMPTY: Word = ()

MAX_EXPONENT = 2 ** 16


class WordSyntaxError(ValueError):
    """Malformed word text; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def letter(name: str) -> Letter:
    """Letter id for a one-character name or a t-marker like 't3'."""
    if len(name) == 1 and "a" <= name <= "z":
        return ord(name) - 97
    if name.startswith("t") and name[1:].isdigit():
        return T_BASE + int(name[1:])
    raise ValueError(f"not a letter name: {name!r}")


def t_letter(i: int) -> Letter:
    if i < 0:
        raise ValueError("t-letter index must be >= 0")
    return T_BASE + i


def letter_name(x: Letter) -> str:
    if 0 <= x < T_BASE:
        return chr(97 + x)
    return f"t{x - T_BASE}"


def parse_word(text: str) -> Word:
    """Parse ``(letter exponent?)*`` into a word.

    Letters are ``a``-``z``; ``^k`` repeats the preceding letter k
    times (k >= 1).  As an extension for parametric shapes, ``t``
    followed by digits denotes the marker letter with that index.
    """
    out = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if not ("a" <= c <= "z"):
            raise WordSyntaxError(f"unexpected character {c!r}", i)
        if c == "t" and i + 1 < n and text[i + 1].isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            x = T_BASE + int(text[i + 1 : j])
            i = j
        else:
            x = ord(c) - 97
            i += 1
        exp = 1
        if i < n and text[i] == "^":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise WordSyntaxError("exponent digits expected after '^'", i)
            exp = int(text[i + 1 : j])
            if exp == 0:
                raise WordSyntaxError("exponent must be >= 1", i + 1)
            if exp > MAX_EXPONENT:
                raise WordSyntaxError(f"exponent exceeds cap {MAX_EXPONENT}", i + 1)
            i = j
        out.extend([x] * exp)
    return tuple(out)


def word_str(w: Iterable[Letter]) -> str:
    """Render a word compactly, collapsing runs into ``^k`` exponents."""
    w = tuple(w)
    if not w:
        return ""
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = letter_name(w[i])
        k = j - i
        parts.append(name if k == 1 else f"{name}^{k}")
        i = j
    return "".join(parts)


def content(w: Word) -> frozenset:
    return frozenset(w)


def occurrences(w: Word, x: Letter) -> int:
    return w.count(x)


def word_length(w: Word) -> int:
    return len(w)


def letter_classes(w: Word):
    """(simple, multiple): letters occurring exactly once / at least twice."""
    counts = Counter(w)
    simple = frozenset(x for x, c in counts.items() if c == 1)
    multiple = frozenset(x for x, c in counts.items() if c >= 2)
    return simple, multiple


def restrict(w: Word, keep) -> Word:
    keep = frozenset(keep)
    return tuple(x for x in w if x in keep)


def delete(w: Word, drop) -> Word:
    drop = frozenset(drop)
    return tuple(x for x in w if x not in drop)


@dataclass(frozen=True)
class Decomposition:
    """Alternating dividers and blocks; dividers[0] is the sentinel None."""

    dividers: tuple  # (None, l1, ..., lm)
    blocks: tuple  # (w0, ..., wm), words of multiple letters

    @property
    def m(self) -> int:
        return len(self.dividers) - 1

    def rebuild(self) -> Word:
        out = []
        for d, b in zip(self.dividers, self.blocks):
            if d is not None:
                out.append(d)
            out.extend(b)
        return tuple(out)

    def divider_letters(self) -> tuple:
        return self.dividers[1:]


def decompose(w: Word) -> Decomposition:
    simple, _ = letter_classes(w)
    dividers = [None]
    blocks = []
    cur = []
    for x in w:
        if x in simple:
            blocks.append(tuple(cur))
            cur = []
            dividers.append(x)
        else:
            cur.append(x)
    blocks.append(tuple(cur))
    return Decomposition(tuple(dividers), tuple(blocks))


def occurrence_positions(w: Word, x: Letter) -> list:
    return [p for p, y in enumerate(w) if y == x]


def h_index(w: Word, x: Letter, i: int) -> int:
    """Index of the right-most divider strictly before the i-th x (i >= 1).

    Index 0 is the sentinel divider; positive indices point into the
    divider sequence of ``decompose(w)``.
    """
    positions = occurrence_positions(w, x)
    if not positions:
        raise ValueError(f"letter {letter_name(x)} does not occur")
    if not 1 <= i <= len(positions):
        raise ValueError(
            f"occurrence {i} out of range for {letter_name(x)} "
            f"(occurs {len(positions)} times)"
        )
    p = positions[i - 1]
    simple, _ = letter_classes(w)
    return sum(1 for q in range(p) if w[q] in simple)


def h_table(w: Word):
    """Per letter, the list of h-indices for each of its occurrences."""
    simple, _ = letter_classes(w)
    prefix = []
    seen = 0
    for x in w:
        prefix.append(seen)
        if x in simple:
            seen += 1
    table = {}
    for p, x in enumerate(w):
        table.setdefault(x, []).append(prefix[p])
    return table


def one_dividers(w: Word) -> frozenset:
    """Multiple letters whose first two occurrences lie in different blocks."""
    _, multiple = letter_classes(w)
    table = h_table(w)
    return frozenset(x for x in multiple if table[x][0] != table[x][1])


def is_n_limited(w: Word, n: int) -> bool:
    if n < 1:
        raise ValueError("n must be >= 1")
    counts = Counter(w)
    return all(c <= n for c in counts.values())


def is_i_free(w: Word, i: int) -> bool:
    """True iff w has no non-empty factor repeated i times consecutively."""
    if i < 2:
        raise ValueError("repetition count must be >= 2")
    n = len(w)
    for start in range(n):
        for length in range(1, (n - start) // i + 1):
            seg = w[start : start + length]
            if all(
                w[start + k * length : start + (k + 1) * length] == seg
                for k in range(1, i)
            ):
                return False
    return True


def reverse_word(w: Word) -> Word:
    return tuple(reversed(w))


def substitute(w: Word, xi: Mapping[Letter, Word]) -> Word:
    """Homomorphic image; letters absent from the map are fixed."""
    out = []
    for x in w:
        img = xi.get(x)
        if img is None:
            out.append(x)
        else:
            out.extend(img)
    return tuple(out)


def unique_2gram_check(w: Word) -> bool:
    """Every two-letter factor ab (a != b) occurs at most once, and
    never together with its reversal ba."""
    seen = set()
    for a, b in zip(w, w[1:]):
        if a == b:
            continue
        if (a, b) in seen or (b, a) in seen:
            return False
        seen.add((a, b))
    return True


def canonical_renaming(words: Iterable[Word]) -> dict:
    """Map letters to dense ids 0,1,2,... by first occurrence across words."""
    mapping = {}
    for w in words:
        for x in w:
            if x not in mapping:
                mapping[x] = len(mapping)
    return mapping


def rename(w: Word, mapping: Mapping[Letter, Letter]) -> Word:
    return tuple(mapping[x] for x in w)
