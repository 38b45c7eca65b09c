"""Exact satisfaction criteria for the varieties with solved word
problems, plus the commutative-aperiodic decision rule.

``holds_in_F``: a non-trivial identity u = v holds iff both sides have
the same simple letters, the same multiple letters, and for every
letter the dividers preceding its first two occurrences agree (as
indices into the two words' aligned divider sequences).

``holds_in_Q``: iff both sides decompose over the same divider
sequence and aligned blocks have equal content.

``holds_in_commutative_aperiodic(id, n)``: decides the fully
commutative companion (x^n = x^(n+1), xy = yx): per letter, occurrence
counts are equal or both at least n.

The isoterm shortcuts at the bottom exploit the shape of the criteria:
for either variety, any word with a multiple letter admits equivalent
words (pump an occurrence past the second), and a word of pairwise
distinct letters is alone in its class, so the isoterms are exactly
the words whose letters are all simple.  The test suite cross-checks
this against the bounded search.
"""

from __future__ import annotations

from collections import Counter

from .systems import Identity
from .words import Word, content, decompose, h_table, letter_classes


def holds_in_F(ident: Identity) -> bool:
    u, v = ident.lhs, ident.rhs
    if u == v:
        return True
    su, mu = letter_classes(u)
    sv, mv = letter_classes(v)
    if su != sv or mu != mv:
        return False
    hu, hv = h_table(u), h_table(v)
    for x in su | mu:
        if hu[x][0] != hv[x][0]:
            return False
        if x in mu and hu[x][1] != hv[x][1]:
            return False
    return True


def holds_in_Q(ident: Identity) -> bool:
    u, v = ident.lhs, ident.rhs
    if u == v:
        return True
    du, dv = decompose(u), decompose(v)
    if du.divider_letters() != dv.divider_letters():
        # misaligned decompositions cannot hold in a non-completely-regular
        # non-commutative variety, so the verdict is a definite no
        return False
    return all(
        content(bu) == content(bv) for bu, bv in zip(du.blocks, dv.blocks)
    )


def holds_in_commutative_aperiodic(ident: Identity, n: int) -> bool:
    if n < 1:
        raise ValueError("n must be >= 1")
    cu = Counter(ident.lhs)
    cv = Counter(ident.rhs)
    for x in set(cu) | set(cv):
        a, b = cu.get(x, 0), cv.get(x, 0)
        if a != b and (a < n or b < n):
            return False
    return True


def holds_in_trivial(ident: Identity) -> bool:
    return True


def holds_in_SL(ident: Identity) -> bool:
    return holds_in_commutative_aperiodic(ident, 1)


def isoterm_for_F(w: Word) -> bool:
    """Exact: w is an isoterm for the F-criterion iff all letters simple."""
    _, multiple = letter_classes(w)
    return not multiple


def isoterm_for_Q(w: Word) -> bool:
    """Exact, by the same normal form argument as for F."""
    _, multiple = letter_classes(w)
    return not multiple
