"""Bounded congruence closure over enumerated words, and finite
quotient monoids proposed from it.

``saturate`` enumerates every word of length <= L over k letters and
unions each with its one-step rewrites (computed by the derivation
engine with the same length cap), giving a sound under-approximation
of the relatively free monoid's word problem: words in one class are
provably equal; words in different classes are merely unseparated.
The oracle therefore answers "holds" or "unknown", never "fails".

``quotient_monoid`` turns a saturated closure into a candidate finite
monoid (classes as elements, concatenation of representatives as the
product).  The construction is heuristic, but every candidate is then
checked directly: the table must validate as a monoid and satisfy the
generating system by brute force.  A candidate that passes is a bona
fide member of the variety regardless of how it was proposed, which is
exactly what refutation witnesses need.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .monoids import FiniteMonoid, make_monoid, satisfies, validate
from .rewrite import Explorer
from .systems import Identity, IdentitySystem
from .words import Word, word_str

ENUMERATION_CAP = 10**7


@dataclass
class BoundedCongruence:
    system: IdentitySystem
    k: int
    L: int
    parent: Dict[Word, Word]

    def find(self, w: Word) -> Word:
        p = self.parent
        root = w
        while p[root] != root:
            root = p[root]
        while p[w] != root:
            p[w], w = root, p[w]
        return root

    def same_class(self, u: Word, v: Word) -> bool:
        return self.find(u) == self.find(v)

    def classes(self) -> Dict[Word, list]:
        """root -> members; roots are the (length, lex)-least members."""
        groups: Dict[Word, list] = {}
        for w in self.parent:
            groups.setdefault(self.find(w), []).append(w)
        out = {}
        for members in groups.values():
            members.sort(key=lambda w: (len(w), w))
            out[members[0]] = members
        return out

    def representative(self, w: Word) -> Word:
        # union keeps the (length, lex)-least root, so the root is the
        # canonical representative
        return self.find(w)


def _all_words(k: int, L: int) -> List[Word]:
    if sum(k**i for i in range(L + 1)) > ENUMERATION_CAP:
        raise MemoryError(f"enumeration of {k}^0..{k}^{L} words exceeds cap")
    words: List[Word] = [()]
    layer: List[Word] = [()]
    for _ in range(L):
        layer = [w + (x,) for w in layer for x in range(k)]
        words.extend(layer)
    return words


def saturate(sys: IdentitySystem, k: int, L: int) -> BoundedCongruence:
    """Union-find closure of one-step rewriting on words of length <= L
    over letters 0..k-1, iterated to fixpoint."""
    words = _all_words(k, L)
    parent = {w: w for w in words}

    def find(w):
        root = w
        while parent[root] != root:
            root = parent[root]
        while parent[w] != root:
            parent[w], w = root, parent[w]
        return root

    def union(u, v):
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        if (len(rv), rv) < (len(ru), ru):
            ru, rv = rv, ru
        parent[rv] = ru
        return True

    explorer = Explorer(sys, L, ambient=range(k))
    # the one-step relation is static, so a single sweep plus one
    # confirming sweep reaches the fixpoint
    while True:
        changed = False
        for w in words:
            for v in explorer.neighbors(w):
                if union(w, v):
                    changed = True
        if not changed:
            break
    return BoundedCongruence(sys, k, L, parent)


def oracle_holds(bc: BoundedCongruence, ident: Identity) -> str:
    """'holds' when both sides fall in one class, else 'unknown'."""
    letters = sorted(ident.letters())
    if any(x >= bc.k for x in letters):
        raise ValueError(f"identity uses letters outside 0..{bc.k - 1}")
    if len(ident.lhs) > bc.L or len(ident.rhs) > bc.L:
        raise ValueError(f"identity sides exceed length bound {bc.L}")
    return "holds" if bc.same_class(ident.lhs, ident.rhs) else "unknown"


@dataclass
class QuotientReport:
    monoid: Optional[FiniteMonoid]
    reason: str
    class_count: int = 0


def quotient_monoid(
    bc: BoundedCongruence,
    name: str = "",
    verify_against: Optional[IdentitySystem] = None,
) -> QuotientReport:
    """Candidate monoid on the closure's classes, fully re-verified.

    Fails softly (monoid=None) when the classes are not closed under
    concatenation within the length bound, when the table does not
    validate, or when it does not satisfy the generating system.
    """
    classes = bc.classes()
    reps = sorted(classes, key=lambda w: (len(w), w))
    index = {r: i for i, r in enumerate(reps)}
    n = len(reps)
    rows = []
    for u in reps:
        row = []
        for v in reps:
            prod = u + v
            if len(prod) > bc.L:
                return QuotientReport(
                    None,
                    f"representatives {word_str(u)}·{word_str(v)} overflow bound {bc.L}",
                    n,
                )
            row.append(index[bc.representative(prod)])
        rows.append(row)
    labels = tuple(word_str(r) if r else "1" for r in reps)
    m = make_monoid(rows, index[()], labels, name=name)
    ok, detail = validate(m)
    if not ok:
        return QuotientReport(None, f"table failed validation: {detail}", n)
    sys = verify_against or bc.system
    for label, ident in sys.labelled_identities():
        holds, counter = satisfies(m, ident)
        if not holds:
            return QuotientReport(
                None, f"table violates {label} at {counter}", n
            )
    return QuotientReport(m, "ok", n)
